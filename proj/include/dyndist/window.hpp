#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dyndist {

/// Sliding-window parameters. size == 0 disables the window entirely.
struct WindowPolicy {
    int size = 0;       // s
    double tau = 0.5;   // required fraction of agreeing statuses

    bool enabled() const { return size > 0; }
};

enum class WindowDecision { kNone, kForceZero, kForceOne };

// Circular buffer of the last s increase/decrease statuses of one edge.
// Status for the update producing d^{t+1} lands in slot (t+1) mod s.
class SlidingWindow {
public:
    SlidingWindow() = default;
    explicit SlidingWindow(int size) : statuses_(size, 0) {}

    /// Record the status of one update: increased=true when d^{t+1} > d^t.
    void record(bool increased, int t) {
        int idx = (t + 1) % static_cast<int>(statuses_.size());
        statuses_[idx] = increased ? +1 : -1;
        ++observed_;
    }

    // Forcing decision per the trend rule. Decisions start once more than s
    // statuses have been observed (t+1 > s); before that the window has not
    // yet wrapped and the trend is considered unreliable.
    WindowDecision decide(const WindowPolicy& policy, int t) const {
        if (!policy.enabled() || statuses_.empty()) {
            return WindowDecision::kNone;
        }
        int s = static_cast<int>(statuses_.size());
        if (t + 1 <= s) {
            return WindowDecision::kNone;
        }
        int idx = (t + 1) % s;
        int plus = 0, minus = 0;
        for (int8_t st : statuses_) {
            if (st > 0) {
                ++plus;
            } else if (st < 0) {
                ++minus;
            }
        }
        double need = policy.tau * s;
        if (statuses_[idx] > 0 && plus >= need) {
            return WindowDecision::kForceOne;
        }
        if (statuses_[idx] < 0 && minus >= need) {
            return WindowDecision::kForceZero;
        }
        return WindowDecision::kNone;
    }

    int size() const { return static_cast<int>(statuses_.size()); }
    std::int64_t observed() const { return observed_; }
    std::int8_t status_at(int slot) const { return statuses_[slot]; }

    /// "s0 s1 ... s_{s-1} observed" with statuses in {-1, 0, 1}.
    std::string serialize() const;
    static SlidingWindow deserialize(const std::string& text);

    friend bool operator==(const SlidingWindow&, const SlidingWindow&) = default;

private:
    std::vector<std::int8_t> statuses_;
    std::int64_t observed_ = 0;
};

}  // namespace dyndist
