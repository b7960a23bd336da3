#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dyndist/window.hpp"
#include "test_support.hpp"

using namespace dyndist;

TEST_CASE("recording stores statuses at (t+1) mod s") {
    SlidingWindow w(3);
    w.record(false, 0);  // t+1 = 1
    CHECK(w.status_at(1) == -1);
    CHECK(w.observed() == 1);

    w.record(true, 1);   // slot 2
    w.record(true, 2);   // slot 0
    w.record(true, 3);   // t+1 = 4 wraps onto slot 1
    CHECK(w.status_at(1) == 1);
    CHECK(w.observed() == 4);
}

TEST_CASE("no decision before the window has wrapped") {
    WindowPolicy policy{10, 0.5};
    SlidingWindow w(10);
    for (int t = 0; t < 10; ++t) {
        w.record(false, t);
        CHECK(w.decide(policy, t) == WindowDecision::kNone);
    }
    // Eleventh status: window full and wrapped, all-decreasing forces zero.
    w.record(false, 10);
    CHECK(w.decide(policy, 10) == WindowDecision::kForceZero);
}

TEST_CASE("decision follows the last status and the tau majority") {
    WindowPolicy policy{10, 0.6};
    SlidingWindow w(10);
    // Statuses for t+1 = 1..11: five decreases, five increases, one decrease.
    // The window then holds five -1 and five +1 with a -1 last: below the
    // 60% majority, so no decision.
    bool increases[11] = {false, false, false, false, false, true, true, true, true, true,
                          false};
    for (int t = 0; t < 11; ++t) {
        w.record(increases[t], t);
    }
    CHECK(w.decide(policy, 10) == WindowDecision::kNone);
    // Further decreases first overwrite old -1 slots; the count reaches six
    // (tau * s) only once a former +1 slot flips at t+1 = 16.
    for (int t = 11; t < 15; ++t) {
        w.record(false, t);
        CHECK(w.decide(policy, t) == WindowDecision::kNone);
    }
    w.record(false, 15);
    CHECK(w.decide(policy, 15) == WindowDecision::kForceZero);
}

TEST_CASE("saturated increasing window forces one") {
    WindowPolicy policy{10, 0.5};
    SlidingWindow w(10);
    for (int t = 0; t <= 10; ++t) {
        w.record(true, t);
    }
    CHECK(w.decide(policy, 10) == WindowDecision::kForceOne);
}

TEST_CASE("force-one requires the last status to agree") {
    WindowPolicy policy{4, 0.5};
    SlidingWindow w(4);
    // Three increases then a decrease; plus-count 3 >= tau*s = 2 but the
    // last status disagrees, and minus-count 1 < 2.
    bool inc[5] = {true, true, true, true, false};
    for (int t = 0; t < 5; ++t) {
        w.record(inc[t], t);
    }
    CHECK(w.decide(policy, 4) == WindowDecision::kNone);
}

TEST_CASE("disabled policy never decides") {
    WindowPolicy policy{0, 0.5};
    SlidingWindow w;
    CHECK_FALSE(policy.enabled());
    CHECK(w.decide(policy, 100) == WindowDecision::kNone);
}

TEST_CASE("decisions agree with a direct-count oracle on random sequences") {
    for (std::uint64_t seed = 1; seed < 30; ++seed) {
        testsupport::Rng rng(seed);
        int s = 2 + static_cast<int>(rng.below(9));
        double tau = 0.3 + 0.6 * rng.unit();
        WindowPolicy policy{s, tau};
        SlidingWindow w(s);
        std::vector<int> history;
        for (int t = 0; t < 40; ++t) {
            bool increased = rng.unit() < 0.5;
            history.push_back(increased ? 1 : -1);
            w.record(increased, t);
            auto decision = w.decide(policy, t);

            // Oracle: keep the latest status per slot index directly.
            WindowDecision expected = WindowDecision::kNone;
            if (t + 1 > s) {
                std::vector<int> slots(s, 0);
                for (int q = 0; q <= t; ++q) {
                    slots[(q + 1) % s] = history[q];
                }
                int plus = 0, minus = 0;
                for (int st : slots) {
                    if (st > 0) {
                        ++plus;
                    }
                    if (st < 0) {
                        ++minus;
                    }
                }
                int last = slots[(t + 1) % s];
                if (last == 1 && plus >= tau * s) {
                    expected = WindowDecision::kForceOne;
                } else if (last == -1 && minus >= tau * s) {
                    expected = WindowDecision::kForceZero;
                }
            }
            CHECK(decision == expected);
            if (decision == WindowDecision::kForceZero) {
                CHECK(history.back() == -1);
            }
            if (decision == WindowDecision::kForceOne) {
                CHECK(history.back() == 1);
            }
        }
    }
}

TEST_CASE("window state round-trips through text serialization") {
    for (std::uint64_t seed = 5; seed < 15; ++seed) {
        testsupport::Rng rng(seed);
        int s = 1 + static_cast<int>(rng.below(12));
        SlidingWindow w(s);
        int records = static_cast<int>(rng.below(25));
        for (int t = 0; t < records; ++t) {
            w.record(rng.unit() < 0.5, t);
        }
        SlidingWindow round = SlidingWindow::deserialize(w.serialize());
        CHECK(round == w);
    }
}

TEST_CASE("deserialization rejects garbage") {
    CHECK_THROWS(SlidingWindow::deserialize(""));
    CHECK_THROWS(SlidingWindow::deserialize("2 -1 0 7"));
}
