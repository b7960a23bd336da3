#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace dyndist::mr {

struct PhaseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

template <typename K>
std::string format_key(const K& key) {
    if constexpr (requires(std::ostringstream& os, const K& k) { os << k; }) {
        std::ostringstream os;
        os << key;
        return os.str();
    } else {
        return "<key>";
    }
}

template <typename K, typename V>
struct Tagged {
    K key;
    V value;
    std::uint64_t rec;  // input record index
    std::uint32_t seq;  // emission index within the record
};

}  // namespace detail

// Collects the key-value pairs one map invocation emits. Pairs are tagged
// with (record, emission) indices so the shuffle order is a pure function of
// the input, independent of how records were sharded across workers.
template <typename K, typename V>
class Emitter {
public:
    Emitter(std::vector<detail::Tagged<K, V>>* pairs, std::uint64_t rec)
        : pairs_(pairs), rec_(rec) {}

    void emit(K key, V value) {
        pairs_->push_back(detail::Tagged<K, V>{std::move(key), std::move(value), rec_, seq_++});
    }

private:
    std::vector<detail::Tagged<K, V>>* pairs_;
    std::uint64_t rec_;
    std::uint32_t seq_ = 0;
};

// One map-shuffle-reduce phase over in-memory records.
//   map_fn(const In&, Emitter<K, V>&)           emits key-value pairs
//   reduce_fn(const K&, std::span<V>, std::vector<Out>&)  appends outputs
// Pairs are grouped by key in ascending key order; values within a group are
// ordered by (record, emission) index. The output is therefore identical for
// any worker count. Map and reduce functions must not touch shared mutable
// state. A reducer exception aborts the phase with the offending key named.
template <typename K, typename V, typename Out, typename In, typename MapFn, typename ReduceFn>
std::vector<Out> run_phase(std::span<const In> input, MapFn&& map_fn, ReduceFn&& reduce_fn,
                           unsigned workers) {
    using Pair = detail::Tagged<K, V>;

    if (workers == 0) {
        workers = 1;
    }
    workers = std::min<unsigned>(workers, std::max<std::size_t>(input.size(), 1));

    // Map stage.
    std::vector<std::vector<Pair>> shards(workers);
    {
        std::vector<std::exception_ptr> errors(workers);
        auto map_range = [&](unsigned w, std::size_t lo, std::size_t hi) {
            try {
                for (std::size_t r = lo; r < hi; ++r) {
                    Emitter<K, V> emitter(&shards[w], r);
                    map_fn(input[r], emitter);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        };
        if (workers == 1) {
            map_range(0, 0, input.size());
        } else {
            std::vector<std::thread> threads;
            std::size_t chunk = (input.size() + workers - 1) / workers;
            for (unsigned w = 0; w < workers; ++w) {
                std::size_t lo = std::min<std::size_t>(w * chunk, input.size());
                std::size_t hi = std::min<std::size_t>(lo + chunk, input.size());
                threads.emplace_back(map_range, w, lo, hi);
            }
            for (auto& th : threads) {
                th.join();
            }
        }
        for (auto& err : errors) {
            if (err) {
                try {
                    std::rethrow_exception(err);
                } catch (const std::exception& e) {
                    throw PhaseError(std::string("map failed: ") + e.what());
                }
            }
        }
    }

    // Shuffle: one deterministic total order.
    std::vector<Pair> pairs;
    {
        std::size_t total = 0;
        for (const auto& shard : shards) {
            total += shard.size();
        }
        pairs.reserve(total);
        for (auto& shard : shards) {
            std::move(shard.begin(), shard.end(), std::back_inserter(pairs));
            shard.clear();
        }
        std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
            if (a.key != b.key) {
                return a.key < b.key;
            }
            if (a.rec != b.rec) {
                return a.rec < b.rec;
            }
            return a.seq < b.seq;
        });
    }

    // Group boundaries.
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i == 0 || pairs[i].key != pairs[i - 1].key) {
            starts.push_back(i);
        }
    }
    starts.push_back(pairs.size());
    std::size_t groups = starts.empty() ? 0 : starts.size() - 1;

    // Reduce stage: groups are processed independently, outputs concatenated
    // in key order.
    std::vector<std::vector<Out>> group_out(groups);
    {
        std::vector<std::exception_ptr> errors(workers, nullptr);
        std::vector<std::string> error_keys(workers);
        auto reduce_range = [&](unsigned w, std::size_t lo, std::size_t hi) {
            std::vector<V> values;
            for (std::size_t gi = lo; gi < hi; ++gi) {
                const K& key = pairs[starts[gi]].key;
                try {
                    values.clear();
                    for (std::size_t idx = starts[gi]; idx < starts[gi + 1]; ++idx) {
                        values.push_back(std::move(pairs[idx].value));
                    }
                    reduce_fn(key, std::span<V>(values), group_out[gi]);
                } catch (...) {
                    if (!errors[w]) {
                        errors[w] = std::current_exception();
                        error_keys[w] = detail::format_key(key);
                    }
                    return;
                }
            }
        };
        unsigned reduce_workers = std::min<unsigned>(workers, std::max<std::size_t>(groups, 1));
        if (reduce_workers <= 1) {
            reduce_range(0, 0, groups);
        } else {
            std::vector<std::thread> threads;
            std::size_t chunk = (groups + reduce_workers - 1) / reduce_workers;
            for (unsigned w = 0; w < reduce_workers; ++w) {
                std::size_t lo = std::min<std::size_t>(w * chunk, groups);
                std::size_t hi = std::min<std::size_t>(lo + chunk, groups);
                threads.emplace_back(reduce_range, w, lo, hi);
            }
            for (auto& th : threads) {
                th.join();
            }
        }
        for (unsigned w = 0; w < workers; ++w) {
            if (errors[w]) {
                try {
                    std::rethrow_exception(errors[w]);
                } catch (const std::exception& e) {
                    throw PhaseError("reduce failed for key " + error_keys[w] + ": " + e.what());
                }
            }
        }
    }

    std::vector<Out> out;
    {
        std::size_t total = 0;
        for (const auto& go : group_out) {
            total += go.size();
        }
        out.reserve(total);
        for (auto& go : group_out) {
            std::move(go.begin(), go.end(), std::back_inserter(out));
        }
    }
    return out;
}

}  // namespace dyndist::mr
