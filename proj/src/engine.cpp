#include "dyndist/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dyndist/mr.hpp"

namespace dyndist {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::kSequential:
            return "sequential";
        case Mode::kWindowed:
            return "windowed";
        case Mode::kPartitioned:
            return "partitioned";
    }
    return "unknown";
}

std::optional<Mode> mode_from_string(const std::string& name) {
    if (name == "sequential") {
        return Mode::kSequential;
    }
    if (name == "windowed") {
        return Mode::kWindowed;
    }
    if (name == "partitioned") {
        return Mode::kPartitioned;
    }
    return std::nullopt;
}

std::vector<StarGraph> mr1_star_graphs(std::span<const EdgeDistanceRecord> edges,
                                       unsigned workers) {
    return mr::run_phase<Vertex, NeighborDist, StarGraph>(
        edges,
        [](const EdgeDistanceRecord& rec, mr::Emitter<Vertex, NeighborDist>& out) {
            out.emit(rec.edge.u, NeighborDist{rec.edge.v, rec.d});
            out.emit(rec.edge.v, NeighborDist{rec.edge.u, rec.d});
        },
        [](const Vertex& center, std::span<NeighborDist> values, std::vector<StarGraph>& out) {
            StarGraph star;
            star.center = center;
            star.neighbors.assign(values.begin(), values.end());
            std::sort(star.neighbors.begin(), star.neighbors.end(),
                      [](const NeighborDist& a, const NeighborDist& b) { return a.v < b.v; });
            out.push_back(std::move(star));
        },
        workers);
}

std::vector<InteractionPartial> mr2_interactions(std::span<const StarGraph> stars,
                                                 const PartitionScheme& scheme, const Graph& g,
                                                 double lambda, unsigned workers) {
    return mr::run_phase<SubgraphKey, StarGraph, InteractionPartial>(
        stars,
        [&scheme](const StarGraph& star, mr::Emitter<SubgraphKey, StarGraph>& out) {
            std::vector<SubgraphKey> keys;
            for (const NeighborDist& nd : star.neighbors) {
                auto sub = find_subgraphs(star.center, nd.v, scheme);
                keys.insert(keys.end(), sub.begin(), sub.end());
            }
            std::sort(keys.begin(), keys.end());
            keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
            for (const SubgraphKey& key : keys) {
                out.emit(key, star);
            }
        },
        [&scheme, &g, lambda](const SubgraphKey& key, std::span<StarGraph> values,
                              std::vector<InteractionPartial>& out) {
            auto partials = reduce_subgraph(key, values, scheme, g, lambda);
            out.insert(out.end(), partials.begin(), partials.end());
        },
        workers);
}

std::vector<EdgeUpdate> mr3_update(std::span<const Mr3Record> records,
                                   const WindowPolicy& policy, int t, unsigned workers) {
    return mr::run_phase<EdgeKey, Mr3Value, EdgeUpdate>(
        records,
        [](const Mr3Record& rec, mr::Emitter<EdgeKey, Mr3Value>& out) {
            out.emit(rec.edge, rec.value);
        },
        [&policy, t](const EdgeKey& key, std::span<Mr3Value> values,
                     std::vector<EdgeUpdate>& out) {
            int distances = 0;
            int windows = 0;
            double d_old = 0.0;
            SlidingWindow window;
            std::vector<const Mr3Value*> partials;
            for (const Mr3Value& value : values) {
                switch (value.kind) {
                    case Mr3Value::Kind::kDistance:
                        ++distances;
                        d_old = value.value;
                        break;
                    case Mr3Value::Kind::kWindow:
                        ++windows;
                        window = value.window;
                        break;
                    case Mr3Value::Kind::kPartial:
                        partials.push_back(&value);
                        break;
                }
            }
            if (distances != 1) {
                throw IntegrityError(distances == 0
                                         ? "partial sums arrived without a distance record"
                                         : "duplicate distance records for one edge");
            }
            if (d_old == 0.0 || d_old == 1.0) {
                return;  // already converged, nothing to process
            }
            if (partials.empty()) {
                throw IntegrityError("live edge received no partial sums");
            }
            if (policy.enabled() && windows != 1) {
                throw IntegrityError(windows == 0 ? "live edge is missing its window record"
                                                  : "duplicate window records for one edge");
            }
            std::sort(partials.begin(), partials.end(),
                      [](const Mr3Value* a, const Mr3Value* b) { return a->origin < b->origin; });
            double delta = 0.0;
            for (const Mr3Value* partial : partials) {
                delta += partial->value;
            }

            EdgeUpdate update;
            update.edge = key;
            update.delta = delta;
            double d_new = d_old - delta;
            if (policy.enabled()) {
                window.record(d_new > d_old, t);
                switch (window.decide(policy, t)) {
                    case WindowDecision::kForceOne:
                        d_new = 1.0;
                        update.forced_one = true;
                        break;
                    case WindowDecision::kForceZero:
                        d_new = 0.0;
                        update.forced_zero = true;
                        break;
                    case WindowDecision::kNone:
                        break;
                }
            }
            if (d_new >= 1.0) {
                d_new = 1.0;
            }
            if (d_new <= 0.0) {
                d_new = 0.0;
            }
            update.d_new = d_new;
            update.converged = d_new == 0.0 || d_new == 1.0;
            update.window = std::move(window);
            out.push_back(std::move(update));
        },
        workers);
}

namespace {

// One pipeline iteration: star generation, partial interactions, update.
IterationStats pipeline_iteration(const Graph& g, const PartitionScheme& scheme,
                                  DynamicsState& state, const RunConfig& config,
                                  const WindowPolicy& policy, PhaseTimings& timings,
                                  IterationTrace* trace) {
    auto start = Clock::now();
    std::vector<EdgeDistanceRecord> edge_records;
    edge_records.reserve(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        edge_records.push_back(EdgeDistanceRecord{g.edge(e), state.dist[e]});
    }
    auto stars = mr1_star_graphs(edge_records, config.workers);
    timings.mr1_ms += ms_since(start);

    start = Clock::now();
    auto partials = mr2_interactions(stars, scheme, g, config.lambda, config.workers);
    timings.mr2_ms += ms_since(start);

    std::int64_t expected = expected_emission_count(g, scheme, state.live);
    if (static_cast<std::int64_t>(partials.size()) != expected) {
        throw IntegrityError("partial sum record count " + std::to_string(partials.size()) +
                             " does not match the exact emission count " +
                             std::to_string(expected));
    }

    start = Clock::now();
    std::vector<Mr3Record> records;
    records.reserve(partials.size() + 2 * state.live.size());
    for (const InteractionPartial& partial : partials) {
        Mr3Value value;
        value.kind = Mr3Value::Kind::kPartial;
        value.value = partial.s_i;
        value.origin = partial.origin;
        records.push_back(Mr3Record{partial.edge, std::move(value)});
    }
    for (EdgeId e : state.live) {
        Mr3Value dist_value;
        dist_value.kind = Mr3Value::Kind::kDistance;
        dist_value.value = state.dist[e];
        records.push_back(Mr3Record{g.edge(e), std::move(dist_value)});
        if (policy.enabled()) {
            Mr3Value window_value;
            window_value.kind = Mr3Value::Kind::kWindow;
            window_value.window = state.windows[e];
            records.push_back(Mr3Record{g.edge(e), std::move(window_value)});
        }
    }
    auto updates = mr3_update(records, policy, state.t, config.workers);
    timings.mr3_ms += ms_since(start);

    if (updates.size() != state.live.size()) {
        throw IntegrityError("update phase returned " + std::to_string(updates.size()) +
                             " records for " + std::to_string(state.live.size()) +
                             " live edges");
    }

    IterationStats stats;
    stats.t = state.t;
    stats.live_before = state.live_count();
    if (trace) {
        trace->emplace_back();
        trace->back().reserve(updates.size());
    }
    for (EdgeUpdate& update : updates) {
        EdgeId e = g.edge_id(update.edge);
        if (e < 0) {
            throw IntegrityError("update for unknown edge");
        }
        if (trace) {
            trace->back().emplace_back(e, update.delta);
        }
        state.dist[e] = update.d_new;
        if (policy.enabled()) {
            state.windows[e] = std::move(update.window);
        }
        if (update.converged) {
            state.converged[e] = 1;
            if (update.d_new == 0.0) {
                ++stats.converged_to_zero;
            } else {
                ++stats.converged_to_one;
            }
        }
        stats.forced_zero += update.forced_zero ? 1 : 0;
        stats.forced_one += update.forced_one ? 1 : 0;
    }
    std::erase_if(state.live, [&state](EdgeId e) { return state.converged[e] != 0; });
    ++state.t;
    return stats;
}

void maybe_checkpoint(const Graph& g, const RunConfig& config, const DynamicsState& state,
                      const WindowPolicy& policy, int mr_iters, int fb_iters) {
    if (config.checkpoint_path.empty()) {
        return;
    }
    Checkpoint cp;
    cp.state = state;
    cp.mr_iterations = mr_iters;
    cp.fallback_iterations = fb_iters;
    cp.policy = policy;
    save_checkpoint_file(config.checkpoint_path, g, cp);
}

}  // namespace

RunResult detect_communities(const Graph& g, const RunConfig& config, IterationTrace* trace) {
    WindowPolicy policy = config.window_policy();
    DynamicsState state = DynamicsState::from_distances(jaccard_init(g), policy);
    return detect_communities_from(g, config, std::move(state), 0, 0, trace);
}

RunResult detect_communities_from(const Graph& g, const RunConfig& config, DynamicsState state,
                                  int mr_iterations, int fallback_iterations,
                                  IterationTrace* trace) {
    auto total_start = Clock::now();
    if (config.lambda < 0.0 || config.lambda > 1.0) {
        throw ConfigError("lambda must lie in [0, 1]");
    }
    if (config.tau < 0.0 || config.tau > 1.0) {
        throw ConfigError("tau must lie in [0, 1]");
    }
    if (config.window_size < 0) {
        throw ConfigError("window size must be non-negative");
    }
    if (config.gamma < 0) {
        throw ConfigError("gamma must be non-negative");
    }
    if (config.max_iters < 1) {
        throw ConfigError("max_iters must be at least 1");
    }
    WindowPolicy policy = config.window_policy();
    if (state.dist.size() != static_cast<std::size_t>(g.edge_count())) {
        throw ConfigError("resumed state does not cover the graph's edge set");
    }
    if (policy.enabled() && (state.windows.size() != state.dist.size() ||
                             state.windows.front().size() != policy.size)) {
        throw ConfigError(
            "resumed window state does not match the configured sliding window");
    }
    RunResult result;
    result.mr_iterations = mr_iterations;
    result.fallback_iterations = fallback_iterations;

    bool use_pipeline = config.mode == Mode::kPartitioned && config.partitions >= 3;
    std::optional<PartitionScheme> scheme;
    if (use_pipeline) {
        scheme.emplace(g.vertex_count(), config.partitions);
    }

    while (!state.all_converged() && state.t < config.max_iters) {
        bool fall_back = !use_pipeline ||
                         (config.gamma > 0 && state.live_count() < config.gamma);
        if (fall_back) {
            // Master-node stage: sequential loop over the remaining live
            // edges; converged distances stay visible to the interactions.
            auto start = Clock::now();
            int before = state.t;
            while (!state.all_converged() && state.t < config.max_iters) {
                result.iteration_stats.push_back(
                    sequential_step(g, state, config.lambda, policy, trace));
                maybe_checkpoint(g, config, state, policy, result.mr_iterations,
                                 result.fallback_iterations + (state.t - before));
            }
            result.fallback_iterations += state.t - before;
            result.timings.fallback_ms += ms_since(start);
            break;
        }
        result.iteration_stats.push_back(
            pipeline_iteration(g, *scheme, state, config, policy, result.timings, trace));
        ++result.mr_iterations;
        maybe_checkpoint(g, config, state, policy, result.mr_iterations,
                         result.fallback_iterations);
    }

    result.distances = std::move(state.dist);
    result.iterations = state.t;
    result.non_converged = !state.live.empty();
    for (const IterationStats& stats : result.iteration_stats) {
        result.forced_zero += stats.forced_zero;
        result.forced_one += stats.forced_one;
    }
    result.timings.total_ms = ms_since(total_start);
    return result;
}

// ---- Checkpointing ----

void save_checkpoint(std::ostream& out, const Graph& g, const Checkpoint& cp) {
    out << "dyndist-checkpoint 1\n";
    out << "iters " << cp.state.t << ' ' << cp.mr_iterations << ' ' << cp.fallback_iterations
        << '\n';
    out << "window " << cp.policy.size << ' ' << cp.policy.tau << '\n';
    out << "edges " << g.edge_count() << '\n';
    char buf[64];
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const EdgeKey& k = g.edge(e);
        std::snprintf(buf, sizeof buf, "%.17g", cp.state.dist[e]);
        out << g.external_id(k.u) << ' ' << g.external_id(k.v) << ' ' << buf << ' '
            << int(cp.state.converged[e]);
        if (cp.policy.enabled()) {
            out << ' ' << cp.state.windows[e].serialize();
        }
        out << '\n';
    }
}

void save_checkpoint_file(const std::string& path, const Graph& g, const Checkpoint& cp) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write checkpoint file: " + path);
    }
    save_checkpoint(out, g, cp);
}

Checkpoint load_checkpoint(std::istream& in, const Graph& g) {
    Checkpoint cp;
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "dyndist-checkpoint" || version != 1) {
        throw std::runtime_error("unrecognized checkpoint header");
    }
    cp.format_version = version;
    std::string tag;
    in >> tag >> cp.state.t >> cp.mr_iterations >> cp.fallback_iterations;
    if (tag != "iters") {
        throw std::runtime_error("malformed checkpoint: expected iters");
    }
    in >> tag >> cp.policy.size >> cp.policy.tau;
    if (tag != "window") {
        throw std::runtime_error("malformed checkpoint: expected window");
    }
    EdgeId m = 0;
    in >> tag >> m;
    if (tag != "edges" || m != g.edge_count()) {
        throw std::runtime_error("checkpoint does not match the loaded graph");
    }
    in.ignore();
    cp.state.dist.assign(m, 0.0);
    cp.state.converged.assign(m, 0);
    if (cp.policy.enabled()) {
        cp.state.windows.assign(m, SlidingWindow(cp.policy.size));
    }
    std::string line;
    for (EdgeId i = 0; i < m; ++i) {
        if (!std::getline(in, line)) {
            throw std::runtime_error("checkpoint truncated");
        }
        std::istringstream ls(line);
        ExternalId eu, ev;
        double d;
        int conv;
        ls >> eu >> ev >> d >> conv;
        if (!ls) {
            throw std::runtime_error("malformed checkpoint edge line");
        }
        Vertex u = g.internal_id(eu);
        Vertex v = g.internal_id(ev);
        if (u < 0 || v < 0) {
            throw std::runtime_error("checkpoint edge not present in graph");
        }
        EdgeId e = g.edge_id(make_edge_key(u, v));
        if (e < 0) {
            throw std::runtime_error("checkpoint edge not present in graph");
        }
        cp.state.dist[e] = d;
        cp.state.converged[e] = static_cast<std::uint8_t>(conv);
        if (cp.policy.enabled()) {
            std::string rest;
            std::getline(ls, rest);
            cp.state.windows[e] = SlidingWindow::deserialize(rest);
        }
    }
    for (EdgeId e = 0; e < m; ++e) {
        if (!cp.state.converged[e]) {
            cp.state.live.push_back(e);
        }
    }
    return cp;
}

Checkpoint load_checkpoint_file(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open checkpoint file: " + path);
    }
    return load_checkpoint(in, g);
}

}  // namespace dyndist
