#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dyndist/graph.hpp"
#include "dyndist/window.hpp"

namespace dyndist {

/// The three dynamic interactions of one edge for one iteration.
struct InteractionTerms {
    double di = 0.0;
    double ci = 0.0;
    double ei = 0.0;

    double total() const { return di + ci + ei; }
};

/// sin(1-d)/deg(u) + sin(1-d)/deg(v), sine in radians.
double direct_interaction(double d, int deg_u, int deg_v);

// Attraction from common neighbors, found by a merged scan of the two sorted
// stars. Each side is normalized by its closed neighborhood size (deg + 1).
double common_interaction(std::span<const NeighborDist> star_u,
                          std::span<const NeighborDist> star_v, int deg_u, int deg_v);

// Similarity of two unconnected vertices: common-neighbor weight over the
// combined closed-neighborhood weight of both endpoints (each side's own
// zero-distance self term contributes 1 to the denominator).
double similarity(std::span<const NeighborDist> star_x, std::span<const NeighborDist> star_u,
                  double weight_sum_x, double weight_sum_u);

/// Influence factor of an unconnected vertex: theta above the cohesion
/// threshold attracts as-is, below it repels by theta - lambda.
double exclusive_influence(double theta, double lambda);

/// Full interaction triple of edge (u, v) against one distance snapshot.
InteractionTerms compute_edge_interactions(const Graph& g, const StarStore& stars, Vertex u,
                                           Vertex v, double d_uv, double lambda);

/// Per-iteration record of (edge, delta) pairs, one vector per iteration.
using IterationTrace = std::vector<std::vector<std::pair<EdgeId, double>>>;

struct IterationStats {
    int t = 0;
    EdgeId live_before = 0;
    EdgeId converged_to_zero = 0;
    EdgeId converged_to_one = 0;
    EdgeId forced_zero = 0;
    EdgeId forced_one = 0;
};

// Mutable cross-iteration state: distances, convergence flags, windows and
// the live (non-converged) edge set. The iteration counter t is global and
// shared between the partitioned phases and the sequential fallback.
struct DynamicsState {
    std::vector<double> dist;
    std::vector<std::uint8_t> converged;
    std::vector<SlidingWindow> windows;
    std::vector<EdgeId> live;
    int t = 0;

    static DynamicsState from_distances(std::vector<double> initial, const WindowPolicy& policy);

    EdgeId live_count() const { return static_cast<EdgeId>(live.size()); }
    bool all_converged() const { return live.empty(); }
};

/// Interactions of every given live edge, all read from the same snapshot.
std::vector<InteractionTerms> compute_interactions(const Graph& g, std::span<const double> dist,
                                                   std::span<const EdgeId> live, double lambda);

// Applies one synchronous update: d^{t+1} = d^t - delta, window recording and
// forcing, then clamping to [0, 1]. Newly converged edges leave the live set.
IterationStats apply_updates(DynamicsState& state, std::span<const InteractionTerms> terms,
                             const WindowPolicy& policy, IterationTrace* trace);

/// One full synchronous iteration (compute + apply).
IterationStats sequential_step(const Graph& g, DynamicsState& state, double lambda,
                               const WindowPolicy& policy, IterationTrace* trace = nullptr);

struct LoopResult {
    int steps = 0;
    bool non_converged = false;
};

/// Iterates sequential_step until every edge converged or max_iters total
/// iterations were reached (counting iterations already in state.t).
LoopResult run_convergence_loop(const Graph& g, DynamicsState& state, double lambda,
                                const WindowPolicy& policy, int max_iters,
                                std::vector<IterationStats>* stats = nullptr,
                                IterationTrace* trace = nullptr);

}  // namespace dyndist
