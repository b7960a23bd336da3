#include "dyndist/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace dyndist {

double direct_interaction(double d, int deg_u, int deg_v) {
    double f = std::sin(1.0 - d);
    return f / deg_u + f / deg_v;
}

double common_interaction(std::span<const NeighborDist> star_u,
                          std::span<const NeighborDist> star_v, int deg_u, int deg_v) {
    double ci = 0.0;
    std::size_t i = 0, j = 0;
    while (i < star_u.size() && j < star_v.size()) {
        if (star_u[i].v == star_v[j].v) {
            double w1 = 1.0 - star_u[i].d;  // weight of (u, c)
            double w2 = 1.0 - star_v[j].d;  // weight of (v, c)
            ci += w2 * std::sin(w1) / (deg_u + 1) + w1 * std::sin(w2) / (deg_v + 1);
            ++i, ++j;
        } else if (star_u[i].v < star_v[j].v) {
            ++i;
        } else {
            ++j;
        }
    }
    return ci;
}

double similarity(std::span<const NeighborDist> star_x, std::span<const NeighborDist> star_u,
                  double weight_sum_x, double weight_sum_u) {
    double num = 0.0;
    std::size_t i = 0, j = 0;
    while (i < star_x.size() && j < star_u.size()) {
        if (star_x[i].v == star_u[j].v) {
            num += (1.0 - star_x[i].d) + (1.0 - star_u[j].d);
            ++i, ++j;
        } else if (star_x[i].v < star_u[j].v) {
            ++i;
        } else {
            ++j;
        }
    }
    double den = weight_sum_x + weight_sum_u + 2.0;
    if (den <= 0.0) {
        return 0.0;
    }
    return num / den;
}

double exclusive_influence(double theta, double lambda) {
    return theta >= lambda ? theta : theta - lambda;
}

InteractionTerms compute_edge_interactions(const Graph& g, const StarStore& stars, Vertex u,
                                           Vertex v, double d_uv, double lambda) {
    int deg_u = g.degree(u);
    int deg_v = g.degree(v);
    auto star_u = stars.star(u);
    auto star_v = stars.star(v);

    InteractionTerms terms;
    terms.di = direct_interaction(d_uv, deg_u, deg_v);

    // One merged scan splits both stars into common and exclusive neighbors.
    // Exclusive sums are accumulated per side in ascending neighbor order.
    double ci = 0.0;
    double ei_v_side = 0.0;  // x in EN(v), wedge (u, v, x)
    double ei_u_side = 0.0;  // y in EN(u), wedge (v, u, y)
    std::size_t i = 0, j = 0;
    auto exclusive_of_u = [&](const NeighborDist& y) {
        if (y.v == v) {
            return;
        }
        double theta = similarity(stars.star(y.v), star_v, stars.weight_sum(y.v),
                                  stars.weight_sum(v));
        ei_u_side += exclusive_influence(theta, lambda) * std::sin(1.0 - y.d) / deg_u;
    };
    auto exclusive_of_v = [&](const NeighborDist& x) {
        if (x.v == u) {
            return;
        }
        double theta = similarity(stars.star(x.v), star_u, stars.weight_sum(x.v),
                                  stars.weight_sum(u));
        ei_v_side += exclusive_influence(theta, lambda) * std::sin(1.0 - x.d) / deg_v;
    };
    while (i < star_u.size() && j < star_v.size()) {
        if (star_u[i].v == star_v[j].v) {
            double w1 = 1.0 - star_u[i].d;
            double w2 = 1.0 - star_v[j].d;
            ci += w2 * std::sin(w1) / (deg_u + 1) + w1 * std::sin(w2) / (deg_v + 1);
            ++i, ++j;
        } else if (star_u[i].v < star_v[j].v) {
            exclusive_of_u(star_u[i]);
            ++i;
        } else {
            exclusive_of_v(star_v[j]);
            ++j;
        }
    }
    for (; i < star_u.size(); ++i) {
        exclusive_of_u(star_u[i]);
    }
    for (; j < star_v.size(); ++j) {
        exclusive_of_v(star_v[j]);
    }
    terms.ci = ci;
    terms.ei = ei_v_side + ei_u_side;
    return terms;
}

DynamicsState DynamicsState::from_distances(std::vector<double> initial,
                                            const WindowPolicy& policy) {
    DynamicsState state;
    state.dist = std::move(initial);
    state.converged.resize(state.dist.size());
    if (policy.enabled()) {
        state.windows.assign(state.dist.size(), SlidingWindow(policy.size));
    }
    state.live.reserve(state.dist.size());
    for (EdgeId e = 0; e < static_cast<EdgeId>(state.dist.size()); ++e) {
        bool conv = state.dist[e] == 0.0 || state.dist[e] == 1.0;
        state.converged[e] = conv;
        if (!conv) {
            state.live.push_back(e);
        }
    }
    return state;
}

std::vector<InteractionTerms> compute_interactions(const Graph& g, std::span<const double> dist,
                                                   std::span<const EdgeId> live, double lambda) {
    StarStore stars(g, dist);
    std::vector<InteractionTerms> terms(live.size());
    for (std::size_t i = 0; i < live.size(); ++i) {
        const EdgeKey& k = g.edge(live[i]);
        terms[i] = compute_edge_interactions(g, stars, k.u, k.v, dist[live[i]], lambda);
    }
    return terms;
}

IterationStats apply_updates(DynamicsState& state, std::span<const InteractionTerms> terms,
                             const WindowPolicy& policy, IterationTrace* trace) {
    IterationStats stats;
    stats.t = state.t;
    stats.live_before = state.live_count();
    if (trace) {
        trace->emplace_back();
        trace->back().reserve(state.live.size());
    }
    for (std::size_t i = 0; i < state.live.size(); ++i) {
        EdgeId e = state.live[i];
        double delta = terms[i].total();
        double d_old = state.dist[e];
        double d_new = d_old - delta;
        if (trace) {
            trace->back().emplace_back(e, delta);
        }
        if (policy.enabled()) {
            state.windows[e].record(d_new > d_old, state.t);
            switch (state.windows[e].decide(policy, state.t)) {
                case WindowDecision::kForceOne:
                    d_new = 1.0;
                    ++stats.forced_one;
                    break;
                case WindowDecision::kForceZero:
                    d_new = 0.0;
                    ++stats.forced_zero;
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
        state.dist[e] = d_new;
        if (d_new == 0.0 || d_new == 1.0) {
            state.converged[e] = 1;
            if (d_new == 0.0) {
                ++stats.converged_to_zero;
            } else {
                ++stats.converged_to_one;
            }
        }
    }
    std::erase_if(state.live, [&state](EdgeId e) { return state.converged[e] != 0; });
    ++state.t;
    return stats;
}

IterationStats sequential_step(const Graph& g, DynamicsState& state, double lambda,
                               const WindowPolicy& policy, IterationTrace* trace) {
    auto terms = compute_interactions(g, state.dist, state.live, lambda);
    return apply_updates(state, terms, policy, trace);
}

LoopResult run_convergence_loop(const Graph& g, DynamicsState& state, double lambda,
                                const WindowPolicy& policy, int max_iters,
                                std::vector<IterationStats>* stats, IterationTrace* trace) {
    LoopResult result;
    while (!state.all_converged() && state.t < max_iters) {
        IterationStats step = sequential_step(g, state, lambda, policy, trace);
        if (stats) {
            stats->push_back(step);
        }
        ++result.steps;
    }
    result.non_converged = !state.all_converged();
    return result;
}

}  // namespace dyndist
