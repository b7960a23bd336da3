// Shared helpers for the test suites: a tiny deterministic RNG, random graph
// generation and naive oracles that avoid the library's merged-scan paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dyndist/graph.hpp"

namespace testsupport {

// xorshift64*; portable across standard libraries, unlike the <random>
// distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545f4914f6cdd1dull;
    }

    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    double unit() { return (next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Random simple graph with n vertices and (up to) m distinct edges.
inline dyndist::Graph random_graph(int n, int m, std::uint64_t seed) {
    Rng rng(seed);
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    int attempts = 0;
    while (static_cast<int>(pairs.size()) < m && attempts < 50 * m) {
        ++attempts;
        auto a = static_cast<std::int64_t>(rng.below(n));
        auto b = static_cast<std::int64_t>(rng.below(n));
        if (a == b) {
            continue;
        }
        if (a > b) {
            std::swap(a, b);
        }
        if (seen.insert({a, b}).second) {
            pairs.emplace_back(a, b);
        }
    }
    return dyndist::Graph::from_pairs(pairs);
}

inline std::vector<double> random_distances(const dyndist::Graph& g, Rng& rng) {
    std::vector<double> dist(g.edge_count());
    for (auto& d : dist) {
        d = 0.02 + 0.96 * rng.unit();  // strictly inside (0, 1)
    }
    return dist;
}

// ---- Naive oracles (set-based, no merged scans, no shared code paths) ----

inline std::set<dyndist::Vertex> neighbor_set(const dyndist::Graph& g, dyndist::Vertex u) {
    auto nbrs = g.neighbors(u);
    return {nbrs.begin(), nbrs.end()};
}

inline double edge_distance(const dyndist::Graph& g, const std::vector<double>& dist,
                            dyndist::Vertex a, dyndist::Vertex b) {
    auto e = g.edge_id(dyndist::make_edge_key(a, b));
    return dist[e];
}

inline double oracle_jaccard(const dyndist::Graph& g, dyndist::Vertex u, dyndist::Vertex v) {
    auto nu = neighbor_set(g, u);
    auto nv = neighbor_set(g, v);
    nu.insert(u);
    nv.insert(v);
    std::set<dyndist::Vertex> inter, uni;
    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                          std::inserter(inter, inter.end()));
    std::set_union(nu.begin(), nu.end(), nv.begin(), nv.end(), std::inserter(uni, uni.end()));
    return 1.0 - static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

inline double oracle_di(const dyndist::Graph& g, const std::vector<double>& dist,
                        dyndist::Vertex u, dyndist::Vertex v) {
    double d = edge_distance(g, dist, u, v);
    return std::sin(1.0 - d) / g.degree(u) + std::sin(1.0 - d) / g.degree(v);
}

inline double oracle_ci(const dyndist::Graph& g, const std::vector<double>& dist,
                        dyndist::Vertex u, dyndist::Vertex v) {
    auto nu = neighbor_set(g, u);
    auto nv = neighbor_set(g, v);
    double ci = 0.0;
    for (dyndist::Vertex c : nu) {
        if (!nv.count(c)) {
            continue;
        }
        double w1 = 1.0 - edge_distance(g, dist, u, c);
        double w2 = 1.0 - edge_distance(g, dist, v, c);
        ci += w2 * std::sin(w1) / (g.degree(u) + 1) + w1 * std::sin(w2) / (g.degree(v) + 1);
    }
    return ci;
}

inline double oracle_theta(const dyndist::Graph& g, const std::vector<double>& dist,
                           dyndist::Vertex x, dyndist::Vertex u) {
    auto nx = neighbor_set(g, x);
    auto nu = neighbor_set(g, u);
    double num = 0.0;
    for (dyndist::Vertex c : nx) {
        if (nu.count(c)) {
            num += (1.0 - edge_distance(g, dist, x, c)) + (1.0 - edge_distance(g, dist, u, c));
        }
    }
    double den = 2.0;  // self terms of the closed neighborhoods
    for (dyndist::Vertex k : nx) {
        den += 1.0 - edge_distance(g, dist, x, k);
    }
    for (dyndist::Vertex l : nu) {
        den += 1.0 - edge_distance(g, dist, u, l);
    }
    return den == 0.0 ? 0.0 : num / den;
}

inline double oracle_rho(double theta, double lambda) {
    return theta >= lambda ? theta : theta - lambda;
}

inline double oracle_ei(const dyndist::Graph& g, const std::vector<double>& dist,
                        dyndist::Vertex u, dyndist::Vertex v, double lambda) {
    auto nu = neighbor_set(g, u);
    auto nv = neighbor_set(g, v);
    double ei = 0.0;
    for (dyndist::Vertex x : nv) {
        if (x == u || nu.count(x)) {
            continue;  // exclusive neighbors of v only
        }
        double rho = oracle_rho(oracle_theta(g, dist, x, u), lambda);
        ei += rho * std::sin(1.0 - edge_distance(g, dist, v, x)) / g.degree(v);
    }
    for (dyndist::Vertex y : nu) {
        if (y == v || nv.count(y)) {
            continue;
        }
        double rho = oracle_rho(oracle_theta(g, dist, y, v), lambda);
        ei += rho * std::sin(1.0 - edge_distance(g, dist, u, y)) / g.degree(u);
    }
    return ei;
}

/// Path to a file under the bundled data directory.
inline std::string data_path(const std::string& name) {
#ifdef DYNDIST_DATA_DIR
    return std::string(DYNDIST_DATA_DIR) + "/" + name;
#else
    return "data/" + name;
#endif
}

}  // namespace testsupport
