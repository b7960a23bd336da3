#include "dyndist/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "dyndist/dynamics.hpp"

namespace dyndist {

PartitionScheme::PartitionScheme(Vertex n, int p) : p_(p), part_(n) {
    for (Vertex u = 0; u < n; ++u) {
        part_[u] = static_cast<int>(u % p);
    }
    validate();
}

PartitionScheme::PartitionScheme(std::vector<int> assignment, int p)
    : p_(p), part_(std::move(assignment)) {
    validate();
}

PartitionScheme::PartitionScheme(Vertex n, int p, const std::function<int(Vertex)>& hash)
    : p_(p), part_(n) {
    for (Vertex u = 0; u < n; ++u) {
        part_[u] = hash(u);
    }
    validate();
}

void PartitionScheme::validate() const {
    if (p_ < 3) {
        throw ConfigError("partition count must be at least 3, got " + std::to_string(p_));
    }
    for (int part : part_) {
        if (part < 0 || part >= p_) {
            throw ConfigError("partition assignment out of range [0, " + std::to_string(p_) +
                              "): " + std::to_string(part));
        }
    }
}

SubgraphKey make_subgraph_key(int a, int b, int c) {
    if (a > b) {
        std::swap(a, b);
    }
    if (b > c) {
        std::swap(b, c);
    }
    if (a > b) {
        std::swap(a, b);
    }
    return SubgraphKey{a, b, c};
}

std::vector<SubgraphKey> find_subgraphs_for_parts(int pu, int pv, int p) {
    std::vector<SubgraphKey> keys;
    if (pu == pv) {
        keys.reserve((p - 1) * (p - 2) / 2);
        for (int a = 0; a < p; ++a) {
            if (a == pu) {
                continue;
            }
            for (int b = a + 1; b < p; ++b) {
                if (b == pu) {
                    continue;
                }
                keys.push_back(make_subgraph_key(a, b, pu));
            }
        }
    } else {
        keys.reserve(p - 2);
        for (int a = 0; a < p; ++a) {
            if (a == pu || a == pv) {
                continue;
            }
            keys.push_back(make_subgraph_key(a, pu, pv));
        }
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

std::vector<SubgraphKey> find_subgraphs(Vertex u, Vertex v, const PartitionScheme& scheme) {
    return find_subgraphs_for_parts(scheme.part_of(u), scheme.part_of(v),
                                    scheme.partition_count());
}

double scale_edge(int pu, int pv, int p) {
    if (pu == pv) {
        return 2.0 / (static_cast<double>(p - 1) * (p - 2));
    }
    return 1.0 / (p - 2);
}

namespace {

double scale_for_triple(int a, int b, int c, int p) {
    if (a == b && b == c) {
        return 2.0 / (static_cast<double>(p - 1) * (p - 2));
    }
    if (a == b || a == c || b == c) {
        return 1.0 / (p - 2);
    }
    return 1.0;
}

}  // namespace

double scale_triangle(int pu, int pv, int pc, int p) { return scale_for_triple(pu, pv, pc, p); }

double scale_wedge(int pu, int pv, int px, int p) { return scale_for_triple(pu, pv, px, p); }

namespace {

struct RoutedStar {
    const StarGraph* star;
    double weight_sum;
};

struct MainEdge {
    Vertex u;
    Vertex v;
    double d;

    friend auto operator<=>(const MainEdge&, const MainEdge&) = default;
};

}  // namespace

std::vector<InteractionPartial> reduce_subgraph(const SubgraphKey& key,
                                                std::span<const StarGraph> stars,
                                                const PartitionScheme& scheme, const Graph& g,
                                                double lambda) {
    const int p = scheme.partition_count();

    std::unordered_map<Vertex, RoutedStar> routed;
    routed.reserve(stars.size());
    for (const StarGraph& s : stars) {
        double wsum = 0.0;
        for (const NeighborDist& nd : s.neighbors) {
            wsum += 1.0 - nd.d;
        }
        routed[s.center] = RoutedStar{&s, wsum};
    }

    std::vector<MainEdge> main_edges;
    for (const StarGraph& s : stars) {
        if (!key.contains(scheme.part_of(s.center))) {
            continue;
        }
        for (const NeighborDist& nd : s.neighbors) {
            if (nd.v > s.center && key.contains(scheme.part_of(nd.v))) {
                main_edges.push_back(MainEdge{s.center, nd.v, nd.d});
            }
        }
    }
    std::sort(main_edges.begin(), main_edges.end());

    auto star_of = [&routed, &key](Vertex x) -> const RoutedStar& {
        auto it = routed.find(x);
        if (it == routed.end()) {
            throw IntegrityError("star graph of vertex " + std::to_string(x) +
                                 " missing from subgraph (" + std::to_string(key.i) + "," +
                                 std::to_string(key.j) + "," + std::to_string(key.k) + ")");
        }
        return it->second;
    };

    std::vector<InteractionPartial> out;
    out.reserve(main_edges.size());
    for (const MainEdge& me : main_edges) {
        if (!(0.0 < me.d && me.d < 1.0)) {
            continue;  // converged main edges carry context only
        }
        Vertex u = me.u, v = me.v;
        int pu = scheme.part_of(u), pv = scheme.part_of(v);
        int deg_u = g.degree(u), deg_v = g.degree(v);
        const RoutedStar& ru = star_of(u);
        const RoutedStar& rv = star_of(v);
        std::span<const NeighborDist> star_u = ru.star->neighbors;
        std::span<const NeighborDist> star_v = rv.star->neighbors;

        double s_i = direct_interaction(me.d, deg_u, deg_v) * scale_edge(pu, pv, p);

        // Merged scan over both full stars; only neighbors hashed into this
        // subgraph contribute, each term scaled by its own multiplicity.
        double ci = 0.0;
        double ei_v_side = 0.0;
        double ei_u_side = 0.0;
        std::size_t i = 0, j = 0;
        auto exclusive_of_u = [&](const NeighborDist& y) {
            if (y.v == v || !key.contains(scheme.part_of(y.v))) {
                return;
            }
            const RoutedStar& ry = star_of(y.v);
            double theta = similarity(ry.star->neighbors, star_v, ry.weight_sum, rv.weight_sum);
            double term = exclusive_influence(theta, lambda) * std::sin(1.0 - y.d) / deg_u;
            ei_u_side += term * scale_wedge(pv, pu, scheme.part_of(y.v), p);
        };
        auto exclusive_of_v = [&](const NeighborDist& x) {
            if (x.v == u || !key.contains(scheme.part_of(x.v))) {
                return;
            }
            const RoutedStar& rx = star_of(x.v);
            double theta = similarity(rx.star->neighbors, star_u, rx.weight_sum, ru.weight_sum);
            double term = exclusive_influence(theta, lambda) * std::sin(1.0 - x.d) / deg_v;
            ei_v_side += term * scale_wedge(pu, pv, scheme.part_of(x.v), p);
        };
        while (i < star_u.size() && j < star_v.size()) {
            if (star_u[i].v == star_v[j].v) {
                Vertex c = star_u[i].v;
                if (key.contains(scheme.part_of(c))) {
                    double w1 = 1.0 - star_u[i].d;
                    double w2 = 1.0 - star_v[j].d;
                    double term =
                        w2 * std::sin(w1) / (deg_u + 1) + w1 * std::sin(w2) / (deg_v + 1);
                    ci += term * scale_triangle(pu, pv, scheme.part_of(c), p);
                }
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

        s_i += ci + ei_v_side + ei_u_side;
        out.push_back(InteractionPartial{EdgeKey{u, v}, s_i, key});
    }
    return out;
}

std::int64_t expected_emission_count(const Graph& g, const PartitionScheme& scheme,
                                     std::span<const EdgeId> live) {
    const int p = scheme.partition_count();
    std::int64_t total = 0;
    for (EdgeId e : live) {
        const EdgeKey& k = g.edge(e);
        if (scheme.part_of(k.u) == scheme.part_of(k.v)) {
            total += static_cast<std::int64_t>(p - 1) * (p - 2) / 2;
        } else {
            total += p - 2;
        }
    }
    return total;
}

}  // namespace dyndist
