#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "dyndist/graph.hpp"

namespace dyndist {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Assignment of every vertex to one of p partitions. The default hash is
// modulo over the internal dense id; any total assignment can be supplied.
class PartitionScheme {
public:
    PartitionScheme(Vertex n, int p);
    PartitionScheme(std::vector<int> assignment, int p);
    PartitionScheme(Vertex n, int p, const std::function<int(Vertex)>& hash);

    int partition_count() const { return p_; }
    int part_of(Vertex u) const { return part_[u]; }
    Vertex vertex_count() const { return static_cast<Vertex>(part_.size()); }

private:
    void validate() const;

    int p_;
    std::vector<int> part_;
};

/// Sorted partition triple identifying one overlapping subgraph.
struct SubgraphKey {
    int i;
    int j;
    int k;

    friend auto operator<=>(const SubgraphKey&, const SubgraphKey&) = default;

    bool contains(int part) const { return part == i || part == j || part == k; }
};

inline std::ostream& operator<<(std::ostream& os, const SubgraphKey& key) {
    return os << '(' << key.i << ',' << key.j << ',' << key.k << ')';
}

SubgraphKey make_subgraph_key(int a, int b, int c);

/// All subgraph triples containing both endpoint partitions, ascending.
/// (p-1)(p-2)/2 triples for an inner edge, p-2 for an outer edge.
std::vector<SubgraphKey> find_subgraphs_for_parts(int pu, int pv, int p);
std::vector<SubgraphKey> find_subgraphs(Vertex u, Vertex v, const PartitionScheme& scheme);

/// Reciprocal of the number of subgraphs an edge appears in.
double scale_edge(int pu, int pv, int p);
/// Reciprocal of the number of subgraphs a triangle appears in.
double scale_triangle(int pu, int pv, int pc, int p);
/// Reciprocal of the number of subgraphs a wedge appears in.
double scale_wedge(int pu, int pv, int px, int p);

/// One scaled partial interaction sum emitted by a subgraph reduce.
struct InteractionPartial {
    EdgeKey edge;
    double s_i;
    SubgraphKey origin;
};

// Reduce step of one subgraph: reconstructs the main-edge set from the routed
// star graphs and emits a scaled DI + CI + EI partial for every non-converged
// main edge, in ascending edge order. Throws IntegrityError when a required
// star is missing from the routed set.
std::vector<InteractionPartial> reduce_subgraph(const SubgraphKey& key,
                                                std::span<const StarGraph> stars,
                                                const PartitionScheme& scheme, const Graph& g,
                                                double lambda);

/// Exact number of partials all subgraphs emit for the given live edges.
std::int64_t expected_emission_count(const Graph& g, const PartitionScheme& scheme,
                                     std::span<const EdgeId> live);

}  // namespace dyndist
