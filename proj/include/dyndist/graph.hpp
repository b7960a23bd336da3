#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyndist {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;
using ExternalId = std::int64_t;

/// Canonical undirected edge, endpoints ordered u < v.
struct EdgeKey {
    Vertex u;
    Vertex v;

    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

inline EdgeKey make_edge_key(Vertex a, Vertex b) {
    return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

inline std::ostream& operator<<(std::ostream& os, const EdgeKey& key) {
    return os << '(' << key.u << ',' << key.v << ')';
}

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The input contained no usable edges at all.
struct EmptyInputError : ParseError {
    using ParseError::ParseError;
};

/// What the loader dropped or rewrote while ingesting an edge list.
struct LoadReport {
    std::int64_t lines_read = 0;
    std::int64_t self_loops_dropped = 0;
    std::int64_t duplicates_dropped = 0;
};

// Immutable undirected simple graph. Vertices are remapped to dense internal
// ids [0, n) in ascending order of their external ids, so an input that is
// already dense keeps its numbering. Neighbor lists are sorted and symmetric.
class Graph {
public:
    Graph() = default;

    static Graph from_edge_list(std::istream& in, LoadReport* report = nullptr);
    static Graph from_edge_list_file(const std::string& path, LoadReport* report = nullptr);
    /// Build directly from (external u, external v) pairs; same cleanup rules.
    static Graph from_pairs(const std::vector<std::pair<ExternalId, ExternalId>>& pairs,
                            LoadReport* report = nullptr);

    Vertex vertex_count() const { return n_; }
    EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }

    int degree(Vertex u) const { return offsets_[u + 1] - offsets_[u]; }

    std::span<const Vertex> neighbors(Vertex u) const {
        return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
    }
    /// Edge ids parallel to neighbors(u).
    std::span<const EdgeId> incident_edges(Vertex u) const {
        return {adj_edge_.data() + offsets_[u], adj_edge_.data() + offsets_[u + 1]};
    }

    const EdgeKey& edge(EdgeId e) const { return edges_[e]; }
    std::span<const EdgeKey> edges() const { return edges_; }

    /// Id of a canonical edge, or -1 when (u, v) is not an edge.
    EdgeId edge_id(const EdgeKey& key) const;

    /// Start of u's slice in the flattened adjacency arrays.
    std::int32_t adjacency_offset(Vertex u) const { return offsets_[u]; }

    ExternalId external_id(Vertex u) const { return external_[u]; }
    /// Internal id for an external id, or -1 if the vertex is unknown.
    Vertex internal_id(ExternalId ext) const;

private:
    Vertex n_ = 0;
    std::vector<std::int32_t> offsets_;
    std::vector<Vertex> adj_;
    std::vector<EdgeId> adj_edge_;
    std::vector<EdgeKey> edges_;
    std::vector<ExternalId> external_;
};

/// Jaccard distance over closed neighborhoods for every edge, indexed by EdgeId.
std::vector<double> jaccard_init(const Graph& g);

/// Per-vertex neighbor list annotated with current edge distances.
struct NeighborDist {
    Vertex v;
    double d;

    friend bool operator==(const NeighborDist&, const NeighborDist&) = default;
};

/// Star graph record: a center vertex plus its sorted (neighbor, distance) list.
struct StarGraph {
    Vertex center = -1;
    std::vector<NeighborDist> neighbors;
};

// Flat per-iteration materialization of all star graphs for one distance
// snapshot, plus each vertex's total (1 - d) neighbor weight.
class StarStore {
public:
    StarStore(const Graph& g, std::span<const double> dist);

    std::span<const NeighborDist> star(Vertex u) const {
        return {flat_.data() + g_->adjacency_offset(u),
                static_cast<std::size_t>(g_->degree(u))};
    }
    double weight_sum(Vertex u) const { return wsum_[u]; }

private:
    const Graph* g_;
    std::vector<NeighborDist> flat_;
    std::vector<double> wsum_;
};

}  // namespace dyndist
