#pragma once

#include <span>
#include <string>
#include <vector>

#include "dyndist/graph.hpp"

namespace dyndist {

// Final partition of the vertex set. Community ids are dense and assigned in
// ascending order of each community's smallest member vertex.
struct CommunityPartition {
    std::vector<int> community_of;           // by internal vertex id
    std::vector<std::vector<Vertex>> members;  // sorted members per community

    int community_count() const { return static_cast<int>(members.size()); }
};

// Connected components of the subgraph of zero-distance edges, via breadth
// first search. Every distance must be exactly 0 or 1; vertices with no
// remaining edge become singleton communities.
CommunityPartition extract_communities(const Graph& g, std::span<const double> distances);

/// One line per community: space-separated external vertex ids.
std::string format_communities(const CommunityPartition& partition, const Graph& g);

/// "external_vertex_id community_id" per line.
std::string format_assignment(const CommunityPartition& partition, const Graph& g);

}  // namespace dyndist
