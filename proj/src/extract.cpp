#include "dyndist/extract.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace dyndist {

CommunityPartition extract_communities(const Graph& g, std::span<const double> distances) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (distances[e] != 0.0 && distances[e] != 1.0) {
            throw std::invalid_argument("cannot extract communities: edge " +
                                        std::to_string(e) + " has non-converged distance");
        }
    }

    CommunityPartition partition;
    partition.community_of.assign(g.vertex_count(), -1);

    int next = 0;
    std::deque<Vertex> queue;
    // Scanning start vertices in ascending order makes community ids ascend
    // with the smallest member.
    for (Vertex start = 0; start < g.vertex_count(); ++start) {
        if (partition.community_of[start] >= 0) {
            continue;
        }
        int community = next++;
        partition.members.emplace_back();
        partition.community_of[start] = community;
        queue.push_back(start);
        while (!queue.empty()) {
            Vertex u = queue.front();
            queue.pop_front();
            partition.members[community].push_back(u);
            auto nbrs = g.neighbors(u);
            auto eids = g.incident_edges(u);
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                if (distances[eids[i]] < 1.0 && partition.community_of[nbrs[i]] < 0) {
                    partition.community_of[nbrs[i]] = community;
                    queue.push_back(nbrs[i]);
                }
            }
        }
        std::sort(partition.members[community].begin(), partition.members[community].end());
    }
    return partition;
}

std::string format_communities(const CommunityPartition& partition, const Graph& g) {
    std::ostringstream out;
    for (const auto& members : partition.members) {
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (i > 0) {
                out << ' ';
            }
            out << g.external_id(members[i]);
        }
        out << '\n';
    }
    return out.str();
}

std::string format_assignment(const CommunityPartition& partition, const Graph& g) {
    std::ostringstream out;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        out << g.external_id(u) << ' ' << partition.community_of[u] << '\n';
    }
    return out.str();
}

}  // namespace dyndist
