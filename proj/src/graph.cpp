#include "dyndist/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace dyndist {

namespace {

// Parses "u v" edge lines. '#' starts a comment, blank lines are skipped,
// separators are any run of spaces/tabs.
std::vector<std::pair<ExternalId, ExternalId>> parse_edge_lines(std::istream& in,
                                                                LoadReport& report) {
    std::vector<std::pair<ExternalId, ExternalId>> pairs;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::int64_t tokens[2];
        int count = 0;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
                ++i;
            }
            if (i >= line.size()) {
                break;
            }
            std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
                ++i;
            }
            std::string tok = line.substr(start, i - start);
            std::int64_t value = 0;
            try {
                std::size_t pos = 0;
                value = std::stoll(tok, &pos);
                if (pos != tok.size()) {
                    throw std::invalid_argument(tok);
                }
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(lineno) + ": expected integer, got '" +
                                 tok + "'");
            }
            if (value < 0) {
                throw ParseError("line " + std::to_string(lineno) +
                                 ": negative vertex id " + tok);
            }
            if (count >= 2) {
                throw ParseError("line " + std::to_string(lineno) + ": more than two tokens");
            }
            tokens[count++] = value;
        }
        if (count == 0) {
            continue;  // blank or comment-only line
        }
        if (count == 1) {
            throw ParseError("line " + std::to_string(lineno) + ": expected two vertex ids");
        }
        report.lines_read++;
        pairs.emplace_back(tokens[0], tokens[1]);
    }
    return pairs;
}

}  // namespace

Graph Graph::from_edge_list(std::istream& in, LoadReport* report) {
    LoadReport local;
    auto pairs = parse_edge_lines(in, local);
    if (report) {
        *report = local;
    }
    return from_pairs(pairs, report);
}

Graph Graph::from_edge_list_file(const std::string& path, LoadReport* report) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open edge list file: " + path);
    }
    return from_edge_list(in, report);
}

Graph Graph::from_pairs(const std::vector<std::pair<ExternalId, ExternalId>>& pairs,
                        LoadReport* report) {
    LoadReport local;
    if (report) {
        local = *report;
    }

    std::vector<ExternalId> ids;
    ids.reserve(pairs.size() * 2);
    std::int64_t self_loops = 0;
    for (const auto& [a, b] : pairs) {
        if (a == b) {
            ++self_loops;
            continue;
        }
        ids.push_back(a);
        ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    if (ids.empty()) {
        throw EmptyInputError("edge list is empty (no usable edges)");
    }

    Graph g;
    g.n_ = static_cast<Vertex>(ids.size());
    g.external_ = std::move(ids);

    auto to_internal = [&g](ExternalId ext) {
        auto it = std::lower_bound(g.external_.begin(), g.external_.end(), ext);
        return static_cast<Vertex>(it - g.external_.begin());
    };

    std::vector<EdgeKey> edges;
    edges.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        if (a == b) {
            continue;
        }
        edges.push_back(make_edge_key(to_internal(a), to_internal(b)));
    }
    std::sort(edges.begin(), edges.end());
    auto last = std::unique(edges.begin(), edges.end());
    std::int64_t duplicates = edges.end() - last;
    edges.erase(last, edges.end());

    g.edges_ = std::move(edges);

    g.offsets_.assign(g.n_ + 1, 0);
    for (const EdgeKey& e : g.edges_) {
        g.offsets_[e.u + 1]++;
        g.offsets_[e.v + 1]++;
    }
    for (Vertex u = 0; u < g.n_; ++u) {
        g.offsets_[u + 1] += g.offsets_[u];
    }
    g.adj_.resize(g.offsets_[g.n_]);
    g.adj_edge_.resize(g.offsets_[g.n_]);
    std::vector<std::int32_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const EdgeKey& k = g.edges_[e];
        g.adj_[cursor[k.u]] = k.v;
        g.adj_edge_[cursor[k.u]++] = e;
        g.adj_[cursor[k.v]] = k.u;
        g.adj_edge_[cursor[k.v]++] = e;
    }
    // Edges are sorted by (u, v), so each adjacency slice comes out sorted.

    local.self_loops_dropped += self_loops;
    local.duplicates_dropped += duplicates;
    if (report) {
        *report = local;
    }
    return g;
}

EdgeId Graph::edge_id(const EdgeKey& key) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) {
        return -1;
    }
    return static_cast<EdgeId>(it - edges_.begin());
}

Vertex Graph::internal_id(ExternalId ext) const {
    auto it = std::lower_bound(external_.begin(), external_.end(), ext);
    if (it == external_.end() || *it != ext) {
        return -1;
    }
    return static_cast<Vertex>(it - external_.begin());
}

std::vector<double> jaccard_init(const Graph& g) {
    std::vector<double> dist(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const EdgeKey& k = g.edge(e);
        auto nu = g.neighbors(k.u);
        auto nv = g.neighbors(k.v);
        // Merged scan of the two sorted neighbor lists.
        std::size_t i = 0, j = 0;
        int common = 0;
        while (i < nu.size() && j < nv.size()) {
            if (nu[i] == nv[j]) {
                ++common, ++i, ++j;
            } else if (nu[i] < nv[j]) {
                ++i;
            } else {
                ++j;
            }
        }
        // Closed neighborhoods: intersection gains {u, v}, union is deg+deg-common.
        double inter = common + 2;
        double uni = g.degree(k.u) + g.degree(k.v) - common;
        dist[e] = 1.0 - inter / uni;
    }
    return dist;
}

StarStore::StarStore(const Graph& g, std::span<const double> dist) : g_(&g) {
    flat_.resize(2 * static_cast<std::size_t>(g.edge_count()));
    wsum_.assign(g.vertex_count(), 0.0);
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        auto nbrs = g.neighbors(u);
        auto eids = g.incident_edges(u);
        std::int32_t base = g.adjacency_offset(u);
        double sum = 0.0;
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            double d = dist[eids[i]];
            flat_[base + i] = NeighborDist{nbrs[i], d};
            sum += 1.0 - d;
        }
        wsum_[u] = sum;
    }
}

}  // namespace dyndist
