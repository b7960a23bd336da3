#include "dyndist/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dyndist {

ContingencyTable::ContingencyTable(std::span<const int> pred, std::span<const int> truth) {
    if (pred.size() != truth.size()) {
        throw MetricsError("labelings cover different element counts");
    }
    n_ = static_cast<std::int64_t>(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
        ++cells_[{pred[i], truth[i]}];
        ++pred_sizes_[pred[i]];
        ++truth_sizes_[truth[i]];
    }
}

double purity(std::span<const int> pred, std::span<const int> truth) {
    ContingencyTable table(pred, truth);
    if (table.total() == 0) {
        throw MetricsError("cannot score an empty labeling");
    }
    std::map<int, std::int64_t> best;
    for (const auto& [cell, count] : table.cells()) {
        auto& value = best[cell.first];
        value = std::max(value, count);
    }
    std::int64_t hit = 0;
    for (const auto& [label, count] : best) {
        hit += count;
    }
    return static_cast<double>(hit) / static_cast<double>(table.total());
}

namespace {

double entropy(const std::map<int, std::int64_t>& sizes, double n) {
    double h = 0.0;
    for (const auto& [label, count] : sizes) {
        if (count > 0) {
            double p = count / n;
            h -= p * std::log(p);
        }
    }
    return h;
}

}  // namespace

double nmi(std::span<const int> pred, std::span<const int> truth) {
    ContingencyTable table(pred, truth);
    if (table.total() == 0) {
        throw MetricsError("cannot score an empty labeling");
    }
    double n = static_cast<double>(table.total());
    double h_pred = entropy(table.pred_sizes(), n);
    double h_truth = entropy(table.truth_sizes(), n);
    if (h_pred + h_truth == 0.0) {
        return 1.0;  // both labelings are single-cluster, hence identical
    }
    double info = 0.0;
    for (const auto& [cell, count] : table.cells()) {
        if (count == 0) {
            continue;
        }
        double pij = count / n;
        double pi = table.pred_sizes().at(cell.first) / n;
        double pj = table.truth_sizes().at(cell.second) / n;
        info += pij * std::log(pij / (pi * pj));
    }
    return 2.0 * info / (h_pred + h_truth);
}

double ari(std::span<const int> pred, std::span<const int> truth) {
    ContingencyTable table(pred, truth);
    std::int64_t n = table.total();
    if (n == 0) {
        throw MetricsError("cannot score an empty labeling");
    }
    auto choose2 = [](std::int64_t x) { return static_cast<double>(x) * (x - 1) / 2.0; };
    double sum_cells = 0.0;
    for (const auto& [cell, count] : table.cells()) {
        sum_cells += choose2(count);
    }
    double sum_pred = 0.0;
    for (const auto& [label, count] : table.pred_sizes()) {
        sum_pred += choose2(count);
    }
    double sum_truth = 0.0;
    for (const auto& [label, count] : table.truth_sizes()) {
        sum_truth += choose2(count);
    }
    double pairs = choose2(n);
    if (pairs == 0.0) {
        return 1.0;
    }
    double expected = sum_pred * sum_truth / pairs;
    double denom = 0.5 * (sum_pred + sum_truth) - expected;
    if (denom == 0.0) {
        return 1.0;  // both labelings trivial in the same way
    }
    return (sum_cells - expected) / denom;
}

double modularity(const Graph& g, std::span<const int> community_of) {
    double m = g.edge_count();
    if (m == 0) {
        return 0.0;
    }
    std::map<int, std::int64_t> intra, degree_sum;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const EdgeKey& k = g.edge(e);
        if (community_of[k.u] == community_of[k.v]) {
            ++intra[community_of[k.u]];
        }
    }
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        degree_sum[community_of[u]] += g.degree(u);
    }
    double q = 0.0;
    for (const auto& [community, dsum] : degree_sum) {
        double mc = 0.0;
        if (auto it = intra.find(community); it != intra.end()) {
            mc = static_cast<double>(it->second);
        }
        double frac = dsum / (2.0 * m);
        q += mc / m - frac * frac;
    }
    return q;
}

double ncut(const Graph& g, std::span<const int> community_of) {
    std::map<int, std::int64_t> cut, volume;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        volume[community_of[u]] += g.degree(u);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const EdgeKey& k = g.edge(e);
        if (community_of[k.u] != community_of[k.v]) {
            ++cut[community_of[k.u]];
            ++cut[community_of[k.v]];
        }
    }
    if (volume.empty()) {
        return 0.0;
    }
    double total = 0.0;
    for (const auto& [community, vol] : volume) {
        if (vol == 0) {
            continue;
        }
        double c = 0.0;
        if (auto it = cut.find(community); it != cut.end()) {
            c = static_cast<double>(it->second);
        }
        total += c / static_cast<double>(vol);
    }
    return total / static_cast<double>(volume.size());
}

LabeledScores score_labeled(std::span<const int> pred, std::span<const int> truth) {
    return LabeledScores{purity(pred, truth), nmi(pred, truth), ari(pred, truth)};
}

UnlabeledScores score_unlabeled(const Graph& g, const CommunityPartition& partition) {
    UnlabeledScores scores;
    scores.modularity = modularity(g, partition.community_of);
    scores.ncut = ncut(g, partition.community_of);
    scores.communities = partition.community_count();
    return scores;
}

std::vector<int> load_ground_truth(std::istream& in, const Graph& g) {
    std::vector<int> labels(g.vertex_count(), -1);
    std::map<std::string, int> label_ids;
    std::string line;
    std::int64_t lineno = 0;
    std::vector<ExternalId> unknown;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        ExternalId ext;
        std::string label;
        if (!(ls >> ext)) {
            continue;  // blank line
        }
        if (!(ls >> label)) {
            throw MetricsError("ground truth line " + std::to_string(lineno) +
                               ": missing label");
        }
        Vertex u = g.internal_id(ext);
        if (u < 0) {
            unknown.push_back(ext);
            continue;
        }
        auto [it, inserted] = label_ids.try_emplace(label, static_cast<int>(label_ids.size()));
        labels[u] = it->second;
    }
    std::vector<ExternalId> missing;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (labels[u] < 0) {
            missing.push_back(g.external_id(u));
        }
    }
    if (!unknown.empty() || !missing.empty()) {
        std::ostringstream msg;
        msg << "ground truth does not match the graph's vertex set:";
        if (!missing.empty()) {
            msg << " unlabeled vertices:";
            for (std::size_t i = 0; i < missing.size() && i < 20; ++i) {
                msg << ' ' << missing[i];
            }
            if (missing.size() > 20) {
                msg << " ... (" << missing.size() << " total)";
            }
        }
        if (!unknown.empty()) {
            msg << " labels for unknown vertices:";
            for (std::size_t i = 0; i < unknown.size() && i < 20; ++i) {
                msg << ' ' << unknown[i];
            }
            if (unknown.size() > 20) {
                msg << " ... (" << unknown.size() << " total)";
            }
        }
        throw MetricsError(msg.str());
    }
    return labels;
}

std::vector<int> load_ground_truth_file(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) {
        throw MetricsError("cannot open ground truth file: " + path);
    }
    return load_ground_truth(in, g);
}

}  // namespace dyndist
