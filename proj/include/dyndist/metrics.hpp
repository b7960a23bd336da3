#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dyndist/extract.hpp"
#include "dyndist/graph.hpp"

namespace dyndist {

struct MetricsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Joint label counts of two labelings over the same element set, plus
// marginals; the basis for the labeled clustering metrics.
class ContingencyTable {
public:
    ContingencyTable(std::span<const int> pred, std::span<const int> truth);

    std::int64_t total() const { return n_; }
    const std::map<std::pair<int, int>, std::int64_t>& cells() const { return cells_; }
    const std::map<int, std::int64_t>& pred_sizes() const { return pred_sizes_; }
    const std::map<int, std::int64_t>& truth_sizes() const { return truth_sizes_; }

private:
    std::int64_t n_ = 0;
    std::map<std::pair<int, int>, std::int64_t> cells_;
    std::map<int, std::int64_t> pred_sizes_;
    std::map<int, std::int64_t> truth_sizes_;
};

/// Fraction of elements landing in their cluster's majority class.
double purity(std::span<const int> pred, std::span<const int> truth);

/// Normalized mutual information, natural log, arithmetic-mean normalization.
double nmi(std::span<const int> pred, std::span<const int> truth);

/// Adjusted Rand index over the contingency table.
double ari(std::span<const int> pred, std::span<const int> truth);

/// Newman modularity of a partition.
double modularity(const Graph& g, std::span<const int> community_of);

/// Average normalized cut over all communities; zero-volume communities
/// contribute nothing.
double ncut(const Graph& g, std::span<const int> community_of);

struct LabeledScores {
    double purity = 0.0;
    double nmi = 0.0;
    double ari = 0.0;
};

struct UnlabeledScores {
    double modularity = 0.0;
    double ncut = 0.0;
    int communities = 0;
};

LabeledScores score_labeled(std::span<const int> pred, std::span<const int> truth);
UnlabeledScores score_unlabeled(const Graph& g, const CommunityPartition& partition);

// Ground-truth loading: "vertex label" per line, labels are arbitrary
// tokens. Returns per-internal-vertex dense class ids; every graph vertex
// must be labeled and every labeled vertex must exist.
std::vector<int> load_ground_truth_file(const std::string& path, const Graph& g);
std::vector<int> load_ground_truth(std::istream& in, const Graph& g);

}  // namespace dyndist
