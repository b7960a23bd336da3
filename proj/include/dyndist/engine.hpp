#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dyndist/dynamics.hpp"
#include "dyndist/graph.hpp"
#include "dyndist/partition.hpp"
#include "dyndist/window.hpp"

namespace dyndist {

enum class Mode { kSequential, kWindowed, kPartitioned };

std::string to_string(Mode mode);
std::optional<Mode> mode_from_string(const std::string& name);

struct RunConfig {
    Mode mode = Mode::kPartitioned;
    double lambda = 0.5;
    int window_size = 15;        // s; 0 disables the window
    double tau = 0.5;
    std::int64_t gamma = 10000;  // fallback below this many live edges; 0 disables
    int partitions = 20;         // p
    unsigned workers = 1;
    int max_iters = 1000;
    std::uint64_t seed = 0;  // reserved for future randomized hashing
    std::string checkpoint_path;  // written after every iteration when set

    /// The window policy the selected mode actually runs with.
    WindowPolicy window_policy() const {
        if (mode == Mode::kSequential) {
            return WindowPolicy{0, tau};
        }
        return WindowPolicy{window_size, tau};
    }
};

struct PhaseTimings {
    double mr1_ms = 0.0;
    double mr2_ms = 0.0;
    double mr3_ms = 0.0;
    double fallback_ms = 0.0;
    double total_ms = 0.0;
};

struct RunResult {
    std::vector<double> distances;
    int iterations = 0;  // total update steps across pipeline and fallback
    int mr_iterations = 0;
    int fallback_iterations = 0;
    bool non_converged = false;
    std::int64_t forced_zero = 0;
    std::int64_t forced_one = 0;
    std::vector<IterationStats> iteration_stats;
    PhaseTimings timings;
};

// ---- Pipeline records ----

/// Current distance of one edge; the unit record entering star generation.
struct EdgeDistanceRecord {
    EdgeKey edge;
    double d;
};

/// Tagged value routed to the distance-update phase under an edge key.
struct Mr3Value {
    enum class Kind : std::uint8_t { kPartial, kDistance, kWindow };

    Kind kind = Kind::kPartial;
    double value = 0.0;    // partial S_I or previous distance
    SubgraphKey origin{};  // emitting subgraph, for partials
    SlidingWindow window;  // for window records
};

struct Mr3Record {
    EdgeKey edge;
    Mr3Value value;
};

/// Result of the update phase for one live edge.
struct EdgeUpdate {
    EdgeKey edge;
    double delta = 0.0;
    double d_new = 0.0;
    bool converged = false;
    bool forced_zero = false;
    bool forced_one = false;
    SlidingWindow window;
};

// ---- Pipeline phases ----

/// Emits every edge to both endpoints and gathers sorted star graphs,
/// one per vertex with at least one incident edge.
std::vector<StarGraph> mr1_star_graphs(std::span<const EdgeDistanceRecord> edges,
                                       unsigned workers);

/// Routes every star to each subgraph containing one of its edges and reduces
/// every subgraph to scaled per-edge partial sums.
std::vector<InteractionPartial> mr2_interactions(std::span<const StarGraph> stars,
                                                 const PartitionScheme& scheme, const Graph& g,
                                                 double lambda, unsigned workers);

/// Groups partials with the previous distance and window of each live edge,
/// applies the update, the window decision and clamping. Updates come back in
/// ascending edge order. Converged input edges produce no output.
std::vector<EdgeUpdate> mr3_update(std::span<const Mr3Record> records,
                                   const WindowPolicy& policy, int t, unsigned workers);

// ---- Driver ----

/// Runs the configured mode to convergence starting from Jaccard distances.
RunResult detect_communities(const Graph& g, const RunConfig& config,
                             IterationTrace* trace = nullptr);

/// Same, but continuing from previously saved state (checkpoint resume).
RunResult detect_communities_from(const Graph& g, const RunConfig& config, DynamicsState state,
                                  int mr_iterations, int fallback_iterations,
                                  IterationTrace* trace = nullptr);

// ---- Checkpointing ----

struct Checkpoint {
    int format_version = 1;
    DynamicsState state;
    int mr_iterations = 0;
    int fallback_iterations = 0;
    WindowPolicy policy;
};

void save_checkpoint(std::ostream& out, const Graph& g, const Checkpoint& cp);
void save_checkpoint_file(const std::string& path, const Graph& g, const Checkpoint& cp);
Checkpoint load_checkpoint(std::istream& in, const Graph& g);
Checkpoint load_checkpoint_file(const std::string& path, const Graph& g);

}  // namespace dyndist
