// Command-line front end: community detection runs, metric evaluation and
// partition statistics.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dyndist/engine.hpp"
#include "dyndist/extract.hpp"
#include "dyndist/graph.hpp"
#include "dyndist/metrics.hpp"
#include "dyndist/mr.hpp"
#include "dyndist/partition.hpp"
#include "dyndist/report.hpp"

namespace fs = std::filesystem;
using namespace dyndist;

namespace {

unsigned default_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) {
        hw = 1;
    }
    return std::min(30u, hw);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
}

struct RunArgs {
    std::string input;
    std::string mode = "partitioned";
    double lambda = 0.5;
    int window = 15;
    double tau = 0.5;
    std::int64_t gamma = 10000;
    int partitions = 20;
    unsigned workers = default_workers();
    int max_iters = 1000;
    std::string output_dir = ".";
    std::string ground_truth;
    std::string checkpoint;
    std::string resume;
};

int cmd_run(const RunArgs& args) {
    auto mode = mode_from_string(args.mode);
    if (!mode) {
        std::cerr << "unknown mode: " << args.mode << "\n";
        return 2;
    }
    RunConfig config;
    config.mode = *mode;
    config.lambda = args.lambda;
    config.window_size = args.window;
    config.tau = args.tau;
    config.gamma = args.gamma;
    config.partitions = args.partitions;
    config.workers = args.workers;
    config.max_iters = args.max_iters;
    config.checkpoint_path = args.checkpoint;

    if (config.mode == Mode::kPartitioned && config.partitions < 3) {
        std::cerr << "configuration error: --partitions must be at least 3 (got "
                  << config.partitions << ")\n";
        return 2;
    }

    LoadReport load;
    Graph g = Graph::from_edge_list_file(args.input, &load);
    std::cout << "loaded " << args.input << ": n=" << g.vertex_count()
              << " m=" << g.edge_count() << " (self-loops dropped " << load.self_loops_dropped
              << ", duplicates dropped " << load.duplicates_dropped << ")\n";

    RunResult result;
    if (!args.resume.empty()) {
        Checkpoint cp = load_checkpoint_file(args.resume, g);
        result = detect_communities_from(g, config, std::move(cp.state), cp.mr_iterations,
                                         cp.fallback_iterations);
    } else {
        result = detect_communities(g, config);
    }

    std::cout << (result.non_converged ? "did not converge after " : "converged in ")
              << result.iterations << " iterations (pipeline " << result.mr_iterations
              << ", fallback " << result.fallback_iterations << ")\n";

    fs::create_directories(args.output_dir);
    fs::path dir(args.output_dir);

    CommunityPartition partition;
    LabeledScores labeled;
    UnlabeledScores unlabeled;
    bool have_labeled = false;
    if (!result.non_converged) {
        partition = extract_communities(g, result.distances);
        unlabeled = score_unlabeled(g, partition);
        std::cout << "communities: " << partition.community_count() << "\n";
        if (!args.ground_truth.empty()) {
            auto truth = load_ground_truth_file(args.ground_truth, g);
            labeled = score_labeled(partition.community_of, truth);
            have_labeled = true;
            std::printf("purity %.6f nmi %.6f ari %.6f\n", labeled.purity, labeled.nmi,
                        labeled.ari);
        }
        std::printf("modularity %.6f ncut %.6f\n", unlabeled.modularity, unlabeled.ncut);
        write_file(dir / "communities.txt", format_communities(partition, g));
        write_file(dir / "assignment.txt", format_assignment(partition, g));
    } else {
        std::cout << "no community files written (result flagged non-converged)\n";
    }

    ReportInputs inputs;
    inputs.graph = &g;
    inputs.config = &config;
    inputs.load = &load;
    inputs.result = &result;
    inputs.partition = result.non_converged ? nullptr : &partition;
    inputs.labeled = have_labeled ? &labeled : nullptr;
    inputs.unlabeled = result.non_converged ? nullptr : &unlabeled;
    write_file(dir / "report.json", format_run_report_json(inputs));
    write_file(dir / "timings.json", format_timings_json(result, config.workers));
    std::cout << "wrote " << (dir / "report.json").string() << "\n";
    return 0;
}

std::vector<std::vector<ExternalId>> read_communities_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open communities file: " + path);
    }
    std::vector<std::vector<ExternalId>> communities;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::vector<ExternalId> members;
        ExternalId id;
        while (ls >> id) {
            members.push_back(id);
        }
        if (!members.empty()) {
            communities.push_back(std::move(members));
        }
    }
    return communities;
}

struct EvalArgs {
    std::string communities;
    std::string ground_truth;
    std::string input;
    std::string json_path;
};

int cmd_eval(const EvalArgs& args) {
    auto communities = read_communities_file(args.communities);

    LabeledScores labeled;
    UnlabeledScores unlabeled;
    bool have_labeled = false;
    bool have_unlabeled = false;
    int count = static_cast<int>(communities.size());

    if (!args.ground_truth.empty()) {
        // Align the two files over their shared vertex universe.
        std::map<ExternalId, int> pred;
        for (std::size_t c = 0; c < communities.size(); ++c) {
            for (ExternalId id : communities[c]) {
                pred[id] = static_cast<int>(c);
            }
        }
        std::ifstream in(args.ground_truth);
        if (!in) {
            throw std::runtime_error("cannot open ground truth file: " + args.ground_truth);
        }
        std::map<ExternalId, int> truth;
        std::map<std::string, int> label_ids;
        std::string line;
        while (std::getline(in, line)) {
            if (auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            std::istringstream ls(line);
            ExternalId id;
            std::string label;
            if (ls >> id >> label) {
                auto [it, ins] = label_ids.try_emplace(label, static_cast<int>(label_ids.size()));
                truth[id] = it->second;
            }
        }
        std::vector<ExternalId> missing;
        for (const auto& [id, c] : pred) {
            if (!truth.count(id)) {
                missing.push_back(id);
            }
        }
        for (const auto& [id, c] : truth) {
            if (!pred.count(id)) {
                missing.push_back(id);
            }
        }
        if (!missing.empty()) {
            std::ostringstream msg;
            msg << "vertex sets differ between communities and ground truth; mismatched ids:";
            for (std::size_t i = 0; i < missing.size() && i < 20; ++i) {
                msg << ' ' << missing[i];
            }
            if (missing.size() > 20) {
                msg << " ... (" << missing.size() << " total)";
            }
            throw MetricsError(msg.str());
        }
        std::vector<int> pred_vec, truth_vec;
        pred_vec.reserve(pred.size());
        for (const auto& [id, c] : pred) {
            pred_vec.push_back(c);
            truth_vec.push_back(truth[id]);
        }
        labeled = score_labeled(pred_vec, truth_vec);
        have_labeled = true;
    }

    if (!args.input.empty()) {
        Graph g = Graph::from_edge_list_file(args.input);
        std::vector<int> assignment(g.vertex_count(), -1);
        std::vector<ExternalId> missing;
        for (std::size_t c = 0; c < communities.size(); ++c) {
            for (ExternalId id : communities[c]) {
                Vertex u = g.internal_id(id);
                if (u < 0) {
                    missing.push_back(id);
                } else {
                    assignment[u] = static_cast<int>(c);
                }
            }
        }
        for (Vertex u = 0; u < g.vertex_count(); ++u) {
            if (assignment[u] < 0) {
                missing.push_back(g.external_id(u));
            }
        }
        if (!missing.empty()) {
            std::ostringstream msg;
            msg << "communities file does not cover the graph; mismatched ids:";
            for (std::size_t i = 0; i < missing.size() && i < 20; ++i) {
                msg << ' ' << missing[i];
            }
            throw MetricsError(msg.str());
        }
        unlabeled.modularity = modularity(g, assignment);
        unlabeled.ncut = ncut(g, assignment);
        unlabeled.communities = count;
        have_unlabeled = true;
    }

    if (!have_labeled && !have_unlabeled) {
        std::cerr << "eval needs --ground-truth (labeled) or --input (unlabeled)\n";
        return 2;
    }

    std::string text = format_metrics_text(have_labeled ? &labeled : nullptr,
                                           have_unlabeled ? &unlabeled : nullptr, count);
    std::cout << text;
    if (!args.json_path.empty()) {
        write_file(args.json_path, format_metrics_json(have_labeled ? &labeled : nullptr,
                                                       have_unlabeled ? &unlabeled : nullptr,
                                                       count));
    }
    return 0;
}

struct StatsArgs {
    std::string input;
    int partitions = 20;
    std::string json_path;
};

int cmd_partition_stats(const StatsArgs& args) {
    Graph g;
    try {
        g = Graph::from_edge_list_file(args.input);
    } catch (const EmptyInputError&) {
        std::cout << "partitions " << args.partitions << "\nsubgraphs 0\n";
        return 0;
    }
    PartitionScheme scheme(g.vertex_count(), args.partitions);
    const int p = scheme.partition_count();

    std::map<SubgraphKey, std::int64_t> main_edges;
    for (const EdgeKey& e : g.edges()) {
        for (const SubgraphKey& key : find_subgraphs(e.u, e.v, scheme)) {
            ++main_edges[key];
        }
    }

    auto dist = jaccard_init(g);
    std::vector<EdgeId> live;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (dist[e] > 0.0 && dist[e] < 1.0) {
            live.push_back(e);
        }
    }
    std::int64_t expected = expected_emission_count(g, scheme, live);
    std::int64_t instances = 0;
    for (const auto& [key, count] : main_edges) {
        instances += count;
    }

    std::ostringstream out;
    out << "partitions " << p << "\n";
    out << "subgraphs " << main_edges.size() << "\n";
    for (const auto& [key, count] : main_edges) {
        out << key << " main_edges " << count << "\n";
    }
    out << "main_edge_instances " << instances << "\n";
    out << "live_edges_after_init " << live.size() << "\n";
    out << "expected_si_emissions " << expected << "\n";
    out << "mp_bound " << static_cast<std::int64_t>(g.edge_count()) * p << "\n";
    std::cout << out.str();

    if (!args.json_path.empty()) {
        nlohmann::json j;
        j["partitions"] = p;
        j["subgraphs"] = main_edges.size();
        j["main_edge_instances"] = instances;
        j["live_edges_after_init"] = live.size();
        j["expected_si_emissions"] = expected;
        j["mp_bound"] = static_cast<std::int64_t>(g.edge_count()) * p;
        nlohmann::json list = nlohmann::json::array();
        for (const auto& [key, count] : main_edges) {
            std::ostringstream name;
            name << key;
            list.push_back({{"subgraph", name.str()}, {"main_edges", count}});
        }
        j["per_subgraph"] = list;
        write_file(args.json_path, j.dump(2) + "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic-distance community detection"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Detect communities in an edge-list graph");
    run->add_option("--input", run_args.input, "edge list file (u v per line)")->required();
    run->add_option("--mode", run_args.mode, "sequential | windowed | partitioned");
    run->add_option("--lambda", run_args.lambda, "cohesion parameter")
        ->check(CLI::Range(0.0, 1.0));
    run->add_option("--window", run_args.window, "sliding window size, 0 disables")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--tau", run_args.tau, "sliding window threshold")
        ->check(CLI::Range(0.0, 1.0));
    run->add_option("--gamma", run_args.gamma, "fallback threshold on live edges, 0 disables")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--partitions", run_args.partitions, "partition count p");
    run->add_option("--workers", run_args.workers, "worker threads")
        ->check(CLI::PositiveNumber);
    run->add_option("--max-iters", run_args.max_iters, "iteration cap")
        ->check(CLI::PositiveNumber);
    run->add_option("--output-dir", run_args.output_dir, "directory for result files");
    run->add_option("--ground-truth", run_args.ground_truth, "vertex-label file for metrics");
    run->add_option("--checkpoint", run_args.checkpoint, "write iteration checkpoints here");
    run->add_option("--resume", run_args.resume, "resume from a checkpoint file");

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Score a communities file");
    eval->add_option("--communities", eval_args.communities, "communities file")->required();
    eval->add_option("--ground-truth", eval_args.ground_truth, "vertex-label file");
    eval->add_option("--input", eval_args.input, "graph file for modularity / ncut");
    eval->add_option("--json", eval_args.json_path, "also write metrics JSON here");

    StatsArgs stats_args;
    auto* stats = app.add_subcommand("partition-stats", "Partitioning statistics for a graph");
    stats->add_option("--input", stats_args.input, "edge list file")->required();
    stats->add_option("--partitions", stats_args.partitions, "partition count p");
    stats->add_option("--json", stats_args.json_path, "also write stats JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) {
            return cmd_run(run_args);
        }
        if (eval->parsed()) {
            return cmd_eval(eval_args);
        }
        if (stats->parsed()) {
            return cmd_partition_stats(stats_args);
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
