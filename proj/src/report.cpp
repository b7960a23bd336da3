#include "dyndist/report.hpp"

#include <sstream>

#include <json.hpp>

namespace dyndist {

using nlohmann::json;

std::string format_run_report_json(const ReportInputs& in) {
    json j;
    j["config"] = {
        {"mode", to_string(in.config->mode)},
        {"lambda", in.config->lambda},
        {"window", in.config->window_size},
        {"tau", in.config->tau},
        {"gamma", in.config->gamma},
        {"partitions", in.config->partitions},
        {"max_iters", in.config->max_iters},
    };
    j["graph"] = {
        {"vertices", in.graph->vertex_count()},
        {"edges", in.graph->edge_count()},
    };
    if (in.load) {
        j["load"] = {
            {"self_loops_dropped", in.load->self_loops_dropped},
            {"duplicates_dropped", in.load->duplicates_dropped},
        };
    }
    j["iterations"] = {
        {"total", in.result->iterations},
        {"pipeline", in.result->mr_iterations},
        {"fallback", in.result->fallback_iterations},
    };
    j["non_converged"] = in.result->non_converged;
    j["window_forced"] = {
        {"to_zero", in.result->forced_zero},
        {"to_one", in.result->forced_one},
    };
    if (in.partition) {
        j["communities"] = in.partition->community_count();
    }
    json metrics = json::object();
    if (in.labeled) {
        metrics["purity"] = in.labeled->purity;
        metrics["nmi"] = in.labeled->nmi;
        metrics["ari"] = in.labeled->ari;
    }
    if (in.unlabeled) {
        metrics["modularity"] = in.unlabeled->modularity;
        metrics["ncut"] = in.unlabeled->ncut;
    }
    if (!metrics.empty()) {
        j["metrics"] = metrics;
    }
    return j.dump(2) + "\n";
}

std::string format_timings_json(const RunResult& result, unsigned workers) {
    json j;
    j["workers"] = workers;
    j["phase_ms"] = {
        {"star_generation", result.timings.mr1_ms},
        {"interactions", result.timings.mr2_ms},
        {"update", result.timings.mr3_ms},
        {"fallback", result.timings.fallback_ms},
        {"total", result.timings.total_ms},
    };
    return j.dump(2) + "\n";
}

std::string format_metrics_text(const LabeledScores* labeled, const UnlabeledScores* unlabeled,
                                int communities) {
    std::ostringstream out;
    char buf[64];
    auto put = [&out, &buf](const char* name, double value) {
        std::snprintf(buf, sizeof buf, "%.6f", value);
        out << name << ' ' << buf << '\n';
    };
    if (labeled) {
        put("purity", labeled->purity);
        put("nmi", labeled->nmi);
        put("ari", labeled->ari);
    }
    if (unlabeled) {
        put("modularity", unlabeled->modularity);
        put("ncut", unlabeled->ncut);
    }
    out << "communities " << communities << '\n';
    return out.str();
}

std::string format_metrics_json(const LabeledScores* labeled, const UnlabeledScores* unlabeled,
                                int communities) {
    json j;
    if (labeled) {
        j["purity"] = labeled->purity;
        j["nmi"] = labeled->nmi;
        j["ari"] = labeled->ari;
    }
    if (unlabeled) {
        j["modularity"] = unlabeled->modularity;
        j["ncut"] = unlabeled->ncut;
    }
    j["communities"] = communities;
    return j.dump(2) + "\n";
}

}  // namespace dyndist
