#pragma once

#include <string>

#include "dyndist/engine.hpp"
#include "dyndist/extract.hpp"
#include "dyndist/graph.hpp"
#include "dyndist/metrics.hpp"

namespace dyndist {

struct ReportInputs {
    const Graph* graph = nullptr;
    const RunConfig* config = nullptr;
    const LoadReport* load = nullptr;
    const RunResult* result = nullptr;
    const CommunityPartition* partition = nullptr;  // absent when non-converged
    const LabeledScores* labeled = nullptr;         // absent without ground truth
    const UnlabeledScores* unlabeled = nullptr;     // absent when non-converged
};

// The run report is reproducible byte-for-byte for a given input and config:
// wall-clock timings and the worker count live in the separate timings
// report, since they vary run to run while the result does not.
std::string format_run_report_json(const ReportInputs& in);

std::string format_timings_json(const RunResult& result, unsigned workers);

std::string format_metrics_text(const LabeledScores* labeled, const UnlabeledScores* unlabeled,
                                int communities);
std::string format_metrics_json(const LabeledScores* labeled, const UnlabeledScores* unlabeled,
                                int communities);

}  // namespace dyndist
