#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "probalign/aligner.hpp"
#include "probalign/evaluation.hpp"
#include "probalign/noise_gen.hpp"
#include "probalign/petri_net.hpp"
#include "probalign/prob_log.hpp"

namespace probalign {

/// PNML subset: place / transition / arc / name / initialMarking plus a
/// net-level <finalmarkings> block. A transition with an absent or empty
/// <name> is silent. Arc inscriptions other than 1 and non-normal arc types
/// raise UnsupportedFeatureError.
PetriNet read_pnml(std::istream& in);
PetriNet read_pnml_file(const std::string& path);
std::string write_pnml(const PetriNet& net);

ProbEventLog read_prob_log_json(std::istream& in, bool renormalize = false);
ProbEventLog read_prob_log_json_file(const std::string& path, bool renormalize = false);
std::string write_prob_log_json(const ProbEventLog& log);

/// CSV probability matrix for a single case: one row per activity, one
/// column per event. The case id comes from the caller (by convention the
/// file stem).
ProbEventLog read_prob_log_csv(std::istream& in, const std::string& case_id,
                               bool renormalize = false);
std::string write_prob_log_csv(const ProbTrace& trace);

struct GroundTruthDocument {
    double p_h = 0;
    double t_d = 0;
    std::uint64_t seed = 0;
    std::vector<TraceGroundTruth> cases;
};

GroundTruthDocument read_ground_truth_json(std::istream& in);
GroundTruthDocument read_ground_truth_json_file(const std::string& path);
std::string write_ground_truth_json(const GroundTruthDocument& document);

/// One case's alignment outcome; `error` is set instead of `alignment` when
/// the search failed.
struct AlignmentCaseResult {
    std::string case_id;
    std::optional<Alignment> alignment;
    std::vector<std::string> recovered;
    std::vector<EventLabel> predictions;
    std::optional<std::string> error;
};

/// include_timing controls whether wall-clock fields are emitted; with it
/// off the output is byte-identical across reruns.
std::string write_alignments_json(const std::vector<AlignmentCaseResult>& results,
                                  const CostFunction& cost, bool include_timing);

struct ReportRow {
    std::optional<double> epsilon;
    double t_d = 0;
    std::string algorithm;
    EvalReport report;
    double runtime_s = 0;
};

/// Fixed column order (epsilon, t_d, algorithm, accuracy, f1, sensitivity,
/// specificity, g_mean, runtime_s), six decimal places.
std::string write_report_csv(const std::vector<ReportRow>& rows);

/// Parses what write_report_csv produced; confusion counts are not part of
/// the format, so only the metric fields are populated.
std::vector<ReportRow> read_report_csv(std::istream& in);

}  // namespace probalign
