#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "probalign/aligner.hpp"
#include "probalign/noise_gen.hpp"
#include "probalign/prob_log.hpp"

namespace probalign {

/// Per original event, the activity the optimal alignment assumed.
struct RecoveredTrace {
    std::string case_id;
    std::vector<std::string> activities;
};

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + fp + tn + fn; }
    ConfusionCounts& operator+=(const ConfusionCounts& other);
};

/// Marks every metric whose denominator was zero; such metrics report 0.
struct DegenerateFlags {
    bool accuracy = false;
    bool f1 = false;
    bool sensitivity = false;
    bool specificity = false;
    bool g_mean = false;

    bool any() const { return accuracy || f1 || sensitivity || specificity || g_mean; }
};

/// Deviation is the positive class throughout.
struct EvalReport {
    ConfusionCounts counts;
    double accuracy = 0;
    double f1 = 0;
    double sensitivity = 0;
    double specificity = 0;
    double g_mean = 0;
    DegenerateFlags degenerate;
};

/// The activity assumed for each trace event, in event order: the trace-side
/// label of the sync or log move that consumed it.
RecoveredTrace recover(const Alignment& alignment);

/// Fraction of positions where the recovered activity equals the original.
double recovery_accuracy(const RecoveredTrace& recovered, const DetTrace& original);

/// Per trace event: Deviation if consumed by a log move, Normal if by a
/// synchronous move.
std::vector<EventLabel> classify_moves(const Alignment& alignment);

ConfusionCounts confusion_counts(const std::vector<EventLabel>& predicted,
                                 const std::vector<EventLabel>& actual);

EvalReport make_report(const ConfusionCounts& counts);

EvalReport score(const std::vector<EventLabel>& predicted,
                 const std::vector<EventLabel>& actual);

}  // namespace probalign
