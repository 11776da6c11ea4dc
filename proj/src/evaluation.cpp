#include "probalign/evaluation.hpp"

#include <cmath>

namespace probalign {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
    tp += other.tp;
    fp += other.fp;
    tn += other.tn;
    fn += other.fn;
    return *this;
}

RecoveredTrace recover(const Alignment& alignment) {
    RecoveredTrace result;
    result.case_id = alignment.case_id;
    for (const AlignmentMove& move : alignment.moves) {
        if (move.kind == MoveKind::Sync || move.kind == MoveKind::Log) {
            result.activities.push_back(move.trace_label.value());
        }
    }
    return result;
}

double recovery_accuracy(const RecoveredTrace& recovered, const DetTrace& original) {
    if (recovered.activities.size() != original.activities.size()) {
        throw LengthMismatchError("recovered trace has " +
                                  std::to_string(recovered.activities.size()) +
                                  " events, original has " +
                                  std::to_string(original.activities.size()));
    }
    if (original.activities.empty()) {
        throw EmptyTraceError("cannot score an empty trace");
    }
    std::size_t matches = 0;
    for (std::size_t i = 0; i < original.activities.size(); ++i) {
        if (recovered.activities[i] == original.activities[i]) {
            ++matches;
        }
    }
    return static_cast<double>(matches) / static_cast<double>(original.activities.size());
}

std::vector<EventLabel> classify_moves(const Alignment& alignment) {
    std::vector<EventLabel> labels;
    for (const AlignmentMove& move : alignment.moves) {
        if (move.kind == MoveKind::Sync) {
            labels.push_back(EventLabel::Normal);
        } else if (move.kind == MoveKind::Log) {
            labels.push_back(EventLabel::Deviation);
        }
    }
    return labels;
}

ConfusionCounts confusion_counts(const std::vector<EventLabel>& predicted,
                                 const std::vector<EventLabel>& actual) {
    if (predicted.size() != actual.size()) {
        throw LengthMismatchError("prediction/ground-truth length mismatch: " +
                                  std::to_string(predicted.size()) + " vs " +
                                  std::to_string(actual.size()));
    }
    ConfusionCounts counts;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool predicted_deviation = predicted[i] == EventLabel::Deviation;
        const bool actual_deviation = actual[i] == EventLabel::Deviation;
        if (predicted_deviation && actual_deviation) {
            ++counts.tp;
        } else if (predicted_deviation && !actual_deviation) {
            ++counts.fp;
        } else if (!predicted_deviation && actual_deviation) {
            ++counts.fn;
        } else {
            ++counts.tn;
        }
    }
    return counts;
}

EvalReport make_report(const ConfusionCounts& counts) {
    EvalReport report;
    report.counts = counts;

    auto ratio = [](std::uint64_t numerator, std::uint64_t denominator, double& out,
                    bool& degenerate) {
        if (denominator == 0) {
            out = 0;
            degenerate = true;
        } else {
            out = static_cast<double>(numerator) / static_cast<double>(denominator);
        }
    };

    ratio(counts.tp + counts.tn, counts.total(), report.accuracy, report.degenerate.accuracy);
    ratio(2 * counts.tp, 2 * counts.tp + counts.fp + counts.fn, report.f1,
          report.degenerate.f1);
    ratio(counts.tp, counts.tp + counts.fn, report.sensitivity,
          report.degenerate.sensitivity);
    ratio(counts.tn, counts.tn + counts.fp, report.specificity,
          report.degenerate.specificity);
    if (report.degenerate.sensitivity || report.degenerate.specificity) {
        report.g_mean = 0;
        report.degenerate.g_mean = true;
    } else {
        report.g_mean = std::sqrt(report.sensitivity * report.specificity);
    }
    return report;
}

EvalReport score(const std::vector<EventLabel>& predicted,
                 const std::vector<EventLabel>& actual) {
    return make_report(confusion_counts(predicted, actual));
}

}  // namespace probalign
