#include "probalign/prob_log.hpp"

#include <cmath>
#include <sstream>

namespace probalign {

ProbEventLog make_log(std::vector<ProbTrace> traces) {
    ProbEventLog log;
    log.traces = std::move(traces);
    for (const ProbTrace& trace : log.traces) {
        for (const ProbEvent& event : trace.events) {
            for (const auto& [activity, p] : event.candidates) {
                log.activity_universe.insert(activity);
            }
        }
    }
    return log;
}

std::vector<LogViolation> validate_log(const ProbEventLog& log, double tolerance) {
    if (tolerance <= 0) {
        throw InvalidInputError("tolerance must be positive");
    }
    std::vector<LogViolation> violations;
    for (const ProbTrace& trace : log.traces) {
        if (trace.events.empty()) {
            violations.push_back({LogViolationKind::EmptyTrace, trace.case_id, 0,
                                  "trace has no events"});
            continue;
        }
        for (std::size_t i = 0; i < trace.events.size(); ++i) {
            const ProbEvent& event = trace.events[i];
            if (event.candidates.empty()) {
                violations.push_back({LogViolationKind::EmptyEvent, trace.case_id, i,
                                      "event has no candidates"});
                continue;
            }
            double sum = 0;
            for (const auto& [activity, p] : event.candidates) {
                if (activity.empty()) {
                    violations.push_back({LogViolationKind::EmptyActivityName, trace.case_id,
                                          i, "empty activity name"});
                }
                if (p <= 0) {
                    violations.push_back({LogViolationKind::NonPositiveProbability,
                                          trace.case_id, i,
                                          activity + ": " + std::to_string(p)});
                } else if (p > 1) {
                    violations.push_back({LogViolationKind::ProbabilityAboveOne,
                                          trace.case_id, i,
                                          activity + ": " + std::to_string(p)});
                }
                if (log.activity_universe.count(activity) == 0) {
                    violations.push_back({LogViolationKind::UnknownActivity, trace.case_id,
                                          i, activity + " not in activity universe"});
                }
                sum += p;
            }
            if (std::abs(sum - 1.0) > tolerance) {
                std::ostringstream os;
                os << "probabilities sum to " << sum;
                violations.push_back({LogViolationKind::SumOutOfTolerance, trace.case_id, i,
                                      os.str()});
            }
        }
    }
    return violations;
}

DetTrace argmax_trace(const ProbTrace& trace) {
    if (trace.events.empty()) {
        throw EmptyTraceError("cannot take argmax of an empty trace");
    }
    DetTrace result;
    result.case_id = trace.case_id;
    result.activities.reserve(trace.events.size());
    for (const ProbEvent& event : trace.events) {
        if (event.candidates.empty()) {
            throw InvalidInputError("event with no candidates in trace '" + trace.case_id +
                                    "'");
        }
        // Map iteration is lexicographic, so keeping the first strict maximum
        // implements the lexicographic tie-break.
        const std::string* best = nullptr;
        double best_p = 0;
        for (const auto& [activity, p] : event.candidates) {
            if (best == nullptr || p > best_p) {
                best = &activity;
                best_p = p;
            }
        }
        result.activities.push_back(*best);
    }
    return result;
}

ProbTrace lift_deterministic(const DetTrace& trace) {
    if (trace.activities.empty()) {
        throw EmptyTraceError("cannot lift an empty trace");
    }
    ProbTrace result;
    result.case_id = trace.case_id;
    result.events.reserve(trace.activities.size());
    for (const std::string& activity : trace.activities) {
        if (activity.empty()) {
            throw InvalidInputError("empty activity name in trace '" + trace.case_id + "'");
        }
        ProbEvent event;
        event.candidates.emplace(activity, 1.0);
        result.events.push_back(std::move(event));
    }
    return result;
}

std::optional<DetTrace> as_deterministic(const ProbTrace& trace) {
    DetTrace result;
    result.case_id = trace.case_id;
    for (const ProbEvent& event : trace.events) {
        if (event.candidates.size() != 1 || event.candidates.begin()->second != 1.0) {
            return std::nullopt;
        }
        result.activities.push_back(event.candidates.begin()->first);
    }
    if (result.activities.empty()) {
        return std::nullopt;
    }
    return result;
}

}  // namespace probalign
