#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "probalign/errors.hpp"

namespace probalign {

/// One observed event as a categorical distribution over activities.
/// Only strictly positive probabilities are stored; per event they must
/// sum to 1 (within tolerance).
struct ProbEvent {
    std::map<std::string, double> candidates;
};

struct ProbTrace {
    std::string case_id;
    std::vector<ProbEvent> events;
};

struct ProbEventLog {
    std::vector<ProbTrace> traces;
    std::set<std::string> activity_universe;
};

struct DetTrace {
    std::string case_id;
    std::vector<std::string> activities;
};

enum class LogViolationKind {
    EmptyTrace,
    EmptyEvent,
    EmptyActivityName,
    NonPositiveProbability,
    ProbabilityAboveOne,
    SumOutOfTolerance,
    UnknownActivity,
};

struct LogViolation {
    LogViolationKind kind;
    std::string case_id;
    std::size_t event_index = 0;
    std::string detail;
};

/// Builds a log from traces, deriving the activity universe as the union of
/// all candidate activities.
ProbEventLog make_log(std::vector<ProbTrace> traces);

/// Empty result iff every event's probabilities lie in (0,1], sum to 1
/// within `tolerance`, and reference only universe activities.
std::vector<LogViolation> validate_log(const ProbEventLog& log, double tolerance = 1e-9);

/// Most probable activity per event; ties broken by lexicographically
/// smallest activity name.
DetTrace argmax_trace(const ProbTrace& trace);

/// A deterministic trace as the probability-1 special case.
ProbTrace lift_deterministic(const DetTrace& trace);

/// Non-empty iff every event has exactly one candidate with probability 1.
std::optional<DetTrace> as_deterministic(const ProbTrace& trace);

}  // namespace probalign
