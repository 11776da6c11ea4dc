#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "probalign/petri_net.hpp"
#include "probalign/prob_log.hpp"

namespace probalign {

enum class MoveKind { Sync, Log, Model, TauModel };

const char* to_string(MoveKind kind);

struct TransitionOrigin {
    std::optional<std::string> model;  // model-side transition id, if any
    std::optional<std::string> trace;  // trace-side transition id, if any
};

/// Linear trace net plus one weight per transition, parallel to
/// net.transitions.
struct WeightedTraceModel {
    PetriNet net;
    std::vector<double> weights;
};

/// Synchronous product of a process model and a trace model. kinds, weights
/// and origins run parallel to net.transitions. Model-side and trace-side
/// places are kept disjoint by prefixing their ids with "model:" / "trace:".
struct SyncProductNet {
    PetriNet net;
    std::vector<MoveKind> kinds;
    std::vector<double> weights;
    std::vector<TransitionOrigin> origins;
};

/// Linear net for a deterministic trace: places P0..Pm, one transition per
/// event, initial marking {P0:1}, final marking {Pm:1}.
PetriNet build_trace_model(const DetTrace& trace);

/// Linear net for a probabilistic trace: places P0..Pm and, per event i and
/// candidate activity a with p > 0, a transition "t(ei,a)" from Pi to Pi+1
/// labelled a, weighted p.
WeightedTraceModel build_weighted_trace_model(const ProbTrace& trace);

/// Places with no outgoing arc, one token each. Used when a process model
/// declares no final marking. Throws InvalidInputError if no such place
/// exists.
Marking inferred_final_marking(const PetriNet& net);

/// Composes model moves, log moves and label-matching synchronous moves.
/// Model moves weigh 1; log and synchronous moves carry the trace
/// transition's weight. Initial/final markings are the unions of the
/// components' markings (model final inferred if undeclared).
SyncProductNet build_sync_product(const PetriNet& model, const WeightedTraceModel& trace_model);

/// Index of a product transition by id, if present.
std::optional<std::size_t> find_transition(const SyncProductNet& product, const std::string& id);

}  // namespace probalign
