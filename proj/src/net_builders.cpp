#include "probalign/net_builders.hpp"

#include <unordered_set>

namespace probalign {

namespace {

constexpr const char* kGap = ">>";

std::string trace_place_id(std::size_t index) {
    return "P" + std::to_string(index);
}

std::string trace_transition_id(std::size_t event_index, const std::string& activity) {
    return "t(e" + std::to_string(event_index) + "," + activity + ")";
}

std::string product_transition_id(const std::string& model_id, const std::string& trace_id) {
    return "(" + model_id + "," + trace_id + ")";
}

void require_well_formed(const PetriNet& net, const char* what) {
    const std::vector<Violation> violations = validate(net);
    if (!violations.empty()) {
        throw InvalidInputError(std::string(what) + " is not well-formed: " +
                                violations.front().message + " (" +
                                violations.front().element + ")");
    }
}

}  // namespace

const char* to_string(MoveKind kind) {
    switch (kind) {
        case MoveKind::Sync: return "sync";
        case MoveKind::Log: return "log";
        case MoveKind::Model: return "model";
        case MoveKind::TauModel: return "tau_model";
    }
    return "?";
}

PetriNet build_trace_model(const DetTrace& trace) {
    if (trace.activities.empty()) {
        throw EmptyTraceError("cannot build a trace model from an empty trace");
    }
    PetriNet net;
    const std::size_t m = trace.activities.size();
    for (std::size_t i = 0; i <= m; ++i) {
        net.add_place(trace_place_id(i));
    }
    for (std::size_t i = 0; i < m; ++i) {
        const std::string& activity = trace.activities[i];
        const std::string id = trace_transition_id(i, activity);
        net.add_transition(id, Label::activity(activity));
        net.add_arc(trace_place_id(i), id);
        net.add_arc(id, trace_place_id(i + 1));
    }
    net.initial_marking = Marking{{trace_place_id(0), 1}};
    net.final_marking = Marking{{trace_place_id(m), 1}};
    return net;
}

WeightedTraceModel build_weighted_trace_model(const ProbTrace& trace) {
    if (trace.events.empty()) {
        throw EmptyTraceError("cannot build a weighted trace model from an empty trace");
    }
    WeightedTraceModel model;
    const std::size_t m = trace.events.size();
    for (std::size_t i = 0; i <= m; ++i) {
        model.net.add_place(trace_place_id(i));
    }
    for (std::size_t i = 0; i < m; ++i) {
        const ProbEvent& event = trace.events[i];
        if (event.candidates.empty()) {
            throw InvalidInputError("event " + std::to_string(i) + " of trace '" +
                                    trace.case_id + "' has no candidates");
        }
        for (const auto& [activity, p] : event.candidates) {
            if (p <= 0 || p > 1) {
                throw InvalidWeightError("probability of '" + activity + "' at event " +
                                         std::to_string(i) + " is outside (0,1]");
            }
            const std::string id = trace_transition_id(i, activity);
            model.net.add_transition(id, Label::activity(activity));
            model.net.add_arc(trace_place_id(i), id);
            model.net.add_arc(id, trace_place_id(i + 1));
            model.weights.push_back(p);
        }
    }
    model.net.initial_marking = Marking{{trace_place_id(0), 1}};
    model.net.final_marking = Marking{{trace_place_id(m), 1}};
    return model;
}

Marking inferred_final_marking(const PetriNet& net) {
    std::unordered_set<std::string> with_outgoing;
    for (const Arc& arc : net.arcs) {
        with_outgoing.insert(arc.source);
    }
    Marking marking;
    for (const std::string& place : net.places) {
        if (with_outgoing.count(place) == 0) {
            marking.add(place);
        }
    }
    if (marking.empty()) {
        throw InvalidInputError(
            "model declares no final marking and has no sink place to infer one from");
    }
    return marking;
}

SyncProductNet build_sync_product(const PetriNet& model, const WeightedTraceModel& trace_model) {
    require_well_formed(model, "process model");
    require_well_formed(trace_model.net, "trace model");
    if (trace_model.weights.size() != trace_model.net.transitions.size()) {
        throw InvalidInputError("trace model weights do not match its transitions");
    }
    if (model.initial_marking.empty()) {
        throw InvalidInputError("process model has no initial marking");
    }
    const Marking model_final =
        model.final_marking.empty() ? inferred_final_marking(model) : model.final_marking;

    SyncProductNet product;
    const std::string model_prefix = "model:";
    const std::string trace_prefix = "trace:";

    for (const std::string& place : model.places) {
        product.net.add_place(model_prefix + place);
    }
    for (const std::string& place : trace_model.net.places) {
        product.net.add_place(trace_prefix + place);
    }

    auto add_model_arcs = [&](const std::string& model_transition, const std::string& id) {
        for (const std::string& place : model.inputs_of(model_transition)) {
            product.net.add_arc(model_prefix + place, id);
        }
        for (const std::string& place : model.outputs_of(model_transition)) {
            product.net.add_arc(id, model_prefix + place);
        }
    };
    auto add_trace_arcs = [&](const std::string& trace_transition, const std::string& id) {
        for (const std::string& place : trace_model.net.inputs_of(trace_transition)) {
            product.net.add_arc(trace_prefix + place, id);
        }
        for (const std::string& place : trace_model.net.outputs_of(trace_transition)) {
            product.net.add_arc(id, trace_prefix + place);
        }
    };

    // Model moves.
    for (const std::string& t : model.transitions) {
        const Label& label = model.label_of(t);
        const std::string id = product_transition_id(t, kGap);
        product.net.add_transition(id, label);
        add_model_arcs(t, id);
        product.kinds.push_back(label.is_tau() ? MoveKind::TauModel : MoveKind::Model);
        product.weights.push_back(1.0);
        product.origins.push_back({t, std::nullopt});
    }

    // Log moves.
    for (std::size_t i = 0; i < trace_model.net.transitions.size(); ++i) {
        const std::string& t = trace_model.net.transitions[i];
        const std::string id = product_transition_id(kGap, t);
        product.net.add_transition(id, trace_model.net.label_of(t));
        add_trace_arcs(t, id);
        product.kinds.push_back(MoveKind::Log);
        product.weights.push_back(trace_model.weights[i]);
        product.origins.push_back({std::nullopt, t});
    }

    // Synchronous moves: label-matching pairs; tau matches no activity.
    for (const std::string& mt : model.transitions) {
        const Label& model_label = model.label_of(mt);
        if (model_label.is_tau()) {
            continue;
        }
        for (std::size_t i = 0; i < trace_model.net.transitions.size(); ++i) {
            const std::string& tt = trace_model.net.transitions[i];
            if (trace_model.net.label_of(tt) != model_label) {
                continue;
            }
            const std::string id = product_transition_id(mt, tt);
            product.net.add_transition(id, model_label);
            add_model_arcs(mt, id);
            add_trace_arcs(tt, id);
            product.kinds.push_back(MoveKind::Sync);
            product.weights.push_back(trace_model.weights[i]);
            product.origins.push_back({mt, tt});
        }
    }

    for (const auto& [place, tokens] : model.initial_marking.counts()) {
        product.net.initial_marking.add(model_prefix + place, tokens);
    }
    for (const auto& [place, tokens] : trace_model.net.initial_marking.counts()) {
        product.net.initial_marking.add(trace_prefix + place, tokens);
    }
    for (const auto& [place, tokens] : model_final.counts()) {
        product.net.final_marking.add(model_prefix + place, tokens);
    }
    for (const auto& [place, tokens] : trace_model.net.final_marking.counts()) {
        product.net.final_marking.add(trace_prefix + place, tokens);
    }
    return product;
}

std::optional<std::size_t> find_transition(const SyncProductNet& product, const std::string& id) {
    for (std::size_t i = 0; i < product.net.transitions.size(); ++i) {
        if (product.net.transitions[i] == id) {
            return i;
        }
    }
    return std::nullopt;
}

}  // namespace probalign
