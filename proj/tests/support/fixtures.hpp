#pragma once

// Shared hand-built fixtures: the example process model (a choice of b/d,
// then c/e, behind an initial a, with a silent loop back) and the
// three-event probability matrix used throughout the worked examples.

#include "probalign/petri_net.hpp"
#include "probalign/prob_log.hpp"

namespace fixtures {

inline probalign::PetriNet example_model() {
    using probalign::Label;
    probalign::PetriNet net;
    for (const char* place : {"p0", "p1", "p2", "p3"}) {
        net.add_place(place);
    }
    net.add_transition("t_a", Label::activity("a"));
    net.add_transition("t_b", Label::activity("b"));
    net.add_transition("t_c", Label::activity("c"));
    net.add_transition("t_d", Label::activity("d"));
    net.add_transition("t_e", Label::activity("e"));
    net.add_transition("t_tau", Label::tau());
    net.add_arc("p0", "t_a");
    net.add_arc("t_a", "p1");
    net.add_arc("p1", "t_b");
    net.add_arc("t_b", "p2");
    net.add_arc("p1", "t_d");
    net.add_arc("t_d", "p2");
    net.add_arc("p2", "t_c");
    net.add_arc("t_c", "p3");
    net.add_arc("p2", "t_e");
    net.add_arc("t_e", "p3");
    net.add_arc("p3", "t_tau");
    net.add_arc("t_tau", "p1");
    net.initial_marking = probalign::Marking{{"p0", 1}};
    net.final_marking = probalign::Marking{{"p3", 1}};
    return net;
}

// e0: a 0.3 / b 0.7;  e1: b 0.7 / c 0.3;  e2: b 0.3 / c 0.7
inline probalign::ProbTrace example_matrix_trace() {
    probalign::ProbTrace trace;
    trace.case_id = "eq2";
    probalign::ProbEvent e0, e1, e2;
    e0.candidates = {{"a", 0.3}, {"b", 0.7}};
    e1.candidates = {{"b", 0.7}, {"c", 0.3}};
    e2.candidates = {{"b", 0.3}, {"c", 0.7}};
    trace.events = {e0, e1, e2};
    return trace;
}

inline probalign::PetriNet linear_model(const std::vector<std::string>& activities) {
    probalign::PetriNet net;
    for (std::size_t i = 0; i <= activities.size(); ++i) {
        net.add_place("s" + std::to_string(i));
    }
    for (std::size_t i = 0; i < activities.size(); ++i) {
        const std::string id = "u" + std::to_string(i);
        net.add_transition(id, probalign::Label::activity(activities[i]));
        net.add_arc("s" + std::to_string(i), id);
        net.add_arc(id, "s" + std::to_string(i + 1));
    }
    net.initial_marking = probalign::Marking{{"s0", 1}};
    net.final_marking = probalign::Marking{{"s" + std::to_string(activities.size()), 1}};
    return net;
}

}  // namespace fixtures
