#include <doctest.h>

#include <random>
#include <set>

#include "probalign/net_builders.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace probalign;

namespace {

double weight_of(const SyncProductNet& product, const std::string& id) {
    const auto index = find_transition(product, id);
    REQUIRE(index.has_value());
    return product.weights[*index];
}

}  // namespace

TEST_CASE("trace model of a three-event trace") {
    const PetriNet net = build_trace_model(DetTrace{"c", {"a", "b", "c"}});
    CHECK(net.places.size() == 4);
    REQUIRE(net.transitions.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(net.label_of(net.transitions[i]) ==
              Label::activity(std::vector<std::string>{"a", "b", "c"}[i]));
    }
    CHECK(net.initial_marking == Marking{{"P0", 1}});
    CHECK(net.final_marking == Marking{{"P3", 1}});
    CHECK(validate(net).empty());
}

TEST_CASE("trace model of a single event") {
    const PetriNet net = build_trace_model(DetTrace{"c", {"a"}});
    CHECK(net.places.size() == 2);
    CHECK(net.transitions.size() == 1);
    CHECK_THROWS_AS(build_trace_model(DetTrace{"c", {}}), EmptyTraceError);
}

TEST_CASE("weighted trace model of the example matrix") {
    const WeightedTraceModel model =
        build_weighted_trace_model(fixtures::example_matrix_trace());
    CHECK(model.net.places.size() == 4);
    REQUIRE(model.net.transitions.size() == 6);
    const std::vector<std::pair<std::string, double>> expected = {
        {"t(e0,a)", 0.3}, {"t(e0,b)", 0.7}, {"t(e1,b)", 0.7},
        {"t(e1,c)", 0.3}, {"t(e2,b)", 0.3}, {"t(e2,c)", 0.7},
    };
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(model.net.transitions[i] == expected[i].first);
        CHECK(model.weights[i] == doctest::Approx(expected[i].second).epsilon(1e-12));
    }
    CHECK(validate(model.net).empty());
}

TEST_CASE("a lifted deterministic trace yields the plain trace model with unit weights") {
    const DetTrace det{"c", {"a", "b"}};
    const WeightedTraceModel weighted = build_weighted_trace_model(lift_deterministic(det));
    const PetriNet plain = build_trace_model(det);
    CHECK(weighted.net.places == plain.places);
    CHECK(weighted.net.transitions == plain.transitions);
    CHECK(weighted.net.arcs == plain.arcs);
    for (double w : weighted.weights) {
        CHECK(w == 1.0);
    }
}

TEST_CASE("an event with three candidates becomes three parallel transitions") {
    ProbTrace trace;
    trace.case_id = "c";
    ProbEvent event;
    event.candidates = {{"a", 0.2}, {"b", 0.3}, {"c", 0.5}};
    trace.events.push_back(event);
    const WeightedTraceModel model = build_weighted_trace_model(trace);
    CHECK(model.net.transitions.size() == 3);
    for (const std::string& transition : model.net.transitions) {
        CHECK(model.net.inputs_of(transition) == std::vector<std::string>{"P0"});
        CHECK(model.net.outputs_of(transition) == std::vector<std::string>{"P1"});
    }
}

TEST_CASE("product of the example model and matrix") {
    const SyncProductNet product =
        build_sync_product(fixtures::example_model(),
                           build_weighted_trace_model(fixtures::example_matrix_trace()));
    // 6 model moves + 6 log moves + 6 label-matching pairs
    CHECK(product.net.transitions.size() == 18);
    CHECK(validate(product.net).empty());

    CHECK(weight_of(product, "(t_a,t(e0,a))") == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(weight_of(product, "(t_b,t(e0,b))") == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(weight_of(product, "(t_b,t(e1,b))") == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(weight_of(product, "(t_b,t(e2,b))") == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(weight_of(product, "(t_a,>>)") == 1.0);

    const auto sync = find_transition(product, "(t_a,t(e0,a))");
    CHECK(product.kinds[*sync] == MoveKind::Sync);
    const auto tau = find_transition(product, "(t_tau,>>)");
    CHECK(product.kinds[*tau] == MoveKind::TauModel);
    const auto log_move = find_transition(product, "(>>,t(e0,a))");
    CHECK(product.kinds[*log_move] == MoveKind::Log);

    CHECK(product.net.initial_marking == Marking{{"model:p0", 1}, {"trace:P0", 1}});
    CHECK(product.net.final_marking == Marking{{"model:p3", 1}, {"trace:P3", 1}});
}

TEST_CASE("no label overlap means no synchronous moves") {
    const PetriNet model = fixtures::linear_model({"x", "y"});
    const SyncProductNet product = build_sync_product(
        model, build_weighted_trace_model(lift_deterministic(DetTrace{"c", {"a", "b"}})));
    for (MoveKind kind : product.kinds) {
        CHECK(kind != MoveKind::Sync);
    }
    CHECK(product.net.transitions.size() == 4);
}

TEST_CASE("product transition count matches brute-force pair enumeration") {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 60; ++round) {
        const PetriNet model = gen::random_model(rng);
        const WeightedTraceModel trace_model =
            build_weighted_trace_model(gen::random_prob_trace(rng, 4, 3));
        const SyncProductNet product = build_sync_product(model, trace_model);

        std::size_t pairs = 0;
        for (const std::string& mt : model.transitions) {
            if (model.label_of(mt).is_tau()) {
                continue;
            }
            for (const std::string& tt : trace_model.net.transitions) {
                if (trace_model.net.label_of(tt) == model.label_of(mt)) {
                    ++pairs;
                }
            }
        }
        CHECK(product.net.transitions.size() ==
              model.transitions.size() + trace_model.net.transitions.size() + pairs);

        // Sync moves connect exactly the union of their origins' places.
        for (std::size_t i = 0; i < product.net.transitions.size(); ++i) {
            if (product.kinds[i] != MoveKind::Sync) {
                continue;
            }
            const std::string& id = product.net.transitions[i];
            std::set<std::string> expected_inputs;
            for (const std::string& p : model.inputs_of(*product.origins[i].model)) {
                expected_inputs.insert("model:" + p);
            }
            for (const std::string& p :
                 trace_model.net.inputs_of(*product.origins[i].trace)) {
                expected_inputs.insert("trace:" + p);
            }
            const auto actual = product.net.inputs_of(id);
            CHECK(std::set<std::string>(actual.begin(), actual.end()) == expected_inputs);
        }

        // Silent model transitions never synchronise.
        for (std::size_t i = 0; i < product.net.transitions.size(); ++i) {
            if (product.kinds[i] == MoveKind::Sync) {
                CHECK(!product.net.label_of(product.net.transitions[i]).is_tau());
            }
        }
    }
}

TEST_CASE("final marking inference picks sink places") {
    PetriNet model = fixtures::linear_model({"a", "b"});
    model.final_marking = Marking{};
    CHECK(inferred_final_marking(model) == Marking{{"s2", 1}});

    const SyncProductNet product = build_sync_product(
        model, build_weighted_trace_model(lift_deterministic(DetTrace{"c", {"a"}})));
    CHECK(product.net.final_marking == Marking{{"model:s2", 1}, {"trace:P1", 1}});

    PetriNet cyclic;
    cyclic.add_place("p");
    cyclic.add_transition("t", Label::tau());
    cyclic.add_arc("p", "t");
    cyclic.add_arc("t", "p");
    CHECK_THROWS_AS(inferred_final_marking(cyclic), InvalidInputError);
}
