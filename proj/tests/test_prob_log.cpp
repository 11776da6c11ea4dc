#include <doctest.h>

#include <random>

#include "probalign/prob_log.hpp"
#include "support/fixtures.hpp"

using namespace probalign;

TEST_CASE("the example matrix validates cleanly") {
    const ProbEventLog log = make_log({fixtures::example_matrix_trace()});
    CHECK(validate_log(log).empty());
}

TEST_CASE("probability sums outside tolerance are reported") {
    ProbTrace trace;
    trace.case_id = "c";
    ProbEvent event;
    event.candidates = {{"a", 0.5}, {"b", 0.4}};
    trace.events.push_back(event);
    const auto violations = validate_log(make_log({trace}));
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == LogViolationKind::SumOutOfTolerance);
    CHECK(violations[0].case_id == "c");
    CHECK(violations[0].event_index == 0);
}

TEST_CASE("a deterministic event is a valid distribution") {
    ProbTrace trace;
    trace.case_id = "c";
    ProbEvent event;
    event.candidates = {{"a", 1.0}};
    trace.events.push_back(event);
    CHECK(validate_log(make_log({trace})).empty());
}

TEST_CASE("out-of-range probabilities and unknown activities are reported") {
    ProbTrace trace;
    trace.case_id = "c";
    ProbEvent event;
    event.candidates = {{"a", -0.2}, {"b", 1.2}};
    trace.events.push_back(event);
    ProbEventLog log = make_log({trace});
    log.activity_universe.erase("b");
    const auto violations = validate_log(log);
    REQUIRE(violations.size() == 3);
    CHECK(violations[0].kind == LogViolationKind::NonPositiveProbability);
    CHECK(violations[1].kind == LogViolationKind::ProbabilityAboveOne);
    CHECK(violations[2].kind == LogViolationKind::UnknownActivity);
}

TEST_CASE("argmax of the example matrix") {
    const DetTrace trace = argmax_trace(fixtures::example_matrix_trace());
    CHECK(trace.activities == std::vector<std::string>{"b", "b", "c"});
}

TEST_CASE("argmax of a single deterministic event") {
    ProbTrace trace;
    trace.case_id = "c";
    ProbEvent event;
    event.candidates = {{"a", 1.0}};
    trace.events.push_back(event);
    CHECK(argmax_trace(trace).activities == std::vector<std::string>{"a"});
}

TEST_CASE("argmax breaks exact ties lexicographically") {
    ProbTrace trace;
    trace.case_id = "c";
    ProbEvent event;
    event.candidates = {{"b", 0.5}, {"a", 0.5}};
    trace.events.push_back(event);
    CHECK(argmax_trace(trace).activities == std::vector<std::string>{"a"});
}

TEST_CASE("lifting a deterministic trace") {
    const DetTrace det{"c", {"a", "b", "c"}};
    const ProbTrace lifted = lift_deterministic(det);
    REQUIRE(lifted.events.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        REQUIRE(lifted.events[i].candidates.size() == 1);
        CHECK(lifted.events[i].candidates.begin()->first == det.activities[i]);
        CHECK(lifted.events[i].candidates.begin()->second == 1.0);
    }
    CHECK(validate_log(make_log({lifted})).empty());
    CHECK_THROWS_AS(lift_deterministic(DetTrace{"c", {}}), EmptyTraceError);
}

TEST_CASE("argmax of a lifted trace is the identity") {
    std::mt19937_64 rng(11);
    const std::vector<std::string> pool = {"a", "b", "c", "d"};
    for (int round = 0; round < 50; ++round) {
        DetTrace det;
        det.case_id = "c";
        const std::size_t length = 1 + rng() % 6;
        for (std::size_t i = 0; i < length; ++i) {
            det.activities.push_back(pool[rng() % pool.size()]);
        }
        const DetTrace round_trip = argmax_trace(lift_deterministic(det));
        CHECK(round_trip.activities == det.activities);
    }
}

TEST_CASE("argmax ignores tie-free rescaling") {
    std::mt19937_64 rng(13);
    const std::vector<std::string> pool = {"a", "b", "c", "d"};
    for (int round = 0; round < 50; ++round) {
        ProbTrace first, second;
        first.case_id = second.case_id = "c";
        const std::size_t length = 1 + rng() % 5;
        for (std::size_t i = 0; i < length; ++i) {
            // Distinct per-candidate magnitudes, two different normalisations
            // sharing the ordering.
            ProbEvent strong, weak;
            const std::size_t candidates = 1 + rng() % 3;
            std::vector<std::string> chosen;
            while (chosen.size() < candidates) {
                const std::string activity = pool[rng() % pool.size()];
                if (std::find(chosen.begin(), chosen.end(), activity) == chosen.end()) {
                    chosen.push_back(activity);
                }
            }
            double strong_sum = 0;
            double weak_sum = 0;
            for (std::size_t rank = 0; rank < chosen.size(); ++rank) {
                strong_sum += 1.0 + static_cast<double>(rank);
                weak_sum += 1.0 + 3.0 * static_cast<double>(rank);
            }
            for (std::size_t rank = 0; rank < chosen.size(); ++rank) {
                strong.candidates[chosen[rank]] =
                    (1.0 + static_cast<double>(rank)) / strong_sum;
                weak.candidates[chosen[rank]] =
                    (1.0 + 3.0 * static_cast<double>(rank)) / weak_sum;
            }
            first.events.push_back(strong);
            second.events.push_back(weak);
        }
        CHECK(argmax_trace(first).activities == argmax_trace(second).activities);
    }
}

TEST_CASE("as_deterministic recognises lifted traces only") {
    const DetTrace det{"c", {"a", "b"}};
    CHECK(as_deterministic(lift_deterministic(det))->activities == det.activities);
    CHECK(!as_deterministic(fixtures::example_matrix_trace()).has_value());
}
