#include <doctest.h>

#include "probalign/aligner.hpp"
#include "probalign/evaluation.hpp"
#include "support/fixtures.hpp"

using namespace probalign;

namespace {

Alignment probcost_alignment(double epsilon) {
    return align_trace(fixtures::example_model(), fixtures::example_matrix_trace(),
                       CostFunction::weighted(epsilon));
}

}  // namespace

TEST_CASE("recovery of the all-synchronous alignment") {
    const RecoveredTrace recovered = recover(probcost_alignment(0.4));
    CHECK(recovered.activities == std::vector<std::string>{"a", "b", "c"});
    CHECK(recovered.case_id == "eq2");
}

TEST_CASE("recovery of the standard-shaped alignment") {
    const RecoveredTrace recovered = recover(probcost_alignment(0.8));
    CHECK(recovered.activities == std::vector<std::string>{"b", "b", "c"});
}

TEST_CASE("recovery of a perfect deterministic fit is the identity") {
    const DetTrace det{"c", {"a", "b", "c"}};
    const Alignment alignment = align_trace(
        fixtures::example_model(), lift_deterministic(det), CostFunction::standard());
    CHECK(recover(alignment).activities == det.activities);
    CHECK(recovery_accuracy(recover(alignment), det) == doctest::Approx(1.0));
}

TEST_CASE("sync plus log moves cover every event") {
    for (double epsilon : {0.2, 0.4, 0.8}) {
        const Alignment alignment = probcost_alignment(epsilon);
        std::size_t consuming = 0;
        for (const AlignmentMove& move : alignment.moves) {
            if (move.kind == MoveKind::Sync || move.kind == MoveKind::Log) {
                ++consuming;
            }
        }
        CHECK(consuming == 3);
        CHECK(recover(alignment).activities.size() == 3);
        CHECK(classify_moves(alignment).size() == 3);
    }
}

TEST_CASE("recovery accuracy counts positional matches") {
    const RecoveredTrace recovered{"c", {"a", "x", "c"}};
    CHECK(recovery_accuracy(recovered, DetTrace{"c", {"a", "b", "c"}}) ==
          doctest::Approx(2.0 / 3.0));
    CHECK(recovery_accuracy(RecoveredTrace{"c", {"x", "y"}}, DetTrace{"c", {"a", "b"}}) ==
          doctest::Approx(0.0));
    CHECK_THROWS_AS(recovery_accuracy(recovered, DetTrace{"c", {"a"}}),
                    LengthMismatchError);
}

TEST_CASE("classification by move kind") {
    CHECK(classify_moves(probcost_alignment(0.4)) ==
          std::vector<EventLabel>{EventLabel::Normal, EventLabel::Normal,
                                  EventLabel::Normal});
    CHECK(classify_moves(probcost_alignment(0.8)) ==
          std::vector<EventLabel>{EventLabel::Deviation, EventLabel::Normal,
                                  EventLabel::Normal});
}

TEST_CASE("an all-log alignment classifies everything as deviation") {
    const Alignment alignment =
        align_trace(fixtures::linear_model({"q"}), lift_deterministic({"c", {"x", "y"}}),
                    CostFunction::standard());
    for (EventLabel label : classify_moves(alignment)) {
        CHECK(label == EventLabel::Deviation);
    }
}

TEST_CASE("perfect predictions score perfectly") {
    const std::vector<EventLabel> truth = {EventLabel::Normal, EventLabel::Deviation,
                                           EventLabel::Normal, EventLabel::Deviation};
    const EvalReport report = score(truth, truth);
    CHECK(report.accuracy == doctest::Approx(1.0));
    CHECK(report.f1 == doctest::Approx(1.0));
    CHECK(report.g_mean == doctest::Approx(1.0));
    CHECK(!report.degenerate.any());
    CHECK(report.counts.tp == 2);
    CHECK(report.counts.tn == 2);
}

TEST_CASE("all-normal ground truth degenerates sensitivity") {
    const std::vector<EventLabel> truth(5, EventLabel::Normal);
    const std::vector<EventLabel> predicted = {EventLabel::Normal, EventLabel::Deviation,
                                               EventLabel::Normal, EventLabel::Normal,
                                               EventLabel::Normal};
    const EvalReport report = score(predicted, truth);
    CHECK(report.sensitivity == 0.0);
    CHECK(report.degenerate.sensitivity);
    CHECK(report.g_mean == 0.0);
    CHECK(report.degenerate.g_mean);
    CHECK(!report.degenerate.specificity);
}

TEST_CASE("all-deviation ground truth degenerates specificity") {
    const std::vector<EventLabel> truth(4, EventLabel::Deviation);
    const EvalReport report = score(truth, truth);
    CHECK(report.specificity == 0.0);
    CHECK(report.degenerate.specificity);
    CHECK(report.g_mean == 0.0);
    CHECK(report.sensitivity == doctest::Approx(1.0));
}

TEST_CASE("confusion counts use deviation as the positive class") {
    const std::vector<EventLabel> predicted = {EventLabel::Deviation, EventLabel::Deviation,
                                               EventLabel::Normal, EventLabel::Normal};
    const std::vector<EventLabel> truth = {EventLabel::Deviation, EventLabel::Normal,
                                           EventLabel::Deviation, EventLabel::Normal};
    const ConfusionCounts counts = confusion_counts(predicted, truth);
    CHECK(counts.tp == 1);
    CHECK(counts.fp == 1);
    CHECK(counts.fn == 1);
    CHECK(counts.tn == 1);
    CHECK_THROWS_AS(confusion_counts(predicted, {EventLabel::Normal}), LengthMismatchError);

    ConfusionCounts sum;
    sum += counts;
    sum += counts;
    CHECK(sum.total() == 8);
    const EvalReport report = make_report(sum);
    CHECK(report.accuracy == doctest::Approx(0.5));
}
