#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "probalign/net_builders.hpp"
#include "probalign/petri_net.hpp"
#include "probalign/prob_log.hpp"

namespace probalign {

/// Alignment cost regime: the classic unit-cost function, or the weighted
/// one parameterised by the trust threshold epsilon. Low epsilon trusts the
/// process model; high epsilon trusts the event probabilities.
class CostFunction {
public:
    enum class Kind { Standard, Weighted };

    static constexpr double kMinEpsilon = 1e-6;
    static constexpr double kMaxEpsilon = 1.0 - 1e-6;

    CostFunction() : kind_(Kind::Standard) {}

    static CostFunction standard() { return CostFunction(); }
    static CostFunction weighted(double epsilon);

    Kind kind() const { return kind_; }
    double epsilon() const;

private:
    Kind kind_;
    double epsilon_ = 0.0;
};

/// Cost of firing one product transition.
///   Standard: 0 for synchronous and silent model moves, 1 otherwise.
///   Weighted: 0 for silent model moves, -log(w) for synchronous moves,
///             -log(w) - log(eps) for log moves, -log(eps) for model moves.
/// Natural logarithm throughout. Throws InvalidWeightError unless
/// weight is in (0,1].
double move_cost(MoveKind kind, double weight, const CostFunction& cost);

struct SearchLimits {
    std::uint64_t max_expansions = 5'000'000;
    double max_seconds = 0;  // 0 disables the time budget
};

struct SearchStats {
    std::uint64_t expanded = 0;
    std::uint64_t generated = 0;
    std::size_t queue_peak = 0;
    double elapsed_seconds = 0;
};

struct AlignmentMove {
    std::string transition_id;
    MoveKind kind = MoveKind::Model;
    std::optional<std::string> model_label;  // empty for log moves and silent moves
    std::optional<std::string> trace_label;  // empty for model moves
    double weight = 1.0;
    double cost = 0.0;
};

struct Alignment {
    std::string case_id;
    std::vector<AlignmentMove> moves;
    double total_cost = 0.0;
    CostFunction cost_function;
    SearchStats stats;
};

/// Minimum-cost firing sequence from the product's initial to its final
/// marking (uniform-cost search; the heuristic slot is intentionally the
/// zero heuristic). Deterministic: among equal-cost paths (tolerance 1e-12)
/// the one whose per-step (move kind, transition id) sequence is
/// lexicographically smallest wins, with kinds ordered
/// silent < model < log < sync.
/// Throws NoAlignmentError if the final marking is unreachable and
/// ExpansionBudgetError / SearchTimeoutError when limits are hit.
Alignment align(const SyncProductNet& product, const CostFunction& cost,
                const SearchLimits& limits = {});

/// Convenience composition: weighted trace model, product, search.
Alignment align_trace(const PetriNet& model, const ProbTrace& trace, const CostFunction& cost,
                      const SearchLimits& limits = {});

/// Minimum number of visible transitions on a path from the model's initial
/// to its final marking (silent transitions are free).
double shortest_model_path_cost(const PetriNet& model, const SearchLimits& limits = {});

/// 1 - cost / (trace length + cheapest all-model-move path). Only defined
/// for standard-cost alignments; throws InvalidInputError otherwise.
double fitness(const Alignment& alignment, const PetriNet& model, std::size_t trace_length);

}  // namespace probalign
