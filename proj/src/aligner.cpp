#include "probalign/aligner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace probalign {

CostFunction CostFunction::weighted(double epsilon) {
    if (!(epsilon >= kMinEpsilon && epsilon <= kMaxEpsilon)) {
        throw InvalidEpsilonError("epsilon must lie in [" + std::to_string(kMinEpsilon) +
                                  ", " + std::to_string(kMaxEpsilon) + "], got " +
                                  std::to_string(epsilon));
    }
    CostFunction cf;
    cf.kind_ = Kind::Weighted;
    cf.epsilon_ = epsilon;
    return cf;
}

double CostFunction::epsilon() const {
    if (kind_ != Kind::Weighted) {
        throw InvalidInputError("the standard cost function has no epsilon");
    }
    return epsilon_;
}

double move_cost(MoveKind kind, double weight, const CostFunction& cost) {
    if (!(weight > 0.0 && weight <= 1.0)) {
        throw InvalidWeightError("move weight must lie in (0,1], got " +
                                 std::to_string(weight));
    }
    if (cost.kind() == CostFunction::Kind::Standard) {
        switch (kind) {
            case MoveKind::Sync:
            case MoveKind::TauModel:
                return 0.0;
            case MoveKind::Log:
            case MoveKind::Model:
                return 1.0;
        }
    }
    const double log_eps = std::log(cost.epsilon());
    switch (kind) {
        case MoveKind::TauModel: return 0.0;
        case MoveKind::Sync: return -std::log(weight);
        case MoveKind::Log: return -std::log(weight) - log_eps;
        case MoveKind::Model: return -log_eps;
    }
    return 0.0;
}

namespace {

using Clock = std::chrono::steady_clock;

// Equal-cost paths are ranked by their per-step (kind, id) sequence.
// Silent moves sort first so free routing noise never displaces a labelled
// choice; sync moves sort last, which keeps the decision boundary of the
// single-event instance strict (at an exact tie the model/log pair wins).
int kind_rank(MoveKind kind) {
    switch (kind) {
        case MoveKind::TauModel: return 0;
        case MoveKind::Model: return 1;
        case MoveKind::Log: return 2;
        case MoveKind::Sync: return 3;
    }
    return 4;
}

// Costs within 1e-12 of each other count as ties; quantising keeps the
// comparison a strict total order.
std::int64_t quantise(double g) {
    return std::llround(g * 1e12);
}

struct CompiledTransition {
    std::uint32_t product_index = 0;
    double cost = 0;
    std::vector<std::uint32_t> inputs;
    std::vector<std::uint32_t> outputs;
};

struct Compiled {
    std::vector<CompiledTransition> transitions;  // sorted by (kind, id)
    std::vector<std::uint32_t> initial;
    std::vector<std::uint32_t> final_marking;
};

Compiled compile(const SyncProductNet& product, const CostFunction& cost) {
    const PetriNet& net = product.net;
    Compiled compiled;

    std::unordered_map<std::string, std::uint32_t> place_index;
    place_index.reserve(net.places.size());
    for (std::uint32_t i = 0; i < net.places.size(); ++i) {
        place_index.emplace(net.places[i], i);
    }

    std::vector<std::uint32_t> order(net.transitions.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const int ra = kind_rank(product.kinds[a]);
        const int rb = kind_rank(product.kinds[b]);
        if (ra != rb) return ra < rb;
        return net.transitions[a] < net.transitions[b];
    });

    compiled.transitions.reserve(order.size());
    for (std::uint32_t index : order) {
        CompiledTransition t;
        t.product_index = index;
        t.cost = move_cost(product.kinds[index], product.weights[index], cost);
        for (const std::string& place : net.inputs_of(net.transitions[index])) {
            t.inputs.push_back(place_index.at(place));
        }
        for (const std::string& place : net.outputs_of(net.transitions[index])) {
            t.outputs.push_back(place_index.at(place));
        }
        compiled.transitions.push_back(std::move(t));
    }

    compiled.initial.assign(net.places.size(), 0);
    for (const auto& [place, tokens] : net.initial_marking.counts()) {
        compiled.initial[place_index.at(place)] = tokens;
    }
    compiled.final_marking.assign(net.places.size(), 0);
    for (const auto& [place, tokens] : net.final_marking.counts()) {
        compiled.final_marking[place_index.at(place)] = tokens;
    }
    return compiled;
}

struct MarkingHash {
    std::size_t operator()(const std::vector<std::uint32_t>& m) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::uint32_t v : m) {
            h ^= v;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

struct SearchEntry {
    double g = 0;
    std::int64_t qg = 0;
    std::uint32_t state = 0;
    std::int32_t parent = -1;
    std::int32_t transition = -1;       // index into Compiled::transitions
    std::vector<std::uint32_t> key;     // per-step tie ranks along the path
};

}  // namespace

Alignment align(const SyncProductNet& product, const CostFunction& cost,
                const SearchLimits& limits) {
    const auto started = Clock::now();
    const Compiled compiled = compile(product, cost);

    std::vector<std::vector<std::uint32_t>> markings;
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, MarkingHash> marking_index;
    std::vector<char> closed;

    auto intern = [&](std::vector<std::uint32_t> marking) -> std::uint32_t {
        auto it = marking_index.find(marking);
        if (it != marking_index.end()) {
            return it->second;
        }
        const auto id = static_cast<std::uint32_t>(markings.size());
        marking_index.emplace(marking, id);
        markings.push_back(std::move(marking));
        closed.push_back(0);
        return id;
    };

    const std::uint32_t initial_state = intern(compiled.initial);
    const std::uint32_t final_state = intern(compiled.final_marking);

    std::vector<SearchEntry> entries;
    entries.push_back(SearchEntry{0.0, 0, initial_state, -1, -1, {}});

    auto better = [&entries](std::uint32_t a, std::uint32_t b) {
        // std::priority_queue returns the largest element, so compare with
        // "a worse than b".
        const SearchEntry& ea = entries[a];
        const SearchEntry& eb = entries[b];
        if (ea.qg != eb.qg) return ea.qg > eb.qg;
        return ea.key > eb.key;
    };
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, decltype(better)> open(
        better);
    open.push(0);

    SearchStats stats;
    stats.generated = 1;
    stats.queue_peak = 1;

    auto elapsed_seconds = [&started]() {
        return std::chrono::duration<double>(Clock::now() - started).count();
    };

    std::int32_t goal_entry = -1;
    while (!open.empty()) {
        const std::uint32_t entry_index = open.top();
        open.pop();
        const std::uint32_t state = entries[entry_index].state;
        if (closed[state]) {
            continue;
        }
        closed[state] = 1;
        ++stats.expanded;
        if (stats.expanded > limits.max_expansions) {
            throw ExpansionBudgetError("alignment search exceeded " +
                                       std::to_string(limits.max_expansions) + " expansions");
        }
        if (limits.max_seconds > 0 && (stats.expanded & 0xFFF) == 0 &&
            elapsed_seconds() > limits.max_seconds) {
            throw SearchTimeoutError("alignment search exceeded " +
                                     std::to_string(limits.max_seconds) + " seconds");
        }
        if (state == final_state) {
            goal_entry = static_cast<std::int32_t>(entry_index);
            break;
        }

        // Copy: intern() may grow `markings` while we expand.
        const std::vector<std::uint32_t> marking = markings[state];
        for (std::uint32_t t = 0; t < compiled.transitions.size(); ++t) {
            const CompiledTransition& transition = compiled.transitions[t];
            bool enabled = true;
            for (std::uint32_t place : transition.inputs) {
                if (marking[place] == 0) {
                    enabled = false;
                    break;
                }
            }
            if (!enabled) {
                continue;
            }
            std::vector<std::uint32_t> next = marking;
            for (std::uint32_t place : transition.inputs) {
                --next[place];
            }
            for (std::uint32_t place : transition.outputs) {
                ++next[place];
            }
            const std::uint32_t next_state = intern(std::move(next));
            if (closed[next_state]) {
                continue;
            }
            SearchEntry child;
            child.g = entries[entry_index].g + transition.cost;
            child.qg = quantise(child.g);
            child.state = next_state;
            child.parent = static_cast<std::int32_t>(entry_index);
            child.transition = static_cast<std::int32_t>(t);
            child.key = entries[entry_index].key;
            child.key.push_back(t);
            entries.push_back(std::move(child));
            open.push(static_cast<std::uint32_t>(entries.size() - 1));
            ++stats.generated;
            stats.queue_peak = std::max(stats.queue_peak, open.size());
        }
    }

    if (goal_entry < 0) {
        throw NoAlignmentError("the product's final marking is unreachable");
    }

    std::vector<std::int32_t> chain;
    for (std::int32_t at = goal_entry; entries[at].transition >= 0; at = entries[at].parent) {
        chain.push_back(entries[at].transition);
    }
    std::reverse(chain.begin(), chain.end());

    Alignment result;
    result.cost_function = cost;
    result.moves.reserve(chain.size());
    for (std::int32_t t : chain) {
        const CompiledTransition& transition = compiled.transitions[t];
        const std::uint32_t index = transition.product_index;
        AlignmentMove move;
        move.transition_id = product.net.transitions[index];
        move.kind = product.kinds[index];
        move.weight = product.weights[index];
        move.cost = transition.cost;
        const TransitionOrigin& origin = product.origins[index];
        if (origin.model.has_value()) {
            const Label& label = product.net.label_of(move.transition_id);
            if (!label.is_tau()) {
                move.model_label = label.activity_name();
            }
        }
        if (origin.trace.has_value()) {
            move.trace_label = product.net.label_of(move.transition_id).activity_name();
        }
        result.total_cost += move.cost;
        result.moves.push_back(std::move(move));
    }
    stats.elapsed_seconds = elapsed_seconds();
    result.stats = stats;
    return result;
}

Alignment align_trace(const PetriNet& model, const ProbTrace& trace, const CostFunction& cost,
                      const SearchLimits& limits) {
    const WeightedTraceModel trace_model = build_weighted_trace_model(trace);
    const SyncProductNet product = build_sync_product(model, trace_model);
    Alignment alignment = align(product, cost, limits);
    alignment.case_id = trace.case_id;
    return alignment;
}

double shortest_model_path_cost(const PetriNet& model, const SearchLimits& limits) {
    const Marking final_marking =
        model.final_marking.empty() ? inferred_final_marking(model) : model.final_marking;

    // Uniform-cost search over model markings: visible transitions cost 1,
    // silent transitions are free.
    std::map<Marking, double> best;
    using QueueItem = std::pair<double, Marking>;
    std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> open;
    open.emplace(0.0, model.initial_marking);
    best.emplace(model.initial_marking, 0.0);

    std::uint64_t expanded = 0;
    while (!open.empty()) {
        auto [g, marking] = open.top();
        open.pop();
        auto settled = best.find(marking);
        if (settled != best.end() && g > settled->second) {
            continue;
        }
        if (++expanded > limits.max_expansions) {
            throw ExpansionBudgetError("model path search exceeded " +
                                       std::to_string(limits.max_expansions) + " expansions");
        }
        if (marking == final_marking) {
            return g;
        }
        for (const std::string& transition : enabled_transitions(model, marking)) {
            const double cost = model.label_of(transition).is_tau() ? 0.0 : 1.0;
            Marking next = fire(model, marking, transition);
            const double next_g = g + cost;
            auto it = best.find(next);
            if (it == best.end() || next_g < it->second) {
                best[next] = next_g;
                open.emplace(next_g, std::move(next));
            }
        }
    }
    throw NoAlignmentError("the model's final marking is unreachable");
}

double fitness(const Alignment& alignment, const PetriNet& model, std::size_t trace_length) {
    if (alignment.cost_function.kind() != CostFunction::Kind::Standard) {
        throw InvalidInputError("fitness is only defined for standard-cost alignments");
    }
    const double worst = static_cast<double>(trace_length) + shortest_model_path_cost(model);
    const double value = 1.0 - alignment.total_cost / worst;
    return std::min(1.0, std::max(0.0, value));
}

}  // namespace probalign
