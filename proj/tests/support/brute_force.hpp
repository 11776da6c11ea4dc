#pragma once

// Exhaustive alignment oracle: enumerates every firing sequence of the
// product net (repeated markings pruned within a path, so only simple paths
// are walked; dropping a zero-or-positive-cost cycle never hurts the
// optimum). Deliberately built on the plain petri-net firing API rather
// than the search's compiled representation.

#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "probalign/aligner.hpp"
#include "probalign/net_builders.hpp"
#include "probalign/petri_net.hpp"

namespace oracle {

struct Result {
    bool reachable = false;
    double min_cost = std::numeric_limits<double>::infinity();
};

namespace detail {

inline void walk(const probalign::SyncProductNet& product,
                 const std::vector<double>& transition_costs, const probalign::Marking& at,
                 double cost_so_far, std::set<probalign::Marking>& on_path, Result& result) {
    if (cost_so_far >= result.min_cost) {
        return;
    }
    if (at == product.net.final_marking) {
        result.reachable = true;
        result.min_cost = cost_so_far;
        return;
    }
    for (std::size_t i = 0; i < product.net.transitions.size(); ++i) {
        const std::string& transition = product.net.transitions[i];
        bool enabled = true;
        for (const std::string& place : product.net.inputs_of(transition)) {
            if (at.count(place) == 0) {
                enabled = false;
                break;
            }
        }
        if (!enabled) {
            continue;
        }
        probalign::Marking next = probalign::fire(product.net, at, transition);
        if (!on_path.insert(next).second) {
            continue;  // already on the current path
        }
        walk(product, transition_costs, next, cost_so_far + transition_costs[i], on_path,
             result);
        on_path.erase(next);
    }
}

}  // namespace detail

inline Result min_alignment_cost(const probalign::SyncProductNet& product,
                                 const probalign::CostFunction& cost) {
    std::vector<double> costs;
    costs.reserve(product.net.transitions.size());
    for (std::size_t i = 0; i < product.net.transitions.size(); ++i) {
        costs.push_back(probalign::move_cost(product.kinds[i], product.weights[i], cost));
    }
    Result result;
    std::set<probalign::Marking> on_path;
    on_path.insert(product.net.initial_marking);
    detail::walk(product, costs, product.net.initial_marking, 0.0, on_path, result);
    return result;
}

}  // namespace oracle
