#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "probalign/prob_log.hpp"

namespace probalign {

enum class EventLabel { Normal, Deviation };

const char* to_string(EventLabel label);

/// Controls the noise protocol: each event keeps its original activity with
/// probability p and gains one random alternative with probability 1-p.
/// A fraction p_h of the events (count = round(p_h * m), chosen by a seeded
/// shuffle) draw p from (0.5, 1); the rest draw from (0, 0.5).
struct NoiseConfig {
    double p_h = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::string> activity_universe;  // needs at least 2 activities
};

struct NoisyEvent {
    std::string original;
    std::string added;
    double original_prob = 0;
};

struct InjectionResult {
    ProbTrace trace;
    std::vector<NoisyEvent> events;
};

/// Ground-truth sidecar for one case.
struct TraceGroundTruth {
    std::string case_id;
    std::vector<NoisyEvent> events;
    std::vector<EventLabel> labels;
};

/// Turns a deterministic trace into a two-candidate probabilistic one.
/// The two probabilities always sum to 1 exactly. Fully reproducible from
/// the seed; the generator is a seeded mt19937_64 with the draw derivations
/// described in the README.
InjectionResult inject(const DetTrace& trace, const NoiseConfig& config);

/// Normal iff the odds of the original activity, p/(1-p), reach t_d.
std::vector<EventLabel> label_ground_truth(const std::vector<NoisyEvent>& events, double t_d);

/// Per-case seed for parallel generation: splitmix64(base ^ splitmix64(index)).
std::uint64_t derive_case_seed(std::uint64_t base_seed, std::uint64_t case_index);

}  // namespace probalign
