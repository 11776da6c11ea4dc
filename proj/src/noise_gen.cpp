#include "probalign/noise_gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace probalign {

const char* to_string(EventLabel label) {
    return label == EventLabel::Normal ? "normal" : "deviation";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Uniform double in [0,1) from the top 53 bits of one generator word.
// Spelled out (rather than uniform_real_distribution) so the stream is
// identical across standard library implementations.
double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n) by rejection.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t value;
    do {
        value = rng();
    } while (value >= limit);
    return value % n;
}

// Uniform on the open interval (0.5, 1): rejection of the boundary draw.
double draw_upper_half(std::mt19937_64& rng) {
    double h;
    do {
        h = 0.5 + 0.5 * u01(rng);
    } while (h <= 0.5 || h >= 1.0);
    return h;
}

}  // namespace

InjectionResult inject(const DetTrace& trace, const NoiseConfig& config) {
    if (trace.activities.empty()) {
        throw EmptyTraceError("cannot inject noise into an empty trace");
    }
    if (!(config.p_h >= 0.0 && config.p_h <= 1.0)) {
        throw InvalidInputError("p_h must lie in [0,1]");
    }
    std::vector<std::string> universe = config.activity_universe;
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    if (universe.size() < 2) {
        throw UniverseTooSmallError("the activity universe needs at least 2 activities");
    }

    const std::size_t m = trace.activities.size();
    std::mt19937_64 rng(config.seed);

    // Seeded permutation; the first round(p_h * m) positions get the high
    // probabilities, so the fraction is exact per trace.
    const auto high_count =
        static_cast<std::size_t>(std::llround(config.p_h * static_cast<double>(m)));
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) {
        order[i] = i;
    }
    for (std::size_t i = m; i > 1; --i) {
        const std::uint64_t j = below(rng, i);
        std::swap(order[i - 1], order[j]);
    }
    std::vector<char> high(m, 0);
    for (std::size_t i = 0; i < high_count && i < m; ++i) {
        high[order[i]] = 1;
    }

    InjectionResult result;
    result.trace.case_id = trace.case_id;
    result.trace.events.reserve(m);
    result.events.reserve(m);

    for (std::size_t i = 0; i < m; ++i) {
        const std::string& original = trace.activities[i];
        const bool in_universe =
            std::binary_search(universe.begin(), universe.end(), original);
        const std::uint64_t choices = universe.size() - (in_universe ? 1 : 0);
        if (choices == 0) {
            throw UniverseTooSmallError("no alternative activity available for '" +
                                        original + "'");
        }
        std::uint64_t pick = below(rng, choices);
        std::string added;
        for (const std::string& candidate : universe) {
            if (candidate == original) {
                continue;
            }
            if (pick == 0) {
                added = candidate;
                break;
            }
            --pick;
        }

        // One magnitude draw per event. 1-h is exact for h in (0.5,1), so
        // the two candidate probabilities sum to 1 exactly.
        const double h = draw_upper_half(rng);
        const double p = high[i] ? h : 1.0 - h;
        const double q = 1.0 - p;

        ProbEvent event;
        event.candidates.emplace(original, p);
        event.candidates.emplace(added, q);
        result.trace.events.push_back(std::move(event));
        result.events.push_back(NoisyEvent{original, added, p});
    }
    return result;
}

std::vector<EventLabel> label_ground_truth(const std::vector<NoisyEvent>& events, double t_d) {
    if (!(t_d >= 0.0 && t_d <= 1.0)) {
        throw InvalidInputError("t_d must lie in [0,1]");
    }
    std::vector<EventLabel> labels;
    labels.reserve(events.size());
    for (const NoisyEvent& event : events) {
        const double odds = event.original_prob / (1.0 - event.original_prob);
        labels.push_back(odds >= t_d ? EventLabel::Normal : EventLabel::Deviation);
    }
    return labels;
}

std::uint64_t derive_case_seed(std::uint64_t base_seed, std::uint64_t case_index) {
    return splitmix64(base_seed ^ splitmix64(case_index));
}

}  // namespace probalign
