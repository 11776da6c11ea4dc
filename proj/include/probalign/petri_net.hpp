#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "probalign/errors.hpp"

namespace probalign {

/// A transition label: either a named activity or the silent label tau.
/// Silence is a dedicated state, never a reserved activity name.
class Label {
public:
    static Label tau() { return Label(); }
    static Label activity(std::string name);

    bool is_tau() const { return tau_; }
    const std::string& activity_name() const;

    bool operator==(const Label&) const = default;
    auto operator<=>(const Label&) const = default;

private:
    Label() = default;

    bool tau_ = true;
    std::string name_;
};

/// Token counts per place. Places absent from the map hold zero tokens;
/// the representation never stores zero entries, so equality is canonical.
class Marking {
public:
    Marking() = default;
    Marking(std::initializer_list<std::pair<const std::string, std::uint32_t>> counts);

    std::uint32_t count(const std::string& place) const;
    void set(const std::string& place, std::uint32_t tokens);
    void add(const std::string& place, std::uint32_t tokens = 1);
    void subtract(const std::string& place, std::uint32_t tokens = 1);

    bool empty() const { return counts_.empty(); }
    std::uint64_t total_tokens() const;
    const std::map<std::string, std::uint32_t>& counts() const { return counts_; }

    bool operator==(const Marking&) const = default;
    auto operator<=>(const Marking&) const = default;

private:
    std::map<std::string, std::uint32_t> counts_;
};

struct Arc {
    std::string source;
    std::string target;

    bool operator==(const Arc&) const = default;
};

/// Labelled place/transition net with explicit initial and final markings.
/// Process models, trace models and synchronous products all use this shape.
/// The struct is open so that parsers and tests can assemble raw (possibly
/// ill-formed) nets; validate() reports every broken invariant.
struct PetriNet {
    std::vector<std::string> places;
    std::vector<std::string> transitions;
    std::unordered_map<std::string, Label> labels;  // one entry per transition
    std::vector<Arc> arcs;
    Marking initial_marking;
    Marking final_marking;

    void add_place(std::string id);
    void add_transition(std::string id, Label label);
    void add_arc(std::string source, std::string target);

    bool has_place(const std::string& id) const;
    bool has_transition(const std::string& id) const;
    const Label& label_of(const std::string& transition_id) const;

    /// Input/output places of a transition, in arc order, duplicates removed.
    std::vector<std::string> inputs_of(const std::string& transition_id) const;
    std::vector<std::string> outputs_of(const std::string& transition_id) const;
};

enum class ViolationKind {
    DanglingArc,
    NonBipartiteArc,
    UnlabelledTransition,
    UnknownLabelEntry,
    MarkingOnUnknownPlace,
};

struct Violation {
    ViolationKind kind;
    std::string element;
    std::string message;
};

/// Empty result iff the net satisfies all structural invariants.
std::vector<Violation> validate(const PetriNet& net);

/// Transitions whose every input place carries at least one token,
/// in the net's transition order.
std::vector<std::string> enabled_transitions(const PetriNet& net, const Marking& marking);

/// Fire a transition, returning the successor marking. The input marking is
/// not modified. Throws NotEnabledError if the transition is not enabled.
Marking fire(const PetriNet& net, const Marking& marking, const std::string& transition_id);

}  // namespace probalign
