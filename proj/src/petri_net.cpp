#include "probalign/petri_net.hpp"

#include <algorithm>
#include <unordered_set>

namespace probalign {

Label Label::activity(std::string name) {
    if (name.empty()) {
        throw InvalidInputError("activity name must be a non-empty string");
    }
    Label label;
    label.tau_ = false;
    label.name_ = std::move(name);
    return label;
}

const std::string& Label::activity_name() const {
    if (tau_) {
        throw InvalidInputError("the silent label has no activity name");
    }
    return name_;
}

Marking::Marking(std::initializer_list<std::pair<const std::string, std::uint32_t>> counts) {
    for (const auto& [place, tokens] : counts) {
        set(place, tokens);
    }
}

std::uint32_t Marking::count(const std::string& place) const {
    auto it = counts_.find(place);
    return it == counts_.end() ? 0 : it->second;
}

void Marking::set(const std::string& place, std::uint32_t tokens) {
    if (tokens == 0) {
        counts_.erase(place);
    } else {
        counts_[place] = tokens;
    }
}

void Marking::add(const std::string& place, std::uint32_t tokens) {
    if (tokens > 0) {
        counts_[place] += tokens;
    }
}

void Marking::subtract(const std::string& place, std::uint32_t tokens) {
    auto it = counts_.find(place);
    const std::uint32_t have = it == counts_.end() ? 0 : it->second;
    if (have < tokens) {
        throw InvalidInputError("marking underflow on place '" + place + "'");
    }
    if (have == tokens) {
        counts_.erase(it);
    } else {
        it->second = have - tokens;
    }
}

std::uint64_t Marking::total_tokens() const {
    std::uint64_t total = 0;
    for (const auto& [place, tokens] : counts_) {
        total += tokens;
    }
    return total;
}

void PetriNet::add_place(std::string id) {
    if (id.empty()) {
        throw InvalidInputError("place id must be non-empty");
    }
    if (has_place(id)) {
        throw InvalidInputError("duplicate place id '" + id + "'");
    }
    places.push_back(std::move(id));
}

void PetriNet::add_transition(std::string id, Label label) {
    if (id.empty()) {
        throw InvalidInputError("transition id must be non-empty");
    }
    if (has_transition(id)) {
        throw InvalidInputError("duplicate transition id '" + id + "'");
    }
    labels.emplace(id, std::move(label));
    transitions.push_back(std::move(id));
}

void PetriNet::add_arc(std::string source, std::string target) {
    arcs.push_back(Arc{std::move(source), std::move(target)});
}

bool PetriNet::has_place(const std::string& id) const {
    return std::find(places.begin(), places.end(), id) != places.end();
}

bool PetriNet::has_transition(const std::string& id) const {
    return std::find(transitions.begin(), transitions.end(), id) != transitions.end();
}

const Label& PetriNet::label_of(const std::string& transition_id) const {
    auto it = labels.find(transition_id);
    if (it == labels.end()) {
        throw InvalidInputError("no label for transition '" + transition_id + "'");
    }
    return it->second;
}

namespace {

std::vector<std::string> arc_neighbours(const PetriNet& net, const std::string& transition_id,
                                        bool incoming) {
    std::vector<std::string> result;
    std::unordered_set<std::string> seen;
    for (const Arc& arc : net.arcs) {
        const std::string& key = incoming ? arc.target : arc.source;
        const std::string& other = incoming ? arc.source : arc.target;
        if (key == transition_id && seen.insert(other).second) {
            result.push_back(other);
        }
    }
    return result;
}

}  // namespace

std::vector<std::string> PetriNet::inputs_of(const std::string& transition_id) const {
    return arc_neighbours(*this, transition_id, true);
}

std::vector<std::string> PetriNet::outputs_of(const std::string& transition_id) const {
    return arc_neighbours(*this, transition_id, false);
}

std::vector<Violation> validate(const PetriNet& net) {
    std::vector<Violation> violations;
    std::unordered_set<std::string> place_set(net.places.begin(), net.places.end());
    std::unordered_set<std::string> transition_set(net.transitions.begin(),
                                                   net.transitions.end());

    for (const Arc& arc : net.arcs) {
        const bool src_place = place_set.count(arc.source) > 0;
        const bool src_trans = transition_set.count(arc.source) > 0;
        const bool tgt_place = place_set.count(arc.target) > 0;
        const bool tgt_trans = transition_set.count(arc.target) > 0;
        const std::string name = arc.source + " -> " + arc.target;
        if ((!src_place && !src_trans) || (!tgt_place && !tgt_trans)) {
            violations.push_back({ViolationKind::DanglingArc, name,
                                  "arc references an unknown node"});
        } else if ((src_place && tgt_place) || (src_trans && tgt_trans)) {
            violations.push_back({ViolationKind::NonBipartiteArc, name,
                                  "arc must connect a place and a transition"});
        }
    }

    for (const std::string& transition : net.transitions) {
        if (net.labels.find(transition) == net.labels.end()) {
            violations.push_back({ViolationKind::UnlabelledTransition, transition,
                                  "transition has no label entry"});
        }
    }
    for (const auto& [id, label] : net.labels) {
        if (transition_set.count(id) == 0) {
            violations.push_back({ViolationKind::UnknownLabelEntry, id,
                                  "label entry for unknown transition"});
        }
    }

    for (const Marking* marking : {&net.initial_marking, &net.final_marking}) {
        const char* which = marking == &net.initial_marking ? "initial" : "final";
        for (const auto& [place, tokens] : marking->counts()) {
            if (place_set.count(place) == 0) {
                violations.push_back({ViolationKind::MarkingOnUnknownPlace, place,
                                      std::string(which) + " marking on unknown place"});
            }
        }
    }
    return violations;
}

std::vector<std::string> enabled_transitions(const PetriNet& net, const Marking& marking) {
    std::vector<std::string> enabled;
    for (const std::string& transition : net.transitions) {
        bool ok = true;
        for (const std::string& place : net.inputs_of(transition)) {
            if (marking.count(place) == 0) {
                ok = false;
                break;
            }
        }
        if (ok) {
            enabled.push_back(transition);
        }
    }
    return enabled;
}

Marking fire(const PetriNet& net, const Marking& marking, const std::string& transition_id) {
    if (!net.has_transition(transition_id)) {
        throw InvalidInputError("unknown transition '" + transition_id + "'");
    }
    const std::vector<std::string> inputs = net.inputs_of(transition_id);
    for (const std::string& place : inputs) {
        if (marking.count(place) == 0) {
            throw NotEnabledError("transition '" + transition_id + "' is not enabled");
        }
    }
    Marking next = marking;
    for (const std::string& place : inputs) {
        next.subtract(place);
    }
    for (const std::string& place : net.outputs_of(transition_id)) {
        next.add(place);
    }
    return next;
}

}  // namespace probalign
