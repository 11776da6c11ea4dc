#include "probalign/io_formats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <json.hpp>

namespace probalign {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace pt = boost::property_tree;

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string csv_escape(const std::string& text) {
    bool needs_quotes = false;
    for (char c : text) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs_quotes = true;
            break;
        }
    }
    if (!needs_quotes) {
        return text;
    }
    std::string out;
    out.reserve(text.size() + 2);
    out.push_back('"');
    for (char c : text) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

// Shortest round-trip decimal form.
std::string format_double(double value) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, end);
}

std::string format_fixed6(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6f", value);
    return buffer;
}

double parse_double(const std::string& text, const std::string& where) {
    double value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError(where + ": not a number: '" + text + "'");
    }
    return value;
}

long parse_int(const std::string& text, const std::string& where) {
    long value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError(where + ": not an integer: '" + text + "'");
    }
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line, const std::string& where) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"' && current.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (quoted) {
        throw ParseError(where + ": unterminated quote");
    }
    fields.push_back(std::move(current));
    return fields;
}

// ---------------------------------------------------------------------------
// PNML

struct PnmlBuilder {
    PetriNet net;

    void handle_place(const pt::ptree& node) {
        const auto id = node.get_optional<std::string>("<xmlattr>.id");
        if (!id || id->empty()) {
            throw ParseError("PNML: <place> without id attribute");
        }
        net.add_place(*id);
        if (const auto text = node.get_optional<std::string>("initialMarking.text")) {
            const long tokens = parse_int(*text, "PNML: initialMarking of '" + *id + "'");
            if (tokens < 0) {
                throw ParseError("PNML: negative initial marking on '" + *id + "'");
            }
            if (tokens > 0) {
                net.initial_marking.add(*id, static_cast<std::uint32_t>(tokens));
            }
        }
    }

    void handle_transition(const pt::ptree& node) {
        const auto id = node.get_optional<std::string>("<xmlattr>.id");
        if (!id || id->empty()) {
            throw ParseError("PNML: <transition> without id attribute");
        }
        const auto name = node.get_optional<std::string>("name.text");
        if (name && !name->empty()) {
            net.add_transition(*id, Label::activity(*name));
        } else {
            net.add_transition(*id, Label::tau());
        }
    }

    void handle_arc(const pt::ptree& node) {
        const auto source = node.get_optional<std::string>("<xmlattr>.source");
        const auto target = node.get_optional<std::string>("<xmlattr>.target");
        if (!source || !target) {
            throw ParseError("PNML: <arc> without source/target");
        }
        if (const auto inscription = node.get_optional<std::string>("inscription.text")) {
            if (parse_int(*inscription, "PNML: arc inscription") != 1) {
                throw UnsupportedFeatureError("PNML: arc weights other than 1 (arc " +
                                              *source + " -> " + *target + ")");
            }
        }
        auto type = node.get_optional<std::string>("type.<xmlattr>.value");
        if (!type) {
            type = node.get_optional<std::string>("type.text");
        }
        if (type && *type != "normal") {
            throw UnsupportedFeatureError("PNML: arc type '" + *type + "' (arc " + *source +
                                          " -> " + *target + ")");
        }
        net.add_arc(*source, *target);
    }

    void handle_final_markings(const pt::ptree& node) {
        std::size_t marking_count = 0;
        for (const auto& [name, marking] : node) {
            if (name != "marking") {
                continue;
            }
            if (++marking_count > 1) {
                throw UnsupportedFeatureError("PNML: multiple final markings");
            }
            for (const auto& [child_name, place] : marking) {
                if (child_name != "place") {
                    continue;
                }
                const auto ref = place.get_optional<std::string>("<xmlattr>.idRef");
                if (!ref) {
                    throw ParseError("PNML: final marking <place> without idRef");
                }
                const auto text = place.get_optional<std::string>("text");
                const long tokens =
                    text ? parse_int(*text, "PNML: final marking of '" + *ref + "'") : 1;
                if (tokens < 0) {
                    throw ParseError("PNML: negative final marking on '" + *ref + "'");
                }
                if (tokens > 0) {
                    net.final_marking.add(*ref, static_cast<std::uint32_t>(tokens));
                }
            }
        }
    }

    void handle_container(const pt::ptree& node) {
        for (const auto& [name, child] : node) {
            if (name == "place") {
                handle_place(child);
            } else if (name == "transition") {
                handle_transition(child);
            } else if (name == "arc") {
                handle_arc(child);
            } else if (name == "page") {
                handle_container(child);
            } else if (name == "finalmarkings") {
                handle_final_markings(child);
            }
        }
    }
};

}  // namespace

PetriNet read_pnml(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError(std::string("PNML: ") + e.what());
    }
    const auto pnml = tree.get_child_optional("pnml");
    if (!pnml) {
        throw ParseError("PNML: missing <pnml> root element");
    }
    const auto net_node = pnml->get_child_optional("net");
    if (!net_node) {
        throw ParseError("PNML: missing <net> element");
    }
    PnmlBuilder builder;
    try {
        builder.handle_container(*net_node);
    } catch (const InvalidInputError& e) {
        throw ParseError(std::string("PNML: ") + e.what());
    }
    const std::vector<Violation> violations = validate(builder.net);
    if (!violations.empty()) {
        throw ParseError("PNML: " + violations.front().message + " (" +
                         violations.front().element + ")");
    }
    return builder.net;
}

PetriNet read_pnml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    return read_pnml(in);
}

std::string write_pnml(const PetriNet& net) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<pnml xmlns=\"http://www.pnml.org/version-2009/grammar/pnml\">\n";
    os << "  <net id=\"net1\" type=\"http://www.pnml.org/version-2009/grammar/ptnet\">\n";
    os << "    <page id=\"page1\">\n";
    for (const std::string& place : net.places) {
        os << "      <place id=\"" << xml_escape(place) << "\">";
        const std::uint32_t tokens = net.initial_marking.count(place);
        if (tokens > 0) {
            os << "<initialMarking><text>" << tokens << "</text></initialMarking>";
        }
        os << "</place>\n";
    }
    for (const std::string& transition : net.transitions) {
        os << "      <transition id=\"" << xml_escape(transition) << "\">";
        const Label& label = net.label_of(transition);
        if (!label.is_tau()) {
            os << "<name><text>" << xml_escape(label.activity_name()) << "</text></name>";
        }
        os << "</transition>\n";
    }
    std::size_t arc_index = 0;
    for (const Arc& arc : net.arcs) {
        os << "      <arc id=\"a" << arc_index++ << "\" source=\"" << xml_escape(arc.source)
           << "\" target=\"" << xml_escape(arc.target) << "\"/>\n";
    }
    os << "    </page>\n";
    if (!net.final_marking.empty()) {
        os << "    <finalmarkings>\n      <marking>\n";
        for (const auto& [place, tokens] : net.final_marking.counts()) {
            os << "        <place idRef=\"" << xml_escape(place) << "\"><text>" << tokens
               << "</text></place>\n";
        }
        os << "      </marking>\n    </finalmarkings>\n";
    }
    os << "  </net>\n</pnml>\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Probabilistic logs

namespace {

void finish_log(ProbEventLog& log, bool renormalize,
                const std::set<std::string>& declared_universe) {
    for (ProbTrace& trace : log.traces) {
        for (std::size_t i = 0; i < trace.events.size(); ++i) {
            ProbEvent& event = trace.events[i];
            for (const auto& [activity, p] : event.candidates) {
                if (p < 0) {
                    throw ParseError("case '" + trace.case_id + "', event " +
                                     std::to_string(i) + ": negative probability for '" +
                                     activity + "'");
                }
            }
            if (renormalize) {
                double sum = 0;
                for (const auto& [activity, p] : event.candidates) {
                    sum += p;
                }
                if (sum > 0) {
                    for (auto& [activity, p] : event.candidates) {
                        p /= sum;
                    }
                }
            }
        }
    }
    ProbEventLog rebuilt = make_log(std::move(log.traces));
    rebuilt.activity_universe.insert(declared_universe.begin(), declared_universe.end());
    const std::vector<LogViolation> violations = validate_log(rebuilt);
    if (!violations.empty()) {
        const LogViolation& v = violations.front();
        throw ParseError("case '" + v.case_id + "', event " + std::to_string(v.event_index) +
                         ": " + v.detail);
    }
    log = std::move(rebuilt);
}

}  // namespace

ProbEventLog read_prob_log_json(std::istream& in, bool renormalize) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("problog JSON: ") + e.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("traces") || !doc["traces"].is_array()) {
            throw ParseError("problog JSON: expected an object with a 'traces' array");
        }
        ProbEventLog log;
        std::set<std::string> declared;
        if (doc.contains("activities")) {
            for (const auto& activity : doc["activities"]) {
                declared.insert(activity.get<std::string>());
            }
        }
        for (const auto& trace_node : doc["traces"]) {
            ProbTrace trace;
            trace.case_id = trace_node.at("case_id").get<std::string>();
            for (const auto& event_node : trace_node.at("events")) {
                if (!event_node.is_object()) {
                    throw ParseError("problog JSON: events must be objects");
                }
                ProbEvent event;
                for (const auto& [activity, value] : event_node.items()) {
                    if (!value.is_number()) {
                        throw ParseError("problog JSON: probability of '" + activity +
                                         "' is not a number");
                    }
                    const double p = value.get<double>();
                    if (p == 0) {
                        continue;  // zero-probability candidates are dropped
                    }
                    event.candidates[activity] = p;
                }
                trace.events.push_back(std::move(event));
            }
            log.traces.push_back(std::move(trace));
        }
        finish_log(log, renormalize, declared);
        return log;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("problog JSON: ") + e.what());
    }
}

ProbEventLog read_prob_log_json_file(const std::string& path, bool renormalize) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    return read_prob_log_json(in, renormalize);
}

std::string write_prob_log_json(const ProbEventLog& log) {
    ordered_json doc;
    doc["format"] = "probalign-problog";
    doc["version"] = 1;
    doc["activities"] = ordered_json::array();
    for (const std::string& activity : log.activity_universe) {
        doc["activities"].push_back(activity);
    }
    doc["traces"] = ordered_json::array();
    for (const ProbTrace& trace : log.traces) {
        ordered_json trace_node;
        trace_node["case_id"] = trace.case_id;
        trace_node["events"] = ordered_json::array();
        for (const ProbEvent& event : trace.events) {
            ordered_json event_node = ordered_json::object();
            for (const auto& [activity, p] : event.candidates) {
                event_node[activity] = p;
            }
            trace_node["events"].push_back(std::move(event_node));
        }
        doc["traces"].push_back(std::move(trace_node));
    }
    return doc.dump(2) + "\n";
}

ProbEventLog read_prob_log_csv(std::istream& in, const std::string& case_id,
                               bool renormalize) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!line.empty()) {
            lines.push_back(line);
        }
    }
    if (lines.empty()) {
        throw ParseError("problog CSV: empty input");
    }
    const std::vector<std::string> header = split_csv_line(lines[0], "problog CSV header");
    if (header.size() < 2 || header[0] != "activity") {
        throw ParseError("problog CSV: header must be 'activity,<event>,...'");
    }
    const std::size_t events = header.size() - 1;

    ProbTrace trace;
    trace.case_id = case_id;
    trace.events.resize(events);
    std::set<std::string> seen;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        const std::string where = "problog CSV row " + std::to_string(row + 1);
        const std::vector<std::string> fields = split_csv_line(lines[row], where);
        if (fields.size() != header.size()) {
            throw ParseError(where + ": expected " + std::to_string(header.size()) +
                             " fields, got " + std::to_string(fields.size()));
        }
        const std::string& activity = fields[0];
        if (activity.empty()) {
            throw ParseError(where + ": empty activity name");
        }
        if (!seen.insert(activity).second) {
            throw ParseError(where + ": duplicate activity row '" + activity + "'");
        }
        for (std::size_t i = 0; i < events; ++i) {
            if (fields[i + 1].empty()) {
                continue;
            }
            const double p = parse_double(fields[i + 1], where);
            if (p == 0) {
                continue;
            }
            trace.events[i].candidates[activity] = p;
        }
    }

    ProbEventLog log;
    log.traces.push_back(std::move(trace));
    finish_log(log, renormalize, {});
    return log;
}

std::string write_prob_log_csv(const ProbTrace& trace) {
    std::set<std::string> activities;
    for (const ProbEvent& event : trace.events) {
        for (const auto& [activity, p] : event.candidates) {
            activities.insert(activity);
        }
    }
    std::ostringstream os;
    os << "activity";
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        os << ",e" << i;
    }
    os << "\n";
    for (const std::string& activity : activities) {
        os << csv_escape(activity);
        for (const ProbEvent& event : trace.events) {
            os << ",";
            auto it = event.candidates.find(activity);
            if (it != event.candidates.end()) {
                os << format_double(it->second);
            } else {
                os << "0";
            }
        }
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Ground truth

GroundTruthDocument read_ground_truth_json(std::istream& in) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("ground truth JSON: ") + e.what());
    }
    try {
        GroundTruthDocument result;
        result.p_h = doc.at("p_h").get<double>();
        result.t_d = doc.at("t_d").get<double>();
        result.seed = doc.at("seed").get<std::uint64_t>();
        for (const auto& case_node : doc.at("cases")) {
            TraceGroundTruth truth;
            truth.case_id = case_node.at("case_id").get<std::string>();
            for (const auto& event_node : case_node.at("events")) {
                NoisyEvent event;
                event.original = event_node.at("original").get<std::string>();
                event.added = event_node.at("added").get<std::string>();
                event.original_prob = event_node.at("p").get<double>();
                truth.events.push_back(std::move(event));
                const std::string label = event_node.at("label").get<std::string>();
                if (label == "normal") {
                    truth.labels.push_back(EventLabel::Normal);
                } else if (label == "deviation") {
                    truth.labels.push_back(EventLabel::Deviation);
                } else {
                    throw ParseError("ground truth JSON: unknown label '" + label + "'");
                }
            }
            result.cases.push_back(std::move(truth));
        }
        return result;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("ground truth JSON: ") + e.what());
    }
}

GroundTruthDocument read_ground_truth_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    return read_ground_truth_json(in);
}

std::string write_ground_truth_json(const GroundTruthDocument& document) {
    ordered_json doc;
    doc["format"] = "probalign-gt";
    doc["version"] = 1;
    doc["p_h"] = document.p_h;
    doc["t_d"] = document.t_d;
    doc["seed"] = document.seed;
    doc["cases"] = ordered_json::array();
    for (const TraceGroundTruth& truth : document.cases) {
        ordered_json case_node;
        case_node["case_id"] = truth.case_id;
        case_node["events"] = ordered_json::array();
        for (std::size_t i = 0; i < truth.events.size(); ++i) {
            ordered_json event_node;
            event_node["original"] = truth.events[i].original;
            event_node["added"] = truth.events[i].added;
            event_node["p"] = truth.events[i].original_prob;
            event_node["label"] = to_string(truth.labels.at(i));
            case_node["events"].push_back(std::move(event_node));
        }
        doc["cases"].push_back(std::move(case_node));
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Alignment documents

std::string write_alignments_json(const std::vector<AlignmentCaseResult>& results,
                                  const CostFunction& cost, bool include_timing) {
    ordered_json doc;
    doc["format"] = "probalign-alignments";
    doc["version"] = 1;
    if (cost.kind() == CostFunction::Kind::Standard) {
        doc["cost"] = {{"kind", "standard"}};
    } else {
        doc["cost"] = {{"kind", "weighted"}, {"epsilon", cost.epsilon()}};
    }
    doc["alignments"] = ordered_json::array();
    for (const AlignmentCaseResult& result : results) {
        ordered_json node;
        node["case_id"] = result.case_id;
        if (result.error.has_value()) {
            node["error"] = *result.error;
            doc["alignments"].push_back(std::move(node));
            continue;
        }
        const Alignment& alignment = *result.alignment;
        node["moves"] = ordered_json::array();
        for (const AlignmentMove& move : alignment.moves) {
            ordered_json move_node;
            move_node["transition"] = move.transition_id;
            move_node["kind"] = to_string(move.kind);
            move_node["model_label"] =
                move.model_label ? ordered_json(*move.model_label) : ordered_json(nullptr);
            move_node["trace_label"] =
                move.trace_label ? ordered_json(*move.trace_label) : ordered_json(nullptr);
            move_node["weight"] = move.weight;
            move_node["cost"] = move.cost;
            node["moves"].push_back(std::move(move_node));
        }
        node["total_cost"] = alignment.total_cost;
        node["stats"] = {{"expanded", alignment.stats.expanded},
                         {"generated", alignment.stats.generated},
                         {"queue_peak", alignment.stats.queue_peak},
                         {"elapsed_seconds",
                          include_timing ? alignment.stats.elapsed_seconds : 0.0}};
        node["recovered"] = result.recovered;
        ordered_json predictions = ordered_json::array();
        for (EventLabel label : result.predictions) {
            predictions.push_back(to_string(label));
        }
        node["predictions"] = std::move(predictions);
        doc["alignments"].push_back(std::move(node));
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Report CSV

std::string write_report_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream os;
    os << "epsilon,t_d,algorithm,accuracy,f1,sensitivity,specificity,g_mean,runtime_s\n";
    for (const ReportRow& row : rows) {
        if (row.epsilon.has_value()) {
            os << format_fixed6(*row.epsilon);
        }
        os << "," << format_fixed6(row.t_d) << "," << csv_escape(row.algorithm) << ","
           << format_fixed6(row.report.accuracy) << "," << format_fixed6(row.report.f1) << ","
           << format_fixed6(row.report.sensitivity) << ","
           << format_fixed6(row.report.specificity) << "," << format_fixed6(row.report.g_mean)
           << "," << format_fixed6(row.runtime_s) << "\n";
    }
    return os.str();
}

std::vector<ReportRow> read_report_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("report CSV: empty input");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "epsilon,t_d,algorithm,accuracy,f1,sensitivity,specificity,g_mean,runtime_s") {
        throw ParseError("report CSV: unexpected header '" + line + "'");
    }
    std::vector<ReportRow> rows;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const std::string where = "report CSV line " + std::to_string(line_number);
        const std::vector<std::string> fields = split_csv_line(line, where);
        if (fields.size() != 9) {
            throw ParseError(where + ": expected 9 fields, got " +
                             std::to_string(fields.size()));
        }
        ReportRow row;
        if (!fields[0].empty()) {
            row.epsilon = parse_double(fields[0], where);
        }
        row.t_d = parse_double(fields[1], where);
        row.algorithm = fields[2];
        row.report.accuracy = parse_double(fields[3], where);
        row.report.f1 = parse_double(fields[4], where);
        row.report.sensitivity = parse_double(fields[5], where);
        row.report.specificity = parse_double(fields[6], where);
        row.report.g_mean = parse_double(fields[7], where);
        row.runtime_s = parse_double(fields[8], where);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace probalign
