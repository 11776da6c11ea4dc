// Batch conformance-checking front end: align, gen, detect, sweep, bench.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "probalign/probalign.hpp"

namespace fs = std::filesystem;
using namespace probalign;

namespace {

using Clock = std::chrono::steady_clock;

struct DataError {
    std::string code;
    std::string message;
};

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("PROBALIGN_THREADS")) {
        const long value = std::strtol(env, nullptr, 10);
        if (value > 0) {
            return static_cast<unsigned>(value);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Fans out items to a fixed pool; each result lands in its own slot, so
// aggregation order never depends on the thread count.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (count == 0) {
        return;
    }
    const unsigned workers = std::min<std::size_t>(std::max(1u, threads), count);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                fn(i);
            }
        });
    }
    for (std::thread& worker : pool) {
        worker.join();
    }
}

ProbEventLog load_log(const std::string& path, bool renormalize) {
    const fs::path p(path);
    if (p.extension() == ".csv") {
        std::ifstream in(p);
        if (!in) {
            throw ParseError("cannot open '" + path + "'");
        }
        fs::path stem = p.stem();
        // strip a trailing ".problog" marker from the case id
        if (stem.extension() == ".problog") {
            stem = stem.stem();
        }
        return read_prob_log_csv(in, stem.string(), renormalize);
    }
    return read_prob_log_json_file(path, renormalize);
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError{"io_error", "cannot write '" + path.string() + "'"};
    }
    out << content;
}

enum class Algorithm { Probcost, Standard, Lowertrust };

Algorithm parse_algorithm(const std::string& name) {
    if (name == "probcost") return Algorithm::Probcost;
    if (name == "standard") return Algorithm::Standard;
    if (name == "lowertrust") return Algorithm::Lowertrust;
    throw DataError{"usage", "unknown algorithm '" + name + "'"};
}

constexpr double kLowertrustEpsilon = 0.01;

double clamp_epsilon(double value) {
    return std::min(CostFunction::kMaxEpsilon, std::max(CostFunction::kMinEpsilon, value));
}

Alignment align_with(Algorithm algorithm, const PetriNet& model, const ProbTrace& trace,
                     double epsilon, const SearchLimits& limits) {
    switch (algorithm) {
        case Algorithm::Probcost:
            return align_trace(model, trace, CostFunction::weighted(epsilon), limits);
        case Algorithm::Lowertrust:
            return align_trace(model, trace, CostFunction::weighted(kLowertrustEpsilon),
                               limits);
        case Algorithm::Standard: {
            const ProbTrace projected = lift_deterministic(argmax_trace(trace));
            return align_trace(model, projected, CostFunction::standard(), limits);
        }
    }
    throw DataError{"internal", "unreachable"};
}

std::vector<double> parse_grid(const std::string& spec) {
    // lo:hi:step
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ':')) {
        try {
            parts.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw DataError{"usage", "bad grid component '" + token + "'"};
        }
    }
    if (parts.size() != 3 || parts[2] <= 0 || parts[1] < parts[0]) {
        throw DataError{"usage", "grid must be lo:hi:step with step > 0, got '" + spec + "'"};
    }
    std::vector<double> grid;
    for (double v = parts[0]; v <= parts[1] + 1e-12; v += parts[2]) {
        grid.push_back(std::min(v, parts[1]));
    }
    return grid;
}

struct DetectOutcome {
    ConfusionCounts counts;
    double runtime_seconds = 0;
};

DetectOutcome run_detect(const PetriNet& model, const ProbEventLog& log,
                         const GroundTruthDocument& gt, Algorithm algorithm, double epsilon,
                         unsigned threads, const SearchLimits& limits) {
    std::unordered_map<std::string, const TraceGroundTruth*> by_case;
    for (const TraceGroundTruth& truth : gt.cases) {
        by_case.emplace(truth.case_id, &truth);
    }
    std::vector<ConfusionCounts> per_trace(log.traces.size());
    std::vector<std::string> errors(log.traces.size());
    const auto started = Clock::now();
    parallel_for(log.traces.size(), threads, [&](std::size_t i) {
        const ProbTrace& trace = log.traces[i];
        auto it = by_case.find(trace.case_id);
        if (it == by_case.end()) {
            errors[i] = "no ground truth for case '" + trace.case_id + "'";
            return;
        }
        try {
            const Alignment alignment = align_with(algorithm, model, trace, epsilon, limits);
            per_trace[i] = confusion_counts(classify_moves(alignment), it->second->labels);
        } catch (const Error& e) {
            errors[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i].empty()) {
            throw DataError{"detect_failed",
                            "case '" + log.traces[i].case_id + "': " + errors[i]};
        }
    }
    DetectOutcome outcome;
    for (const ConfusionCounts& counts : per_trace) {
        outcome.counts += counts;
    }
    outcome.runtime_seconds = std::chrono::duration<double>(Clock::now() - started).count();
    return outcome;
}

std::optional<double> report_epsilon(Algorithm algorithm, double epsilon) {
    switch (algorithm) {
        case Algorithm::Probcost: return epsilon;
        case Algorithm::Lowertrust: return kLowertrustEpsilon;
        case Algorithm::Standard: return std::nullopt;
    }
    return std::nullopt;
}

const char* algorithm_name(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::Probcost: return "probcost";
        case Algorithm::Standard: return "standard";
        case Algorithm::Lowertrust: return "lowertrust";
    }
    return "?";
}

// ---------------------------------------------------------------------------

struct CommonOptions {
    unsigned threads = 0;
    std::uint64_t max_expansions = 5'000'000;
    double max_seconds = 0;
    bool timing = false;

    SearchLimits limits() const { return SearchLimits{max_expansions, max_seconds}; }

    void attach(CLI::App* cmd) {
        cmd->add_option("--threads", threads,
                        "worker threads (default: PROBALIGN_THREADS or all cores)");
        cmd->add_option("--max-expansions", max_expansions,
                        "search node budget per alignment");
        cmd->add_option("--max-seconds", max_seconds, "search time budget per alignment");
        cmd->add_flag("--timing", timing, "emit real wall-clock fields in outputs");
    }
};

int cmd_align(const std::string& model_path, const std::string& log_path,
              const std::string& cost_name, double epsilon, const std::string& out_dir,
              bool renormalize, const CommonOptions& common) {
    const PetriNet model = read_pnml_file(model_path);
    const ProbEventLog log = load_log(log_path, renormalize);

    const bool weighted = cost_name == "weighted";
    if (!weighted && cost_name != "standard") {
        throw DataError{"usage", "cost must be 'standard' or 'weighted'"};
    }
    const CostFunction cost =
        weighted ? CostFunction::weighted(epsilon) : CostFunction::standard();
    const Algorithm algorithm = weighted ? Algorithm::Probcost : Algorithm::Standard;

    std::vector<AlignmentCaseResult> results(log.traces.size());
    const unsigned threads = resolve_threads(common.threads);
    parallel_for(log.traces.size(), threads, [&](std::size_t i) {
        AlignmentCaseResult& result = results[i];
        result.case_id = log.traces[i].case_id;
        try {
            Alignment alignment =
                align_with(algorithm, model, log.traces[i], epsilon, common.limits());
            result.recovered = recover(alignment).activities;
            result.predictions = classify_moves(alignment);
            result.alignment = std::move(alignment);
        } catch (const Error& e) {
            result.error = e.what();
        }
    });

    write_file(fs::path(out_dir) / "alignments.align.json",
               write_alignments_json(results, cost, common.timing));

    bool failed = false;
    for (const AlignmentCaseResult& result : results) {
        if (result.error.has_value()) {
            failed = true;
            std::cout << "case " << result.case_id << ": error: " << *result.error << "\n";
        } else {
            std::ostringstream os;
            os.precision(9);
            os << std::fixed << result.alignment->total_cost;
            std::cout << "case " << result.case_id << ": cost=" << os.str()
                      << " moves=" << result.alignment->moves.size() << "\n";
        }
    }
    if (failed) {
        throw DataError{"alignment_failed", "one or more cases failed to align"};
    }
    return 0;
}

int cmd_gen(const std::string& log_path, double p_h, double t_d, std::uint64_t seed,
            const std::string& out_dir, const CommonOptions&) {
    const ProbEventLog input = load_log(log_path, false);
    if (input.traces.empty()) {
        throw DataError{"data_error", "input log has no traces"};
    }
    std::vector<DetTrace> originals;
    originals.reserve(input.traces.size());
    for (const ProbTrace& trace : input.traces) {
        const auto det = as_deterministic(trace);
        if (!det) {
            throw DataError{"data_error",
                            "gen needs a deterministic log; case '" + trace.case_id +
                                "' has probabilistic events"};
        }
        originals.push_back(*det);
    }

    NoiseConfig config;
    config.p_h = p_h;
    config.activity_universe.assign(input.activity_universe.begin(),
                                    input.activity_universe.end());

    std::vector<ProbTrace> noisy(originals.size());
    GroundTruthDocument gt;
    gt.p_h = p_h;
    gt.t_d = t_d;
    gt.seed = seed;
    gt.cases.resize(originals.size());
    for (std::size_t i = 0; i < originals.size(); ++i) {
        config.seed = derive_case_seed(seed, i);
        const InjectionResult injected = inject(originals[i], config);
        noisy[i] = injected.trace;
        TraceGroundTruth& truth = gt.cases[i];
        truth.case_id = originals[i].case_id;
        truth.events = injected.events;
        truth.labels = label_ground_truth(injected.events, t_d);
    }

    fs::path stem = fs::path(log_path).stem();
    if (stem.extension() == ".problog") {
        stem = stem.stem();
    }
    const fs::path out(out_dir);
    write_file(out / (stem.string() + ".problog.json"),
               write_prob_log_json(make_log(std::move(noisy))));
    write_file(out / (stem.string() + ".gt.json"), write_ground_truth_json(gt));
    std::cout << "generated " << originals.size() << " probabilistic traces (p_h=" << p_h
              << ", t_d=" << t_d << ", seed=" << seed << ")\n";
    return 0;
}

int cmd_detect(const std::string& model_path, const std::string& log_path,
               const std::string& gt_path, const std::string& algorithm_name_arg,
               double epsilon, const std::string& label, const std::string& out_dir,
               bool renormalize, const CommonOptions& common) {
    const PetriNet model = read_pnml_file(model_path);
    const ProbEventLog log = load_log(log_path, renormalize);
    const GroundTruthDocument gt = read_ground_truth_json_file(gt_path);
    const Algorithm algorithm = parse_algorithm(algorithm_name_arg);

    const unsigned threads = resolve_threads(common.threads);
    const DetectOutcome outcome =
        run_detect(model, log, gt, algorithm, epsilon, threads, common.limits());

    ReportRow row;
    row.epsilon = report_epsilon(algorithm, epsilon);
    row.t_d = gt.t_d;
    row.algorithm = label.empty() ? algorithm_name(algorithm) : label;
    row.report = make_report(outcome.counts);
    row.runtime_s = common.timing ? outcome.runtime_seconds : 0.0;

    write_file(fs::path(out_dir) / "report.csv", write_report_csv({row}));
    std::cout << row.algorithm << ": accuracy=" << row.report.accuracy
              << " f1=" << row.report.f1 << " sensitivity=" << row.report.sensitivity
              << " specificity=" << row.report.specificity << " g_mean=" << row.report.g_mean
              << "\n";
    return 0;
}

struct SweepData {
    std::vector<ProbTrace> noisy;
    std::vector<std::vector<NoisyEvent>> events;  // per trace
};

SweepData make_sweep_data(const ProbEventLog& input, double p_h, std::uint64_t seed) {
    SweepData data;
    NoiseConfig config;
    config.p_h = p_h;
    config.activity_universe.assign(input.activity_universe.begin(),
                                    input.activity_universe.end());
    for (std::size_t i = 0; i < input.traces.size(); ++i) {
        const auto det = as_deterministic(input.traces[i]);
        if (!det) {
            throw DataError{"data_error",
                            "sweep needs a deterministic log; case '" +
                                input.traces[i].case_id + "' has probabilistic events"};
        }
        config.seed = derive_case_seed(seed, i);
        InjectionResult injected = inject(*det, config);
        data.noisy.push_back(std::move(injected.trace));
        data.events.push_back(std::move(injected.events));
    }
    return data;
}

// Predictions per trace for one algorithm; they depend on the data and
// epsilon but not on t_d, so t_d sweeps can re-score them cheaply.
std::vector<std::vector<EventLabel>> predict_all(const PetriNet& model,
                                                 const std::vector<ProbTrace>& traces,
                                                 Algorithm algorithm, double epsilon,
                                                 unsigned threads,
                                                 const SearchLimits& limits) {
    std::vector<std::vector<EventLabel>> predictions(traces.size());
    std::vector<std::string> errors(traces.size());
    parallel_for(traces.size(), threads, [&](std::size_t i) {
        try {
            predictions[i] =
                classify_moves(align_with(algorithm, model, traces[i], epsilon, limits));
        } catch (const Error& e) {
            errors[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i].empty()) {
            throw DataError{"sweep_failed",
                            "case '" + traces[i].case_id + "': " + errors[i]};
        }
    }
    return predictions;
}

EvalReport score_against(const std::vector<std::vector<EventLabel>>& predictions,
                         const std::vector<std::vector<EventLabel>>& truths) {
    ConfusionCounts counts;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        counts += confusion_counts(predictions[i], truths[i]);
    }
    return make_report(counts);
}

std::string gnuplot_script(bool epsilon_grid) {
    std::ostringstream os;
    os << "set datafile separator \",\"\n"
       << "set terminal pngcairo size 900,600\n"
       << "set output \"sweep.png\"\n"
       << "set xlabel \"" << (epsilon_grid ? "epsilon" : "t_d") << "\"\n"
       << "set ylabel \"g-mean\"\n"
       << "set yrange [0:1]\n";
    const int xcol = epsilon_grid ? 1 : 2;
    os << "plot \"report.csv\" skip 1 every 3::0 using " << xcol
       << ":8 with linespoints title \"probcost\", \\\n"
       << "     \"report.csv\" skip 1 every 3::1 using " << xcol
       << ":8 with linespoints title \"standard\", \\\n"
       << "     \"report.csv\" skip 1 every 3::2 using " << xcol
       << ":8 with linespoints title \"lowertrust\"\n";
    return os.str();
}

int cmd_sweep(const std::string& model_path, const std::string& log_path, double p_h,
              std::uint64_t seed, const std::string& epsilon_grid_spec,
              const std::string& t_d_grid_spec, double t_d_fixed, const std::string& out_dir,
              bool gnuplot, const CommonOptions& common) {
    if (epsilon_grid_spec.empty() == t_d_grid_spec.empty()) {
        throw DataError{"usage", "exactly one of --epsilon-grid / --t-d-grid is required"};
    }
    const PetriNet model = read_pnml_file(model_path);
    const ProbEventLog input = load_log(log_path, false);
    const SweepData data = make_sweep_data(input, p_h, seed);
    const unsigned threads = resolve_threads(common.threads);
    const SearchLimits limits = common.limits();

    std::vector<ReportRow> rows;
    const auto started = Clock::now();

    auto truths_for = [&](double t_d) {
        std::vector<std::vector<EventLabel>> truths;
        truths.reserve(data.events.size());
        for (const auto& events : data.events) {
            truths.push_back(label_ground_truth(events, t_d));
        }
        return truths;
    };

    auto push_row = [&](std::optional<double> epsilon, double t_d,
                        const std::string& algorithm, const EvalReport& report) {
        ReportRow row;
        row.epsilon = epsilon;
        row.t_d = t_d;
        row.algorithm = algorithm;
        row.report = report;
        row.runtime_s =
            common.timing
                ? std::chrono::duration<double>(Clock::now() - started).count()
                : 0.0;
        rows.push_back(std::move(row));
    };

    // Baseline predictions are epsilon- and t_d-independent.
    const auto standard_preds =
        predict_all(model, data.noisy, Algorithm::Standard, 0, threads, limits);
    const auto lowertrust_preds =
        predict_all(model, data.noisy, Algorithm::Lowertrust, 0, threads, limits);

    if (!epsilon_grid_spec.empty()) {
        const std::vector<double> grid = parse_grid(epsilon_grid_spec);
        const auto truths = truths_for(t_d_fixed);
        for (double point : grid) {
            const double epsilon = clamp_epsilon(point);
            const auto probcost_preds =
                predict_all(model, data.noisy, Algorithm::Probcost, epsilon, threads, limits);
            push_row(epsilon, t_d_fixed, "probcost", score_against(probcost_preds, truths));
            push_row(std::nullopt, t_d_fixed, "standard",
                     score_against(standard_preds, truths));
            push_row(kLowertrustEpsilon, t_d_fixed, "lowertrust",
                     score_against(lowertrust_preds, truths));
        }
    } else {
        const std::vector<double> grid = parse_grid(t_d_grid_spec);
        for (double t_d : grid) {
            const auto truths = truths_for(t_d);
            const double epsilon = clamp_epsilon(t_d);
            const auto probcost_preds =
                predict_all(model, data.noisy, Algorithm::Probcost, epsilon, threads, limits);
            push_row(epsilon, t_d, "probcost", score_against(probcost_preds, truths));
            push_row(std::nullopt, t_d, "standard", score_against(standard_preds, truths));
            push_row(kLowertrustEpsilon, t_d, "lowertrust",
                     score_against(lowertrust_preds, truths));
        }
    }

    write_file(fs::path(out_dir) / "report.csv", write_report_csv(rows));
    if (gnuplot) {
        write_file(fs::path(out_dir) / "sweep.gp", gnuplot_script(!epsilon_grid_spec.empty()));
    }
    std::cout << "sweep finished: " << rows.size() << " report rows\n";
    return 0;
}

int cmd_bench(const std::string& model_path, const std::string& log_path, double epsilon,
              const std::string& out_dir, const CommonOptions& common) {
    const PetriNet model = read_pnml_file(model_path);
    const ProbEventLog log = load_log(log_path, false);
    const unsigned threads = resolve_threads(common.threads);

    struct BenchRow {
        std::string case_id;
        std::size_t events = 0;
        double standard_seconds = 0;
        std::uint64_t standard_expanded = 0;
        double probcost_seconds = 0;
        std::uint64_t probcost_expanded = 0;
        std::string error;
    };
    std::vector<BenchRow> bench(log.traces.size());

    parallel_for(log.traces.size(), threads, [&](std::size_t i) {
        BenchRow& row = bench[i];
        row.case_id = log.traces[i].case_id;
        row.events = log.traces[i].events.size();
        try {
            const Alignment standard =
                align_with(Algorithm::Standard, model, log.traces[i], 0, common.limits());
            row.standard_seconds = standard.stats.elapsed_seconds;
            row.standard_expanded = standard.stats.expanded;
            const Alignment probcost = align_with(Algorithm::Probcost, model, log.traces[i],
                                                  epsilon, common.limits());
            row.probcost_seconds = probcost.stats.elapsed_seconds;
            row.probcost_expanded = probcost.stats.expanded;
        } catch (const Error& e) {
            row.error = e.what();
        }
    });

    std::ostringstream csv;
    csv << "case_id,events,standard_seconds,standard_expanded,probcost_seconds,"
           "probcost_expanded,error\n";
    for (const BenchRow& row : bench) {
        csv << row.case_id << "," << row.events << "," << row.standard_seconds << ","
            << row.standard_expanded << "," << row.probcost_seconds << ","
            << row.probcost_expanded << "," << row.error << "\n";
    }
    write_file(fs::path(out_dir) / "bench.csv", csv.str());

    std::vector<std::size_t> events;
    double standard_total = 0;
    double probcost_total = 0;
    std::size_t failed = 0;
    for (const BenchRow& row : bench) {
        events.push_back(row.events);
        standard_total += row.standard_seconds;
        probcost_total += row.probcost_seconds;
        if (!row.error.empty()) {
            ++failed;
        }
    }
    std::sort(events.begin(), events.end());
    const auto median = events.empty() ? 0.0
                        : events.size() % 2 == 1
                            ? static_cast<double>(events[events.size() / 2])
                            : (static_cast<double>(events[events.size() / 2 - 1]) +
                               static_cast<double>(events[events.size() / 2])) /
                                  2.0;
    const double avg =
        events.empty()
            ? 0.0
            : static_cast<double>(std::accumulate(events.begin(), events.end(), 0.0)) /
                  static_cast<double>(events.size());

    std::cout << "cases: " << bench.size() << " (failed: " << failed << ")\n";
    if (!events.empty()) {
        std::cout << "events per case: min=" << events.front() << " max=" << events.back()
                  << " avg=" << avg << " median=" << median << "\n";
    }
    std::cout << "process model: places=" << model.places.size()
              << " transitions=" << model.transitions.size() << "\n";
    std::cout << "total seconds: standard=" << standard_total
              << " probcost=" << probcost_total << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alignment-based conformance checking over probabilistic event logs"};
    app.require_subcommand(1);

    std::string model_path, log_path, gt_path, out_dir = ".";
    std::string cost_name = "weighted", algorithm = "probcost", label;
    std::string epsilon_grid_spec, t_d_grid_spec;
    double epsilon = 0.5, p_h = 0.0, t_d = 0.25;
    std::uint64_t seed = 0;
    bool renormalize = false, gnuplot = false;
    CommonOptions common;

    CLI::App* align_cmd = app.add_subcommand("align", "align a log against a process model");
    align_cmd->add_option("--model", model_path, "PNML process model")->required();
    align_cmd->add_option("--log", log_path, "probabilistic log (.json or .csv)")->required();
    align_cmd->add_option("--cost", cost_name, "standard | weighted (default weighted)");
    align_cmd->add_option("--epsilon", epsilon, "trust threshold for the weighted cost");
    align_cmd->add_option("--out", out_dir, "output directory");
    align_cmd->add_flag("--renormalize", renormalize,
                        "rescale event probabilities that do not sum to 1");
    common.attach(align_cmd);

    CLI::App* gen_cmd =
        app.add_subcommand("gen", "synthesise a probabilistic log from a deterministic one");
    gen_cmd->add_option("--log", log_path, "deterministic log (.json or .csv)")->required();
    gen_cmd->add_option("--p-h", p_h, "fraction of events keeping the original on top")
        ->required();
    gen_cmd->add_option("--seed", seed, "RNG seed")->required();
    gen_cmd->add_option("--t-d", t_d, "deviation confidence for ground-truth labels");
    gen_cmd->add_option("--out", out_dir, "output directory");
    common.attach(gen_cmd);

    CLI::App* detect_cmd = app.add_subcommand("detect", "score deviation detection");
    detect_cmd->add_option("--model", model_path, "PNML process model")->required();
    detect_cmd->add_option("--log", log_path, "probabilistic log")->required();
    detect_cmd->add_option("--gt", gt_path, "ground-truth sidecar")->required();
    detect_cmd->add_option("--algorithm", algorithm, "probcost | standard | lowertrust");
    detect_cmd->add_option("--epsilon", epsilon, "trust threshold for probcost");
    detect_cmd->add_option("--label", label, "algorithm name to report");
    detect_cmd->add_option("--out", out_dir, "output directory");
    detect_cmd->add_flag("--renormalize", renormalize,
                         "rescale event probabilities that do not sum to 1");
    common.attach(detect_cmd);

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "run the three algorithms over a parameter grid");
    sweep_cmd->add_option("--model", model_path, "PNML process model")->required();
    sweep_cmd->add_option("--det-log", log_path, "deterministic ground-truth log")
        ->required();
    sweep_cmd->add_option("--p-h", p_h, "noise parameter");
    sweep_cmd->add_option("--seed", seed, "RNG seed")->required();
    sweep_cmd->add_option("--epsilon-grid", epsilon_grid_spec, "lo:hi:step");
    sweep_cmd->add_option("--t-d-grid", t_d_grid_spec, "lo:hi:step (sets epsilon = t_d)");
    sweep_cmd->add_option("--t-d", t_d, "deviation confidence for the epsilon sweep");
    sweep_cmd->add_option("--out", out_dir, "output directory");
    sweep_cmd->add_flag("--gnuplot", gnuplot, "also emit a gnuplot script");
    common.attach(sweep_cmd);

    CLI::App* bench_cmd = app.add_subcommand("bench", "time standard vs weighted alignment");
    bench_cmd->add_option("--model", model_path, "PNML process model")->required();
    bench_cmd->add_option("--log", log_path, "probabilistic log")->required();
    bench_cmd->add_option("--epsilon", epsilon, "trust threshold for the weighted run");
    bench_cmd->add_option("--out", out_dir, "output directory");
    common.attach(bench_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(align_cmd)) {
            return cmd_align(model_path, log_path, cost_name, epsilon, out_dir, renormalize,
                             common);
        }
        if (app.got_subcommand(gen_cmd)) {
            return cmd_gen(log_path, p_h, t_d, seed, out_dir, common);
        }
        if (app.got_subcommand(detect_cmd)) {
            return cmd_detect(model_path, log_path, gt_path, algorithm, epsilon, label,
                              out_dir, renormalize, common);
        }
        if (app.got_subcommand(sweep_cmd)) {
            return cmd_sweep(model_path, log_path, p_h, seed, epsilon_grid_spec,
                             t_d_grid_spec, t_d, out_dir, gnuplot, common);
        }
        if (app.got_subcommand(bench_cmd)) {
            return cmd_bench(model_path, log_path, epsilon, out_dir, common);
        }
    } catch (const DataError& e) {
        nlohmann::ordered_json err{{"error", e.code}, {"message", e.message}};
        std::cerr << err.dump() << "\n";
        return e.code == "usage" ? 2 : 1;
    } catch (const Error& e) {
        nlohmann::ordered_json err{{"error", "data_error"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
