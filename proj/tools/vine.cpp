// vine: simulate RDS data, reconstruct the sampled subgraph, score it.
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "config_file.hpp"
#include "vine/experiment.hpp"
#include "vine/observed_io.hpp"

namespace fs = std::filesystem;
using namespace vine;

namespace {

enum Exit { ok = 0, validation = 2, unconverged = 3, early_termination = 4 };

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GraphOptions {
    std::string path;
    std::size_t synthetic_nodes = 0;
    std::size_t attach = 5;
    std::uint64_t graph_seed = 1;
};

struct TimingOptions {
    std::string family = "exponential";
    double rate = 1.0;
    double shape = 1.0;
    double scale = 1.0;

    TimingModel model() const
    {
        return parse_timing_family(family) == TimingFamily::exponential ? TimingModel::exponential(rate)
                                                                          : TimingModel::weibull(shape, scale);
    }
};

struct SampleOptions {
    std::size_t n = 50;
    std::size_t coupons = 3;
    std::size_t seeds = 1;
    double degree_noise = 0.0;
    std::uint64_t seed = 0;
};

struct PenaltyOptions {
    double omega = 1.0;
    double p = 2.0;
};

void add_graph_options(CLI::App *app, GraphOptions &g)
{
    app->add_option("--graph", g.path, "Population edge list (`u v` per line)");
    app->add_option("--synthetic-nodes", g.synthetic_nodes,
                    "Generate a preferential-attachment graph with this many nodes instead of --graph");
    app->add_option("--attach", g.attach, "Edges per new node of the synthetic graph");
    app->add_option("--graph-seed", g.graph_seed, "Seed of the synthetic graph");
}

void add_timing_options(CLI::App *app, TimingOptions &t, const char *what)
{
    app->add_option("--family", t.family, std::string("Waiting-time family ") + what)
        ->check(CLI::IsMember({"exponential", "weibull"}));
    app->add_option("--rate", t.rate, "Exponential rate")->check(CLI::PositiveNumber);
    app->add_option("--shape", t.shape, "Weibull shape")->check(CLI::PositiveNumber);
    app->add_option("--scale", t.scale, "Weibull scale")->check(CLI::PositiveNumber);
}

void add_sample_options(CLI::App *app, SampleOptions &s)
{
    app->add_option("--n", s.n, "Sample size")->check(CLI::PositiveNumber);
    app->add_option("--coupons", s.coupons, "Coupons per subject");
    app->add_option("--seeds", s.seeds, "Seeds entering at time 0")->check(CLI::PositiveNumber);
    app->add_option("--degree-noise", s.degree_noise, "Lognormal sigma on reported degrees")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--seed", s.seed, "Master random seed");
}

void add_penalty_options(CLI::App *app, PenaltyOptions &p)
{
    app->add_option("--omega", p.omega, "Degree-penalty weight")->check(CLI::NonNegativeNumber);
    app->add_option("--p", p.p, "Norm of the degree penalty (inf allowed)");
}

Graph load_graph(const GraphOptions &g)
{
    if (!g.path.empty() && g.synthetic_nodes)
        throw ValidationError("give either --graph or --synthetic-nodes, not both");
    if (g.synthetic_nodes) {
        Rng rng(g.graph_seed);
        try {
            return preferential_attachment(g.synthetic_nodes, g.attach, rng);
        } catch (const std::invalid_argument &e) {
            throw ValidationError(e.what());
        }
    }
    if (g.path.empty())
        throw ValidationError("a population graph is required (--graph or --synthetic-nodes)");
    if (!fs::exists(g.path))
        throw ValidationError("graph file '" + g.path + "' does not exist");
    try {
        return load_edge_list_file(g.path).graph;
    } catch (const ParseError &e) {
        throw ValidationError(fmt::format("{}: {}", g.path, e.what()));
    }
}

RdsConfig rds_config(const SampleOptions &s, const TimingOptions &t)
{
    RdsConfig cfg;
    cfg.sample_size = s.n;
    cfg.coupons = s.coupons;
    cfg.seed_schedule = {SeedEntry{0.0, s.seeds, {}}};
    cfg.rng_seed = s.seed;
    cfg.timing = t.model();
    cfg.degree_noise = s.degree_noise;
    return cfg;
}

PenaltyConfig penalty_config(const PenaltyOptions &p)
{
    PenaltyConfig pc{p.p, p.omega};
    try {
        pc.check();
    } catch (const std::invalid_argument &e) {
        throw ValidationError(e.what());
    }
    return pc;
}

// Effective option values of a subcommand, minus those that cannot change
// any output byte.
cli::KeyValues effective_options(const CLI::App *app)
{
    static const std::vector<std::string> ignored{"jobs", "out", "out-dir", "out-observed", "out-truth", "help"};
    cli::KeyValues kv;
    for (const CLI::Option *opt : app->get_options()) {
        if (opt->get_lnames().empty())
            continue;
        const std::string &name = opt->get_lnames().front();
        if (std::find(ignored.begin(), ignored.end(), name) != ignored.end())
            continue;
        std::string value;
        if (opt->count() > 0) {
            auto results = opt->reduced_results();
            for (std::size_t k = 0; k < results.size(); ++k)
                value += (k ? "," : "") + results[k];
        } else {
            value = opt->get_default_str();
        }
        kv.emplace_back(name, value);
    }
    return kv;
}

Provenance provenance(const std::string &command, const std::string &hash, const std::string &seed)
{
    return {{"tool", "vine " VINE_VERSION}, {"command", command}, {"config-hash", hash}, {"master-seed", seed}};
}

Provenance provenance(const std::string &command, const std::string &hash, std::uint64_t seed)
{
    return provenance(command, hash, std::to_string(seed));
}

// Master seed recorded in the leading comment block of an artifact.
std::string recorded_seed(const std::string &path)
{
    std::ifstream in(path);
    const std::string key = "# master-seed: ";
    for (std::string line; std::getline(in, line) && line.rfind("#", 0) == 0;)
        if (line.rfind(key, 0) == 0)
            return line.substr(key.size());
    return "unknown";
}

template <class Writer>
void write_file(const fs::path &path, Writer &&writer)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    writer(out);
    if (!out)
        throw std::runtime_error("write to '" + path.string() + "' failed");
}

ObservedData load_observed(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("observed-data file '" + path + "' does not exist");
    ObservedData obs;
    try {
        obs = read_observed(in);
    } catch (const ParseError &e) {
        throw ValidationError(fmt::format("{}: {}", path, e.what()));
    }
    if (auto problems = validate(obs); !problems.empty())
        throw ValidationError(fmt::format("{}: {}", path, problems.front()));
    return obs;
}

void write_csv_provenance(std::ostream &out, const Provenance &meta)
{
    for (const auto &[k, v] : meta)
        out << "# " << k << ": " << v << '\n';
}

void write_roc(const fs::path &path, const RocResult &r, const Provenance &meta)
{
    write_file(path, [&](std::ostream &out) {
        write_csv_provenance(out, meta);
        write_roc_csv(out, r);
    });
}

void write_svg(const fs::path &path, const RocResult &curve, const RocResult &baseline, const std::string &title,
               const Provenance &meta)
{
    write_file(path, [&](std::ostream &out) {
        std::ostringstream body;
        write_roc_svg(body, curve, baseline, title);
        std::string text = body.str();
        // Provenance as an XML comment after the declaration.
        auto eol = text.find('\n') + 1;
        std::string comment = "<!--";
        for (const auto &[k, v] : meta)
            comment += " " + k + "=" + v;
        comment += " -->\n";
        text.insert(eol, comment);
        out << text;
    });
}

// simulate ------------------------------------------------------------------

struct SimulateArgs {
    GraphOptions graph;
    SampleOptions sample;
    TimingOptions timing;
    std::string out_observed = "observed.vine";
    std::string out_truth = "truth.vine";
};

int cmd_simulate(const SimulateArgs &a, const CLI::App *app)
{
    Graph g = load_graph(a.graph);
    RdsConfig cfg = rds_config(a.sample, a.timing);
    auto meta = provenance("simulate", cli::config_hash(effective_options(app)), a.sample.seed);
    SimulationOutcome outcome;
    try {
        outcome = simulate(g, cfg);
    } catch (const std::invalid_argument &e) {
        throw ValidationError(e.what());
    }
    if (auto *stop = std::get_if<EarlyTermination>(&outcome)) {
        std::cerr << fmt::format("early termination: recruitment died out after {} of {} subjects (t = {})\n",
                                 stop->enrolled, a.sample.n, stop->time);
        return early_termination;
    }
    const auto &sim = std::get<Simulation>(outcome);
    write_file(a.out_observed, [&](std::ostream &out) { write_observed(out, sim.observed, meta); });
    write_file(a.out_truth, [&](std::ostream &out) { write_truth(out, sim.truth, g, meta); });
    std::cout << fmt::format("simulated {} subjects, {} revealed edges, {} induced edges\n", sim.observed.n,
                             sim.observed.recruitment.size(), sim.truth.adjacency.edge_count());
    return ok;
}

// infer ---------------------------------------------------------------------

struct InferArgs {
    std::string observed;
    std::string bound = "upper";
    PenaltyOptions penalty;
    TimingOptions timing;
    std::size_t rounds = 1;
    std::string pendant = "marginals";
    bool parallel = false;
    std::string diagnostics;
    std::string out = "inference.vine";
};

int cmd_infer(const InferArgs &a, const CLI::App *app)
{
    ObservedData obs = load_observed(a.observed);
    PenaltyConfig pc = penalty_config(a.penalty);
    InferenceOptions options;
    options.bound = parse_bound_choice(a.bound);
    options.pendant = parse_pendant_rule(a.pendant);
    options.oracle.execution = a.parallel ? Execution::parallel : Execution::serial;
    auto meta = provenance("infer", cli::config_hash(effective_options(app)), recorded_seed(a.observed));

    AlternationResult alt;
    try {
        alt = alternate(obs, pc, a.timing.model(), a.rounds, options);
    } catch (const std::invalid_argument &e) {
        throw ValidationError(e.what());
    }
    const InferenceResult &res = alt.last;
    write_file(a.out, [&](std::ostream &out) { write_inference(out, res, meta); });

    if (!a.diagnostics.empty()) {
        auto [up, lo] = infer_both(obs, pc, res.theta_trajectory[res.theta_trajectory.size() - 2], options);
        AffineRatioBounds ratios = affine_ratio_bounds(lo.bound, up.bound);
        write_file(a.diagnostics, [&](std::ostream &out) {
            write_csv_provenance(out, meta);
            out << "element,low,high\n";
            for (std::size_t k = 0; k < ratios.low.size(); ++k)
                out << k << ',' << format_double(ratios.low[k]) << ',' << format_double(ratios.high[k]) << '\n';
        });
    }

    std::cout << fmt::format("bound={} kind={} free-pairs={} log-partition=[{:.6g}, {:.6g}] zeta={} theta={} "
                             "converged={}\n",
                             to_string(res.choice), to_string(res.bound.kind), res.edge_weights.size(),
                             res.log_partition_lower, res.log_partition_upper,
                             res.selected_zeta ? format_double(*res.selected_zeta) : "none",
                             alt.theta.describe(), res.converged ? "yes" : "no");
    if (alt.theta_step_failed)
        std::cerr << "warning: theta step failed; kept the previous estimate\n";
    if (!res.converged) {
        std::cerr << "solver did not converge; results written\n";
        return unconverged;
    }
    return ok;
}

// eval ----------------------------------------------------------------------

struct EvalArgs {
    std::string inference;
    std::string truth;
    std::string convention = "standard";
    std::string out_dir = ".";
};

int cmd_eval(const EvalArgs &a, const CLI::App *app)
{
    std::ifstream inf(a.inference);
    if (!inf)
        throw ValidationError("inference file '" + a.inference + "' does not exist");
    std::ifstream tr(a.truth);
    if (!tr)
        throw ValidationError("truth file '" + a.truth + "' does not exist");
    InferenceResult res;
    TruthRecord truth;
    try {
        res = read_inference(inf);
        truth = read_truth(tr);
    } catch (const ParseError &e) {
        throw ValidationError(e.what());
    }
    if (truth.adjacency.size() != res.codec.subjects())
        throw ValidationError("truth and inference disagree on the sample size");
    Convention conv = parse_convention(a.convention);
    auto meta = provenance("eval", cli::config_hash(effective_options(app)), recorded_seed(a.inference));

    RocResult curve, base;
    try {
        curve = roc(res, truth.adjacency, conv);
        base = gr_baseline(res.codec.revealed(), truth.adjacency, conv);
    } catch (const std::invalid_argument &e) {
        throw ValidationError(e.what());
    }
    CornerPoint corner = min_corner_distance(curve);
    fs::path dir(a.out_dir);
    write_roc(dir / "roc.csv", curve, meta);
    write_svg(dir / "roc.svg", curve, base, fmt::format("ROC ({} bound)", to_string(res.choice)), meta);
    std::string summary =
        fmt::format("auc_vine={:.6f} auc_gr={:.6f} min_corner={:.6f} corner_zeta={} convention={}{}\n", curve.auc,
                    base.auc, corner.distance, format_double(corner.zeta), to_string(conv),
                    curve.degenerate ? " degenerate=yes" : "");
    write_file(dir / "summary.txt", [&](std::ostream &out) {
        write_csv_provenance(out, meta);
        out << summary;
    });
    std::cout << summary;
    return ok;
}

// pipeline ------------------------------------------------------------------

struct PipelineArgs {
    GraphOptions graph;
    SampleOptions sample;
    TimingOptions timing;
    PenaltyOptions penalty;
    std::string convention = "standard";
    std::size_t replicates = 20;
    std::size_t jobs = 1;
    bool anneal = false;
    std::string out;
};

const std::vector<std::string> metric_names{"auc_upper",    "auc_lower",    "auc_gr",        "tpr_gr",
                                            "corner_upper", "corner_lower", "corner_gr",     "corner_anneal",
                                            "converged"};

using Metrics = std::map<std::string, double>;

Metrics replicate_metrics(const ReplicateOutcome &o)
{
    Metrics m;
    m["auc_upper"] = o.roc_upper.auc;
    m["auc_lower"] = o.roc_lower ? o.roc_lower->auc : NAN;
    m["auc_gr"] = o.roc_baseline.auc;
    m["tpr_gr"] = o.roc_baseline.points[1].tpr;
    m["corner_upper"] = o.corner_upper.distance;
    m["corner_lower"] = o.corner_lower ? o.corner_lower->distance : NAN;
    m["corner_gr"] = o.corner_baseline;
    m["corner_anneal"] = o.corner_anneal ? *o.corner_anneal : NAN;
    m["converged"] = o.upper.converged ? 1.0 : 0.0;
    return m;
}

void write_metrics(std::ostream &out, const Metrics &m, std::uint64_t seed)
{
    out << "seed=" << seed << '\n';
    for (const auto &name : metric_names)
        out << name << '=' << format_double(m.at(name)) << '\n';
}

std::optional<Metrics> read_completed(const fs::path &dir, const std::string &hash)
{
    std::ifstream done(dir / "DONE");
    std::string stamp;
    if (!done || !std::getline(done, stamp) || stamp != hash)
        return std::nullopt;
    std::ifstream in(dir / "metrics.txt");
    Metrics m;
    for (std::string line; std::getline(in, line);) {
        auto eq = line.find('=');
        if (line.empty() || line[0] == '#' || eq == std::string::npos)
            continue;
        std::string key = line.substr(0, eq);
        if (key == "seed" || key == "status")
            continue;
        std::string value = line.substr(eq + 1);
        m[key] = value == "nan" ? NAN : parse_double(value);
    }
    for (const auto &name : metric_names)
        if (!m.count(name))
            return std::nullopt;
    return m;
}

int cmd_pipeline(const PipelineArgs &a, const CLI::App *app)
{
    if (a.out.empty())
        throw ValidationError("--out is required");
    if (a.replicates == 0 || a.jobs == 0)
        throw ValidationError("--replicates and --jobs must be positive");
    Graph g = load_graph(a.graph);
    const std::string hash = cli::config_hash(effective_options(app));
    const std::uint64_t master = a.sample.seed;

    ReplicateSpec spec;
    spec.rds = rds_config(a.sample, a.timing);
    spec.penalty = penalty_config(a.penalty);
    spec.model = a.timing.model();
    spec.convention = parse_convention(a.convention);
    spec.anneal = a.anneal;

    fs::path root(a.out);
    fs::create_directories(root);
    std::vector<std::optional<Metrics>> metrics(a.replicates);
    std::vector<std::string> status(a.replicates);
    std::vector<std::string> errors(a.replicates);

    const long count = long(a.replicates);
#pragma omp parallel for schedule(dynamic) num_threads(int(a.jobs))
    for (long k = 0; k < count; ++k) {
        fs::path dir = root / fmt::format("rep-{:03d}", k);
        try {
            if (auto done = read_completed(dir, hash)) {
                metrics[k] = done;
                status[k] = "resumed";
                continue;
            }
            std::uint64_t seed = split_seed(master, std::uint64_t(k));
            Provenance meta = provenance("pipeline", hash, master);
            meta.emplace_back("replicate", std::to_string(k));
            fs::create_directories(dir);
            fs::remove(dir / "DONE");
            auto outcome = run_replicate(g, spec, seed);
            if (!outcome) {
                status[k] = "early-termination";
                continue;
            }
            meta.emplace_back("replicate-seed", std::to_string(outcome->seed));
            const Simulation &sim = outcome->simulation;
            write_file(dir / "observed.vine", [&](std::ostream &o) { write_observed(o, sim.observed, meta); });
            write_file(dir / "truth.vine", [&](std::ostream &o) { write_truth(o, sim.truth, g, meta); });
            write_file(dir / "inference-upper.vine",
                       [&](std::ostream &o) { write_inference(o, outcome->upper, meta); });
            write_roc(dir / "roc-upper.csv", outcome->roc_upper, meta);
            if (outcome->lower) {
                write_file(dir / "inference-lower.vine",
                           [&](std::ostream &o) { write_inference(o, *outcome->lower, meta); });
                write_roc(dir / "roc-lower.csv", *outcome->roc_lower, meta);
            }
            write_roc(dir / "roc-gr.csv", outcome->roc_baseline, meta);
            write_svg(dir / "roc.svg", outcome->roc_upper, outcome->roc_baseline,
                      fmt::format("replicate {} (upper bound)", k), meta);
            Metrics m = replicate_metrics(*outcome);
            write_file(dir / "metrics.txt", [&](std::ostream &o) {
                write_csv_provenance(o, meta);
                write_metrics(o, m, outcome->seed);
            });
            write_file(dir / "DONE", [&](std::ostream &o) { o << hash << '\n'; });
            metrics[k] = m;
            status[k] = "done";
        } catch (const std::exception &e) {
            errors[k] = e.what();
            status[k] = "error";
        }
    }

    for (long k = 0; k < count; ++k)
        if (!errors[k].empty())
            throw std::runtime_error(fmt::format("replicate {}: {}", k, errors[k]));

    Provenance meta = provenance("pipeline", hash, master);
    write_file(root / "replicates.csv", [&](std::ostream &out) {
        write_csv_provenance(out, meta);
        out << "replicate,status";
        for (const auto &name : metric_names)
            out << ',' << name;
        out << '\n';
        for (std::size_t k = 0; k < a.replicates; ++k) {
            out << k << ',' << (metrics[k] ? "ok" : status[k]);
            for (const auto &name : metric_names)
                out << ',' << (metrics[k] ? fmt::format("{:.17g}", metrics[k]->at(name)) : std::string("nan"));
            out << '\n';
        }
    });

    std::size_t completed = 0;
    std::map<std::string, std::vector<double>> columns;
    for (const auto &m : metrics) {
        if (!m)
            continue;
        ++completed;
        for (const auto &[k, v] : *m)
            if (!std::isnan(v))
                columns[k].push_back(v);
    }
    write_file(root / "summary.csv", [&](std::ostream &out) {
        write_csv_provenance(out, meta);
        out << "statistic";
        for (const auto &name : metric_names)
            out << ',' << name;
        out << '\n';
        const char *labels[3] = {"q1", "median", "q3"};
        for (int s = 0; s < 3; ++s) {
            out << labels[s];
            for (const auto &name : metric_names) {
                auto it = columns.find(name);
                if (it == columns.end() || it->second.empty()) {
                    out << ",nan";
                    continue;
                }
                Quartiles q = quartiles(it->second);
                double v = s == 0 ? q.q1 : s == 1 ? q.median : q.q3;
                out << ',' << fmt::format("{:.17g}", v);
            }
            out << '\n';
        }
    });

    std::size_t resumed = std::count(status.begin(), status.end(), "resumed");
    std::cout << fmt::format("{} of {} replicates complete ({} resumed)", completed, a.replicates, resumed);
    if (columns.count("auc_upper"))
        std::cout << fmt::format("; median AUC upper={:.4f}", quartiles(columns["auc_upper"]).median);
    if (columns.count("auc_lower"))
        std::cout << fmt::format(" lower={:.4f}", quartiles(columns["auc_lower"]).median);
    if (columns.count("auc_gr"))
        std::cout << fmt::format(" G_R={:.4f}", quartiles(columns["auc_gr"]).median);
    std::cout << '\n';
    if (completed < a.replicates) {
        std::cerr << "early termination in " << a.replicates - completed << " replicate(s)\n";
        return early_termination;
    }
    return ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Network reconstruction from respondent-driven sampling data"};
    app.set_version_flag("--version", std::string("vine ") + VINE_VERSION);
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
    app.add_option("--config", "Flat key = value file of option defaults (given after the subcommand)");

    SimulateArgs sim;
    auto *simulate_cmd = app.add_subcommand("simulate", "Simulate one RDS realisation");
    add_graph_options(simulate_cmd, sim.graph);
    add_sample_options(simulate_cmd, sim.sample);
    add_timing_options(simulate_cmd, sim.timing, "of the simulator");
    simulate_cmd->add_option("--out-observed", sim.out_observed, "Observed-data output path");
    simulate_cmd->add_option("--out-truth", sim.out_truth, "Ground-truth output path");

    InferArgs inf;
    auto *infer_cmd = app.add_subcommand("infer", "Infer edge weights from observed data");
    infer_cmd->add_option("--observed", inf.observed, "Observed-data file")->required();
    infer_cmd->add_option("--bound", inf.bound, "Affine bound to threshold")
        ->check(CLI::IsMember({"upper", "lower"}));
    add_penalty_options(infer_cmd, inf.penalty);
    add_timing_options(infer_cmd, inf.timing, "(initial theta)");
    infer_cmd->add_option("--rounds", inf.rounds, "A-step/theta-step rounds")->check(CLI::PositiveNumber);
    infer_cmd->add_option("--pendant-rule", inf.pendant, "Pendant counts for the theta step")
        ->check(CLI::IsMember({"marginals", "completion"}));
    infer_cmd->add_flag("--parallel", inf.parallel, "Score oracle calls with OpenMP");
    infer_cmd->add_option("--diagnostics", inf.diagnostics, "Write the affine-ratio marginal bounds here");
    infer_cmd->add_option("--out", inf.out, "Inference output path");

    EvalArgs ev;
    auto *eval_cmd = app.add_subcommand("eval", "Score an inference against the truth");
    eval_cmd->add_option("--inference", ev.inference, "Inference file")->required();
    eval_cmd->add_option("--truth", ev.truth, "Truth file")->required();
    eval_cmd->add_option("--convention", ev.convention, "TPR/FPR convention")
        ->check(CLI::IsMember({"standard", "paper-literal"}));
    eval_cmd->add_option("--out-dir", ev.out_dir, "Directory for roc.csv, roc.svg, summary.txt");

    PipelineArgs pipe;
    auto *pipeline_cmd = app.add_subcommand("pipeline", "Replicate sweep: simulate, infer, eval");
    add_graph_options(pipeline_cmd, pipe.graph);
    add_sample_options(pipeline_cmd, pipe.sample);
    add_timing_options(pipeline_cmd, pipe.timing, "of the simulator and the inference");
    add_penalty_options(pipeline_cmd, pipe.penalty);
    pipeline_cmd->add_option("--convention", pipe.convention, "TPR/FPR convention")
        ->check(CLI::IsMember({"standard", "paper-literal"}));
    pipeline_cmd->add_option("--replicates", pipe.replicates, "Number of replicates");
    pipeline_cmd->add_option("--jobs", pipe.jobs, "Replicates run concurrently");
    pipeline_cmd->add_flag("--anneal", pipe.anneal, "Also run the simulated-annealing comparator");
    pipeline_cmd->add_option("--out", pipe.out, "Output directory")->required();

    for (auto *sub : {simulate_cmd, infer_cmd, eval_cmd, pipeline_cmd})
        sub->add_option("--config", "Flat key = value file of option defaults");

    try {
        std::vector<std::string> args(argv, argv + argc);
        args = vine::cli::splice_config(args);
        std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? ok : validation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return validation;
    }

    try {
        if (*simulate_cmd)
            return cmd_simulate(sim, simulate_cmd);
        if (*infer_cmd)
            return cmd_infer(inf, infer_cmd);
        if (*eval_cmd)
            return cmd_eval(ev, eval_cmd);
        return cmd_pipeline(pipe, pipeline_cmd);
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return validation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
