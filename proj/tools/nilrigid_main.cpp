// nilrigid: decide relative property (T) for affine actions on graph
// nilmanifolds and tori, with machine-checkable certificates, plus a
// floating-point evidence engine for Lyapunov gaps and near-invariance.
//
// Exit codes: 0 when a verdict or summary is produced (UNKNOWN is an answer),
// 2 on malformed input of any kind.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nilrigid/dynamics.hpp"
#include "nilrigid/errors.hpp"
#include "nilrigid/gallery.hpp"
#include "nilrigid/graph.hpp"
#include "nilrigid/rigidity.hpp"
#include "nilrigid/serialize.hpp"

namespace {

using namespace nilrigid;

struct CommonOptions {
    int max_word_length = 8;
    long orbit_bound = 10000;
    std::string gap_tol = "0.05";
    std::uint64_t seed = 42;
    std::size_t steps = 100000;
    std::size_t burn_in = 0;
    int resolution = 16;
    std::string format = "json";

    Budgets budgets() const;
};

// Accepts "p/q", an integer, or a plain decimal such as "0.05", all read
// exactly (0.05 -> 1/20). Scientific notation is rejected.
Rational parse_tolerance(const std::string& text) {
    const auto dot = text.find('.');
    if (dot == std::string::npos) return parse_rational(text);
    std::string digits = text;
    bool negative = false;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
        negative = digits[0] == '-';
        digits.erase(0, 1);
    }
    const auto point = digits.find('.');
    const std::string whole = digits.substr(0, point);
    const std::string frac = digits.substr(point + 1);
    if ((whole.empty() && frac.empty()) || frac.find('.') != std::string::npos ||
        (whole + frac).find_first_not_of("0123456789") != std::string::npos)
        throw FormatError("not a decimal or rational literal: '" + text + "'");
    BigInt num = 0;
    for (const char c : whole + frac) num = num * 10 + (c - '0');
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const Rational r(num, den);
    return negative ? -r : r;
}

Budgets CommonOptions::budgets() const {
    Budgets b;
    b.max_word_length = max_word_length;
    b.orbit_bound = orbit_bound;
    b.gap_tol = parse_tolerance(gap_tol);
    if (b.gap_tol <= 0) throw FormatError("--gap-tol must be positive, got '" + gap_tol + "'");
    return b;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("cannot read '" + path + "'");
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

// Full content lands under a temporary name first, so the target path never
// holds a partial artifact.
void write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw FormatError("cannot write '" + tmp + "'");
        os << content;
        if (!os.flush()) throw FormatError("failed writing '" + tmp + "'");
    }
    std::filesystem::rename(tmp, path);
}

struct InputSelection {
    std::string graph_path;    // nilmanifold mode when nonempty
    std::string generators_path;
    bool torus = false;
};

void attach_input_flags(CLI::App* cmd, InputSelection& in) {
    auto* graph = cmd->add_option("--graph", in.graph_path,
                                  "graph description file (selects the nilmanifold mode)")
                      ->check(CLI::ExistingFile);
    cmd->add_flag("--torus", in.torus,
                  "act on the torus instead: generators carry integer unimodular matrices")
        ->excludes(graph);
    cmd->add_option("--generators", in.generators_path, "generator JSON file")
        ->required()
        ->check(CLI::ExistingFile);
}

void attach_common_flags(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--max-word-length", o.max_word_length,
                    "longest generator word the exact searches consider")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber)
        ->envname("NILRIGID_MAX_WORD_LENGTH");
    cmd->add_option("--orbit-bound", o.orbit_bound, "largest finite line orbit the searches accept")
        ->capture_default_str()
        ->check(CLI::PositiveNumber)
        ->envname("NILRIGID_ORBIT_BOUND");
    cmd->add_option("--gap-tol", o.gap_tol,
                    "required relative eigenvalue gap for proximality (rational or decimal)")
        ->capture_default_str()
        ->envname("NILRIGID_GAP_TOL");
    cmd->add_option("--seed", o.seed, "random walk seed")
        ->capture_default_str()
        ->envname("NILRIGID_SEED");
    cmd->add_option("--steps", o.steps, "random walk length")
        ->capture_default_str()
        ->check(CLI::PositiveNumber)
        ->envname("NILRIGID_STEPS");
    cmd->add_option("--burn-in", o.burn_in, "walk points the averaging stages discard")
        ->capture_default_str()
        ->envname("NILRIGID_BURN_IN");
    cmd->add_option("--resolution", o.resolution, "projective grid resolution for binned scores")
        ->capture_default_str()
        ->check(CLI::PositiveNumber)
        ->envname("NILRIGID_RESOLUTION");
    cmd->add_option("--format", o.format, "report format")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "text"}))
        ->envname("NILRIGID_FORMAT");
}

GeneratorSet load_generator_set(const InputSelection& in) {
    const Json j = parse_json(read_file(in.generators_path), in.generators_path);
    if (in.torus) return make_torus_set(torus_generators_from_json(j));
    if (in.graph_path.empty())
        throw FormatError("pass --graph <file> for the nilmanifold mode or --torus for the torus");
    auto algebra = std::make_shared<const GraphAlgebra>(parse_graph(read_file(in.graph_path)));
    std::vector<AffineGenerator> gens = generators_from_json(*algebra, j);
    return make_nilmanifold_set(std::move(algebra), std::move(gens));
}

std::vector<Eigen::MatrixXd> float_matrices(const GeneratorSet& gs) {
    std::vector<Eigen::MatrixXd> out;
    out.reserve(gs.matrices.size());
    for (const QMat& m : gs.matrices) out.push_back(to_float(m));
    return out;
}

struct DynamicsRun {
    std::vector<Eigen::VectorXd> trajectory;
    Json summary;
};

DynamicsRun run_dynamics(const GeneratorSet& gs, const CommonOptions& o) {
    const std::vector<Eigen::MatrixXd> mats = float_matrices(gs);
    WalkConfig cfg;
    cfg.steps = o.steps;
    cfg.seed = o.seed;
    cfg.burn_in = o.burn_in;
    DynamicsRun run;
    run.trajectory = random_product_walk(mats, cfg);
    const EmpiricalMeasure measure = cesaro_empirical_measure(run.trajectory, cfg.burn_in);
    std::vector<double> scores;
    scores.reserve(mats.size());
    for (const Eigen::MatrixXd& m : mats)
        scores.push_back(near_invariance_score(measure, m, o.resolution));
    run.summary = dynamics_summary_to_json(lyapunov_gap_estimate(mats, cfg), scores, o.seed);
    return run;
}

std::string dynamics_text(const Json& d) {
    std::ostringstream os;
    os << "dynamics:\n";
    os << "  steps: " << d.at("steps").dump() << " (seed " << d.at("seed").dump() << ")\n";
    os << "  lyapunov: " << d.at("lyapunov").at(0).dump() << " " << d.at("lyapunov").at(1).dump()
       << " (gap " << d.at("lyapunov_gap").dump() << ")\n";
    os << "  near-invariance:";
    for (const auto& [index, score] : d.at("near_invariance").items())
        os << " " << index << "=" << score.dump();
    os << "\n";
    return os.str();
}

// The whole report is assembled first and written in one shot.
void emit(const std::string& text) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
}

void emit_verdict(const RigidityVerdict& v, const std::optional<Json>& dynamics,
                  const CommonOptions& o) {
    if (o.format == "json") {
        Json report = verdict_to_json(v);
        if (dynamics) report["dynamics"] = *dynamics;
        emit(report.dump(2) + "\n");
        return;
    }
    std::string text = verdict_to_text(v);
    if (dynamics) text += dynamics_text(*dynamics);
    emit(text);
}

int cmd_analyze(const InputSelection& in, bool assume_zariski_dense, bool with_dynamics,
                const CommonOptions& o) {
    const Budgets budgets = o.budgets();
    const GeneratorSet gs = load_generator_set(in);
    const RigidityVerdict v = gs.mode == AnalysisMode::Nilmanifold
                                  ? nilmanifold_verdict(gs, assume_zariski_dense, budgets)
                                  : torus_verdict(gs, budgets);
    std::optional<Json> dynamics;
    if (with_dynamics) dynamics = run_dynamics(gs, o).summary;
    emit_verdict(v, dynamics, o);
    return 0;
}

int cmd_examples(const std::string& name, bool list, bool with_dynamics, const CommonOptions& o) {
    if (list) {
        std::string out;
        for (const std::string& n : gallery_names()) out += n + "\n";
        emit(out);
        return 0;
    }
    if (name.empty()) throw FormatError("examples needs a name (or --list to enumerate them)");
    const Budgets budgets = o.budgets();
    const GalleryEntry entry = gallery_example(name);
    // The gallery's generator sets contain every adjacent elementary pair per
    // coherent block, so the projected groups are Zariski-dense; the verdict
    // records that as an assumption like any other analysis would.
    const RigidityVerdict v =
        entry.generators.mode == AnalysisMode::Nilmanifold
            ? nilmanifold_verdict(entry.generators, /*assume_zariski_dense=*/true, budgets)
            : torus_verdict(entry.generators, budgets);
    std::optional<Json> dynamics;
    if (with_dynamics) dynamics = run_dynamics(entry.generators, o).summary;
    emit_verdict(v, dynamics, o);
    return 0;
}

int cmd_dynamics(const InputSelection& in, const std::string& trajectory_out,
                 const std::string& summary_out, const CommonOptions& o) {
    const GeneratorSet gs = load_generator_set(in);
    const DynamicsRun run = run_dynamics(gs, o);
    if (!trajectory_out.empty()) write_file(trajectory_out, trajectory_to_csv(run.trajectory));
    if (!summary_out.empty()) write_file(summary_out, run.summary.dump(2) + "\n");
    if (o.format == "json")
        emit(run.summary.dump(2) + "\n");
    else
        emit(dynamics_text(run.summary));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "nilrigid: exact relative property (T) verdicts, with certificates, for affine "
        "actions on graph nilmanifolds and tori"};
    app.require_subcommand(1);

    CommonOptions options;
    InputSelection analyze_in;
    bool assume_zariski_dense = false;
    bool analyze_with_dynamics = false;
    CLI::App* analyze =
        app.add_subcommand("analyze", "decide the action described by input files");
    attach_input_flags(analyze, analyze_in);
    analyze
        ->add_flag("--assume-zariski-dense", assume_zariski_dense,
                   "record Zariski density of the projected group as an assumption")
        ->envname("NILRIGID_ASSUME_ZARISKI_DENSE");
    analyze->add_flag("--with-dynamics", analyze_with_dynamics,
                      "annotate the report with floating-point evidence");
    attach_common_flags(analyze, options);

    std::string example_name;
    bool example_list = false;
    bool example_with_dynamics = false;
    CLI::App* examples = app.add_subcommand("examples", "reproduce a built-in worked example");
    examples->add_option("name", example_name,
                         "heisenberg | complete:n | star:n | torus-f2 (2 <= n <= 6)");
    examples->add_flag("--list", example_list, "list the available names and exit");
    examples->add_flag("--with-dynamics", example_with_dynamics,
                       "annotate the report with floating-point evidence");
    attach_common_flags(examples, options);

    InputSelection dynamics_in;
    std::string trajectory_out;
    std::string summary_out;
    CLI::App* dynamics = app.add_subcommand(
        "dynamics", "estimate Lyapunov gaps and near-invariance for the projective action");
    attach_input_flags(dynamics, dynamics_in);
    dynamics->add_option("--trajectory-out", trajectory_out, "write the walk trajectory CSV here");
    dynamics->add_option("--summary-out", summary_out, "write the JSON summary here");
    attach_common_flags(dynamics, options);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze))
            return cmd_analyze(analyze_in, assume_zariski_dense, analyze_with_dynamics, options);
        if (app.got_subcommand(examples))
            return cmd_examples(example_name, example_list, example_with_dynamics, options);
        return cmd_dynamics(dynamics_in, trajectory_out, summary_out, options);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
