// Python extension module. The surface mirrors the command-line tool: exact
// data travels as the same JSON wire formats ("p/q" strings for rationals),
// reports come back as JSON strings, and every library error surfaces as a
// single Python exception type derived from ValueError.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "nilrigid/algebra.hpp"
#include "nilrigid/automorphism.hpp"
#include "nilrigid/dynamics.hpp"
#include "nilrigid/errors.hpp"
#include "nilrigid/gallery.hpp"
#include "nilrigid/graph.hpp"
#include "nilrigid/rigidity.hpp"
#include "nilrigid/serialize.hpp"

namespace py = pybind11;

namespace {

using namespace nilrigid;

Budgets make_budgets(int max_word_length, long orbit_bound, const std::string& gap_tol) {
    Budgets b;
    b.max_word_length = max_word_length;
    b.orbit_bound = orbit_bound;
    b.gap_tol = parse_rational(gap_tol);
    if (b.max_word_length <= 0 || b.orbit_bound <= 0 || b.gap_tol <= 0)
        throw FormatError("budgets must be positive");
    return b;
}

GeneratorSet load_nilmanifold(const std::string& graph_text, const std::string& generators_json) {
    auto algebra = std::make_shared<const GraphAlgebra>(parse_graph(graph_text));
    const Json j = parse_json(generators_json, "generators");
    return make_nilmanifold_set(algebra, generators_from_json(*algebra, j));
}

GeneratorSet load_torus(const std::string& generators_json) {
    const Json j = parse_json(generators_json, "generators");
    return make_torus_set(torus_generators_from_json(j));
}

std::string report_string(const RigidityVerdict& v) { return verdict_to_json(v).dump(2) + "\n"; }

std::vector<Eigen::MatrixXd> float_matrices(const GeneratorSet& gs) {
    std::vector<Eigen::MatrixXd> mats;
    mats.reserve(gs.matrices.size());
    for (const QMat& m : gs.matrices) mats.push_back(to_float(m));
    return mats;
}

NilElement element_arg(const GraphAlgebra& A, const std::string& text, const std::string& where) {
    return nil_element_from_json(A, parse_json(text, where), where);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Exact rigidity analysis for groups of affine transformations acting on\n"
        "graph nilmanifolds and tori, with floating-point dynamics diagnostics.";

    py::register_exception<Error>(m, "NilrigidError", PyExc_ValueError);

    // ---- graphs ----

    m.def(
        "render_graph",
        [](const std::string& text) { return render_graph(parse_graph(text)); },
        py::arg("text"),
        "Parse a graph description and return its canonical rendering.");

    m.def(
        "coherent_components",
        [](const std::string& text) {
            const GraphSpec g = parse_graph(text);
            const CoherentPartition part = coherent_components(g);
            std::vector<std::vector<std::string>> out;
            for (const auto& cls : part.classes) {
                std::vector<std::string> labels;
                for (int idx : cls) labels.push_back(g.vertices[static_cast<std::size_t>(idx)]);
                out.push_back(std::move(labels));
            }
            return out;
        },
        py::arg("text"),
        "Partition the vertices into coherent components (classes of the twin relation), "
        "as lists of vertex labels.");

    // ---- group arithmetic on the nilpotent group ----

    m.def(
        "multiply",
        [](const std::string& graph_text, const std::string& x, const std::string& y) {
            const GraphAlgebra A(parse_graph(graph_text));
            return nil_element_to_json(A.multiply(element_arg(A, x, "x"), element_arg(A, y, "y")))
                .dump();
        },
        py::arg("graph_text"), py::arg("x"), py::arg("y"),
        "Group product of two elements given as JSON {\"v\": [...], \"w\": [...]}.");

    m.def(
        "inverse",
        [](const std::string& graph_text, const std::string& x) {
            const GraphAlgebra A(parse_graph(graph_text));
            return nil_element_to_json(A.inverse(element_arg(A, x, "x"))).dump();
        },
        py::arg("graph_text"), py::arg("x"), "Group inverse.");

    m.def(
        "bracket",
        [](const std::string& graph_text, const std::string& x, const std::string& y) {
            const GraphAlgebra A(parse_graph(graph_text));
            return nil_element_to_json(A.bracket(element_arg(A, x, "x"), element_arg(A, y, "y")))
                .dump();
        },
        py::arg("graph_text"), py::arg("x"), py::arg("y"), "Lie bracket of two elements.");

    m.def(
        "lattice_contains",
        [](const std::string& graph_text, const std::string& x) {
            const GraphAlgebra A(parse_graph(graph_text));
            return A.lattice_contains(element_arg(A, x, "x"));
        },
        py::arg("graph_text"), py::arg("x"), "Exact lattice membership test.");

    m.def(
        "reduce_mod_lattice",
        [](const std::string& graph_text, const std::string& x) {
            const GraphAlgebra A(parse_graph(graph_text));
            const auto [rep, cocycle] = A.reduce_mod_lattice(element_arg(A, x, "x"));
            return py::make_tuple(nil_element_to_json(rep).dump(),
                                  nil_element_to_json(cocycle).dump());
        },
        py::arg("graph_text"), py::arg("x"),
        "Reduce into the fundamental domain; returns (representative, cocycle) with the "
        "cocycle in the lattice and representative == multiply(x, cocycle).");

    // ---- rigidity verdicts ----

    m.def(
        "analyze_nilmanifold",
        [](const std::string& graph_text, const std::string& generators_json,
           bool assume_zariski_dense, int max_word_length, long orbit_bound,
           const std::string& gap_tol) {
            const GeneratorSet gs = load_nilmanifold(graph_text, generators_json);
            return report_string(nilmanifold_verdict(
                gs, assume_zariski_dense, make_budgets(max_word_length, orbit_bound, gap_tol)));
        },
        py::arg("graph_text"), py::arg("generators_json"), py::arg("assume_zariski_dense") = false,
        py::arg("max_word_length") = 8, py::arg("orbit_bound") = 10000,
        py::arg("gap_tol") = "1/20",
        "Decide relative property (T) for affine generators on the graph nilmanifold; returns "
        "the verdict report as a JSON string.");

    m.def(
        "analyze_torus",
        [](const std::string& generators_json, int max_word_length, long orbit_bound,
           const std::string& gap_tol) {
            const GeneratorSet gs = load_torus(generators_json);
            return report_string(
                torus_verdict(gs, make_budgets(max_word_length, orbit_bound, gap_tol)));
        },
        py::arg("generators_json"), py::arg("max_word_length") = 8,
        py::arg("orbit_bound") = 10000, py::arg("gap_tol") = "1/20",
        "Decide relative property (T) for integer unimodular generators acting on the torus; "
        "returns the verdict report as a JSON string.");

    // ---- gallery ----

    m.def("gallery_names", &gallery_names, "Names of the built-in example actions.");

    m.def(
        "gallery_description",
        [](const std::string& name) { return gallery_example(name).description; },
        py::arg("name"), "One-line description of a built-in example.");

    m.def(
        "analyze_example",
        [](const std::string& name, int max_word_length, long orbit_bound,
           const std::string& gap_tol) {
            const GalleryEntry entry = gallery_example(name);
            const Budgets budgets = make_budgets(max_word_length, orbit_bound, gap_tol);
            // Gallery generator sets contain, per coherent block, every
            // adjacent elementary pair, so their linear parts generate a
            // Zariski-dense block subgroup; the density flag is set for them.
            const RigidityVerdict v =
                entry.generators.mode == AnalysisMode::Nilmanifold
                    ? nilmanifold_verdict(entry.generators, true, budgets)
                    : torus_verdict(entry.generators, budgets);
            return report_string(v);
        },
        py::arg("name"), py::arg("max_word_length") = 8, py::arg("orbit_bound") = 10000,
        py::arg("gap_tol") = "1/20",
        "Run a built-in example and return its verdict report as a JSON string.");

    // ---- dynamics diagnostics ----

    m.def(
        "lyapunov_gap",
        [](const std::string& matrices_json, std::size_t steps, std::uint64_t seed,
           std::size_t burn_in) {
            const Json j = parse_json(matrices_json, "matrices");
            if (!j.is_array() || j.empty())
                throw FormatError("matrices: expected a non-empty array of matrices");
            std::vector<Eigen::MatrixXd> mats;
            for (std::size_t i = 0; i < j.size(); ++i)
                mats.push_back(
                    to_float(qmat_from_json(j[i], "matrices[" + std::to_string(i) + "]")));
            WalkConfig cfg;
            cfg.steps = steps;
            cfg.seed = seed;
            cfg.burn_in = burn_in;
            const LyapunovEstimate est = lyapunov_gap_estimate(mats, cfg);
            py::dict d;
            d["lambda1"] = est.lambda1;
            d["lambda2"] = est.lambda2;
            d["gap"] = est.gap();
            d["steps"] = est.steps;
            return d;
        },
        py::arg("matrices_json"), py::arg("steps") = 100000, py::arg("seed") = 42,
        py::arg("burn_in") = 0,
        "Top-two Lyapunov exponent estimates for the random product of the given matrices "
        "(exact rational entries, JSON-encoded). Deterministic per seed.");

    m.def(
        "dynamics_report",
        [](const std::string& generators_json, const std::string& graph_text, std::size_t steps,
           std::uint64_t seed, std::size_t burn_in, int resolution) {
            const GeneratorSet gs = graph_text.empty()
                                        ? load_torus(generators_json)
                                        : load_nilmanifold(graph_text, generators_json);
            const std::vector<Eigen::MatrixXd> mats = float_matrices(gs);
            WalkConfig cfg;
            cfg.steps = steps;
            cfg.seed = seed;
            cfg.burn_in = burn_in;
            const auto walk = random_product_walk(mats, cfg);
            const EmpiricalMeasure measure = cesaro_empirical_measure(walk, burn_in);
            std::vector<double> scores;
            scores.reserve(mats.size());
            for (const auto& mat : mats)
                scores.push_back(near_invariance_score(measure, mat, resolution));
            return dynamics_summary_to_json(lyapunov_gap_estimate(mats, cfg), scores, seed)
                       .dump(2) +
                   "\n";
        },
        py::arg("generators_json"), py::arg("graph_text") = "", py::arg("steps") = 100000,
        py::arg("seed") = 42, py::arg("burn_in") = 0, py::arg("resolution") = 16,
        "Random-walk diagnostics (Lyapunov estimates and per-generator near-invariance "
        "scores) for a generator set; pass graph_text for nilmanifold mode, leave it empty "
        "for torus mode. Returns a JSON summary string.");

    m.attr("__version__") = "0.1.0";
}
