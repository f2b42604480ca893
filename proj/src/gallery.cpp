#include "nilrigid/gallery.hpp"

#include <sstream>

#include "nilrigid/errors.hpp"
#include "nilrigid/graph.hpp"

namespace nilrigid {

namespace {

std::string complete_graph_text(int n) {
    std::ostringstream os;
    os << "vertices:";
    for (int i = 1; i <= n; ++i) os << " v" << i;
    os << "\n";
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) os << "edge: v" << i << " v" << j << "\n";
    return os.str();
}

std::string star_graph_text(int n) {
    std::ostringstream os;
    os << "vertices:";
    for (int i = 1; i <= n; ++i) os << " l" << i;
    os << " c\n";
    for (int i = 1; i <= n; ++i) os << "edge: l" << i << " c\n";
    return os.str();
}

AffineGenerator elementary_linear(const GraphAlgebra& algebra, std::size_t row, std::size_t col) {
    QMat g = QMat::identity(algebra.dim_v());
    g.at(row, col) = 1;
    return assemble(algebra, algebra.zero(), QMat(), std::move(g));
}

AffineGenerator elementary_shear(const GraphAlgebra& algebra, std::size_t edge, std::size_t vertex) {
    QMat theta(algebra.dim_w(), algebra.dim_v());
    theta.at(edge, vertex) = 1;
    return assemble(algebra, algebra.zero(), std::move(theta), QMat());
}

GalleryEntry nilmanifold_entry(std::string name, std::string description,
                               const std::string& graph_text) {
    auto algebra = std::make_shared<const GraphAlgebra>(parse_graph(graph_text));
    GalleryEntry entry;
    entry.name = std::move(name);
    entry.description = std::move(description);
    entry.generators = make_nilmanifold_set(algebra, gallery_affine_generators(*algebra));
    return entry;
}

int parse_parameter(const std::string& name, const std::string& family) {
    const std::string tail = name.substr(family.size() + 1);
    if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
        throw UnknownExample(name);
    if (tail.size() > 2) throw OutOfRange(family + " parameter " + tail + " (supported: 2..6)");
    const int n = std::stoi(tail);
    if (n < 2 || n > 6) throw OutOfRange(family + " parameter " + tail + " (supported: 2..6)");
    return n;
}

} // namespace

std::vector<AffineGenerator> gallery_affine_generators(const GraphAlgebra& algebra) {
    std::vector<AffineGenerator> gens;
    const CoherentPartition partition = coherent_components(algebra.graph());
    for (const std::vector<int>& cls : partition.classes)
        for (std::size_t t = 0; t + 1 < cls.size(); ++t) {
            const auto i = static_cast<std::size_t>(cls[t]);
            const auto j = static_cast<std::size_t>(cls[t + 1]);
            gens.push_back(elementary_linear(algebra, i, j));
            gens.push_back(elementary_linear(algebra, j, i));
        }
    for (std::size_t e = 0; e < algebra.dim_w(); ++e)
        for (std::size_t s = 0; s < algebra.dim_v(); ++s)
            gens.push_back(elementary_shear(algebra, e, s));
    return gens;
}

std::vector<AffineGenerator> heisenberg_affine_test_generators(const GraphAlgebra& algebra) {
    if (algebra.dim_v() != 2 || algebra.dim_w() != 1)
        throw AlgebraMismatch("the affine test fixture is built on the Heisenberg example");
    std::vector<AffineGenerator> gens = gallery_affine_generators(algebra);

    const NilElement t1 = algebra.basis_v(0);
    const NilElement t2 = algebra.basis_v(1);
    NilElement t3 = algebra.zero();
    t3.w[0] = Rational(1, 2);

    gens.push_back(assemble(algebra, t1, QMat(), QMat()));
    gens.push_back(assemble(algebra, t2, QMat(), QMat()));
    gens.push_back(assemble(algebra, t3, QMat(), QMat()));

    QMat theta1(1, 2);
    theta1.at(0, 1) = 1;
    gens.push_back(assemble(algebra, t1, theta1, QMat()));

    QMat e12 = QMat::identity(2);
    e12.at(0, 1) = 1;
    gens.push_back(assemble(algebra, t3, QMat(), e12));

    QMat theta2(1, 2);
    theta2.at(0, 0) = 1;
    theta2.at(0, 1) = -2;
    QMat e21 = QMat::identity(2);
    e21.at(1, 0) = 1;
    gens.push_back(assemble(algebra, algebra.multiply(t1, t3), theta2, e21));

    return gens;
}

GalleryEntry gallery_example(const std::string& name) {
    if (name == "heisenberg")
        return nilmanifold_entry(
            "heisenberg",
            "discrete Heisenberg nilmanifold from the one-edge graph, with the standard "
            "elementary automorphisms and integral shears",
            "vertices: a b\nedge: a b\n");
    if (name.rfind("complete:", 0) == 0) {
        const int n = parse_parameter(name, "complete");
        return nilmanifold_entry(
            name, "complete graph on " + std::to_string(n) + " vertices (every pair brackets)",
            complete_graph_text(n));
    }
    if (name.rfind("star:", 0) == 0) {
        const int n = parse_parameter(name, "star");
        return nilmanifold_entry(
            name,
            "star with " + std::to_string(n) + " leaves and one center (leaves listed first)",
            star_graph_text(n));
    }
    if (name == "torus-f2") {
        std::vector<QMat> mats;
        QMat a = QMat::identity(2);
        a.at(0, 1) = 2;
        QMat b = QMat::identity(2);
        b.at(1, 0) = 2;
        mats.push_back(std::move(a));
        mats.push_back(std::move(b));
        GalleryEntry entry;
        entry.name = "torus-f2";
        entry.description =
            "free group of rank 2 acting on the 2-torus by the Sanov generators";
        entry.generators = make_torus_set(std::move(mats));
        return entry;
    }
    throw UnknownExample(name);
}

std::vector<std::string> gallery_names() {
    return {"heisenberg", "complete:3", "complete:4", "complete:5", "complete:6",
            "star:2",     "star:3",     "star:4",     "star:5",     "star:6",
            "torus-f2"};
}

} // namespace nilrigid
