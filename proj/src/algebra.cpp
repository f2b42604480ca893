#include "nilrigid/algebra.hpp"

#include <random>

namespace nilrigid {

ProjectivePoint make_projective(const QVec& coords) {
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        ProjectivePoint p{coords};
        Rational inv = Rational(1) / coords[i];
        for (std::size_t j = i; j < coords.size(); ++j) p.coords[j] *= inv;
        return p;
    }
    throw Error("zero vector has no projective class");
}

GraphAlgebra::GraphAlgebra(GraphSpec graph) : graph_(std::move(graph)) {
    int n = static_cast<int>(graph_.num_vertices());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) wedge_pairs_.emplace_back(i, j);
    bracket_form_ = QMat(dim_w(), wedge_pairs_.size());
    for (std::size_t k = 0; k < wedge_pairs_.size(); ++k) {
        int e = graph_.edge_index(wedge_pairs_[k].first, wedge_pairs_[k].second);
        if (e >= 0) bracket_form_.at(static_cast<std::size_t>(e), k) = 1;
    }
    bracket_kernel_ = nullspace(bracket_form_);
}

void GraphAlgebra::check(const NilElement& x) const {
    if (x.v.size() != dim_v() || x.w.size() != dim_w())
        throw AlgebraMismatch("element has shape (" + std::to_string(x.v.size()) + "," +
                              std::to_string(x.w.size()) + "), algebra needs (" +
                              std::to_string(dim_v()) + "," + std::to_string(dim_w()) + ")");
}

NilElement GraphAlgebra::zero() const {
    return {QVec(dim_v(), Rational(0)), QVec(dim_w(), Rational(0))};
}

NilElement GraphAlgebra::basis_v(std::size_t i) const {
    NilElement x = zero();
    x.v.at(i) = 1;
    return x;
}

NilElement GraphAlgebra::basis_w(std::size_t e) const {
    NilElement x = zero();
    x.w.at(e) = 1;
    return x;
}

QVec GraphAlgebra::bracket_vv(const QVec& a, const QVec& b) const {
    QVec out(dim_w(), Rational(0));
    for (std::size_t e = 0; e < graph_.edges.size(); ++e) {
        auto [i, j] = graph_.edges[e];
        out[e] = a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)] -
                 a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(i)];
    }
    return out;
}

NilElement GraphAlgebra::bracket(const NilElement& x, const NilElement& y) const {
    check(x);
    check(y);
    return {QVec(dim_v(), Rational(0)), bracket_vv(x.v, y.v)};
}

NilElement GraphAlgebra::multiply(const NilElement& x, const NilElement& y) const {
    check(x);
    check(y);
    NilElement out;
    out.v = qvec_add(x.v, y.v);
    out.w = qvec_add(qvec_add(x.w, y.w), qvec_scale(Rational(1, 2), bracket_vv(x.v, y.v)));
    return out;
}

NilElement GraphAlgebra::inverse(const NilElement& x) const {
    check(x);
    return {qvec_scale(Rational(-1), x.v), qvec_scale(Rational(-1), x.w)};
}

QMat GraphAlgebra::adjoint_matrix(const NilElement& n) const {
    check(n);
    QMat m = QMat::identity(dim());
    for (std::size_t j = 0; j < dim_v(); ++j) {
        QVec ej(dim_v(), Rational(0));
        ej[j] = 1;
        QVec col = bracket_vv(n.v, ej);
        for (std::size_t e = 0; e < dim_w(); ++e) m.at(dim_v() + e, j) = col[e];
    }
    return m;
}

QVec GraphAlgebra::kappa(const QVec& v) const {
    QVec out(dim_w(), Rational(0));
    for (std::size_t e = 0; e < graph_.edges.size(); ++e) {
        auto [i, j] = graph_.edges[e];
        out[e] = v.at(static_cast<std::size_t>(i)) * v.at(static_cast<std::size_t>(j));
    }
    return out;
}

bool GraphAlgebra::lattice_contains(const NilElement& x) const {
    check(x);
    for (const auto& c : x.v)
        if (!is_integer(c)) return false;
    for (const auto& c : x.w)
        if (!is_integer(2 * c)) return false;
    return true;
}

std::pair<NilElement, NilElement> GraphAlgebra::reduce_mod_lattice(const NilElement& x) const {
    check(x);
    NilElement lambda = zero();
    for (std::size_t i = 0; i < dim_v(); ++i) lambda.v[i] = -rational_floor(x.v[i]);
    QVec w1 = qvec_add(x.w, qvec_scale(Rational(1, 2), bracket_vv(x.v, lambda.v)));
    for (std::size_t e = 0; e < dim_w(); ++e)
        lambda.w[e] = -rational_floor(2 * w1[e]) / 2;
    NilElement rep{qvec_add(x.v, lambda.v), qvec_add(w1, lambda.w)};
    return {rep, lambda};
}

bool GraphAlgebra::in_fundamental_domain(const NilElement& x) const {
    check(x);
    for (const auto& c : x.v)
        if (c < 0 || c >= 1) return false;
    for (const auto& c : x.w)
        if (c < 0 || c >= Rational(1, 2)) return false;
    return true;
}

ProjectivePoint GraphAlgebra::projective_separation(const NilElement& x, const NilElement& y) const {
    check(x);
    check(y);
    if (x == y) throw DiagonalPoint();
    return make_projective(flatten(multiply(x, inverse(y))));
}

NilElement GraphAlgebra::sample_haar(std::uint64_t seed) const {
    return sample_haar(seed, 1).front();
}

std::vector<NilElement> GraphAlgebra::sample_haar(std::uint64_t seed, std::size_t count) const {
    // 2^20 grid: the modulus divides 2^64, so rng() % GRID is unbiased.
    constexpr std::uint64_t GRID = 1u << 20;
    std::mt19937_64 rng(seed);
    std::vector<NilElement> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        NilElement x = zero();
        for (std::size_t i = 0; i < dim_v(); ++i)
            x.v[i] = Rational(static_cast<long long>(rng() % GRID), static_cast<long long>(GRID));
        for (std::size_t e = 0; e < dim_w(); ++e)
            x.w[e] = Rational(static_cast<long long>(rng() % GRID), static_cast<long long>(2 * GRID));
        out.push_back(std::move(x));
    }
    return out;
}

QVec GraphAlgebra::flatten(const NilElement& x) const {
    check(x);
    QVec out = x.v;
    out.insert(out.end(), x.w.begin(), x.w.end());
    return out;
}

NilElement GraphAlgebra::unflatten(const QVec& y) const {
    if (y.size() != dim()) throw AlgebraMismatch("flattened vector has wrong length");
    NilElement x;
    x.v.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(dim_v()));
    x.w.assign(y.begin() + static_cast<std::ptrdiff_t>(dim_v()), y.end());
    return x;
}

std::array<Rational, 3> heisenberg_classic_coordinates(const NilElement& x) {
    if (x.v.size() != 2 || x.w.size() != 1)
        throw AlgebraMismatch("classic coordinates require a K2 algebra element");
    return {x.v[0], x.v[1], 2 * x.w[0]};
}

NilElement heisenberg_from_classic(const std::array<Rational, 3>& xyz) {
    return {{xyz[0], xyz[1]}, {xyz[2] / 2}};
}

} // namespace nilrigid
