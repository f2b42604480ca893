#include "nilrigid/automorphism.hpp"

#include <string>

namespace nilrigid {

QMat induced_derived_map(const GraphAlgebra& A, const QMat& g) {
    const std::size_t n = A.dim_v();
    if (g.rows != n || g.cols != n)
        throw AlgebraMismatch("linear part must be " + std::to_string(n) + "x" + std::to_string(n));
    if (!inverse(g)) throw Error("linear part is not invertible");
    // P is induced on W = wedge^2 V / K iff the wedge-square of g preserves
    // K, i.e. [g e_i, g e_j] = 0 for every non-edge pair i < j.
    for (const auto& [i, j] : A.wedge_pairs()) {
        if (A.graph().has_edge(i, j)) continue;
        if (!qvec_is_zero(A.bracket_vv(g.col(static_cast<std::size_t>(i)),
                                       g.col(static_cast<std::size_t>(j)))))
            throw NotBracketCompatible(
                "[g u_" + A.graph().vertices[static_cast<std::size_t>(i)] + ", g u_" +
                A.graph().vertices[static_cast<std::size_t>(j)] +
                "] is nonzero but the pair is not an edge");
    }
    QMat p(A.dim_w(), A.dim_w());
    for (std::size_t e = 0; e < A.dim_w(); ++e) {
        auto [i, j] = A.graph().edges[e];
        QVec col = A.bracket_vv(g.col(static_cast<std::size_t>(i)), g.col(static_cast<std::size_t>(j)));
        for (std::size_t f = 0; f < A.dim_w(); ++f) p.at(f, e) = col[f];
    }
    return p;
}

bool is_automorphism(const GraphAlgebra& A, const QMat& full) {
    const std::size_t d = A.dim();
    if (full.rows != d || full.cols != d) return false;
    if (!inverse(full)) return false;
    for (std::size_t i = 0; i < d; ++i) {
        NilElement fi = A.unflatten(full.col(i));
        for (std::size_t j = i + 1; j < d; ++j) {
            NilElement fj = A.unflatten(full.col(j));
            // [F b_i, F b_j] must equal F [b_i, b_j]; the basis bracket is
            // u_e when (i, j) is an edge pair in V and zero otherwise.
            QVec lhs = A.flatten(A.bracket(fi, fj));
            QVec rhs(d, Rational(0));
            if (i < A.dim_v() && j < A.dim_v()) {
                int e = A.graph().edge_index(static_cast<int>(i), static_cast<int>(j));
                if (e >= 0) rhs = full.col(A.dim_v() + static_cast<std::size_t>(e));
            }
            if (lhs != rhs) return false;
        }
    }
    return true;
}

AffineGenerator identity_generator(const GraphAlgebra& A) {
    return {A.zero(), QMat(A.dim_w(), A.dim_v()), QMat::identity(A.dim_v()),
            QMat::identity(A.dim_w())};
}

AffineGenerator assemble(const GraphAlgebra& A, NilElement translation, QMat theta, QMat g) {
    A.check(translation);
    if (theta.rows == 0 && theta.cols == 0) theta = QMat(A.dim_w(), A.dim_v());
    if (g.rows == 0 && g.cols == 0) g = QMat::identity(A.dim_v());
    if (theta.rows != A.dim_w() || theta.cols != A.dim_v())
        throw AlgebraMismatch("shear must be " + std::to_string(A.dim_w()) + "x" +
                              std::to_string(A.dim_v()));
    QMat p = induced_derived_map(A, g);
    return {std::move(translation), std::move(theta), std::move(g), std::move(p)};
}

QMat automorphism_full_matrix(const GraphAlgebra& A, const AffineGenerator& a) {
    const std::size_t nv = A.dim_v();
    const std::size_t nw = A.dim_w();
    QMat full(nv + nw, nv + nw);
    QMat tg = a.theta * a.g;
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = 0; j < nv; ++j) full.at(i, j) = a.g.at(i, j);
    for (std::size_t i = 0; i < nw; ++i)
        for (std::size_t j = 0; j < nv; ++j) full.at(nv + i, j) = tg.at(i, j);
    for (std::size_t i = 0; i < nw; ++i)
        for (std::size_t j = 0; j < nw; ++j) full.at(nv + i, nv + j) = a.p.at(i, j);
    return full;
}

QMat linear_action_on_g(const GraphAlgebra& A, const AffineGenerator& a) {
    // d/dx (t * sigma(x)) at the identity: Ad(t) composed with d(sigma).
    return A.adjoint_matrix(a.translation) * automorphism_full_matrix(A, a);
}

AffineGenerator compose(const GraphAlgebra& A, const AffineGenerator& a, const AffineGenerator& b) {
    AffineGenerator c;
    c.g = a.g * b.g;
    c.p = a.p * b.p;
    // theta of the composite: [[g,0],[th*g,P]] blocks multiply to
    // theta_c * g_c = theta_a g_a g_b + P_a theta_b g_b.
    c.theta = a.theta + a.p * b.theta * *inverse(a.g);
    c.translation = A.multiply(a.translation, apply_automorphism(A, a, b.translation));
    return c;
}

AffineGenerator invert(const GraphAlgebra& A, const AffineGenerator& a) {
    AffineGenerator inv;
    inv.g = *inverse(a.g);
    inv.p = *inverse(a.p);
    inv.theta = (inv.p * a.theta * a.g).scaled(Rational(-1));
    inv.translation = A.zero();
    inv.translation = apply_automorphism(A, inv, A.inverse(a.translation));
    return inv;
}

NilElement apply_automorphism(const GraphAlgebra& A, const AffineGenerator& a, const NilElement& x) {
    return A.unflatten(automorphism_full_matrix(A, a).apply(A.flatten(x)));
}

NilElement apply_affine(const GraphAlgebra& A, const AffineGenerator& a, const NilElement& x) {
    return A.multiply(a.translation, apply_automorphism(A, a, x));
}

std::pair<NilElement, NilElement> act_on_nilmanifold(const GraphAlgebra& A,
                                                     const AffineGenerator& a,
                                                     const NilElement& x) {
    return A.reduce_mod_lattice(apply_affine(A, a, x));
}

bool verify_lattice_stabilized(const GraphAlgebra& A, const AffineGenerator& a) {
    const AffineGenerator inv = invert(A, a);
    std::vector<NilElement> gens;
    for (std::size_t i = 0; i < A.dim_v(); ++i) gens.push_back(A.basis_v(i));
    for (std::size_t e = 0; e < A.dim_w(); ++e) {
        NilElement h = A.zero();
        h.w[e] = Rational(1, 2);
        gens.push_back(h);
    }
    for (const auto& gen : gens)
        for (const auto* aut : {&a, &inv}) {
            if (!A.lattice_contains(apply_automorphism(A, *aut, gen))) return false;
            if (!A.lattice_contains(apply_automorphism(A, *aut, A.inverse(gen)))) return false;
        }
    return true;
}

bool block_structure_check(const AffineGenerator& a, const CoherentPartition& partition) {
    const std::size_t n = a.g.rows;
    if (partition.class_of.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (partition.class_of[i] != partition.class_of[j] && a.g.at(i, j) != 0) return false;
    for (const auto& cls : partition.classes) {
        QMat block(cls.size(), cls.size());
        for (std::size_t r = 0; r < cls.size(); ++r)
            for (std::size_t c = 0; c < cls.size(); ++c)
                block.at(r, c) = a.g.at(static_cast<std::size_t>(cls[r]),
                                        static_cast<std::size_t>(cls[c]));
        if (det(block) != 1) return false;
    }
    return true;
}

} // namespace nilrigid
