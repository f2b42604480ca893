#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nilrigid/errors.hpp"
#include "nilrigid/graph.hpp"
#include "nilrigid/qlinalg.hpp"

namespace nilrigid {

// Group/algebra element in exponential coordinates: v over the vertex basis
// of V, w over the edge basis of W. exp and log are the identity on
// coordinates, so the same pair serves both the Lie algebra and the group.
struct NilElement {
    QVec v;
    QVec w;

    bool operator==(const NilElement& o) const = default;
};

// A point of P(g), stored as the unique representative whose first nonzero
// coordinate equals 1.
struct ProjectivePoint {
    QVec coords;

    bool operator==(const ProjectivePoint& o) const = default;
    // Representation order, not numeric order: coordinates are canonical, so
    // this agrees with == and keeps orbit sets cheap (see rep_compare).
    bool operator<(const ProjectivePoint& o) const { return rep_compare(coords, o.coords) < 0; }
};

// Normalize a nonzero vector to its canonical projective representative.
ProjectivePoint make_projective(const QVec& coords);

// The 2-step nilpotent Lie algebra/group attached to a graph: N = V + W with
// [u_a, u_b] = u_{ab} when ab is an edge and zero otherwise. Group law
// (v1,w1)(v2,w2) = (v1+v2, w1+w2+[v1,v2]/2).
class GraphAlgebra {
public:
    explicit GraphAlgebra(GraphSpec graph);

    const GraphSpec& graph() const { return graph_; }
    std::size_t dim_v() const { return graph_.num_vertices(); }
    std::size_t dim_w() const { return graph_.num_edges(); }
    std::size_t dim() const { return dim_v() + dim_w(); }

    // Bracket map B: wedge^2 V -> W over the basis e_i ^ e_j (i < j,
    // lexicographic), and a canonical basis of its kernel K (the span of the
    // non-edge wedges).
    const QMat& bracket_form() const { return bracket_form_; }
    const std::vector<QVec>& bracket_kernel() const { return bracket_kernel_; }
    std::size_t wedge_dim() const { return wedge_pairs_.size(); }
    const std::vector<std::pair<int, int>>& wedge_pairs() const { return wedge_pairs_; }

    NilElement zero() const;
    NilElement identity() const { return zero(); }
    NilElement basis_v(std::size_t i) const;      // (e_i, 0)
    NilElement basis_w(std::size_t e) const;      // (0, u_e)

    // [x, y] = (0, [x.v, y.v]); W parts never contribute (step 2).
    NilElement bracket(const NilElement& x, const NilElement& y) const;
    QVec bracket_vv(const QVec& a, const QVec& b) const; // [a, b] in W

    NilElement multiply(const NilElement& x, const NilElement& y) const;
    NilElement inverse(const NilElement& x) const;
    NilElement exp(const NilElement& x) const { check(x); return x; }
    NilElement log(const NilElement& x) const { check(x); return x; }

    // Ad(n) on g: the unipotent block matrix [[I, 0], [ad_v, I]].
    QMat adjoint_matrix(const NilElement& n) const;

    // kappa(v) = sum_{i<j} v_i v_j [e_i, e_j], the polarization defect of the
    // basis-point product (e_1,0)^{v_1} ... (e_n,0)^{v_n} = (v, kappa(v)/2).
    QVec kappa(const QVec& v) const;

    // Lattice N_Z: the subgroup generated by the integer points. Closed
    // form: v integral and 2w integral (every (0, u_e/2) is the word
    // (e_i,0)(e_j,0)(e_i+e_j,0)^{-1} of integer points).
    bool lattice_contains(const NilElement& x) const;

    // Reduce into the fundamental domain X = [0,1)^S x [0,1/2)^E: returns
    // (rep, lambda) with rep = x * lambda, lambda in N_Z; constant on right
    // N_Z-cosets.
    std::pair<NilElement, NilElement> reduce_mod_lattice(const NilElement& x) const;
    bool in_fundamental_domain(const NilElement& x) const;

    // Projective separation: the class of log(x * y^{-1}) in P(g). Defined
    // for x != y; log is global in these coordinates.
    ProjectivePoint projective_separation(const NilElement& x, const NilElement& y) const;

    // Uniform rational-grid sample in X; deterministic per seed.
    NilElement sample_haar(std::uint64_t seed) const;
    std::vector<NilElement> sample_haar(std::uint64_t seed, std::size_t count) const;

    QVec flatten(const NilElement& x) const;      // V coordinates then W
    NilElement unflatten(const QVec& y) const;

    void check(const NilElement& x) const;        // throws AlgebraMismatch

private:
    GraphSpec graph_;
    std::vector<std::pair<int, int>> wedge_pairs_; // (i, j), i<j, lexicographic
    QMat bracket_form_;                            // dimW x wedge_dim
    std::vector<QVec> bracket_kernel_;
};

// The K2 algebra in its classical coordinates: (v1, v2, w) <-> (x, y, z) with
// z = 2w, where the group law reads (x,y,z)(x',y',z') =
// (x+x', y+y', z+z'+xy'-x'y) and the lattice becomes Z^3.
std::array<Rational, 3> heisenberg_classic_coordinates(const NilElement& x);
NilElement heisenberg_from_classic(const std::array<Rational, 3>& xyz);

} // namespace nilrigid
