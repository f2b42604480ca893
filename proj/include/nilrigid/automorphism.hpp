#pragma once

#include <utility>

#include "nilrigid/algebra.hpp"
#include "nilrigid/graph.hpp"
#include "nilrigid/qlinalg.hpp"

namespace nilrigid {

// Shear automorphism t_theta: x -> x + theta(pi(x)); theta is dimW x dimV.
struct Shear {
    QMat theta;
};

// Invertible map g on V together with the induced map P(g) on W; P is always
// computed from g, never supplied.
struct LinearPart {
    QMat g; // dimV x dimV
    QMat p; // dimW x dimW
};

// Element of Aff(N) = N x Aut(N) (for our purposes Aut = T x GL-part):
// x -> translation * sigma(x) with sigma = t_theta after g, i.e. the linear
// map [[g, 0], [theta*g, P(g)]] in flattened coordinates.
struct AffineGenerator {
    NilElement translation;
    QMat theta; // dimW x dimV
    QMat g;     // dimV x dimV
    QMat p;     // dimW x dimW, = P(g)
};

// P(g) on W, defined by P(g) u_{ab} = [g u_a, g u_b]. Exists iff the induced
// map on wedge^2 V preserves the bracket kernel K; otherwise throws
// NotBracketCompatible. g must be invertible.
QMat induced_derived_map(const GraphAlgebra& A, const QMat& g);

// True iff `full` is invertible and preserves the bracket on all basis pairs.
bool is_automorphism(const GraphAlgebra& A, const QMat& full);

AffineGenerator identity_generator(const GraphAlgebra& A);

// Build a generator from parts; theta defaults to 0 and g to the identity
// when given empty (0x0) matrices. Validates shapes and bracket
// compatibility.
AffineGenerator assemble(const GraphAlgebra& A, NilElement translation, QMat theta, QMat g);

// Group operations in Aff(N): compose(a, b) acts as "apply b, then a", so
// linear parts multiply in order (g_a * g_b).
AffineGenerator compose(const GraphAlgebra& A, const AffineGenerator& a, const AffineGenerator& b);
AffineGenerator invert(const GraphAlgebra& A, const AffineGenerator& a);

// The automorphism part as a dim x dim matrix [[g,0],[theta*g,P(g)]].
QMat automorphism_full_matrix(const GraphAlgebra& A, const AffineGenerator& a);

// Ad(translation) * [[g,0],[theta*g,P(g)]] — the matrix the rigidity engine
// consumes (the differential of x -> translation * sigma(x) at the identity).
QMat linear_action_on_g(const GraphAlgebra& A, const AffineGenerator& a);

// sigma(x): the automorphism part only.
NilElement apply_automorphism(const GraphAlgebra& A, const AffineGenerator& a, const NilElement& x);

// translation * sigma(x): the affine map on N.
NilElement apply_affine(const GraphAlgebra& A, const AffineGenerator& a, const NilElement& x);

// The action on N/N_Z: reduce translation * sigma(x); returns (image in X,
// cocycle in N_Z) with image = (translation * sigma(x)) * cocycle.
std::pair<NilElement, NilElement> act_on_nilmanifold(const GraphAlgebra& A,
                                                     const AffineGenerator& a,
                                                     const NilElement& x);

// True iff the automorphism part maps a generating set of N_Z into N_Z and
// the inverse does too (so sigma(N_Z) = N_Z).
bool verify_lattice_stabilized(const GraphAlgebra& A, const AffineGenerator& a);

// True iff g is block-diagonal for V = sum of coherent classes and every
// diagonal block has determinant 1.
bool block_structure_check(const AffineGenerator& a, const CoherentPartition& partition);

} // namespace nilrigid
