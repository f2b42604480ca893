#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nilrigid/algebra.hpp"
#include "nilrigid/automorphism.hpp"
#include "nilrigid/qlinalg.hpp"
#include "nilrigid/qpoly.hpp"

namespace nilrigid {

enum class Verdict { RIGID, NOT_RIGID, UNKNOWN };
enum class AnalysisMode { Nilmanifold, Torus };
enum class Irreducibility { IRREDUCIBLE_STRONGLY, IRREDUCIBLE, INCONCLUSIVE };

std::string to_string(Verdict v);
std::string to_string(Irreducibility i);

struct Budgets {
    int max_word_length = 8;
    long orbit_bound = 10000;
    Rational gap_tol = Rational(1, 20);
};

// A finitely generated group acting projectively: either affine generators
// on a graph nilmanifold (matrices = their linear actions on g) or integer
// unimodular matrices on a torus (matrices = the generators themselves).
struct GeneratorSet {
    AnalysisMode mode = AnalysisMode::Torus;
    std::shared_ptr<const GraphAlgebra> algebra; // nilmanifold mode only
    std::vector<AffineGenerator> generators;     // nilmanifold mode only
    std::vector<QMat> matrices;
    std::size_t dim = 0;
};

// Builds the nilmanifold-mode set; every generator must stabilize N_Z.
GeneratorSet make_nilmanifold_set(std::shared_ptr<const GraphAlgebra> algebra,
                                  std::vector<AffineGenerator> generators);

// Builds the torus-mode set; matrices must be integral with determinant +-1
// (NonUnimodular otherwise) and of one common square size.
GeneratorSet make_torus_set(std::vector<QMat> matrices);

// ---- certificates ----

// Nonzero w in W with P_i w = w for all generators; the Dirac measure at its
// projective class is invariant.
struct FixedVectorCert {
    QVec vector;
};

// Left inverse C of the stacked matrix [P_1 - I; ...; P_k - I]; C * stack = I
// proves the common fixed space in W is trivial.
struct TrivialDerivedFixedSpaceCert {
    QMat left_inverse;
};

// A projective point mapped to itself by every generator, with the exact
// eigenvalue per generator.
struct InvariantLineCert {
    ProjectivePoint point;
    std::vector<Rational> eigenvalues;
};

// A finite set of projective points closed under every generator and inverse.
struct FiniteLineOrbitCert {
    std::vector<ProjectivePoint> points;
};

// Symmetric positive definite X with M^T X M = X for every generator.
struct InvariantPDFormCert {
    QMat form;
};

// A word with a simple dominant real eigenvalue (isolated in
// [dominant_lo, dominant_hi], all other roots in |z| < radius, ratio at
// least gap_lower) plus words whose matrices span the full matrix algebra.
struct ProximalIrreducibleCert {
    std::vector<int> word; // signed 1-based generator indices; negative = inverse
    Rational dominant_lo;
    Rational dominant_hi;
    Rational radius;
    Rational gap_lower;
    std::string gap_path; // "sturm+schur-cohn" | "fujiwara-deflation"
    std::vector<std::vector<int>> spanning_words;
};

using Certificate = std::variant<FixedVectorCert, TrivialDerivedFixedSpaceCert, InvariantLineCert,
                                 FiniteLineOrbitCert, InvariantPDFormCert, ProximalIrreducibleCert>;

std::string certificate_kind(const Certificate& cert);

struct RigidityVerdict {
    Verdict status = Verdict::UNKNOWN;
    std::string criterion;
    std::optional<Certificate> certificate;
    std::vector<std::string> assumptions;
    Budgets budgets;
    std::vector<std::string> tests_attempted;
};

// ---- exact searches ----

// Product of generators along a signed word (empty word = identity).
QMat word_matrix(const std::vector<QMat>& matrices, const std::vector<int>& word);

// Canonical basis of the common fixed space of the induced derived maps
// P(g_i) on W. Torus mode raises ModeMismatch.
std::vector<QVec> fixed_vectors_in_derived(const GeneratorSet& gs);

// A line mapped into itself by every matrix, found by intersecting rational
// eigenspace systems; nullopt when no line with all-rational eigenvalues
// exists (irrational candidates are deliberately left undecided).
std::optional<InvariantLineCert> common_invariant_line(const std::vector<QMat>& matrices);

// Exact BFS closure of the start line under all generators and inverses;
// returned (sorted) only when the closure has at most `bound` points. Points
// whose coordinates outgrow a fixed height budget abort the search (treated
// as "not closed within budget"), so divergent chains fail fast.
std::optional<FiniteLineOrbitCert> finite_line_orbit(const std::vector<QMat>& matrices,
                                                     const ProjectivePoint& start, long bound);

// Symmetric positive definite solution of M_i^T X M_i = X, if the search
// finds one (identity shortcut, finite-closure averaging, then the exact
// linear system with a small positive-combination search).
std::optional<QMat> invariant_pd_form(const std::vector<QMat>& matrices);

struct ProximalityResult {
    std::vector<int> word;
    Rational dominant_lo;
    Rational dominant_hi;
    Rational radius;
    Rational gap_lower;
    std::string gap_path;
};

// Certify that a single matrix has a simple dominant real eigenvalue beating
// every other eigenvalue modulus by a factor >= 1 + gap_tol. The returned
// word is empty (the caller labels it).
std::optional<ProximalityResult> certify_proximal(const QMat& m, const Rational& gap_tol);

// Search words up to max_word_length for a certified proximal element.
std::optional<ProximalityResult> proximality_witness(const std::vector<QMat>& matrices,
                                                     int max_word_length, const Rational& gap_tol);

struct IrreducibilityReport {
    Irreducibility level = Irreducibility::INCONCLUSIVE;
    std::vector<std::vector<int>> spanning_words;
    std::string detail;
};

// IRREDUCIBLE when words span the whole matrix algebra (Burnside); STRONGLY
// when additionally no finite orbit (<= orbit_bound) of eigen-subspace seeds
// exists and no semi-invariant symmetric (or, for d=3, cubic) form blocks.
IrreducibilityReport irreducibility_check(const std::vector<QMat>& matrices, int max_word_length,
                                          long orbit_bound);

// ---- verdicts ----

// Decision cascade on P(g): common line, finite orbit from rational
// eigenline starts, invariant PD form (each => NOT_RIGID), then proximal +
// strongly irreducible (=> RIGID); UNKNOWN otherwise.
RigidityVerdict measure_verdict(const GeneratorSet& gs, const Budgets& budgets,
                                std::vector<std::string> assumptions = {});

// Nilmanifold criterion: a nonzero common fixed vector in W is an
// unconditional NOT_RIGID; a trivial fixed space is RIGID under the
// Zariski-density assumption (recorded), and otherwise falls through to
// measure_verdict. Generators must respect the coherent block structure.
RigidityVerdict nilmanifold_verdict(const GeneratorSet& gs, bool assume_zariski_dense,
                                    const Budgets& budgets);

// Torus criterion: measure_verdict on P(R^n) for integer unimodular
// generators; doubles as relative property (T) for (Z^n x| Gamma, Z^n).
RigidityVerdict torus_verdict(const GeneratorSet& gs, const Budgets& budgets);

// Pure exact re-check of any certificate against a generator set.
bool verify_certificate(const Certificate& cert, const GeneratorSet& gs);

} // namespace nilrigid
