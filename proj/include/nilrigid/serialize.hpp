#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nilrigid/algebra.hpp"
#include "nilrigid/automorphism.hpp"
#include "nilrigid/dynamics.hpp"
#include "nilrigid/qlinalg.hpp"
#include "nilrigid/rigidity.hpp"

namespace nilrigid {

// JSON wire formats. Rationals travel as exact "p/q" strings (plain "p" for
// integers); reports use ordered objects so emitted bytes are stable.
using Json = nlohmann::ordered_json;

// Parse text as JSON, converting parse failures to FormatError.
Json parse_json(const std::string& text, const std::string& where);

// ---- vectors, matrices, group elements ----

Json qvec_to_json(const QVec& v);
QVec qvec_from_json(const Json& j, const std::string& where);

Json qmat_to_json(const QMat& m);
QMat qmat_from_json(const Json& j, const std::string& where);

// {"v": ["p/q", ...], "w": ["p/q", ...]} with sizes matching the algebra.
Json nil_element_to_json(const NilElement& x);
NilElement nil_element_from_json(const GraphAlgebra& A, const Json& j, const std::string& where);

// ---- generator files ----

// Array of {"translation": NilElement?, "shear": rows?, "linear": rows?};
// omitted parts default to zero translation, zero shear, identity linear
// part. Each entry is assembled and validated against the algebra.
std::vector<AffineGenerator> generators_from_json(const GraphAlgebra& A, const Json& j);

// Array of {"linear": rows} only; anything else is a FormatError. Matrix
// entries may be JSON integers or "p/q" strings.
std::vector<QMat> torus_generators_from_json(const Json& j);

// ---- reports ----

Json certificate_to_json(const Certificate& cert);
Json verdict_to_json(const RigidityVerdict& v);
std::string verdict_to_text(const RigidityVerdict& v);

// Dynamics annotation/summary: {"steps", "seed", "lyapunov": [l1, l2],
// "near_invariance": {"<generator index, 1-based>": score}}.
Json dynamics_summary_to_json(const LyapunovEstimate& est, const std::vector<double>& scores,
                              std::uint64_t seed);

// CSV rows "step,x0,x1,..." with a header line.
std::string trajectory_to_csv(const std::vector<Eigen::VectorXd>& trajectory);

}  // namespace nilrigid
