#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nilrigid/qlinalg.hpp"

namespace nilrigid {

// Floating-point evidence engine: random products of linear actions on
// projective space, Cesàro empirical measures, near-invariance scores, and
// Lyapunov gap estimates. Everything here annotates reports; verdicts come
// only from the exact engine.

// Canonical float representative of a projective point: unit norm with the
// first coordinate of non-negligible magnitude made positive (antipodal
// identification). Throws Error on a (numerically) zero vector.
Eigen::VectorXd projective_normalize(const Eigen::VectorXd& v);

// Angle between the lines spanned by a and b, in [0, pi/2].
double projective_angle(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Float image of an exact matrix, for handing exact generators to this module.
Eigen::MatrixXd to_float(const QMat& m);

struct WalkConfig {
    std::size_t steps = 100000;  // trajectory length, start point included
    std::uint64_t seed = 42;
    std::size_t burn_in = 0;  // points the averaging stages discard
    // Start line; empty means a seeded random unit start. Identical configs
    // give bit-identical trajectories either way.
    std::optional<Eigen::VectorXd> start;
};

// Weighted point cloud on projective space. Representatives are unit-norm
// canonical vectors; weights are nonnegative and sum to 1 (within 1e-12).
struct EmpiricalMeasure {
    std::vector<Eigen::VectorXd> points;
    std::vector<double> weights;

    std::size_t dim() const { return points.empty() ? 0 : static_cast<std::size_t>(points.front().size()); }
};

struct LyapunovEstimate {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    std::size_t steps = 0;  // averaged step count (burn-in excluded)

    double gap() const { return lambda1 - lambda2; }
};

// x_{k+1} = normalize(g_{i_k} x_k) with i_k i.i.d. uniform over the
// generators, driven by a generator seeded from cfg.seed. Deterministic:
// identical configs yield bit-identical trajectories.
std::vector<Eigen::VectorXd> random_product_walk(const std::vector<Eigen::MatrixXd>& matrices,
                                                 const WalkConfig& cfg);

// Uniform weights on the post-burn-in trajectory points.
EmpiricalMeasure cesaro_empirical_measure(const std::vector<Eigen::VectorXd>& trajectory,
                                          std::size_t burn_in);

// All mass at a single projective point.
EmpiricalMeasure dirac_measure(const Eigen::VectorXd& point);

// The fixed projective grid used for binned scores, at a given resolution R:
// on P(R^2), 2R equal angle cells of [0, pi); in dimension d >= 3, one chart
// per largest-|coordinate| index with each remaining coordinate ratio in
// [-1, 1] split into R cells (d * R^(d-1) cells total). Documented so scores
// reproduce bit-for-bit given seed and resolution.
std::size_t grid_cell_count(std::size_t dim, int resolution = 16);
std::size_t grid_cell(const Eigen::VectorXd& v, int resolution = 16);

// Uniform weights on the centres of the grid cells.
EmpiricalMeasure uniform_grid_measure(std::size_t dim, int resolution = 16);

// Binned total-variation distance between m and its pushforward under the
// matrix: zero exactly when the pushforward fills the same cells with the
// same mass.
double near_invariance_score(const EmpiricalMeasure& m, const Eigen::MatrixXd& matrix,
                             int resolution = 16);

// Top-two Lyapunov exponent estimates for the random product, by iterated
// orthonormalization of a 2-frame (Gram-Schmidt with positive diagonal, so
// the result is deterministic per seed). In dimension 1 both exponents are
// the average log stretch and the gap is zero.
LyapunovEstimate lyapunov_gap_estimate(const std::vector<Eigen::MatrixXd>& matrices,
                                       const WalkConfig& cfg);

}  // namespace nilrigid
