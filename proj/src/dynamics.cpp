#include "nilrigid/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "nilrigid/errors.hpp"

namespace nilrigid {

namespace {

constexpr double kTiny = 1e-12;

// Uniform in [0, 1) from the top 53 bits; spelled out (rather than a
// distribution object) so trajectories are bit-identical across platforms.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Box-Muller, again explicit for cross-platform determinism.
double gaussian(std::mt19937_64& rng) {
    double u1 = 0.0;
    do {
        u1 = unit_uniform(rng);
    } while (u1 <= 0.0);
    const double u2 = unit_uniform(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::VectorXd random_unit(std::mt19937_64& rng, Eigen::Index d) {
    Eigen::VectorXd v(d);
    do {
        for (Eigen::Index i = 0; i < d; ++i) v[i] = gaussian(rng);
    } while (v.norm() < 1e-6);
    return v;
}

// All square, all the same size; returns that size.
Eigen::Index common_dimension(const std::vector<Eigen::MatrixXd>& matrices) {
    if (matrices.empty()) throw DimensionMismatch("no generators");
    const Eigen::Index d = matrices.front().rows();
    for (const Eigen::MatrixXd& m : matrices)
        if (m.rows() != d || m.cols() != d)
            throw DimensionMismatch("generators must be square matrices of one size");
    if (d == 0) throw DimensionMismatch("generators must be nonempty matrices");
    return d;
}

void check_config(const WalkConfig& cfg) {
    if (cfg.steps <= cfg.burn_in)
        throw Error("walk config: steps (" + std::to_string(cfg.steps) +
                    ") must exceed burn_in (" + std::to_string(cfg.burn_in) + ")");
}

Eigen::VectorXd start_vector(const WalkConfig& cfg, Eigen::Index d, std::mt19937_64& rng) {
    if (cfg.start) {
        if (cfg.start->size() != d)
            throw DimensionMismatch("start vector has size " + std::to_string(cfg.start->size()) +
                                    ", generators act on dimension " + std::to_string(d));
        return projective_normalize(*cfg.start);
    }
    return projective_normalize(random_unit(rng, d));
}

}  // namespace

Eigen::VectorXd projective_normalize(const Eigen::VectorXd& v) {
    const double n = v.norm();
    if (!(n > kTiny)) throw Error("cannot normalize a zero vector");
    Eigen::VectorXd u = v / n;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        if (std::abs(u[i]) <= kTiny) continue;
        if (u[i] < 0.0) u = -u;
        break;
    }
    return u;
}

double projective_angle(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) throw DimensionMismatch("angle between different dimensions");
    const double na = a.norm(), nb = b.norm();
    if (!(na > kTiny) || !(nb > kTiny)) throw Error("cannot normalize a zero vector");
    const double c = std::min(1.0, std::abs(a.dot(b)) / (na * nb));
    return std::acos(c);
}

Eigen::MatrixXd to_float(const QMat& m) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                m.at(i, j).convert_to<double>();
    return out;
}

std::vector<Eigen::VectorXd> random_product_walk(const std::vector<Eigen::MatrixXd>& matrices,
                                                 const WalkConfig& cfg) {
    const Eigen::Index d = common_dimension(matrices);
    check_config(cfg);
    std::mt19937_64 rng(cfg.seed);
    // A random start consumes the generator first, then the index stream; an
    // explicit start leaves the whole stream to the indices. Deterministic
    // either way.
    std::vector<Eigen::VectorXd> traj;
    traj.reserve(cfg.steps);
    traj.push_back(start_vector(cfg, d, rng));
    const std::size_t k = matrices.size();
    while (traj.size() < cfg.steps) {
        const Eigen::MatrixXd& g = matrices[static_cast<std::size_t>(rng() % k)];
        traj.push_back(projective_normalize(g * traj.back()));
    }
    return traj;
}

EmpiricalMeasure cesaro_empirical_measure(const std::vector<Eigen::VectorXd>& trajectory,
                                          std::size_t burn_in) {
    if (trajectory.size() <= burn_in)
        throw Error("trajectory of length " + std::to_string(trajectory.size()) +
                    " cannot drop a burn-in of " + std::to_string(burn_in));
    const std::size_t n = trajectory.size() - burn_in;
    EmpiricalMeasure m;
    m.points.reserve(n);
    m.weights.assign(n, 1.0 / static_cast<double>(n));
    for (std::size_t i = burn_in; i < trajectory.size(); ++i)
        m.points.push_back(projective_normalize(trajectory[i]));
    return m;
}

EmpiricalMeasure dirac_measure(const Eigen::VectorXd& point) {
    EmpiricalMeasure m;
    m.points.push_back(projective_normalize(point));
    m.weights.push_back(1.0);
    return m;
}

std::size_t grid_cell_count(std::size_t dim, int resolution) {
    if (dim == 0 || resolution <= 0) throw DimensionMismatch("grid needs dim >= 1, resolution >= 1");
    if (dim == 1) return 1;
    const std::size_t r = static_cast<std::size_t>(resolution);
    if (dim == 2) return 2 * r;
    std::size_t cells = dim;
    for (std::size_t i = 0; i + 1 < dim; ++i) cells *= r;
    return cells;
}

std::size_t grid_cell(const Eigen::VectorXd& v, int resolution) {
    const std::size_t d = static_cast<std::size_t>(v.size());
    const std::size_t cells = grid_cell_count(d, resolution);
    if (d == 1) return 0;
    const Eigen::VectorXd u = projective_normalize(v);
    if (d == 2) {
        double phi = std::atan2(u[1], u[0]);
        if (phi < 0.0) phi += std::numbers::pi;
        if (phi >= std::numbers::pi) phi -= std::numbers::pi;
        const auto c = static_cast<std::size_t>(phi / std::numbers::pi * static_cast<double>(cells));
        return std::min(c, cells - 1);
    }
    // Chart of the largest |coordinate| (first such index), then each ratio
    // in [-1, 1] quantized into `resolution` cells.
    const std::size_t r = static_cast<std::size_t>(resolution);
    std::size_t chart = 0;
    for (std::size_t i = 1; i < d; ++i)
        if (std::abs(u[static_cast<Eigen::Index>(i)]) > std::abs(u[static_cast<Eigen::Index>(chart)]))
            chart = i;
    const double scale = u[static_cast<Eigen::Index>(chart)];
    std::size_t idx = chart;
    for (std::size_t i = 0; i < d; ++i) {
        if (i == chart) continue;
        const double t = u[static_cast<Eigen::Index>(i)] / scale;  // in [-1, 1]
        auto c = static_cast<std::size_t>((t + 1.0) / 2.0 * static_cast<double>(r));
        c = std::min(c, r - 1);
        idx = idx * r + c;
    }
    return idx;
}

EmpiricalMeasure uniform_grid_measure(std::size_t dim, int resolution) {
    const std::size_t cells = grid_cell_count(dim, resolution);
    EmpiricalMeasure m;
    m.points.reserve(cells);
    m.weights.assign(cells, 1.0 / static_cast<double>(cells));
    if (dim == 1) {
        m.points.push_back(Eigen::VectorXd::Ones(1));
        return m;
    }
    if (dim == 2) {
        for (std::size_t c = 0; c < cells; ++c) {
            const double phi =
                (static_cast<double>(c) + 0.5) * std::numbers::pi / static_cast<double>(cells);
            Eigen::VectorXd p(2);
            p << std::cos(phi), std::sin(phi);
            m.points.push_back(projective_normalize(p));
        }
        return m;
    }
    const std::size_t r = static_cast<std::size_t>(resolution);
    for (std::size_t chart = 0; chart < dim; ++chart) {
        std::vector<std::size_t> digits(dim - 1, 0);
        while (true) {
            Eigen::VectorXd p(static_cast<Eigen::Index>(dim));
            p[static_cast<Eigen::Index>(chart)] = 1.0;
            std::size_t pos = 0;
            for (std::size_t i = 0; i < dim; ++i) {
                if (i == chart) continue;
                p[static_cast<Eigen::Index>(i)] =
                    -1.0 + (2.0 * static_cast<double>(digits[pos]) + 1.0) / static_cast<double>(r);
                ++pos;
            }
            m.points.push_back(projective_normalize(p));
            std::size_t carry = dim - 1;
            while (carry > 0) {
                if (++digits[carry - 1] < r) break;
                digits[carry - 1] = 0;
                --carry;
            }
            if (carry == 0) break;
        }
    }
    return m;
}

double near_invariance_score(const EmpiricalMeasure& m, const Eigen::MatrixXd& matrix,
                             int resolution) {
    if (m.points.empty()) throw DimensionMismatch("empty measure");
    const auto d = static_cast<Eigen::Index>(m.dim());
    if (matrix.rows() != d || matrix.cols() != d)
        throw DimensionMismatch("measure lives in dimension " + std::to_string(m.dim()) +
                                ", matrix is " + std::to_string(matrix.rows()) + "x" +
                                std::to_string(matrix.cols()));
    const std::size_t cells = grid_cell_count(m.dim(), resolution);
    std::vector<double> before(cells, 0.0), after(cells, 0.0);
    for (std::size_t i = 0; i < m.points.size(); ++i) {
        before[grid_cell(m.points[i], resolution)] += m.weights[i];
        after[grid_cell(projective_normalize(matrix * m.points[i]), resolution)] += m.weights[i];
    }
    double tv = 0.0;
    for (std::size_t c = 0; c < cells; ++c) tv += std::abs(before[c] - after[c]);
    return tv / 2.0;
}

LyapunovEstimate lyapunov_gap_estimate(const std::vector<Eigen::MatrixXd>& matrices,
                                       const WalkConfig& cfg) {
    const Eigen::Index d = common_dimension(matrices);
    check_config(cfg);
    std::mt19937_64 rng(cfg.seed);
    const std::size_t k = matrices.size();
    LyapunovEstimate est;
    est.steps = cfg.steps - cfg.burn_in;
    double s1 = 0.0, s2 = 0.0;
    if (d == 1) {
        for (std::size_t step = 0; step < cfg.steps; ++step) {
            const double a = matrices[static_cast<std::size_t>(rng() % k)](0, 0);
            if (std::abs(a) <= kTiny) throw Error("singular generator in a Lyapunov walk");
            if (step >= cfg.burn_in) s1 += std::log(std::abs(a));
        }
        est.lambda1 = est.lambda2 = s1 / static_cast<double>(est.steps);
        return est;
    }
    // Iterated 2-frame orthonormalization: Gram-Schmidt with positive diagonal,
    // so r11 and r22 (hence the sums) are uniquely determined.
    Eigen::VectorXd q1 = Eigen::VectorXd::Zero(d), q2 = Eigen::VectorXd::Zero(d);
    q1[0] = 1.0;
    q2[1] = 1.0;
    for (std::size_t step = 0; step < cfg.steps; ++step) {
        const Eigen::MatrixXd& g = matrices[static_cast<std::size_t>(rng() % k)];
        Eigen::VectorXd w1 = g * q1;
        const double r11 = w1.norm();
        if (!(r11 > kTiny)) throw Error("singular generator in a Lyapunov walk");
        q1 = w1 / r11;
        Eigen::VectorXd w2 = g * q2;
        w2 -= q1.dot(w2) * q1;
        const double r22 = w2.norm();
        if (!(r22 > kTiny)) throw Error("singular generator in a Lyapunov walk");
        q2 = w2 / r22;
        if (step >= cfg.burn_in) {
            s1 += std::log(r11);
            s2 += std::log(r22);
        }
    }
    est.lambda1 = s1 / static_cast<double>(est.steps);
    est.lambda2 = s2 / static_cast<double>(est.steps);
    return est;
}

}  // namespace nilrigid
