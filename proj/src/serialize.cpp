#include "nilrigid/serialize.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "nilrigid/errors.hpp"

namespace nilrigid {

namespace {

Rational rational_from_json(const Json& j, const std::string& where) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<std::int64_t>()));
    throw FormatError(where + ": rational entries must be integers or \"p/q\" strings");
}

const Json& require_key(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        throw FormatError(where + ": missing key \"" + key + "\"");
    return j.at(key);
}

void reject_unknown_keys(const Json& j, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const std::string& a : allowed) ok = ok || key == a;
        if (!ok) throw FormatError(where + ": unknown key \"" + key + "\"");
    }
}

Json projective_to_json(const ProjectivePoint& p) { return qvec_to_json(p.coords); }

Json words_to_json(const std::vector<std::vector<int>>& words) {
    Json out = Json::array();
    for (const auto& w : words) out.push_back(w);
    return out;
}

// Shortest-representation double formatting, stable across runs.
std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    for (int prec = 1; prec <= 16; ++prec) {
        char shorter[64];
        std::snprintf(shorter, sizeof shorter, "%.*g", prec, x);
        std::sscanf(shorter, "%lf", &back);
        if (back == x) return shorter;
    }
    return buf;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& where) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(where + ": " + e.what());
    }
}

Json qvec_to_json(const QVec& v) {
    Json out = Json::array();
    for (const Rational& x : v) out.push_back(format_rational(x));
    return out;
}

QVec qvec_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw FormatError(where + ": expected an array of rationals");
    QVec v;
    v.reserve(j.size());
    for (const Json& x : j) v.push_back(rational_from_json(x, where));
    return v;
}

Json qmat_to_json(const QMat& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols; ++k) row.push_back(format_rational(m.at(i, k)));
        out.push_back(std::move(row));
    }
    return out;
}

QMat qmat_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw FormatError(where + ": expected a nonempty array of rows");
    const std::size_t rows = j.size();
    if (!j.front().is_array() || j.front().empty())
        throw FormatError(where + ": rows must be nonempty arrays");
    const std::size_t cols = j.front().size();
    QMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = j.at(i);
        if (!row.is_array() || row.size() != cols)
            throw FormatError(where + ": rows must all have " + std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k) m.at(i, k) = rational_from_json(row.at(k), where);
    }
    return m;
}

Json nil_element_to_json(const NilElement& x) {
    Json out = Json::object();
    out["v"] = qvec_to_json(x.v);
    out["w"] = qvec_to_json(x.w);
    return out;
}

NilElement nil_element_from_json(const GraphAlgebra& A, const Json& j, const std::string& where) {
    if (!j.is_object()) throw FormatError(where + ": expected {\"v\": [...], \"w\": [...]}");
    reject_unknown_keys(j, {"v", "w"}, where);
    NilElement x;
    x.v = qvec_from_json(require_key(j, "v", where), where + ".v");
    x.w = qvec_from_json(require_key(j, "w", where), where + ".w");
    if (x.v.size() != A.dim_v() || x.w.size() != A.dim_w())
        throw FormatError(where + ": element has shape (" + std::to_string(x.v.size()) + ", " +
                          std::to_string(x.w.size()) + "), algebra wants (" +
                          std::to_string(A.dim_v()) + ", " + std::to_string(A.dim_w()) + ")");
    return x;
}

std::vector<AffineGenerator> generators_from_json(const GraphAlgebra& A, const Json& j) {
    if (!j.is_array()) throw FormatError("generator file: expected a JSON array");
    std::vector<AffineGenerator> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string where = "generator " + std::to_string(i + 1);
        const Json& item = j.at(i);
        if (!item.is_object()) throw FormatError(where + ": expected an object");
        reject_unknown_keys(item, {"translation", "shear", "linear"}, where);
        NilElement translation =
            item.contains("translation")
                ? nil_element_from_json(A, item.at("translation"), where + ".translation")
                : A.zero();
        QMat theta =
            item.contains("shear") ? qmat_from_json(item.at("shear"), where + ".shear") : QMat(0, 0);
        QMat g =
            item.contains("linear") ? qmat_from_json(item.at("linear"), where + ".linear") : QMat(0, 0);
        out.push_back(assemble(A, std::move(translation), std::move(theta), std::move(g)));
    }
    return out;
}

std::vector<QMat> torus_generators_from_json(const Json& j) {
    if (!j.is_array()) throw FormatError("generator file: expected a JSON array");
    std::vector<QMat> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string where = "generator " + std::to_string(i + 1);
        const Json& item = j.at(i);
        if (!item.is_object()) throw FormatError(where + ": expected an object");
        reject_unknown_keys(item, {"linear"}, where);
        out.push_back(qmat_from_json(require_key(item, "linear", where), where + ".linear"));
    }
    return out;
}

Json certificate_to_json(const Certificate& cert) {
    Json out = Json::object();
    out["kind"] = certificate_kind(cert);
    struct Visitor {
        Json& out;
        void operator()(const FixedVectorCert& c) const { out["vector"] = qvec_to_json(c.vector); }
        void operator()(const TrivialDerivedFixedSpaceCert& c) const {
            out["left_inverse"] = qmat_to_json(c.left_inverse);
        }
        void operator()(const InvariantLineCert& c) const {
            out["point"] = projective_to_json(c.point);
            out["eigenvalues"] = qvec_to_json(c.eigenvalues);
        }
        void operator()(const FiniteLineOrbitCert& c) const {
            Json pts = Json::array();
            for (const ProjectivePoint& p : c.points) pts.push_back(projective_to_json(p));
            out["points"] = std::move(pts);
        }
        void operator()(const InvariantPDFormCert& c) const { out["form"] = qmat_to_json(c.form); }
        void operator()(const ProximalIrreducibleCert& c) const {
            out["word"] = c.word;
            out["dominant_interval"] =
                Json::array({format_rational(c.dominant_lo), format_rational(c.dominant_hi)});
            out["radius"] = format_rational(c.radius);
            out["gap_lower"] = format_rational(c.gap_lower);
            out["gap_path"] = c.gap_path;
            out["spanning_words"] = words_to_json(c.spanning_words);
        }
    };
    std::visit(Visitor{out}, cert);
    return out;
}

Json verdict_to_json(const RigidityVerdict& v) {
    Json out = Json::object();
    out["verdict"] = to_string(v.status);
    out["criterion"] = v.criterion;
    out["certificate"] = v.certificate ? certificate_to_json(*v.certificate) : Json(nullptr);
    out["assumptions"] = v.assumptions;
    Json budgets = Json::object();
    budgets["max_word_length"] = v.budgets.max_word_length;
    budgets["orbit_bound"] = v.budgets.orbit_bound;
    budgets["gap_tol"] = format_rational(v.budgets.gap_tol);
    out["budgets"] = std::move(budgets);
    out["tests_attempted"] = v.tests_attempted;
    return out;
}

std::string verdict_to_text(const RigidityVerdict& v) {
    std::ostringstream os;
    os << "verdict: " << to_string(v.status) << "\n";
    os << "criterion: " << v.criterion << "\n";
    if (v.assumptions.empty()) {
        os << "assumptions: (none)\n";
    } else {
        os << "assumptions:\n";
        for (const std::string& a : v.assumptions) os << "  - " << a << "\n";
    }
    os << "budgets: max-word-length=" << v.budgets.max_word_length
       << ", orbit-bound=" << v.budgets.orbit_bound
       << ", gap-tol=" << format_rational(v.budgets.gap_tol) << "\n";
    if (v.certificate) {
        os << "certificate: " << certificate_kind(*v.certificate) << "\n";
        const Json body = certificate_to_json(*v.certificate);
        for (const auto& [key, value] : body.items())
            if (key != "kind") os << "  " << key << ": " << value.dump() << "\n";
    } else {
        os << "certificate: (none)\n";
    }
    if (!v.tests_attempted.empty()) {
        os << "tests attempted:\n";
        for (const std::string& t : v.tests_attempted) os << "  - " << t << "\n";
    }
    return os.str();
}

Json dynamics_summary_to_json(const LyapunovEstimate& est, const std::vector<double>& scores,
                              std::uint64_t seed) {
    Json out = Json::object();
    out["steps"] = est.steps;
    out["seed"] = seed;
    out["lyapunov"] = Json::array({est.lambda1, est.lambda2});
    out["lyapunov_gap"] = est.gap();
    Json ni = Json::object();
    for (std::size_t i = 0; i < scores.size(); ++i) ni[std::to_string(i + 1)] = scores[i];
    out["near_invariance"] = std::move(ni);
    return out;
}

std::string trajectory_to_csv(const std::vector<Eigen::VectorXd>& trajectory) {
    std::ostringstream os;
    os << "step";
    const Eigen::Index d = trajectory.empty() ? 0 : trajectory.front().size();
    for (Eigen::Index i = 0; i < d; ++i) os << ",x" << i;
    os << "\n";
    for (std::size_t s = 0; s < trajectory.size(); ++s) {
        os << s;
        for (Eigen::Index i = 0; i < d; ++i) os << "," << format_double(trajectory[s][i]);
        os << "\n";
    }
    return os.str();
}

}  // namespace nilrigid
