#include "nilrigid/rigidity.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nilrigid/errors.hpp"
#include "nilrigid/graph.hpp"

namespace nilrigid {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::RIGID: return "RIGID";
        case Verdict::NOT_RIGID: return "NOT_RIGID";
        default: return "UNKNOWN";
    }
}

std::string to_string(Irreducibility i) {
    switch (i) {
        case Irreducibility::IRREDUCIBLE_STRONGLY: return "IRREDUCIBLE_STRONGLY";
        case Irreducibility::IRREDUCIBLE: return "IRREDUCIBLE";
        default: return "INCONCLUSIVE";
    }
}

std::string certificate_kind(const Certificate& cert) {
    struct Visitor {
        std::string operator()(const FixedVectorCert&) const { return "FixedVector"; }
        std::string operator()(const TrivialDerivedFixedSpaceCert&) const {
            return "TrivialDerivedFixedSpace";
        }
        std::string operator()(const InvariantLineCert&) const { return "InvariantLine"; }
        std::string operator()(const FiniteLineOrbitCert&) const { return "FiniteLineOrbit"; }
        std::string operator()(const InvariantPDFormCert&) const { return "InvariantPDForm"; }
        std::string operator()(const ProximalIrreducibleCert&) const {
            return "ProximalIrreducible";
        }
    };
    return std::visit(Visitor{}, cert);
}

GeneratorSet make_nilmanifold_set(std::shared_ptr<const GraphAlgebra> algebra,
                                  std::vector<AffineGenerator> generators) {
    if (!algebra) throw Error("nilmanifold generator set needs an algebra");
    GeneratorSet gs;
    gs.mode = AnalysisMode::Nilmanifold;
    gs.algebra = std::move(algebra);
    gs.generators = std::move(generators);
    gs.dim = gs.algebra->dim();
    gs.matrices.reserve(gs.generators.size());
    for (std::size_t i = 0; i < gs.generators.size(); ++i) {
        if (!verify_lattice_stabilized(*gs.algebra, gs.generators[i]))
            throw Error("generator " + std::to_string(i + 1) + " does not stabilize the lattice");
        gs.matrices.push_back(linear_action_on_g(*gs.algebra, gs.generators[i]));
    }
    return gs;
}

GeneratorSet make_torus_set(std::vector<QMat> matrices) {
    if (matrices.empty()) throw Error("torus generator set needs at least one matrix");
    GeneratorSet gs;
    gs.mode = AnalysisMode::Torus;
    gs.dim = matrices[0].rows;
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        const QMat& m = matrices[i];
        const std::string tag = "generator " + std::to_string(i + 1);
        if (m.rows != m.cols || m.rows != gs.dim)
            throw Error(tag + " is not square of the common size");
        for (const Rational& x : m.a)
            if (!is_integer(x)) throw NonUnimodular(tag + " has a non-integer entry");
        Rational dt = det(m);
        if (dt != 1 && dt != -1)
            throw NonUnimodular(tag + " has determinant " + format_rational(dt));
    }
    gs.matrices = std::move(matrices);
    return gs;
}

QMat word_matrix(const std::vector<QMat>& matrices, const std::vector<int>& word) {
    if (matrices.empty()) throw Error("word over an empty generator set");
    const std::size_t d = matrices[0].rows;
    QMat m = QMat::identity(d);
    for (int letter : word) {
        if (letter == 0) throw Error("zero letter in word");
        const std::size_t idx = static_cast<std::size_t>(letter > 0 ? letter : -letter) - 1;
        if (idx >= matrices.size()) throw Error("word letter out of range");
        if (letter > 0) {
            m = m * matrices[idx];
        } else {
            auto inv = inverse(matrices[idx]);
            if (!inv) throw Error("singular generator in word");
            m = m * *inv;
        }
    }
    return m;
}

namespace {

std::vector<QMat> with_inverses(const std::vector<QMat>& matrices) {
    std::vector<QMat> action = matrices;
    action.reserve(2 * matrices.size());
    for (const QMat& m : matrices) {
        auto inv = inverse(m);
        if (!inv) throw Error("singular generator");
        action.push_back(*inv);
    }
    return action;
}

// Coordinate-height budget for the orbit searches. Orbits of virtually
// cyclic groups diverge along linear-depth chains whose entries grow
// exponentially; once a coordinate passes this size the closure cannot be
// confirmed cheaply and the search reports "not closed within budget".
constexpr unsigned kMaxCoordinateBits = 512;

bool qvec_height_exceeds(const QVec& v) {
    for (const Rational& x : v)
        if (height_exceeds(x, kMaxCoordinateBits)) return true;
    return false;
}

std::vector<Rational> rational_eigenvalues(const QMat& m) { return rational_roots(charpoly(m)); }

std::vector<QVec> eigenspace(const QMat& m, const Rational& lam) {
    return nullspace(m - QMat::identity(m.rows).scaled(lam));
}

// Canonical basis of the intersection of two row spaces over Q^d.
std::vector<QVec> intersect_rowspaces(const std::vector<QVec>& sa, const std::vector<QVec>& sb,
                                      std::size_t d) {
    if (sa.empty() || sb.empty()) return {};
    QMat c(d, sa.size() + sb.size());
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t t = 0; t < sa.size(); ++t) c.at(i, t) = sa[t][i];
        for (std::size_t u = 0; u < sb.size(); ++u) c.at(i, sa.size() + u) = -sb[u][i];
    }
    std::vector<QVec> gens;
    for (const QVec& k : nullspace(c)) {
        QVec v(d, Rational(0));
        for (std::size_t t = 0; t < sa.size(); ++t)
            if (k[t] != 0) v = qvec_add(v, qvec_scale(k[t], sa[t]));
        if (!qvec_is_zero(v)) gens.push_back(std::move(v));
    }
    return canonical_subspace_basis(gens);
}

bool is_positive_definite(const QMat& s) {
    if (s.rows != s.cols) return false;
    for (std::size_t k = 1; k <= s.rows; ++k) {
        QMat sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = s.at(i, j);
        if (det(std::move(sub)) <= 0) return false;
    }
    return true;
}

bool is_definite(const QMat& s) { return is_positive_definite(s) || is_positive_definite(s.scaled(Rational(-1))); }

// Ordered index <-> (p <= q) pairs for the symmetric-matrix parameterization.
std::vector<std::pair<std::size_t, std::size_t>> sym_param_pairs(std::size_t d) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = p; q < d; ++q) pairs.emplace_back(p, q);
    return pairs;
}

QMat sym_from_params(const QVec& c, std::size_t d,
                     const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    QMat s(d, d);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto [p, q] = pairs[k];
        s.at(p, q) = c[k];
        s.at(q, p) = c[k];
    }
    return s;
}

QVec params_from_sym(const QMat& s, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    QVec c(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) c[k] = s.at(pairs[k].first, pairs[k].second);
    return c;
}

// Matrix of X -> m^T X m on symmetric matrices in the paired basis.
QMat sym2_rep(const QMat& m) {
    const std::size_t d = m.rows;
    const auto pairs = sym_param_pairs(d);
    QMat rep(pairs.size(), pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto [p, q] = pairs[k];
        QMat basis(d, d);
        basis.at(p, q) = 1;
        basis.at(q, p) = 1;
        QVec image = params_from_sym(m.transpose() * basis * m, pairs);
        for (std::size_t k2 = 0; k2 < pairs.size(); ++k2) rep.at(k2, k) = image[k2];
    }
    return rep;
}

// Degree-3 monomials in 3 variables and the action F -> F(m x) on them.
struct Cubic {
    // coefficient per exponent triple, indexed by mono_index
    static const std::vector<std::array<int, 3>>& monomials() {
        static const std::vector<std::array<int, 3>> ms = [] {
            std::vector<std::array<int, 3>> v;
            for (int a = 3; a >= 0; --a)
                for (int b = 3 - a; b >= 0; --b) v.push_back({a, b, 3 - a - b});
            return v;
        }();
        return ms;
    }
    static std::size_t mono_index(int a, int b, int c) {
        const auto& ms = monomials();
        for (std::size_t i = 0; i < ms.size(); ++i)
            if (ms[i][0] == a && ms[i][1] == b && ms[i][2] == c) return i;
        throw Error("bad monomial");
    }
};

QMat sym3_rep(const QMat& m) {
    if (m.rows != 3 || m.cols != 3) throw Error("sym3_rep expects a 3x3 matrix");
    const auto& monos = Cubic::monomials();
    QMat rep(monos.size(), monos.size());
    // polynomial in (x,y,z) of degree <= 3, dense over exponent triples (a,b,c), a+b+c <= 3
    using Poly3 = std::map<std::array<int, 3>, Rational>;
    auto mul_linear = [&](const Poly3& f, std::size_t var_row) {
        Poly3 g;
        for (const auto& [e, coef] : f)
            for (int j = 0; j < 3; ++j) {
                if (m.at(var_row, j) == 0) continue;
                std::array<int, 3> e2 = e;
                e2[static_cast<std::size_t>(j)] += 1;
                g[e2] += coef * m.at(var_row, j);
            }
        return g;
    };
    for (std::size_t k = 0; k < monos.size(); ++k) {
        Poly3 f{{{0, 0, 0}, Rational(1)}};
        for (int rep_count = 0; rep_count < monos[k][0]; ++rep_count) f = mul_linear(f, 0);
        for (int rep_count = 0; rep_count < monos[k][1]; ++rep_count) f = mul_linear(f, 1);
        for (int rep_count = 0; rep_count < monos[k][2]; ++rep_count) f = mul_linear(f, 2);
        for (const auto& [e, coef] : f)
            rep.at(Cubic::mono_index(e[0], e[1], e[2]), k) = coef;
    }
    return rep;
}

// Breadth-first enumeration of reduced words over the signed generator
// alphabet (+1, -1, +2, -2, ...), adjacent cancellations skipped. Stops when
// `visit` returns true or `cap` words have been visited.
void enumerate_words(const std::vector<QMat>& matrices, const std::vector<QMat>& inverses,
                     int max_len, long cap, bool include_identity,
                     const std::function<bool(const std::vector<int>&, const QMat&)>& visit) {
    const std::size_t d = matrices.empty() ? 0 : matrices[0].rows;
    struct Node {
        std::vector<int> word;
        QMat m;
    };
    std::vector<Node> level{{std::vector<int>{}, QMat::identity(d)}};
    long visited = 0;
    if (include_identity) {
        ++visited;
        if (visit(level[0].word, level[0].m)) return;
    }
    std::vector<int> letters;
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        letters.push_back(static_cast<int>(i) + 1);
        letters.push_back(-(static_cast<int>(i) + 1));
    }
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Node> next;
        for (const Node& node : level)
            for (int letter : letters) {
                if (!node.word.empty() && node.word.back() == -letter) continue;
                if (++visited > cap) return;
                Node child;
                child.word = node.word;
                child.word.push_back(letter);
                const std::size_t idx = static_cast<std::size_t>(std::abs(letter)) - 1;
                child.m = node.m * (letter > 0 ? matrices[idx] : inverses[idx]);
                if (visit(child.word, child.m)) return;
                next.push_back(std::move(child));
            }
        level = std::move(next);
        if (level.empty()) return;
    }
}

// Smallest y with y^k >= t, overshooting by at most eps.
Rational rational_kth_root_upper(const Rational& t, int k, const Rational& eps) {
    if (t <= 0) return Rational(0);
    if (k == 1) return t;
    auto powk = [k](const Rational& y) {
        Rational r(1);
        for (int i = 0; i < k; ++i) r *= y;
        return r;
    };
    Rational lo(0), hi = t < 1 ? Rational(1) : t;
    while (hi - lo > eps) {
        Rational mid = (lo + hi) / 2;
        if (powk(mid) >= t)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::string format_size(std::size_t n) { return std::to_string(static_cast<unsigned long long>(n)); }

} // namespace

std::vector<QVec> fixed_vectors_in_derived(const GeneratorSet& gs) {
    if (gs.mode != AnalysisMode::Nilmanifold)
        throw ModeMismatch("derived fixed vectors exist only in nilmanifold mode");
    const std::size_t dw = gs.algebra->dim_w();
    if (gs.generators.empty()) {
        std::vector<QVec> basis;
        for (std::size_t i = 0; i < dw; ++i) {
            QVec e(dw, Rational(0));
            e[i] = 1;
            basis.push_back(std::move(e));
        }
        return basis;
    }
    std::vector<QMat> blocks;
    blocks.reserve(gs.generators.size());
    const QMat eye = QMat::identity(dw);
    for (const AffineGenerator& gen : gs.generators) blocks.push_back(gen.p - eye);
    return nullspace(vstack(blocks));
}

std::optional<InvariantLineCert> common_invariant_line(const std::vector<QMat>& matrices) {
    if (matrices.empty()) return std::nullopt;
    const std::size_t d = matrices[0].rows;
    struct Chain {
        std::vector<QVec> basis;
        std::vector<Rational> eigs;
    };
    std::vector<Chain> chains;
    {
        std::vector<QVec> full;
        for (std::size_t i = 0; i < d; ++i) {
            QVec e(d, Rational(0));
            e[i] = 1;
            full.push_back(std::move(e));
        }
        chains.push_back({std::move(full), {}});
    }
    for (const QMat& m : matrices) {
        if (m.rows != d || m.cols != d) throw Error("matrix size mismatch in invariant-line search");
        std::vector<std::pair<Rational, std::vector<QVec>>> spaces;
        for (const Rational& lam : rational_eigenvalues(m)) {
            auto es = eigenspace(m, lam);
            if (!es.empty()) spaces.emplace_back(lam, std::move(es));
        }
        std::vector<Chain> next;
        for (Chain& ch : chains)
            for (const auto& [lam, es] : spaces) {
                auto inter = intersect_rowspaces(ch.basis, es, d);
                if (inter.empty()) continue;
                Chain refined;
                refined.basis = std::move(inter);
                refined.eigs = ch.eigs;
                refined.eigs.push_back(lam);
                next.push_back(std::move(refined));
            }
        chains = std::move(next);
        if (chains.empty()) return std::nullopt;
    }
    const Chain& best = chains.front();
    return InvariantLineCert{make_projective(best.basis.front()), best.eigs};
}

std::optional<FiniteLineOrbitCert> finite_line_orbit(const std::vector<QMat>& matrices,
                                                     const ProjectivePoint& start, long bound) {
    const std::vector<QMat> action = with_inverses(matrices);
    std::set<ProjectivePoint> seen;
    std::vector<ProjectivePoint> queue;
    ProjectivePoint p0 = make_projective(start.coords);
    seen.insert(p0);
    queue.push_back(std::move(p0));
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const ProjectivePoint p = queue[head];
        for (const QMat& m : action) {
            ProjectivePoint q = make_projective(m.apply(p.coords));
            if (qvec_height_exceeds(q.coords)) return std::nullopt;
            if (seen.insert(q).second) {
                if (static_cast<long>(seen.size()) > bound) return std::nullopt;
                queue.push_back(std::move(q));
            }
        }
    }
    return FiniteLineOrbitCert{std::vector<ProjectivePoint>(seen.begin(), seen.end())};
}

std::optional<QMat> invariant_pd_form(const std::vector<QMat>& matrices) {
    if (matrices.empty()) return std::nullopt;
    const std::size_t d = matrices[0].rows;
    const QMat eye = QMat::identity(d);

    bool all_orthogonal = true;
    for (const QMat& m : matrices)
        if (!(m.transpose() * m == eye)) {
            all_orthogonal = false;
            break;
        }
    if (all_orthogonal) return eye;

    // Finite closure: average g^T g over the group when it closes quickly.
    {
        const std::vector<QMat> action = with_inverses(matrices);
        std::map<QVec, QMat, RepLess> seen;
        std::vector<QMat> queue{eye};
        seen.emplace(eye.a, eye);
        bool closed = true;
        for (std::size_t head = 0; head < queue.size() && closed; ++head) {
            const QMat g = queue[head];
            for (const QMat& m : action) {
                QMat n = g * m;
                if (seen.count(n.a)) continue;
                if (seen.size() >= 2048 || qvec_height_exceeds(n.a)) {
                    closed = false;
                    break;
                }
                seen.emplace(n.a, n);
                queue.push_back(std::move(n));
            }
        }
        if (closed) {
            QMat sum(d, d);
            for (const auto& [key, g] : seen) sum = sum + g.transpose() * g;
            QMat avg = sum.scaled(Rational(1) / Rational(static_cast<long>(seen.size())));
            if (is_positive_definite(avg)) return avg;
        }
    }

    // Exact solution space of m^T X m = X over symmetric X, then a small
    // search for a positive definite element.
    const auto pairs = sym_param_pairs(d);
    const std::size_t s = pairs.size();
    QMat sys(matrices.size() * d * d, s);
    std::size_t r = 0;
    for (const QMat& m : matrices)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b, ++r)
                for (std::size_t k = 0; k < s; ++k) {
                    auto [p, q] = pairs[k];
                    Rational coeff = m.at(p, a) * m.at(q, b);
                    if (p != q) coeff += m.at(q, a) * m.at(p, b);
                    if ((a == p && b == q) || (a == q && b == p)) coeff -= 1;
                    sys.at(r, k) = coeff;
                }
    const std::vector<QVec> sols = nullspace(sys);
    if (sols.empty()) return std::nullopt;
    std::vector<QMat> basis;
    basis.reserve(sols.size());
    for (const QVec& c : sols) basis.push_back(sym_from_params(c, d, pairs));

    auto combine = [&](const std::vector<int>& coeffs) {
        QMat cand(d, d);
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (coeffs[k] != 0) cand = cand + basis[k].scaled(Rational(coeffs[k]));
        return cand;
    };
    // Singles first, then all small integer combinations.
    for (const QMat& b : basis) {
        if (is_positive_definite(b)) return b;
        QMat nb = b.scaled(Rational(-1));
        if (is_positive_definite(nb)) return nb;
    }
    const std::size_t kk = basis.size();
    const int radius_limit = kk <= 3 ? 2 : (kk <= 5 ? 1 : 0);
    if (radius_limit > 0) {
        const int width = 2 * radius_limit + 1;
        long total = 1;
        for (std::size_t i = 0; i < kk; ++i) total *= width;
        for (long code = 1; code < total; ++code) {
            long rem = code;
            std::vector<int> coeffs(kk);
            for (std::size_t i = 0; i < kk; ++i) {
                coeffs[i] = static_cast<int>(rem % width) - radius_limit;
                rem /= width;
            }
            QMat cand = combine(coeffs);
            if (is_positive_definite(cand)) return cand;
        }
    } else {
        for (std::size_t i = 0; i < kk; ++i)
            for (std::size_t j = i + 1; j < kk; ++j)
                for (int si = -1; si <= 1; si += 2)
                    for (int sj = -1; sj <= 1; sj += 2) {
                        QMat cand = basis[i].scaled(Rational(si)) + basis[j].scaled(Rational(sj));
                        if (is_positive_definite(cand)) return cand;
                    }
    }
    return std::nullopt;
}

std::optional<ProximalityResult> certify_proximal(const QMat& m, const Rational& gap_tol) {
    if (m.rows != m.cols || m.rows < 2) return std::nullopt;
    if (gap_tol <= 0) throw Error("gap tolerance must be positive");
    const int d = static_cast<int>(m.rows);
    const QPoly p = charpoly(m);
    const QPoly sf = poly_squarefree_part(p);
    std::vector<RootInterval> ivs = isolate_real_roots(p);
    if (ivs.empty()) return std::nullopt;

    auto abs_lo = [](const RootInterval& iv) -> Rational {
        if (iv.lo >= 0) return iv.lo;
        if (iv.hi <= 0) return -iv.hi;
        return Rational(0);
    };
    auto abs_hi = [](const RootInterval& iv) -> Rational {
        Rational a = abs_of(iv.lo), b = abs_of(iv.hi);
        return a > b ? a : b;
    };

    for (RootInterval& iv : ivs)
        if (!iv.exact) iv = refine_interval(sf, iv, Rational(1, 16));

    // Separate one real root strictly above every other real root in modulus.
    std::size_t cand = 0;
    bool separated = false;
    for (int round = 0; round < 48 && !separated; ++round) {
        cand = 0;
        for (std::size_t j = 1; j < ivs.size(); ++j)
            if (abs_hi(ivs[j]) > abs_hi(ivs[cand])) cand = j;
        separated = true;
        for (std::size_t j = 0; j < ivs.size(); ++j) {
            if (j == cand) continue;
            if (abs_hi(ivs[j]) >= abs_lo(ivs[cand])) {
                separated = false;
                break;
            }
        }
        if (separated) break;
        bool progressed = false;
        for (RootInterval& iv : ivs) {
            if (iv.exact) continue;
            Rational w = iv.hi - iv.lo;
            if (w <= 0) continue;
            iv = refine_interval(sf, iv, w / 2);
            progressed = true;
        }
        if (!progressed) return std::nullopt; // exact roots tied in modulus
    }
    if (!separated) return std::nullopt;

    Rational a = abs_lo(ivs[cand]);
    if (a <= 0) return std::nullopt;
    if (!ivs[cand].exact) {
        Rational target = a * gap_tol / 16;
        const Rational ceiling(1, 1024);
        if (target > ceiling) target = ceiling;
        if (target <= 0) target = ceiling;
        ivs[cand] = refine_interval(sf, ivs[cand], target);
        a = abs_lo(ivs[cand]);
    }

    const Rational one_plus = Rational(1) + gap_tol;
    const Rational rho0 = a / one_plus;
    std::optional<Rational> ok_rho;
    const Rational factors[] = {Rational(1),        Rational(1023, 1024), Rational(511, 512),
                                Rational(255, 256), Rational(127, 128),   Rational(63, 64)};
    for (const Rational& f : factors) {
        const Rational rho = rho0 * f;
        auto cnt = count_roots_in_disk(p, rho);
        if (!cnt) continue; // degenerate radius: perturb and retry
        if (*cnt == d - 1) ok_rho = rho;
        break; // a definite count settles this radius regime
    }

    ProximalityResult res;
    res.dominant_lo = ivs[cand].lo;
    res.dominant_hi = ivs[cand].hi;
    if (ok_rho) {
        // Shrink the certified radius toward the true second modulus so the
        // reported gap is close to sharp. hi_r stays certified throughout.
        Rational lo_r(0), hi_r = *ok_rho;
        for (int it = 0; it < 24; ++it) {
            Rational mid = (lo_r + hi_r) / 2;
            if (mid <= 0) break;
            auto cnt = count_roots_in_disk(p, mid);
            if (!cnt) {
                mid = lo_r + (hi_r - lo_r) * Rational(513, 1024);
                cnt = count_roots_in_disk(p, mid);
                if (!cnt) {
                    lo_r = mid;
                    continue;
                }
            }
            if (*cnt == d - 1)
                hi_r = mid;
            else
                lo_r = mid;
        }
        res.radius = hi_r;
        res.gap_path = "sturm+schur-cohn";
    } else {
        // Rational dominant root: deflate exactly and bound the remaining
        // roots by the Fujiwara inequality.
        if (!ivs[cand].exact) return std::nullopt;
        const Rational lam = ivs[cand].lo;
        if (root_multiplicity(p, lam) != 1) return std::nullopt;
        auto [q, rem] = poly_divmod(p, QPoly{-lam, Rational(1)});
        if (poly_degree(rem) >= 0 || poly_degree(q) != d - 1) return std::nullopt;
        const int mdeg = poly_degree(q);
        Rational bound(0);
        const Rational eps = gap_tol / 10;
        for (int k = 1; k <= mdeg; ++k) {
            Rational t = abs_of(q[static_cast<std::size_t>(mdeg - k)]);
            Rational rk = rational_kth_root_upper(t, k, eps);
            if (rk > bound) bound = rk;
        }
        Rational radius = bound * Rational(2) * Rational(1025, 1024);
        if (radius <= 0) radius = a / (one_plus * 2);
        if (a / radius < one_plus) return std::nullopt;
        // Align with the Schur-Cohn check so every certificate re-verifies
        // through the same disk count.
        bool certified = false;
        for (int j = 0; j < 12 && !certified; ++j) {
            auto cnt = count_roots_in_disk(p, radius);
            if (cnt) {
                if (*cnt != d - 1) return std::nullopt;
                certified = true;
            } else {
                radius = radius * Rational(4097, 4096);
                if (a / radius < one_plus) return std::nullopt;
            }
        }
        if (!certified) return std::nullopt;
        res.radius = radius;
        res.gap_path = "fujiwara-deflation";
    }
    res.gap_lower = a / res.radius;
    if (res.gap_lower < one_plus) return std::nullopt;
    return res;
}

std::optional<ProximalityResult> proximality_witness(const std::vector<QMat>& matrices,
                                                     int max_word_length,
                                                     const Rational& gap_tol) {
    if (matrices.empty() || matrices[0].rows < 2) return std::nullopt;
    const std::vector<QMat> invs = [&] {
        std::vector<QMat> r;
        for (const QMat& m : matrices) {
            auto inv = inverse(m);
            if (!inv) throw Error("singular generator");
            r.push_back(*inv);
        }
        return r;
    }();
    std::set<QVec, RepLess> seen;
    std::optional<ProximalityResult> found;
    enumerate_words(matrices, invs, max_word_length, 3000, false,
                    [&](const std::vector<int>& word, const QMat& m) {
                        if (!seen.insert(m.a).second) return false;
                        auto res = certify_proximal(m, gap_tol);
                        if (!res) return false;
                        res->word = word;
                        found = std::move(res);
                        return true;
                    });
    return found;
}

IrreducibilityReport irreducibility_check(const std::vector<QMat>& matrices, int max_word_length,
                                          long orbit_bound) {
    IrreducibilityReport rep;
    if (matrices.empty()) {
        rep.detail = "no generators";
        return rep;
    }
    const std::size_t d = matrices[0].rows;
    const std::size_t full_rank = d * d;
    const std::vector<QMat> invs = [&] {
        std::vector<QMat> r;
        for (const QMat& m : matrices) {
            auto inv = inverse(m);
            if (!inv) throw Error("singular generator");
            r.push_back(*inv);
        }
        return r;
    }();

    // (a) Burnside: word matrices must span the full matrix algebra.
    struct Echelon {
        std::vector<QVec> rows;
        std::vector<std::size_t> pivots;
        bool add(QVec v) {
            for (std::size_t r = 0; r < rows.size(); ++r)
                if (v[pivots[r]] != 0) v = qvec_sub(v, qvec_scale(v[pivots[r]], rows[r]));
            std::size_t piv = v.size();
            for (std::size_t j = 0; j < v.size(); ++j)
                if (v[j] != 0) {
                    piv = j;
                    break;
                }
            if (piv == v.size()) return false;
            rows.push_back(qvec_scale(Rational(1) / v[piv], v));
            pivots.push_back(piv);
            return true;
        }
    };
    Echelon ech;
    std::vector<std::vector<int>> spanning;
    enumerate_words(matrices, invs, max_word_length, 4096, true,
                    [&](const std::vector<int>& word, const QMat& m) {
                        if (ech.add(m.a)) spanning.push_back(word);
                        return ech.rows.size() == full_rank;
                    });
    if (ech.rows.size() < full_rank) {
        rep.level = Irreducibility::INCONCLUSIVE;
        rep.detail = "matrix algebra span has rank " + format_size(ech.rows.size()) + " < " +
                     format_size(full_rank);
        return rep;
    }
    rep.spanning_words = std::move(spanning);

    // (b) Finite orbits of rational eigen-subspaces of generators and their
    // pairwise products rule strong irreducibility out.
    std::set<std::vector<QVec>, RepLess> seeds;
    auto add_seeds_from = [&](const QMat& w) {
        if (seeds.size() >= 48) return;
        for (const Rational& lam : rational_eigenvalues(w)) {
            auto es = eigenspace(w, lam);
            if (!es.empty() && es.size() < d) seeds.insert(es);
        }
    };
    for (const QMat& m : matrices) add_seeds_from(m);
    for (const QMat& m1 : matrices)
        for (const QMat& m2 : matrices)
            if (!(m1 == m2)) add_seeds_from(m1 * m2);
    std::vector<QMat> action = matrices;
    action.insert(action.end(), invs.begin(), invs.end());
    for (const std::vector<QVec>& seed : seeds) {
        std::set<std::vector<QVec>, RepLess> orbit{seed};
        std::vector<std::vector<QVec>> queue{seed};
        bool closed = true;
        for (std::size_t head = 0; head < queue.size() && closed; ++head) {
            const std::vector<QVec> space = queue[head];
            for (const QMat& m : action) {
                std::vector<QVec> image;
                image.reserve(space.size());
                for (const QVec& b : space) image.push_back(m.apply(b));
                std::vector<QVec> canon = canonical_subspace_basis(image);
                if (orbit.count(canon)) continue;
                bool too_tall = false;
                for (const QVec& b : canon)
                    if (qvec_height_exceeds(b)) too_tall = true;
                if (too_tall || static_cast<long>(orbit.size()) >= orbit_bound) {
                    closed = false;
                    break;
                }
                orbit.insert(canon);
                queue.push_back(std::move(canon));
            }
        }
        if (closed) {
            rep.level = Irreducibility::IRREDUCIBLE;
            rep.detail =
                "finite orbit of an eigen-subspace (size " + format_size(orbit.size()) + ")";
            return rep;
        }
    }

    // (c) Semi-invariant forms: a common eigenline of the symmetric-square
    // action (or its dual; for d=3 also the cubic action) flags a projective
    // structure the group preserves.
    std::string block_reason;
    {
        std::vector<QMat> reps, dual_reps;
        for (const QMat& m : matrices) {
            reps.push_back(sym2_rep(m));
            dual_reps.push_back(sym2_rep(m.transpose()));
        }
        const auto pairs = sym_param_pairs(d);
        auto judge = [&](const std::optional<InvariantLineCert>& line, const char* which) {
            if (!line || !block_reason.empty()) return;
            QMat q = sym_from_params(line->point.coords, d, pairs);
            bool blocks = false;
            if (d == 2)
                blocks = true; // a plane group fixing any quadric fixes a line pair or a circle
            else if (d == 3)
                blocks = is_definite(q); // definite: compact-type; indefinite quadrics admit
                                         // strongly irreducible isometry groups
            else
                blocks = true; // conservative for d >= 4
            if (blocks) block_reason = std::string("semi-invariant quadratic form (") + which + ")";
        };
        judge(common_invariant_line(reps), "primal");
        judge(common_invariant_line(dual_reps), "dual");
    }
    if (block_reason.empty() && d == 3) {
        std::vector<QMat> reps;
        for (const QMat& m : matrices) reps.push_back(sym3_rep(m));
        if (common_invariant_line(reps)) block_reason = "semi-invariant cubic form";
    }
    if (!block_reason.empty()) {
        rep.level = Irreducibility::IRREDUCIBLE;
        rep.detail = block_reason;
        return rep;
    }

    rep.level = Irreducibility::IRREDUCIBLE_STRONGLY;
    rep.detail = "full matrix algebra, no finite subspace orbit, no semi-invariant form";
    return rep;
}

RigidityVerdict measure_verdict(const GeneratorSet& gs, const Budgets& budgets,
                                std::vector<std::string> assumptions) {
    RigidityVerdict v;
    v.budgets = budgets;
    v.assumptions = std::move(assumptions);
    const std::vector<QMat>& mats = gs.matrices;
    const std::size_t d = gs.dim;
    if (d == 0) throw Error("zero-dimensional space has no projective dynamics");
    if (d == 1) {
        v.status = Verdict::NOT_RIGID;
        v.criterion = "projective-point-mass";
        v.certificate = FiniteLineOrbitCert{{make_projective(QVec{Rational(1)})}};
        v.tests_attempted.push_back("projective-point-mass: the projective space is one point");
        return v;
    }
    if (mats.empty()) {
        QVec e1(d, Rational(0));
        e1[0] = 1;
        v.status = Verdict::NOT_RIGID;
        v.criterion = "common-invariant-line";
        v.certificate = InvariantLineCert{make_projective(e1), {}};
        v.tests_attempted.push_back("common-invariant-line: empty generator set fixes every line");
        return v;
    }

    if (auto line = common_invariant_line(mats)) {
        v.status = Verdict::NOT_RIGID;
        v.criterion = "common-invariant-line";
        v.certificate = *line;
        v.tests_attempted.push_back("common-invariant-line: found");
        return v;
    }
    v.tests_attempted.push_back("common-invariant-line: none with rational eigenvalues");

    std::set<ProjectivePoint> starts;
    for (const QMat& m : mats) {
        for (const Rational& lam : rational_eigenvalues(m))
            for (const QVec& b : eigenspace(m, lam)) {
                if (starts.size() >= 32) break;
                starts.insert(make_projective(b));
            }
    }
    for (const ProjectivePoint& start : starts) {
        if (auto orbit = finite_line_orbit(mats, start, budgets.orbit_bound)) {
            v.status = Verdict::NOT_RIGID;
            v.criterion = "finite-line-orbit";
            v.tests_attempted.push_back("finite-line-orbit: found (size " +
                                        format_size(orbit->points.size()) + ")");
            v.certificate = std::move(*orbit);
            return v;
        }
    }
    v.tests_attempted.push_back("finite-line-orbit: none within bound " +
                                std::to_string(budgets.orbit_bound) + " from " +
                                format_size(starts.size()) + " eigenline starts");

    if (auto form = invariant_pd_form(mats)) {
        v.status = Verdict::NOT_RIGID;
        v.criterion = "invariant-pd-form";
        v.certificate = InvariantPDFormCert{*form};
        v.tests_attempted.push_back("invariant-pd-form: found");
        return v;
    }
    v.tests_attempted.push_back("invariant-pd-form: none found");

    auto prox = proximality_witness(mats, budgets.max_word_length, budgets.gap_tol);
    if (!prox) {
        v.tests_attempted.push_back("proximality: no certified witness up to word length " +
                                    std::to_string(budgets.max_word_length));
    } else {
        v.tests_attempted.push_back("proximality: witness at word length " +
                                    format_size(prox->word.size()));
        IrreducibilityReport irr =
            irreducibility_check(mats, budgets.max_word_length, budgets.orbit_bound);
        v.tests_attempted.push_back("irreducibility: " + irr.detail);
        if (irr.level == Irreducibility::IRREDUCIBLE_STRONGLY) {
            v.status = Verdict::RIGID;
            v.criterion = "proximal-strongly-irreducible";
            ProximalIrreducibleCert cert;
            cert.word = prox->word;
            cert.dominant_lo = prox->dominant_lo;
            cert.dominant_hi = prox->dominant_hi;
            cert.radius = prox->radius;
            cert.gap_lower = prox->gap_lower;
            cert.gap_path = prox->gap_path;
            cert.spanning_words = irr.spanning_words;
            v.certificate = std::move(cert);
            return v;
        }
    }

    v.status = Verdict::UNKNOWN;
    v.criterion = "undecided";
    return v;
}

RigidityVerdict nilmanifold_verdict(const GeneratorSet& gs, bool assume_zariski_dense,
                                    const Budgets& budgets) {
    if (gs.mode != AnalysisMode::Nilmanifold)
        throw ModeMismatch("nilmanifold verdict requires a nilmanifold generator set");
    const CoherentPartition partition = coherent_components(gs.algebra->graph());
    for (std::size_t i = 0; i < gs.generators.size(); ++i)
        if (!block_structure_check(gs.generators[i], partition))
            throw BlockStructureViolation("generator " + std::to_string(i + 1) +
                                          " is not block unimodular for the coherent partition");

    RigidityVerdict v;
    v.budgets = budgets;
    const std::vector<QVec> fixed = fixed_vectors_in_derived(gs);
    if (!fixed.empty()) {
        v.status = Verdict::NOT_RIGID;
        v.criterion = "derived-fixed-vector";
        v.certificate = FixedVectorCert{fixed.front()};
        v.tests_attempted.push_back("derived-fixed-vector: fixed space has dimension " +
                                    format_size(fixed.size()));
        return v;
    }
    if (assume_zariski_dense) {
        const std::size_t dw = gs.algebra->dim_w();
        QMat stacked(0, dw);
        if (!gs.generators.empty()) {
            std::vector<QMat> blocks;
            const QMat eye = QMat::identity(dw);
            for (const AffineGenerator& gen : gs.generators) blocks.push_back(gen.p - eye);
            stacked = vstack(blocks);
        }
        auto li = left_inverse(stacked);
        if (!li) throw Error("internal: trivial fixed space without a left inverse");
        v.status = Verdict::RIGID;
        v.criterion = "trivial-derived-fixed-space";
        v.certificate = TrivialDerivedFixedSpaceCert{*li};
        v.assumptions.push_back("zariski-dense");
        v.tests_attempted.push_back("derived-fixed-vector: fixed space is trivial");
        return v;
    }
    RigidityVerdict mv = measure_verdict(gs, budgets);
    mv.tests_attempted.insert(mv.tests_attempted.begin(),
                              "derived-fixed-vector: fixed space is trivial");
    return mv;
}

RigidityVerdict torus_verdict(const GeneratorSet& gs, const Budgets& budgets) {
    if (gs.mode != AnalysisMode::Torus)
        throw ModeMismatch("torus verdict requires a torus generator set");
    return measure_verdict(gs, budgets);
}

namespace {

bool verify_fixed_vector(const FixedVectorCert& cert, const GeneratorSet& gs) {
    if (gs.mode != AnalysisMode::Nilmanifold || !gs.algebra) return false;
    if (cert.vector.size() != gs.algebra->dim_w()) return false;
    if (qvec_is_zero(cert.vector)) return false;
    for (const AffineGenerator& gen : gs.generators)
        if (gen.p.apply(cert.vector) != cert.vector) return false;
    return true;
}

bool verify_trivial_derived(const TrivialDerivedFixedSpaceCert& cert, const GeneratorSet& gs) {
    if (gs.mode != AnalysisMode::Nilmanifold || !gs.algebra) return false;
    const std::size_t dw = gs.algebra->dim_w();
    QMat stacked(0, dw);
    if (!gs.generators.empty()) {
        std::vector<QMat> blocks;
        const QMat eye = QMat::identity(dw);
        for (const AffineGenerator& gen : gs.generators) blocks.push_back(gen.p - eye);
        stacked = vstack(blocks);
    }
    if (cert.left_inverse.rows != dw || cert.left_inverse.cols != stacked.rows) return false;
    return cert.left_inverse * stacked == QMat::identity(dw);
}

bool verify_invariant_line(const InvariantLineCert& cert, const GeneratorSet& gs) {
    if (cert.point.coords.size() != gs.dim) return false;
    if (qvec_is_zero(cert.point.coords)) return false;
    if (!(make_projective(cert.point.coords) == cert.point)) return false;
    if (cert.eigenvalues.size() != gs.matrices.size()) return false;
    for (std::size_t i = 0; i < gs.matrices.size(); ++i) {
        const QVec image = gs.matrices[i].apply(cert.point.coords);
        if (image != qvec_scale(cert.eigenvalues[i], cert.point.coords)) return false;
    }
    return true;
}

bool verify_finite_orbit(const FiniteLineOrbitCert& cert, const GeneratorSet& gs) {
    if (cert.points.empty()) return false;
    std::set<ProjectivePoint> pts;
    for (const ProjectivePoint& p : cert.points) {
        if (p.coords.size() != gs.dim) return false;
        if (qvec_is_zero(p.coords)) return false;
        if (!(make_projective(p.coords) == p)) return false;
        pts.insert(p);
    }
    const std::vector<QMat> action = with_inverses(gs.matrices);
    for (const ProjectivePoint& p : pts)
        for (const QMat& m : action)
            if (!pts.count(make_projective(m.apply(p.coords)))) return false;
    return true;
}

bool verify_pd_form(const InvariantPDFormCert& cert, const GeneratorSet& gs) {
    const QMat& x = cert.form;
    if (x.rows != gs.dim || x.cols != gs.dim) return false;
    if (!(x.transpose() == x)) return false;
    for (const QMat& m : gs.matrices)
        if (!(m.transpose() * x * m == x)) return false;
    return is_positive_definite(x);
}

bool verify_proximal(const ProximalIrreducibleCert& cert, const GeneratorSet& gs) {
    if (gs.matrices.empty() || gs.dim < 2) return false;
    for (int letter : cert.word)
        if (letter == 0 || static_cast<std::size_t>(std::abs(letter)) > gs.matrices.size())
            return false;
    const QMat m = word_matrix(gs.matrices, cert.word);
    const int d = static_cast<int>(gs.dim);
    const QPoly p = charpoly(m);

    // The dominant interval must isolate a single simple real root away from 0.
    if (cert.dominant_lo > cert.dominant_hi) return false;
    Rational a;
    if (cert.dominant_lo == cert.dominant_hi) {
        if (poly_eval(p, cert.dominant_lo) != 0) return false;
        a = abs_of(cert.dominant_lo);
    } else {
        const Rational flo = poly_eval(p, cert.dominant_lo);
        const Rational fhi = poly_eval(p, cert.dominant_hi);
        if (flo == 0 || fhi == 0) return false;
        if ((flo > 0) == (fhi > 0)) return false;
        const QPoly sf = poly_squarefree_part(p);
        const auto chain = sturm_chain(sf);
        if (count_roots_half_open(chain, cert.dominant_lo, cert.dominant_hi) != 1) return false;
        if (cert.dominant_lo >= 0)
            a = cert.dominant_lo;
        else if (cert.dominant_hi <= 0)
            a = -cert.dominant_hi;
        else
            return false; // interval straddles 0: no modulus bound
    }
    if (a <= 0) return false;
    if (cert.radius <= 0 || cert.radius >= a) return false;
    if (cert.gap_lower > a / cert.radius) return false;
    if (cert.gap_lower <= 1) return false;
    auto cnt = count_roots_in_disk(p, cert.radius);
    if (!cnt || *cnt != d - 1) return false;

    // Spanning words must reach the full matrix algebra.
    if (cert.spanning_words.empty()) return false;
    std::vector<QVec> rows;
    for (const std::vector<int>& w : cert.spanning_words) {
        for (int letter : w)
            if (letter == 0 || static_cast<std::size_t>(std::abs(letter)) > gs.matrices.size())
                return false;
        rows.push_back(word_matrix(gs.matrices, w).a);
    }
    return rank(QMat::from_rows(rows)) == gs.dim * gs.dim;
}

} // namespace

bool verify_certificate(const Certificate& cert, const GeneratorSet& gs) {
    struct Visitor {
        const GeneratorSet& gs;
        bool operator()(const FixedVectorCert& c) const { return verify_fixed_vector(c, gs); }
        bool operator()(const TrivialDerivedFixedSpaceCert& c) const {
            return verify_trivial_derived(c, gs);
        }
        bool operator()(const InvariantLineCert& c) const { return verify_invariant_line(c, gs); }
        bool operator()(const FiniteLineOrbitCert& c) const { return verify_finite_orbit(c, gs); }
        bool operator()(const InvariantPDFormCert& c) const { return verify_pd_form(c, gs); }
        bool operator()(const ProximalIrreducibleCert& c) const { return verify_proximal(c, gs); }
    };
    try {
        return std::visit(Visitor{gs}, cert);
    } catch (const std::exception&) {
        return false;
    }
}

} // namespace nilrigid
