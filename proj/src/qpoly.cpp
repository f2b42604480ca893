#include "nilrigid/qpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilrigid {

int poly_degree(const QPoly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (p[i] != 0) return static_cast<int>(i);
    return -1;
}

void poly_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly poly_add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_trim(r);
    return r;
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    poly_trim(r);
    return r;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (poly_degree(a) < 0 || poly_degree(b) < 0) return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) r[i + j] += a[i] * b[j];
    }
    poly_trim(r);
    return r;
}

QPoly poly_scale(const Rational& c, const QPoly& p) {
    if (c == 0) return {};
    QPoly r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = c * p[i];
    return r;
}

Rational poly_eval(const QPoly& p, const Rational& x) {
    Rational acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

QPoly poly_derivative(const QPoly& p) {
    if (p.size() <= 1) return {};
    QPoly r(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = Rational(static_cast<long>(i)) * p[i];
    poly_trim(r);
    return r;
}

std::pair<QPoly, QPoly> poly_divmod(const QPoly& num, const QPoly& den) {
    int dd = poly_degree(den);
    if (dd < 0) throw std::invalid_argument("poly_divmod: division by zero polynomial");
    QPoly rem = num;
    poly_trim(rem);
    int dn = poly_degree(rem);
    if (dn < dd) return {{}, rem};
    QPoly quot(static_cast<std::size_t>(dn - dd + 1), Rational(0));
    const Rational& lead = den[static_cast<std::size_t>(dd)];
    while ((dn = poly_degree(rem)) >= dd) {
        Rational f = rem[static_cast<std::size_t>(dn)] / lead;
        quot[static_cast<std::size_t>(dn - dd)] = f;
        for (int i = 0; i <= dd; ++i)
            rem[static_cast<std::size_t>(dn - dd + i)] -= f * den[static_cast<std::size_t>(i)];
        poly_trim(rem);
        if (rem.empty()) break;
    }
    poly_trim(quot);
    return {quot, rem};
}

QPoly poly_gcd(QPoly a, QPoly b) {
    poly_trim(a);
    poly_trim(b);
    while (poly_degree(b) >= 0) {
        QPoly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    int d = poly_degree(a);
    if (d < 0) return {};
    return poly_scale(Rational(1) / a[static_cast<std::size_t>(d)], a);
}

QPoly poly_squarefree_part(const QPoly& p) {
    QPoly q = p;
    poly_trim(q);
    int d = poly_degree(q);
    if (d <= 0) return q;
    QPoly g = poly_gcd(q, poly_derivative(q));
    QPoly sf = poly_divmod(q, g).first;
    int sd = poly_degree(sf);
    return poly_scale(Rational(1) / sf[static_cast<std::size_t>(sd)], sf);
}

QPoly poly_primitive_integer(const QPoly& p) {
    QPoly q = p;
    poly_trim(q);
    if (q.empty()) return {};
    BigInt den_lcm = 1;
    for (const auto& c : q) den_lcm = lcm(den_lcm, denominator(c));
    BigInt num_gcd = 0;
    std::vector<BigInt> ints(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        ints[i] = numerator(q[i] * Rational(den_lcm));
        num_gcd = gcd(num_gcd, ints[i]);
    }
    if (num_gcd == 0) return {};
    if (ints.back() < 0) num_gcd = -num_gcd;
    QPoly r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = Rational(ints[i] / num_gcd);
    return r;
}

std::vector<QPoly> sturm_chain(const QPoly& squarefree) {
    std::vector<QPoly> chain;
    QPoly f0 = squarefree;
    poly_trim(f0);
    if (f0.empty()) return chain;
    chain.push_back(f0);
    QPoly f1 = poly_derivative(f0);
    while (poly_degree(f1) >= 0) {
        chain.push_back(f1);
        QPoly r = poly_divmod(chain[chain.size() - 2], f1).second;
        f1 = poly_scale(Rational(-1), r);
    }
    return chain;
}

int sturm_variations(const std::vector<QPoly>& chain, const Rational& x) {
    int variations = 0;
    int prev = 0;
    for (const auto& f : chain) {
        int s = sign_of(poly_eval(f, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++variations;
        prev = s;
    }
    return variations;
}

int count_roots_half_open(const std::vector<QPoly>& chain, const Rational& a, const Rational& b) {
    if (chain.empty()) return 0;
    return sturm_variations(chain, a) - sturm_variations(chain, b);
}

Rational cauchy_bound(const QPoly& p) {
    QPoly q = p;
    poly_trim(q);
    int d = poly_degree(q);
    if (d <= 0) return 1;
    Rational lead = abs_of(q[static_cast<std::size_t>(d)]);
    Rational m = 0;
    for (int i = 0; i < d; ++i) {
        Rational t = abs_of(q[static_cast<std::size_t>(i)]) / lead;
        if (t > m) m = t;
    }
    return m + 2;
}

namespace {

// Isolation worker: all roots of the squarefree polynomial are simple, and
// total root counts come from the Sturm chain over half-open intervals.
void isolate_rec(const QPoly& sf, const std::vector<QPoly>& chain, Rational lo, Rational hi,
                 int count, std::vector<RootInterval>& out) {
    if (count == 0) return;
    if (count > 1) {
        Rational mid = (lo + hi) / 2;
        int left = count_roots_half_open(chain, lo, mid);
        isolate_rec(sf, chain, lo, mid, left, out);
        isolate_rec(sf, chain, mid, hi, count - left, out);
        return;
    }
    // Exactly one root r in (lo, hi].
    if (poly_eval(sf, hi) == 0) {
        out.push_back({hi, hi, true});
        return;
    }
    // Make sure the left endpoint is not itself a root (it can be, since the
    // interval is open on the left); shrink until both endpoint signs are set.
    while (poly_eval(sf, lo) == 0) {
        Rational mid = (lo + hi) / 2;
        if (poly_eval(sf, mid) == 0) {
            out.push_back({mid, mid, true});
            return;
        }
        if (count_roots_half_open(chain, mid, hi) == 1)
            lo = mid;
        else
            hi = mid;
    }
    out.push_back({lo, hi, false});
}

} // namespace

std::vector<RootInterval> isolate_real_roots(const QPoly& p) {
    QPoly sf = poly_squarefree_part(p);
    if (poly_degree(sf) <= 0) return {};
    std::vector<QPoly> chain = sturm_chain(sf);
    Rational bound = cauchy_bound(sf);
    int total = count_roots_half_open(chain, -bound, bound);
    std::vector<RootInterval> out;
    isolate_rec(sf, chain, -bound, bound, total, out);
    std::sort(out.begin(), out.end(),
              [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

RootInterval refine_interval(const QPoly& squarefree, RootInterval iv, const Rational& width) {
    if (iv.exact) return iv;
    int slo = sign_of(poly_eval(squarefree, iv.lo));
    while (iv.hi - iv.lo > width) {
        Rational mid = (iv.lo + iv.hi) / 2;
        int sm = sign_of(poly_eval(squarefree, mid));
        if (sm == 0) return {mid, mid, true};
        if (sm == slo)
            iv.lo = mid;
        else
            iv.hi = mid;
    }
    return iv;
}

Rational simplest_rational_in(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw std::invalid_argument("simplest_rational_in: empty interval");
    if (lo <= 0 && 0 <= hi) return 0;
    if (lo > 0) {
        if (is_integer(lo)) return lo;
        Rational fl = rational_floor(lo);
        if (fl + 1 <= hi) return fl + 1; // smallest integer in range
        // Both endpoints share the integer part fl; recurse on reciprocals.
        Rational inner = simplest_rational_in(Rational(1) / (hi - fl), Rational(1) / (lo - fl));
        return fl + Rational(1) / inner;
    }
    return -simplest_rational_in(-hi, -lo);
}

std::vector<Rational> rational_roots(const QPoly& p) {
    QPoly P = poly_primitive_integer(poly_squarefree_part(p));
    int d = poly_degree(P);
    std::vector<Rational> out;
    if (d <= 0) return out;
    if (P[0] == 0) out.push_back(0); // factor x
    // A rational root in lowest terms has denominator dividing the leading
    // coefficient, so intervals narrower than 1/(2*lead^2) contain at most
    // one candidate and the minimal-denominator rational finds it.
    Rational lead_abs = abs_of(P[static_cast<std::size_t>(d)]);
    Rational target_width = Rational(1) / (2 * lead_abs * lead_abs);
    for (const auto& iv0 : isolate_real_roots(P)) {
        RootInterval iv = refine_interval(P, iv0, target_width);
        if (iv.exact) {
            if (iv.lo != 0) out.push_back(iv.lo);
            continue;
        }
        Rational cand = simplest_rational_in(iv.lo, iv.hi);
        if (cand != 0 && poly_eval(P, cand) == 0) out.push_back(cand);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int root_multiplicity(const QPoly& p, const Rational& r) {
    QPoly q = p;
    poly_trim(q);
    if (q.empty()) return 0;
    QPoly lin = {-r, 1};
    int mult = 0;
    while (poly_eval(q, r) == 0) {
        q = poly_divmod(q, lin).first;
        ++mult;
        if (q.empty()) break;
    }
    return mult;
}

bool is_simple_root_in(const QPoly& p, const RootInterval& iv) {
    if (iv.exact) return root_multiplicity(p, iv.lo) == 1;
    QPoly g = poly_gcd(p, poly_derivative(p));
    if (poly_degree(g) <= 0) return true; // p squarefree: every root simple
    // Multiple roots of p are exactly the roots of g; the isolated root is
    // simple iff g has no root in the (closed) interval. The endpoints are
    // not roots of p, so the half-open Sturm count settles the closed case.
    std::vector<QPoly> chain = sturm_chain(poly_squarefree_part(g));
    return count_roots_half_open(chain, iv.lo, iv.hi) == 0;
}

std::optional<int> count_roots_in_disk(const QPoly& p, const Rational& radius) {
    if (radius <= 0) throw std::invalid_argument("count_roots_in_disk: radius must be positive");
    QPoly q = p;
    poly_trim(q);
    int n = poly_degree(q);
    if (n < 0) throw std::invalid_argument("count_roots_in_disk: zero polynomial");
    if (n == 0) return 0;
    // Scale so the question becomes "roots of f in the open unit disk".
    std::vector<Rational> f(q.begin(), q.end());
    Rational pw = 1;
    for (int k = 0; k <= n; ++k) {
        f[static_cast<std::size_t>(k)] *= pw;
        pw *= radius;
    }
    // Schur-Cohn recursion on formal degrees n, n-1, ..., 1. With every
    // delta nonzero, no root lies on the unit circle and the number of
    // roots inside equals the number of negative partial products.
    int negatives = 0;
    Rational partial = 1;
    for (int m = n; m >= 1; --m) {
        const Rational a0 = f[0];
        const Rational am = f[static_cast<std::size_t>(m)];
        Rational delta = a0 * a0 - am * am;
        if (delta == 0) return std::nullopt;
        partial *= delta;
        if (partial < 0) ++negatives;
        std::vector<Rational> g(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j)
            g[static_cast<std::size_t>(j)] =
                a0 * f[static_cast<std::size_t>(j)] - am * f[static_cast<std::size_t>(m - j)];
        f = std::move(g);
    }
    return negatives;
}

} // namespace nilrigid
