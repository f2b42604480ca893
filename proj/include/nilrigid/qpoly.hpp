#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nilrigid/rational.hpp"

namespace nilrigid {

// Dense univariate polynomial over Q, coefficients ordered low-to-high.
// The zero polynomial is the empty vector (or all-zero coefficients).
using QPoly = std::vector<Rational>;

int poly_degree(const QPoly& p); // -1 for the zero polynomial
void poly_trim(QPoly& p);
QPoly poly_add(const QPoly& a, const QPoly& b);
QPoly poly_sub(const QPoly& a, const QPoly& b);
QPoly poly_mul(const QPoly& a, const QPoly& b);
QPoly poly_scale(const Rational& c, const QPoly& p);
Rational poly_eval(const QPoly& p, const Rational& x);
QPoly poly_derivative(const QPoly& p);

// Euclidean division; divisor must be nonzero.
std::pair<QPoly, QPoly> poly_divmod(const QPoly& num, const QPoly& den);

// Monic gcd (1 for coprime inputs, 0 only if both inputs are 0).
QPoly poly_gcd(QPoly a, QPoly b);

// p with repeated factors collapsed: p / gcd(p, p'), made monic.
QPoly poly_squarefree_part(const QPoly& p);

// Integer-coefficient polynomial with the same roots: denominators cleared,
// content divided out, leading coefficient positive.
QPoly poly_primitive_integer(const QPoly& p);

struct RootInterval {
    Rational lo;
    Rational hi;
    bool exact = false; // exact => lo == hi is the root; otherwise the root
                        // lies strictly inside (lo, hi) and the polynomial
                        // changes sign between the endpoints
};

// Sturm machinery. The chain must be built from a squarefree polynomial.
std::vector<QPoly> sturm_chain(const QPoly& squarefree);
int sturm_variations(const std::vector<QPoly>& chain, const Rational& x);
// Number of distinct roots in the half-open interval (a, b].
int count_roots_half_open(const std::vector<QPoly>& chain, const Rational& a, const Rational& b);

// Strict upper bound on the modulus of every complex root.
Rational cauchy_bound(const QPoly& p);

// Isolating intervals for the distinct real roots of p, sorted ascending.
std::vector<RootInterval> isolate_real_roots(const QPoly& p);

// Shrink a (squarefree-polynomial) isolating interval by bisection until its
// width is at most `width`. May discover the root exactly.
RootInterval refine_interval(const QPoly& squarefree, RootInterval iv, const Rational& width);

// The unique minimal-denominator rational in the closed interval [lo, hi].
Rational simplest_rational_in(const Rational& lo, const Rational& hi);

// All distinct rational roots of p, ascending. Exact.
std::vector<Rational> rational_roots(const QPoly& p);

// Multiplicity of r as a root of p (0 if not a root).
int root_multiplicity(const QPoly& p, const Rational& r);

// True when the single root of p inside the isolating interval is simple in p
// itself (the interval must isolate a root of p's squarefree part).
bool is_simple_root_in(const QPoly& p, const RootInterval& iv);

// Number of complex roots (with multiplicity) in the open disk |z| < radius,
// by the Schur-Cohn test. Returns nullopt when the test degenerates at this
// radius (callers should perturb the radius and retry); a definite answer
// also certifies that no root lies on the circle |z| = radius.
std::optional<int> count_roots_in_disk(const QPoly& p, const Rational& radius);

} // namespace nilrigid
