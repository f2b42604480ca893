#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nilrigid/rational.hpp"

namespace nilrigid {

using QVec = std::vector<Rational>;

QVec qvec_add(const QVec& a, const QVec& b);
QVec qvec_sub(const QVec& a, const QVec& b);
QVec qvec_scale(const Rational& c, const QVec& a);
bool qvec_is_zero(const QVec& a);

// Lexicographic extension of the representation order on Rational.
inline int rep_compare(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (const int c = rep_compare(a[i], b[i]); c != 0) return c;
    return 0;
}

// Comparator for containers keyed by exact coordinate data (single vectors
// or basis lists).  Orders by representation, which is all a key needs and
// stays cheap where numeric comparison of near-equal values does not.
struct RepLess {
    bool operator()(const QVec& a, const QVec& b) const { return rep_compare(a, b) < 0; }
    bool operator()(const std::vector<QVec>& a, const std::vector<QVec>& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (const int c = rep_compare(a[i], b[i]); c != 0) return c < 0;
        return false;
    }
};

// Dense row-major matrix over the rationals. Sized for exact certificate work,
// not for bulk numerics; dimensions here stay in the tens.
struct QMat {
    std::size_t rows = 0, cols = 0;
    std::vector<Rational> a;

    QMat() = default;
    QMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Rational& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static QMat identity(std::size_t n);
    static QMat zero(std::size_t r, std::size_t c) { return QMat(r, c); }
    static QMat from_rows(const std::vector<QVec>& rows);

    QMat operator*(const QMat& o) const;
    QMat operator+(const QMat& o) const;
    QMat operator-(const QMat& o) const;
    bool operator==(const QMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator!=(const QMat& o) const { return !(*this == o); }

    QVec apply(const QVec& v) const;       // matrix * column vector
    QMat transpose() const;
    QVec row(std::size_t i) const;
    QVec col(std::size_t j) const;
    bool is_zero() const;
    QMat scaled(const Rational& c) const;
};

// Vertically stacks blocks with a common column count.
QMat vstack(const std::vector<QMat>& blocks);

// Reduced row echelon form; returns pivot column indices through `pivots` if given.
QMat rref(QMat m, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const QMat& m);

// Basis of {x : m x = 0}; canonical (from RREF free columns).
std::vector<QVec> nullspace(const QMat& m);

std::optional<QMat> inverse(const QMat& m);

Rational det(QMat m);

// One solution of m x = b, if any.
std::optional<QVec> solve(const QMat& m, const QVec& b);

// Monic characteristic polynomial det(xI - m), coefficients low-to-high degree.
std::vector<Rational> charpoly(const QMat& m);

// Canonical basis of a subspace: RREF rows of the spanning set, zero rows dropped.
// Equal subspaces produce identical outputs, so this doubles as a dedup key.
std::vector<QVec> canonical_subspace_basis(const std::vector<QVec>& spanning);

// Left inverse C with C m = I (m must have full column rank), if one exists.
std::optional<QMat> left_inverse(const QMat& m);

} // namespace nilrigid
