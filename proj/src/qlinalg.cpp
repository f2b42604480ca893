#include "nilrigid/qlinalg.hpp"

#include <stdexcept>

namespace nilrigid {

QVec qvec_add(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("qvec_add: size mismatch");
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

QVec qvec_sub(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("qvec_sub: size mismatch");
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

QVec qvec_scale(const Rational& c, const QVec& a) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

bool qvec_is_zero(const QVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

QMat QMat::identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMat QMat::from_rows(const std::vector<QVec>& rows) {
    QMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols) throw std::invalid_argument("from_rows: ragged rows");
        for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

QMat QMat::operator*(const QMat& o) const {
    if (cols != o.rows) throw std::invalid_argument("QMat::operator*: shape mismatch");
    QMat r(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            const Rational& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < o.cols; ++j) {
                const Rational& bkj = o.at(k, j);
                if (bkj != 0) r.at(i, j) += aik * bkj;
            }
        }
    return r;
}

QMat QMat::operator+(const QMat& o) const {
    if (rows != o.rows || cols != o.cols) throw std::invalid_argument("QMat::operator+: shape mismatch");
    QMat r(rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
    return r;
}

QMat QMat::operator-(const QMat& o) const {
    if (rows != o.rows || cols != o.cols) throw std::invalid_argument("QMat::operator-: shape mismatch");
    QMat r(rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
    return r;
}

QVec QMat::apply(const QVec& v) const {
    if (v.size() != cols) throw std::invalid_argument("QMat::apply: size mismatch");
    QVec r(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < cols; ++j)
            if (at(i, j) != 0 && v[j] != 0) s += at(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

QMat QMat::transpose() const {
    QMat r(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

QVec QMat::row(std::size_t i) const {
    QVec r(cols);
    for (std::size_t j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
}

QVec QMat::col(std::size_t j) const {
    QVec r(rows);
    for (std::size_t i = 0; i < rows; ++i) r[i] = at(i, j);
    return r;
}

bool QMat::is_zero() const {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

QMat QMat::scaled(const Rational& c) const {
    QMat r(rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = c * a[i];
    return r;
}

QMat vstack(const std::vector<QMat>& blocks) {
    if (blocks.empty()) return QMat();
    std::size_t total = 0;
    for (const auto& b : blocks) {
        if (b.cols != blocks[0].cols) throw std::invalid_argument("vstack: column mismatch");
        total += b.rows;
    }
    QMat r(total, blocks[0].cols);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows; ++i)
            for (std::size_t j = 0; j < b.cols; ++j) r.at(off + i, j) = b.at(i, j);
        off += b.rows;
    }
    return r;
}

QMat rref(QMat m, std::vector<std::size_t>* pivots) {
    if (pivots) pivots->clear();
    std::size_t lead = 0;
    for (std::size_t col = 0; col < m.cols && lead < m.rows; ++col) {
        std::size_t piv = lead;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != lead)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(lead, j));
        Rational inv = Rational(1) / m.at(lead, col);
        for (std::size_t j = col; j < m.cols; ++j) m.at(lead, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == lead || m.at(i, col) == 0) continue;
            Rational f = m.at(i, col);
            for (std::size_t j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(lead, j);
        }
        if (pivots) pivots->push_back(col);
        ++lead;
    }
    return m;
}

std::size_t rank(const QMat& m) {
    std::vector<std::size_t> piv;
    rref(m, &piv);
    return piv.size();
}

std::vector<QVec> nullspace(const QMat& m) {
    std::vector<std::size_t> piv;
    QMat r = rref(m, &piv);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (std::size_t free_col = 0; free_col < m.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        QVec v(m.cols, Rational(0));
        v[free_col] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k)
            v[piv[k]] = -r.at(k, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QMat> inverse(const QMat& m) {
    if (m.rows != m.cols) return std::nullopt;
    std::size_t n = m.rows;
    QMat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<std::size_t> piv;
    QMat r = rref(std::move(aug), &piv);
    if (piv.size() != n || piv.back() != n - 1) return std::nullopt;
    QMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = r.at(i, n + j);
    return inv;
}

Rational det(QMat m) {
    if (m.rows != m.cols) throw std::invalid_argument("det: not square");
    std::size_t n = m.rows;
    Rational d = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m.at(piv, col) == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            d = -d;
        }
        d *= m.at(col, col);
        Rational inv = Rational(1) / m.at(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m.at(i, col) == 0) continue;
            Rational f = m.at(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return d;
}

std::optional<QVec> solve(const QMat& m, const QVec& b) {
    if (b.size() != m.rows) throw std::invalid_argument("solve: size mismatch");
    QMat aug(m.rows, m.cols + 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    std::vector<std::size_t> piv;
    QMat r = rref(std::move(aug), &piv);
    // inconsistent iff a pivot lands in the augmented column
    if (!piv.empty() && piv.back() == m.cols) return std::nullopt;
    QVec x(m.cols, Rational(0));
    for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = r.at(k, m.cols);
    return x;
}

std::vector<Rational> charpoly(const QMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("charpoly: not square");
    std::size_t n = m.rows;
    // Faddeev-LeVerrier: exact over Q, no pivoting concerns.
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    QMat mk = QMat::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = m * mk;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += mk.at(i, i);
        Rational ck = -tr / Rational(static_cast<long>(k));
        c[n - k] = ck;
        for (std::size_t i = 0; i < n; ++i) mk.at(i, i) += ck;
    }
    return c;
}

std::vector<QVec> canonical_subspace_basis(const std::vector<QVec>& spanning) {
    if (spanning.empty()) return {};
    QMat m = QMat::from_rows(spanning);
    std::vector<std::size_t> piv;
    QMat r = rref(std::move(m), &piv);
    std::vector<QVec> basis;
    for (std::size_t i = 0; i < piv.size(); ++i) basis.push_back(r.row(i));
    return basis;
}

std::optional<QMat> left_inverse(const QMat& m) {
    std::vector<std::size_t> piv;
    // Row-reduce [m | I] and read the transform that produces the identity block.
    QMat aug(m.rows, m.cols + m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols + i) = 1;
    }
    QMat r = rref(std::move(aug), &piv);
    std::size_t cnt = 0;
    for (auto c : piv)
        if (c < m.cols) ++cnt;
    if (cnt != m.cols) return std::nullopt; // not full column rank
    QMat li(m.cols, m.rows);
    for (std::size_t k = 0; k < m.cols; ++k)
        for (std::size_t j = 0; j < m.rows; ++j) li.at(k, j) = r.at(k, m.cols + j);
    return li;
}

} // namespace nilrigid
