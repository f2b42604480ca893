#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nilrigid/qlinalg.hpp"

using namespace nilrigid;

namespace {

QMat random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int span = 5) {
    QMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            long num = static_cast<long>(rng() % (2 * span + 1)) - span;
            long den = 1 + static_cast<long>(rng() % 3);
            m.at(i, j) = Rational(num, den);
        }
    return m;
}

} // namespace

TEST_CASE("identity and multiplication basics") {
    QMat i3 = QMat::identity(3);
    QMat m = QMat::from_rows({{Rational(1), Rational(2), Rational(3)},
                              {Rational(0), Rational(1), Rational(4)},
                              {Rational(5), Rational(6), Rational(0)}});
    CHECK(m * i3 == m);
    CHECK(i3 * m == m);
    CHECK((m - m).is_zero());
    CHECK(m + QMat(3, 3) == m);
    CHECK(m.transpose().transpose() == m);
}

TEST_CASE("rref produces pivots and idempotence") {
    QMat m = QMat::from_rows({{Rational(1), Rational(2), Rational(3)},
                              {Rational(2), Rational(4), Rational(6)},
                              {Rational(1), Rational(0), Rational(1)}});
    std::vector<std::size_t> piv;
    QMat r = rref(m, &piv);
    CHECK(piv.size() == 2);
    CHECK(rank(m) == 2);
    CHECK(rref(r) == r);
}

TEST_CASE("nullspace vectors are in the kernel and canonical") {
    QMat m = QMat::from_rows({{Rational(1), Rational(2), Rational(3)},
                              {Rational(2), Rational(4), Rational(6)}});
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 2);
    for (const auto& v : ns) CHECK(qvec_is_zero(m.apply(v)));
    // canonical: repeated computation from a different spanning presentation agrees
    QMat m2 = QMat::from_rows({{Rational(3), Rational(6), Rational(9)},
                               {Rational(1), Rational(2), Rational(3)}});
    CHECK(nullspace(m2) == ns);
}

TEST_CASE("inverse round-trips on random invertible matrices") {
    std::mt19937_64 rng(7);
    int done = 0;
    while (done < 25) {
        QMat m = random_matrix(rng, 4, 4);
        auto inv = inverse(m);
        if (!inv) continue;
        ++done;
        CHECK(m * *inv == QMat::identity(4));
        CHECK(*inv * m == QMat::identity(4));
    }
    CHECK(!inverse(QMat(3, 3)).has_value());
}

TEST_CASE("determinant is multiplicative and detects singularity") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        QMat a = random_matrix(rng, 3, 3);
        QMat b = random_matrix(rng, 3, 3);
        CHECK(det(a * b) == det(a) * det(b));
    }
    QMat sing = QMat::from_rows({{Rational(1), Rational(2)}, {Rational(2), Rational(4)}});
    CHECK(det(sing) == 0);
    CHECK(!inverse(sing).has_value());
}

TEST_CASE("solve finds solutions exactly when consistent") {
    QMat m = QMat::from_rows({{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}});
    QVec b{Rational(3), Rational(1)};
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == b);

    QMat rank1 = QMat::from_rows({{Rational(1), Rational(2)}, {Rational(2), Rational(4)}});
    CHECK(!solve(rank1, QVec{Rational(1), Rational(1)}).has_value());
    auto y = solve(rank1, QVec{Rational(1), Rational(2)});
    REQUIRE(y.has_value());
    CHECK(rank1.apply(*y) == QVec{Rational(1), Rational(2)});
}

TEST_CASE("charpoly matches known cases and Cayley-Hamilton holds") {
    QMat m = QMat::from_rows({{Rational(2), Rational(1)}, {Rational(1), Rational(1)}});
    auto p = charpoly(m); // x^2 - 3x + 1
    REQUIRE(p.size() == 3);
    CHECK(p[0] == 1);
    CHECK(p[1] == -3);
    CHECK(p[2] == 1);

    std::mt19937_64 rng(13);
    for (int t = 0; t < 10; ++t) {
        QMat a = random_matrix(rng, 4, 4, 3);
        auto cp = charpoly(a);
        REQUIRE(cp.size() == 5);
        CHECK(cp[4] == 1);
        // evaluate p(a) by Horner
        QMat acc(4, 4);
        for (std::size_t k = cp.size(); k-- > 0;) {
            acc = acc * a;
            for (std::size_t i = 0; i < 4; ++i) acc.at(i, i) += cp[k];
        }
        CHECK(acc.is_zero());
        // constant term is det(-a) = det(a) * (-1)^n
        CHECK(cp[0] == det(a));
    }
}

TEST_CASE("canonical_subspace_basis is presentation independent") {
    std::vector<QVec> a{{Rational(1), Rational(2), Rational(0)}, {Rational(0), Rational(0), Rational(1)}};
    std::vector<QVec> b{{Rational(2), Rational(4), Rational(6)}, {Rational(1), Rational(2), Rational(1)}};
    CHECK(canonical_subspace_basis(a) == canonical_subspace_basis(b));
    CHECK(canonical_subspace_basis({QVec{Rational(0), Rational(0)}}).empty());
}

TEST_CASE("vstack stacks blocks") {
    QMat a = QMat::identity(2);
    QMat b(1, 2);
    b.at(0, 0) = 5;
    QMat s = vstack({a, b});
    CHECK(s.rows == 3);
    CHECK(s.at(2, 0) == 5);
}

TEST_CASE("left_inverse exists exactly for full column rank") {
    QMat tall = QMat::from_rows({{Rational(1), Rational(0)},
                                 {Rational(1), Rational(1)},
                                 {Rational(0), Rational(2)}});
    auto li = left_inverse(tall);
    REQUIRE(li.has_value());
    CHECK(*li * tall == QMat::identity(2));

    QMat deficient = QMat::from_rows({{Rational(1), Rational(2)},
                                      {Rational(2), Rational(4)},
                                      {Rational(3), Rational(6)}});
    CHECK(!left_inverse(deficient).has_value());
}
