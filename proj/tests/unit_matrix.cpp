#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torsq/matrix.hpp"
#include "torsq/rational.hpp"

using namespace torsq;

namespace {
uint64_t st = 12345;
long long rnd(int lo, int hi) {
    st ^= st << 13;
    st ^= st >> 7;
    st ^= st << 17;
    return lo + static_cast<long long>(st % static_cast<uint64_t>(hi - lo + 1));
}
Matrix<Rational> rnd_mat(size_t n) {
    Matrix<Rational> m(n, n, Rational(0));
    for (auto& x : m.a) x = Rational(rnd(-4, 4));
    return m;
}
// cofactor-expansion determinant as an independent oracle
Rational det_cofactor(const Matrix<Rational>& m) {
    size_t n = m.rows;
    if (n == 1) return m.at(0, 0);
    Rational acc(0);
    int sign = 1;
    for (size_t j = 0; j < n; ++j) {
        Matrix<Rational> minor(n - 1, n - 1, Rational(0));
        for (size_t r = 1; r < n; ++r) {
            size_t cc = 0;
            for (size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        Rational term = m.at(0, j) * det_cofactor(minor);
        acc = sign > 0 ? acc + term : acc - term;
        sign = -sign;
    }
    return acc;
}
}  // namespace

TEST_CASE("determinant matches cofactor expansion") {
    for (int trial = 0; trial < 60; ++trial) {
        size_t n = 1 + static_cast<size_t>(rnd(0, 4));
        auto m = rnd_mat(n);
        CHECK(det(m) == det_cofactor(m));
    }
}

TEST_CASE("inverse and solve") {
    for (int trial = 0; trial < 40; ++trial) {
        size_t n = 1 + static_cast<size_t>(rnd(0, 4));
        auto m = rnd_mat(n);
        if (det(m).is_zero()) continue;
        auto mi = inverse(m);
        CHECK(m * mi == Matrix<Rational>::identity(n, Rational(1)));
        std::vector<Rational> b(n), x;
        for (auto& v : b) v = Rational(rnd(-9, 9));
        REQUIRE(solve(m, b, x));
        CHECK(m.apply(x) == b);
    }
}

TEST_CASE("kernel spans the null space") {
    for (int trial = 0; trial < 40; ++trial) {
        size_t n = 2 + static_cast<size_t>(rnd(0, 3));
        auto m = rnd_mat(n);
        // force rank deficiency: zero out a row combination
        for (size_t j = 0; j < n; ++j) m.at(n - 1, j) = m.at(0, j) + m.at(1 % n, j);
        auto ker = right_kernel(m);
        CHECK(ker.size() == n - rank(m));
        for (auto& v : ker) {
            auto mv = m.apply(v);
            for (auto& c : mv) CHECK(c.is_zero());
        }
    }
}

TEST_CASE("Berkowitz charpoly matches determinant evaluations") {
    for (int trial = 0; trial < 25; ++trial) {
        size_t n = 1 + static_cast<size_t>(rnd(0, 3));
        auto m = rnd_mat(n);
        auto chi = charpoly(m);  // det(lambda I - A)
        REQUIRE(chi.size() == n + 1);
        CHECK(chi[n].is_one());
        for (long long lam = -2; lam <= 2; ++lam) {
            Matrix<Rational> lm = Matrix<Rational>::identity(n, Rational(1)) * Rational(lam) - m;
            Rational expect = det(lm);
            Rational got(0);
            for (size_t i = chi.size(); i-- > 0;) got = got * Rational(lam) + chi[i];
            CHECK(got == expect);
        }
        // det(1 - tA) reversal
        auto p = det_one_minus_t(m);
        Matrix<Rational> one_minus = Matrix<Rational>::identity(n, Rational(1)) - m;
        Rational at1(0);
        for (size_t i = p.size(); i-- > 0;) at1 = at1 * Rational(1) + p[i];
        CHECK(at1 == det(one_minus));
    }
}
