#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torsq/squareclass.hpp"

using namespace torsq;

TEST_CASE("rational classes use the signed squarefree kernel") {
    CHECK(sq_classify(Rational(1)).is_trivial());
    CHECK(sq_classify(Rational(4)).is_trivial());
    CHECK(sq_classify(Rational(18)).rational_rep() == BigInt(2));
    CHECK(sq_classify(Rational(-18)).rational_rep() == BigInt(-2));
    CHECK(sq_classify(Rational(BigInt(8), BigInt(3))).rational_rep() == BigInt(6));
    // sq(x y) = sq(x) sq(y); sq(x^2) trivial
    Rational xs[] = {Rational(7), Rational(BigInt(-5), BigInt(12)), Rational(45), Rational(BigInt(2), BigInt(49))};
    for (auto& x : xs)
        for (auto& y : xs) {
            CHECK(sq_classify(x * y) == sq_mul(sq_classify(x), sq_classify(y)));
            CHECK(sq_classify(x * x).is_trivial());
        }
}

TEST_CASE("gaussian: paper values 2 ~ i, 4 ~ 1, -1 ~ 1") {
    GaussianRational two(2), four(4), minus1(-1), i = GaussianRational::i();
    auto c2 = sq_classify(two);
    CHECK(!c2.is_trivial());
    CHECK(c2 == sq_classify(i));  // 2 = (1-i)^2 * i
    CHECK(sq_classify(four).is_trivial());
    CHECK(sq_classify(minus1).is_trivial());  // -1 = i^2
    CHECK(c2.gaussian_unit_i());
    CHECK(c2.gaussian_primes().empty());
}

TEST_CASE("gaussian: 1-i and 5 and unit bookkeeping") {
    GaussianRational onemi(Rational(1), Rational(-1));
    auto c = sq_classify(onemi);
    // (1-i) = -i (1+i): class has the prime (1+i) and the unit i
    REQUIRE(c.gaussian_primes().size() == 1);
    CHECK(c.gaussian_primes()[0] == GaussInt{BigInt(1), BigInt(1)});
    CHECK(c.gaussian_unit_i());
    CHECK(sq_mul(c, c).is_trivial());

    auto c5 = sq_classify(GaussianRational(5));
    CHECK(!c5.is_trivial());
    REQUIRE(c5.gaussian_primes().size() == 2);  // (2+i)(2-i) up to associates
    CHECK(sq_mul(c5, c5).is_trivial());
    // brute cross-check: 5 is not a square in Q(i) but 25 is
    CHECK(sq_classify(GaussianRational(25)).is_trivial());
}

TEST_CASE("gaussian: multiplicativity on a small pool") {
    GaussianRational pool[] = {
        GaussianRational(2),
        GaussianRational::i(),
        GaussianRational(Rational(1), Rational(-1)),
        GaussianRational(Rational(3), Rational(2)),
        GaussianRational(Rational(BigInt(-1), BigInt(2)), Rational(BigInt(5), BigInt(3))),
        GaussianRational(7),
    };
    for (auto& x : pool)
        for (auto& y : pool) {
            CHECK(sq_classify(x * y) == sq_mul(sq_classify(x), sq_classify(y)));
            CHECK(sq_classify(x * x).is_trivial());
        }
}

TEST_CASE("finite fields: enumeration oracle and Euler criterion") {
    const FiniteField* F5 = FiniteField::prime_field(5);
    // squares mod 5 are {1,4}
    CHECK(sq_classify(F5->from_int(1)).is_trivial());
    CHECK(sq_classify(F5->from_int(4)).is_trivial());
    CHECK(!sq_classify(F5->from_int(2)).is_trivial());
    CHECK(!sq_classify(F5->from_int(3)).is_trivial());
    // nonsquare * nonsquare = square
    auto n2 = sq_classify(F5->from_int(2)), n3 = sq_classify(F5->from_int(3));
    CHECK(sq_mul(n2, n3).is_trivial());

    for (uint32_t p : {5u, 13u, 17u}) {
        const FiniteField* F = FiniteField::prime_field(p);
        for (uint64_t a = 1; a < p; ++a) {
            FFElem x = F->from_ordinal(a);
            bool euler = x.pow((p - 1) / 2).is_one();
            bool brute = false;
            for (uint64_t y = 1; y < p; ++y)
                if ((F->from_ordinal(y) * F->from_ordinal(y)) == x) brute = true;
            CHECK(euler == brute);
            CHECK(sq_classify(x).is_trivial() == brute);
        }
    }
}

TEST_CASE("extension field F_25 squares") {
    const FiniteField* F = FiniteField::extension(5, 2);
    CHECK(F->size() == 25);
    int squares = 0;
    for (uint64_t a = 1; a < 25; ++a) {
        FFElem x = F->from_ordinal(a);
        if (F->is_square(x)) {
            ++squares;
            FFElem r;
            REQUIRE(F->sqrt(x, r));
            CHECK(r * r == x);
        }
    }
    CHECK(squares == 12);
    // classify respects products
    uint64_t st = 42;
    for (int t = 0; t < 100; ++t) {
        FFElem x = F->random(st), y = F->random(st);
        if (x.is_zero() || y.is_zero()) continue;
        CHECK(sq_classify(x * y) == sq_mul(sq_classify(x), sq_classify(y)));
    }
}

TEST_CASE("field mismatch and zero input are rejected") {
    CHECK_THROWS_AS(sq_classify(Rational(0)), TorsqError);
    auto a = sq_classify(Rational(2));
    auto b = sq_classify(GaussianRational(2));
    CHECK_THROWS_AS(sq_mul(a, b), TorsqError);
}

TEST_CASE("scalar string formats round trip") {
    auto f = GroundField::gaussian();
    auto s = FieldScalar::parse(f, "-1/2+3/4*i");
    CHECK(s.to_string() == "-1/2+3/4*i");
    auto fq = GroundField::finite(7);
    auto x = FieldScalar::parse(fq, "12 mod 7");
    CHECK(x.to_string() == "5 mod 7");
    auto fe = GroundField::finite(5, 2);
    auto y = FieldScalar::parse(fe, "[3,4] mod 5^2");
    CHECK(y.to_string() == "[3,4] mod 5^2");
}
