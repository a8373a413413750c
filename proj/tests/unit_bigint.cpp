#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torsq/bigint.hpp"
#include "torsq/rational.hpp"

using torsq::BigInt;
using torsq::Rational;

namespace {
uint64_t rng_state = 0x2545F4914F6CDD1Dull;
long long rnd64() {
    rng_state ^= rng_state << 13;
    rng_state ^= rng_state >> 7;
    rng_state ^= rng_state << 17;
    return static_cast<long long>(rng_state >> 8) - (1ll << 55);
}
}  // namespace

TEST_CASE("arithmetic agrees with int64 on random small operands") {
    for (int i = 0; i < 2000; ++i) {
        long long a = rnd64() % 1000000, b = rnd64() % 1000000;
        CHECK(BigInt(a) + BigInt(b) == BigInt(a + b));
        CHECK(BigInt(a) - BigInt(b) == BigInt(a - b));
        CHECK(BigInt(a) * BigInt(b) == BigInt(a * b));
        if (b != 0) {
            CHECK(BigInt(a) / BigInt(b) == BigInt(a / b));
            CHECK(BigInt(a) % BigInt(b) == BigInt(a % b));
        }
    }
}

TEST_CASE("divmod identity on large operands") {
    BigInt a("123456789012345678901234567890123456789");
    BigInt b("98765432109876543");
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(r >= BigInt(0));
    CHECK(r < b);

    for (int i = 0; i < 300; ++i) {
        BigInt x = BigInt(rnd64()) * BigInt(rnd64()) * BigInt(rnd64());
        BigInt y = BigInt(rnd64() % 100000007 + 2);
        if (y.is_zero()) continue;
        BigInt::divmod(x, y, q, r);
        CHECK(q * y + r == x);
        CHECK(r.abs() < y.abs());
    }
}

TEST_CASE("gcd, isqrt, perfect squares") {
    CHECK(BigInt::gcd(BigInt(30), BigInt(-42)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(0), BigInt(17)) == BigInt(17));
    BigInt big("340282366920938463463374607431768211456");  // 2^128
    CHECK(BigInt::isqrt(big) == BigInt("18446744073709551616"));
    BigInt root;
    CHECK(big.is_perfect_square(&root));
    CHECK(root * root == big);
    CHECK(!BigInt("340282366920938463463374607431768211457").is_perfect_square());
    for (int i = 0; i < 200; ++i) {
        BigInt x = BigInt(rnd64()).abs();
        BigInt s = BigInt::isqrt(x);
        CHECK(s * s <= x);
        CHECK((s + BigInt(1)) * (s + BigInt(1)) > x);
    }
}

TEST_CASE("decimal round trip") {
    const char* vals[] = {"0", "-1", "999999999999999999999999999999", "-123456789123456789123456789"};
    for (const char* v : vals) CHECK(BigInt(v).to_string() == v);
}

TEST_CASE("factor_integer recovers products") {
    auto f = torsq::factor_integer(BigInt(2 * 2 * 3 * 5 * 5 * 7));
    REQUIRE(f.complete);
    BigInt prod(1);
    for (auto& [p, e] : f.factors)
        for (int i = 0; i < e; ++i) prod = prod * p;
    CHECK(prod == BigInt(2 * 2 * 3 * 5 * 5 * 7));

    // a large square times a small squarefree part
    BigInt n = BigInt("123456789123456791") * BigInt("123456789123456791") * BigInt(30);
    auto f2 = torsq::factor_integer(n);
    REQUIRE(f2.complete);
    BigInt sf(1);
    for (auto& [p, e] : f2.factors)
        if (e % 2) sf = sf * p;
    CHECK(sf == BigInt(30));
}

TEST_CASE("rational normalization and field laws") {
    Rational a(BigInt(6), BigInt(-8));
    CHECK(a.num() == BigInt(-3));
    CHECK(a.den() == BigInt(4));
    Rational b(BigInt(1), BigInt(3));
    CHECK((a + b) * Rational(12) == Rational(-5));
    CHECK((a / a).is_one());
    CHECK(Rational::parse("-3/4") == a);
    CHECK(Rational::parse("7") == Rational(7));
}

TEST_CASE("gaussian rational arithmetic and parsing") {
    using torsq::GaussianRational;
    GaussianRational i = GaussianRational::i();
    CHECK((i * i) == GaussianRational(-1));
    GaussianRational z = GaussianRational::parse("-1/2-1/2*i");
    CHECK(z.re() == Rational(BigInt(-1), BigInt(2)));
    CHECK(z.im() == Rational(BigInt(-1), BigInt(2)));
    CHECK(GaussianRational::parse(z.to_string()) == z);
    CHECK(GaussianRational::parse("i") == i);
    CHECK(GaussianRational::parse("-i") == -i);
    CHECK(GaussianRational::parse("3") == GaussianRational(3));
    GaussianRational w = GaussianRational::parse("2+3*i");
    CHECK((w / w).is_one());
    CHECK(w * w.inv() == GaussianRational(1));
}
