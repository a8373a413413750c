#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_helpers.hpp"
#include "torsq/surface.hpp"

using namespace torsq;
using G = GaussianRational;

namespace {

G gi() { return G::i(); }
G gr(long long n, long long d = 1) { return G(Rational(BigInt(n), BigInt(d))); }
G gc(long long an, long long ad, long long bn, long long bd) {
    return G(Rational(BigInt(an), BigInt(ad)), Rational(BigInt(bn), BigInt(bd)));
}

Matrix<G> m2(G a, G b, G c, G d) {
    Matrix<G> m(2, 2, G(0));
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
}

// the representation of the worked nonsquare-torsion example
SurfaceRep<G> example1_rep() {
    return make_surface_rep<G>({
        m2(-gi(), gr(0), gr(0), gi()),                                            // a1
        m2(gr(-1), gr(0), gr(0), gr(-1)),                                         // b1
        m2(gr(-1), gr(0), gr(0), gr(-1)),                                         // a2
        m2(gc(-1, 2, -1, 2), gc(-1, 2, -1, 2), gc(1, 2, -1, 2), gc(-1, 2, 1, 2))  // b2 = (1/2)[[-1-i,-1-i],[1-i,-1+i]]
    });
}

SurfaceRep<G> example2_rep() {
    return make_surface_rep<G>({
        m2(gr(0), gr(1), gr(-1), gr(0)),  // a1
        m2(gr(0), gr(1), gr(-1), gr(0)),  // b1
        m2(gr(1), gr(0), gr(0), gr(1)),   // a2
        m2(gi(), gr(0), gr(0), -gi()),    // b2
    });
}

}  // namespace

TEST_CASE("twist table acts as printed") {
    CHECK(apply_single_twist(1, 1, FreeWord::gen(2)) == (FreeWord{{2, -1}}));  // b1 -> b1 a1^-1
    CHECK(apply_single_twist(1, 1, FreeWord::gen(1)) == FreeWord::gen(1));     // fixes a1
    CHECK(apply_single_twist(1, 1, FreeWord::gen(3)) == FreeWord::gen(3));
    CHECK(apply_single_twist(1, 1, FreeWord::gen(4)) == FreeWord::gen(4));
    CHECK(apply_single_twist(3, 1, FreeWord::gen(2)) == (FreeWord{{-1, -3, 2}}));
    CHECK(apply_single_twist(3, 1, FreeWord::gen(4)) == (FreeWord{{-3, -1, 4}}));
    // empty twist word is the identity
    FreeWord w{{1, -2, 3, 3, -4}};
    CHECK(apply_twist_word(TwistWord{}, w) == w);
}

TEST_CASE("each twist and its inverse compose to the identity") {
    for (int i = 1; i <= 5; ++i)
        for (int g = 1; g <= 4; ++g) {
            FreeWord w = FreeWord::gen(g);
            CHECK(apply_single_twist(i, -1, apply_single_twist(i, 1, w)) == w);
            CHECK(apply_single_twist(i, 1, apply_single_twist(i, -1, w)) == w);
        }
}

TEST_CASE("each twist sends the relator to a conjugate of itself") {
    FreeWord rel = surface_relator();
    for (int i : {1, 2, 4, 5}) CHECK(apply_single_twist(i, 1, rel) == rel);
    // T3 conjugates by a1 a2
    FreeWord c{{1, 3}};
    CHECK(apply_single_twist(3, 1, rel) == c.inverse() * rel * c);
}

TEST_CASE("twist words are homomorphisms in the word argument") {
    TwistWord t = TwistWord::parse("T4^2 T2 T3 T1");
    torsq::testing::Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        FreeWord u, v;
        for (int k = 0; k < 5; ++k) {
            int l = static_cast<int>(rng.in(1, 4));
            u.letters.push_back(rng.in(0, 1) ? l : -l);
            l = static_cast<int>(rng.in(1, 4));
            v.letters.push_back(rng.in(0, 1) ? l : -l);
        }
        u.reduce();
        v.reduce();
        CHECK(apply_twist_word(t, u * v) == apply_twist_word(t, u) * apply_twist_word(t, v));
    }
}

TEST_CASE("twist word parsing") {
    TwistWord t = TwistWord::parse("T4^2 T2 T3 T1");
    REQUIRE(t.tokens.size() == 4);
    CHECK(t.tokens[0] == std::make_pair(4, 2));
    CHECK(t.tokens[3] == std::make_pair(1, 1));
    CHECK(t.to_string() == "T4^2 T2 T3 T1");
    CHECK_THROWS_AS(TwistWord::parse("T9"), TorsqError);
    CHECK_THROWS_AS(TwistWord::parse("T1^0"), TorsqError);
}

TEST_CASE("eval_rep: relator and inverses") {
    auto rep = example1_rep();
    CHECK(eval_rep(rep, surface_relator()) == Matrix<G>::identity(2, G(1)));
    CHECK(eval_rep(rep, FreeWord{{1, -1}}) == Matrix<G>::identity(2, G(1)));
}

TEST_CASE("twisted representation reproduces the printed example 1 matrices") {
    auto rep = example1_rep();
    auto tw = twisted_rep(rep, TwistWord::parse("T4^2 T2 T3 T1"));
    CHECK(tw.image(1) == m2(gi(), gr(0), gr(0), -gi()));
    CHECK(tw.image(2) == m2(gr(-1), gr(0), gr(0), gr(-1)));
    CHECK(tw.image(3) == m2(gr(-1), gr(0), gr(0), gr(-1)));
    CHECK(tw.image(4) == m2(gc(-1, 2, 1, 2), gc(-1, 2, 1, 2), gc(1, 2, 1, 2), gc(-1, 2, -1, 2)));
}

TEST_CASE("twisted representation reproduces the printed example 2 matrices") {
    auto rep = example2_rep();
    auto tw = twisted_rep(rep, TwistWord::parse("T5^2 T4 T5^2"));
    CHECK(tw.image(1) == rep.image(1));
    CHECK(tw.image(2) == rep.image(2));
    CHECK(tw.image(3) == rep.image(3));
    CHECK(tw.image(4) == m2(-gi(), gr(0), gr(0), gi()));
}

TEST_CASE("conjugator solving finds the printed M up to sign") {
    auto rep = example1_rep();
    auto tw = twisted_rep(rep, TwistWord::parse("T4^2 T2 T3 T1"));
    auto sols = solve_conjugator(rep, tw);
    Matrix<G> paper_m = m2(gr(0), gr(-1), gr(1), gr(0));
    bool found = false;
    for (auto& M : sols)
        if (M == paper_m) found = true;
    CHECK(found);
    // and they all intertwine
    for (auto& M : sols) {
        Matrix<G> Minv = inverse(M);
        for (int g = 1; g <= 4; ++g) CHECK(M * rep.image(g) * Minv == tw.image(g));
    }
}

TEST_CASE("conjugator of an irreducible rep with itself is scalar") {
    auto rep = example1_rep();  // absolutely irreducible over Q(i)
    auto sols = solve_conjugator(rep, rep);
    for (auto& M : sols) {
        CHECK(M.at(0, 1).is_zero());
        CHECK(M.at(1, 0).is_zero());
        CHECK(M.at(0, 0) == M.at(1, 1));
    }
}

TEST_CASE("conjugating by a random symplectic matrix is recovered") {
    auto rep = example1_rep();
    // g symplectic 2x2 = det 1
    Matrix<G> g = m2(gr(2), gr(1), gr(1), gr(1));
    REQUIRE(det(g).is_one());
    SurfaceRep<G> conj = rep;
    Matrix<G> ginv = inverse(g);
    for (auto& im : conj.images) im = g * im * ginv;
    auto sols = solve_conjugator(rep, conj);
    bool found = false;
    for (auto& M : sols)
        if (M == g || M == -g) found = true;
    CHECK(found);
}

TEST_CASE("binary tetrahedral generators: quaternion relations under the embedding") {
    // a+bi+cj+dk -> [[a+bi, c+di], [-c+di, a-bi]]
    auto quat = [](long long a, long long b, long long c, long long d) {
        return m2(G(Rational(a), Rational(b)), G(Rational(c), Rational(d)),
                  G(Rational(-c), Rational(d)), G(Rational(a), Rational(-b)));
    };
    auto I = quat(0, 1, 0, 0), J = quat(0, 0, 1, 0), K = quat(0, 0, 0, 1);
    auto negone = -Matrix<G>::identity(2, G(1));
    CHECK(I * I == negone);
    CHECK(J * J == negone);
    CHECK(K * K == negone);
    CHECK(I * J == K);
    CHECK(det(I).is_one());
    CHECK(det(J).is_one());
    // the 24 elements {+-1,+-i,+-j,+-k, (+-1+-i+-j+-k)/2} all have det 1
    std::vector<Matrix<G>> elems;
    for (auto& m : {quat(1, 0, 0, 0), I, J, K}) {
        elems.push_back(m);
        elems.push_back(-m);
    }
    for (int s0 = -1; s0 <= 1; s0 += 2)
        for (int s1 = -1; s1 <= 1; s1 += 2)
            for (int s2 = -1; s2 <= 1; s2 += 2)
                for (int s3 = -1; s3 <= 1; s3 += 2) {
                    Matrix<G> m = (quat(s0, 0, 0, 0) + quat(0, s1, 0, 0) + quat(0, 0, s2, 0) +
                                   quat(0, 0, 0, s3)) *
                                  G(Rational(BigInt(1), BigInt(2)));
                    elems.push_back(m);
                }
    CHECK(elems.size() == 24);
    for (auto& m : elems) CHECK(det(m).is_one());
}
