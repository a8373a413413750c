#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_helpers.hpp"
#include "torsq/torsion.hpp"

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

SurfaceRep<G> example1_rep() {
    return make_surface_rep<G>({
        m2(-gi(), gr(0), gr(0), gi()),
        m2(gr(-1), gr(0), gr(0), gr(-1)),
        m2(gr(-1), gr(0), gr(0), gr(-1)),
        m2(gc(-1, 2, -1, 2), gc(-1, 2, -1, 2), gc(1, 2, -1, 2), gc(-1, 2, 1, 2)),
    });
}

SurfaceRep<G> example2_rep() {
    return make_surface_rep<G>({
        m2(gr(0), gr(1), gr(-1), gr(0)),
        m2(gr(0), gr(1), gr(-1), gr(0)),
        m2(gr(1), gr(0), gr(0), gr(1)),
        m2(gi(), gr(0), gr(0), -gi()),
    });
}

Matrix<G> paper_m() { return m2(gr(0), gr(-1), gr(1), gr(0)); }

TwistedSystem<G> example1_system() {
    return make_twisted_system(example1_rep(), TwistWord::parse("T4^2 T2 T3 T1"), paper_m());
}
TwistedSystem<G> example2_system() {
    return make_twisted_system(example2_rep(), TwistWord::parse("T5^2 T4 T5^2"), paper_m());
}

}  // namespace

TEST_CASE("example 1 cocycle operator matches the printed 6x6 matrix entrywise") {
    auto op = cocycle_operator(example1_system());
    // rows of the printed matrix, coordinates dual to (b1, a2, b2)
    const char* printed[6][6] = {
        {"0", "1+i", "1/2", "-1-3/2*i", "0", "1+i"},
        {"-1+i", "0", "1-3/2*i", "1/2", "-1+i", "0"},
        {"0", "0", "0", "1", "0", "0"},
        {"0", "0", "-1", "0", "0", "0"},
        {"0", "-1/2-1/2*i", "-1/4-1/4*i", "5/4+3/4*i", "0", "0"},
        {"1/2-1/2*i", "0", "-5/4+3/4*i", "-1/4+1/4*i", "0", "0"},
    };
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) {
            G expect = G::parse(printed[i][j]);
            CHECK(op.tmat.at(i, j) == expect);
        }
}

TEST_CASE("example 2 cocycle operator matches the printed 6x6 matrix entrywise") {
    auto op = cocycle_operator(example2_system());
    const char* printed[6][6] = {
        {"0", "1", "0", "0", "0", "0"},
        {"-1", "0", "0", "0", "0", "0"},
        {"0", "0", "0", "i", "0", "0"},
        {"0", "0", "i", "0", "0", "0"},
        {"0", "0", "0", "-i", "0", "-i"},
        {"0", "0", "-i", "0", "-i", "0"},
    };
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) CHECK(op.tmat.at(i, j) == G::parse(printed[i][j]));
}

TEST_CASE("example 1: dets 4 and 2, torsion class i (nonsquare)") {
    auto r = rt_fibered(example1_system());
    CHECK(r.det_one_minus_tmat == gr(4));
    CHECK(r.det_one_minus_minv == gr(2));
    CHECK(r.h == 0);
    CHECK(r.rt_class == sq_classify(gr(2)));
    CHECK(r.rt_class == sq_classify(gi()));
    CHECK(!r.rt_class.is_trivial());
}

TEST_CASE("example 2: dets 8 and 2, trivial torsion class") {
    auto r = rt_fibered(example2_system());
    CHECK(r.det_one_minus_tmat == gr(8));
    CHECK(r.det_one_minus_minv == gr(2));
    CHECK(r.h == 0);
    CHECK(r.rt_class.is_trivial());
}

TEST_CASE("H^1 determinant is 1 on both examples") {
    CHECK(h1_determinant(example1_system()).is_one());
    CHECK(h1_determinant(example2_system()).is_one());
}

TEST_CASE("identity twist with identity conjugator: T~ is the identity") {
    auto rep = example1_rep();
    auto sys = make_twisted_system(rep, TwistWord{}, Matrix<G>::identity(2, G(1)));
    auto op = cocycle_operator(sys);
    CHECK(op.tmat == Matrix<G>::identity(6, G(1)));
    CHECK(h1_determinant(sys).is_one());
}

TEST_CASE("torsion is invariant under global conjugation of the system") {
    auto rep = example1_rep();
    auto t = TwistWord::parse("T4^2 T2 T3 T1");
    Matrix<G> g = m2(gr(1), gr(1), gr(0), gr(1));  // symplectic
    Matrix<G> ginv = inverse(g);
    SurfaceRep<G> rep2 = rep;
    for (auto& im : rep2.images) im = g * im * ginv;
    auto base = rt_fibered(example1_system());
    auto moved = rt_fibered(make_twisted_system(rep2, t, Matrix<G>(g * paper_m() * ginv)));
    CHECK(base.rt_class == moved.rt_class);
    CHECK(base.h == moved.h);
}

TEST_CASE("the h=0 class equals the quotient determinant class") {
    auto r = rt_fibered(example1_system());
    CHECK(r.spinor_class == sq_classify(G(r.det_one_minus_tmat / r.det_one_minus_minv)));
}

TEST_CASE("cup-product form: well-defined, symmetric, T-invariant, square disc") {
    for (auto sysf : {&example1_system, &example2_system}) {
        auto sys = sysf();
        auto op = cocycle_operator(sys);
        auto h1 = h1_model(sys, op);
        CHECK(h1.gram == h1.gram.transpose());
        CHECK(!det(h1.gram).is_zero());
        CHECK(sq_classify(det(h1.gram)).is_trivial());  // square discriminant
        // T preserves the form
        CHECK(h1.op.transpose() * h1.gram * h1.op == h1.gram);
        CHECK(det(h1.op).is_one());
    }
}

TEST_CASE("rt_circle trivial cases") {
    // A = I on a 2-dim space of trivial discriminant: h = 2, class -1
    Matrix<Rational> g2 = Matrix<Rational>::identity(2, Rational(1));
    auto V = make_quadratic_space(g2);
    auto A = make_isometry(V, Matrix<Rational>::identity(2, Rational(1)));
    CHECK(rt_circle(A) == sq_classify(Rational(-1)));
    // no fixed vectors: rt_circle = det(1-A)
    torsq::testing::Rng rng(21);
    int done = 0;
    while (done < 20) {
        auto W = torsq::testing::random_square_disc_space(rng, 4, Rational(1));
        auto B = torsq::testing::random_special_orthogonal(rng, W, Rational(1));
        Matrix<Rational> om = Matrix<Rational>::identity(4, Rational(1)) - B.mat;
        if (det(om).is_zero()) continue;
        CHECK(rt_circle(B) == det_one_minus(B));
        ++done;
    }
}
