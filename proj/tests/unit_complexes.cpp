#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_helpers.hpp"
#include "torsq/complexes.hpp"
#include "torsq/complexes_random.hpp"
#include "torsq/torsion.hpp"

using namespace torsq;

namespace {

// the circle complex V --(1-A)--> V with the half-sum pairing
template <class K>
SymmetricComplex<K> s1_complex(const IsometryMap<K>& A) {
    const K ex = A.mat.a[0];
    const size_t n = A.space.dim();
    const K half = one_like(ex) / (one_like(ex) + one_like(ex));
    SymmetricComplex<K> S;
    S.n = 1;
    S.eps = 1;
    S.C.exemplar = ex;
    S.C.lo = 0;
    S.C.dims = {n, n};
    S.C.diffs.resize(2);
    Matrix<K> I = Matrix<K>::identity(n, ex);
    S.C.set_diff(0, Matrix<K>((I - A.mat).transpose()));
    S.pairing[0] = Matrix<K>((I + A.mat).transpose() * A.space.gram) * half;
    S.pairing[1] = Matrix<K>((I + inverse(A.mat)).transpose() * A.space.gram) * half;
    validate_symmetric(S);
    return S;
}

Rational q(long long v) { return Rational(v); }

}  // namespace

TEST_CASE("acyclic volume and caniso are mutually inverse on acyclic complexes") {
    LineRng rng(501);
    for (int t = 0; t < 25; ++t) {
        // build an acyclic complex: cone of the identity of a random complex
        auto C = random_based_complex(rng, static_cast<int>(rng.in(-1, 1)), 3, 3, Rational(1));
        // cone(1_C) is computed inside theta_scalar; rebuild it here directly
        BasedComplex<Rational> cone;
        cone.exemplar = Rational(1);
        cone.lo = C.lo - 1;
        for (int j = cone.lo; j <= C.hi(); ++j) cone.dims.push_back(C.dim(j) + C.dim(j + 1));
        cone.diffs.resize(cone.dims.size());
        for (int j = cone.lo; j < C.hi(); ++j) {
            Matrix<Rational> d(cone.dim(j), cone.dim(j + 1), q(0));
            auto dj = C.diff(j), dj1 = C.diff(j + 1);
            for (size_t r = 0; r < dj.rows; ++r)
                for (size_t c = 0; c < dj.cols; ++c) d.at(r, c) = dj.at(r, c);
            for (size_t r = 0; r < C.dim(j + 1); ++r) d.at(C.dim(j) + r, r) = q(1);
            for (size_t r = 0; r < dj1.rows; ++r)
                for (size_t c = 0; c < dj1.cols; ++c) d.at(C.dim(j) + r, C.dim(j + 1) + c) = -dj1.at(r, c);
            cone.set_diff(j, std::move(d));
        }
        cone.validate();
        Rational alpha = acyclic_volume(cone);
        auto hm = homology_model(cone);
        for (size_t i = 0; i < hm.H.dims.size(); ++i) CHECK(hm.H.dims[i] == 0);
        CHECK((alpha * hm.caniso).is_one());
    }
}

TEST_CASE("caniso matches the block decomposition H (+) acyclic") {
    LineRng rng(502);
    int done = 0;
    while (done < 25) {
        // C = zero-differential block (+) acyclic staircase block, block bases
        int lo = static_cast<int>(rng.in(-2, 1)), levels = 2 + static_cast<int>(rng.in(0, 1));
        BasedComplex<Rational> Hb, Ab;
        Hb.exemplar = Ab.exemplar = q(1);
        Hb.lo = Ab.lo = lo;
        for (int i = 0; i < levels; ++i) Hb.dims.push_back(static_cast<size_t>(rng.in(0, 2)));
        Hb.diffs.resize(Hb.dims.size());
        std::vector<size_t> rk(static_cast<size_t>(levels), 0);
        for (int i = 0; i + 1 < levels; ++i) rk[static_cast<size_t>(i)] = static_cast<size_t>(rng.in(0, 2));
        for (int i = 0; i < levels; ++i)
            Ab.dims.push_back((i ? rk[static_cast<size_t>(i - 1)] : 0) + rk[static_cast<size_t>(i)]);
        Ab.diffs.resize(Ab.dims.size());
        for (int i = 0; i + 1 < levels; ++i) {
            size_t r = rk[static_cast<size_t>(i)];
            Matrix<Rational> d(Ab.dims[static_cast<size_t>(i)], Ab.dims[static_cast<size_t>(i + 1)], q(0));
            Matrix<Rational> sq(r, r, q(0));
            do {
                for (auto& x : sq.a) x = q(rng.in(-2, 2));
            } while (r && det(sq).is_zero());
            for (size_t rr = 0; rr < r; ++rr)
                for (size_t cc = 0; cc < r; ++cc) d.at(Ab.dims[static_cast<size_t>(i)] - r + rr, cc) = sq.at(rr, cc);
            Ab.set_diff(lo + i, std::move(d));
        }
        Ab.validate();
        bool nonempty = false;
        for (auto d : Ab.dims)
            if (d) nonempty = true;
        if (!nonempty) continue;
        auto C = direct_sum(Hb, Ab);
        std::vector<Matrix<Rational>> sub, lift;
        for (int i = 0; i < levels; ++i) {
            Matrix<Rational> s(Hb.dims[static_cast<size_t>(i)], C.dims[static_cast<size_t>(i)], q(0));
            for (size_t r = 0; r < s.rows; ++r) s.at(r, r) = q(1);
            Matrix<Rational> l(Ab.dims[static_cast<size_t>(i)], C.dims[static_cast<size_t>(i)], q(0));
            for (size_t r = 0; r < l.rows; ++r) l.at(r, Hb.dims[static_cast<size_t>(i)] + r) = q(1);
            sub.push_back(std::move(s));
            lift.push_back(std::move(l));
        }
        Rational expected = ses_scalar(C, sub, lift) / acyclic_volume(Ab);
        auto hm = homology_model(C);
        bool bases_match = true;
        for (int j = C.lo; j <= C.hi(); ++j)
            if (hm.H.dim(j) != Hb.dim(j)) bases_match = false;
        if (!bases_match) continue;
        ++done;
        CHECK(hm.caniso == expected);
    }
}

TEST_CASE("two-term acyclic volume is the determinant up to the degree convention") {
    // [V --phi--> V] in degrees 0,1: a = det(phi)^{-1} g
    Matrix<Rational> phi(2, 2, q(0));
    phi.at(0, 0) = q(2);
    phi.at(0, 1) = q(1);
    phi.at(1, 0) = q(1);
    phi.at(1, 1) = q(1);
    BasedComplex<Rational> X;
    X.exemplar = q(1);
    X.lo = 0;
    X.dims = {2, 2};
    X.diffs.resize(2);
    X.set_diff(0, phi);
    CHECK(acyclic_volume(X) == Rational(1) / det(phi));
    // degrees 1,2: a = det(phi) g
    X.lo = 1;
    CHECK(acyclic_volume(X) == det(phi));
}

TEST_CASE("duality map: identity-monodromy circle complex reads off the Gram") {
    auto V = make_quadratic_space(Matrix<Rational>::identity(2, Rational(1)));
    auto A = make_isometry(V, Matrix<Rational>::identity(2, Rational(1)));
    auto S = s1_complex(A);
    auto f = duality_map(S);
    CHECK(f.strict);
    CHECK(f.blocks[0] == V.gram);  // (1+I)/2 = I times the Gram
    // zero pairing is closed but not strict
    SymmetricComplex<Rational> Z = S;
    Z.pairing.clear();
    auto fz = duality_map(Z);
    CHECK(!fz.strict);
}

TEST_CASE("boundary cone: strict, pairing independent of f, keydiag normalization") {
    LineRng rng(503);
    for (int t = 0; t < 20; ++t) {
        auto C = random_based_complex(rng, static_cast<int>(rng.in(0, 1)), 2, 3, Rational(1));
        int n = 2 * static_cast<int>(rng.in(0, 2));
        auto S = random_closed_pairing(rng, C, n, t % 2 ? 1 : -1);
        auto D = boundary_cone(S);
        auto fD = duality_map(D);
        CHECK(fD.strict);
        // pairing does not depend on f: zero-pairing cone has the same pairing
        SymmetricComplex<Rational> S0 = S;
        for (auto& [p, T] : S0.pairing) T = Matrix<Rational>::zeros(T.rows, T.cols, q(1));
        auto D0 = boundary_cone(S0);
        for (int p = D.C.lo; p <= D.C.hi(); ++p) CHECK(D.T(p) == D0.T(p));
        // left keydiag square: [I|0] T^D_{p,n-1-p} = [0 | (-1)^p I]
        for (int p = D.C.lo; p <= D.C.hi(); ++p) {
            Matrix<Rational> T = D.T(p);
            size_t psi_p = S.C.dim(n - p);
            size_t psi_q = S.C.dim(p + 1);
            for (size_t i = 0; i < psi_p; ++i)
                for (size_t j = 0; j < T.cols; ++j) {
                    Rational expect = (j >= psi_q && j - psi_q == i) ? (p % 2 ? q(-1) : q(1)) : q(0);
                    CHECK(T.at(i, j) == expect);
                }
        }
    }
}

TEST_CASE("chi12simple: strict 1-symmetric complexes have the stated parity") {
    LineRng rng(504);
    int done = 0;
    while (done < 60) {
        SymmetricComplex<Rational> D;
        try {
            D = random_strict_odd(rng, 1, 1, 3, Rational(1));
        } catch (const TorsqError&) {
            continue;
        }
        ++done;
        // chi_1/2 = sum_{j <= 0} dim H^j mod 2 must equal sum_{j <= 0} dim C_j mod 2
        int lhs = semicharacteristic(D.C, 1);
        int rhs = 0;
        for (int j = D.C.lo; j <= 0; ++j) rhs += static_cast<int>(D.C.dim(j));
        CHECK(lhs == rhs % 2);
    }
}

TEST_CASE("rt_chain: identity monodromy on a 2-dim space gives class -1") {
    auto V = make_quadratic_space(Matrix<Rational>::identity(2, Rational(1)));
    auto A = make_isometry(V, Matrix<Rational>::identity(2, Rational(1)));
    CHECK(rt_chain(s1_complex(A)) == sq_classify(Rational(-1)));
}

TEST_CASE("rt_chain: acyclic complex with its acyclic volume gives the trivial class") {
    LineRng rng(505);
    int done = 0;
    while (done < 10) {
        SymmetricComplex<Rational> D;
        try {
            D = random_strict_odd(rng, 1, 1, 3, Rational(1));
        } catch (const TorsqError&) {
            continue;
        }
        auto hm = homology_model(D.C);
        bool acyclic = true;
        for (auto h : hm.H.dims)
            if (h) acyclic = false;
        if (!acyclic) continue;
        ++done;
        Rational alpha = acyclic_volume(D.C);
        CHECK(rt_chain(D, alpha).is_trivial());
    }
}

TEST_CASE("rt_chain equals rt_circle on random special orthogonal monodromy") {
    torsq::testing::Rng rng(506);
    for (int t = 0; t < 40; ++t) {
        size_t dim = 2 + 2 * static_cast<size_t>(rng.in(0, 1));
        auto V = torsq::testing::random_square_disc_space(rng, dim, Rational(1));
        auto A = torsq::testing::random_special_orthogonal(rng, V, Rational(1), 2);
        CHECK(rt_chain(s1_complex(A)) == rt_circle(A));
    }
}

TEST_CASE("rt_chain: unipotent cases (a) and (b)") {
    // case (a): two odd Jordan blocks, sizes 3 and 1
    for (long long v1 : {1ll, 2ll, 3ll}) {
        for (long long v2 : {1ll, 5ll}) {
            // 3-block with form antidiag(v1, -v1, v1), plus a 1-dim space <v2'>
            // chosen so that the total discriminant is a square
            Matrix<Rational> G(4, 4, q(0));
            G.at(0, 2) = q(v1);
            G.at(2, 0) = q(v1);
            G.at(1, 1) = q(-v1);
            // disc of the 3-block is v1^3 ~ v1; pick the 1-dim entry v1*v2^2 to
            // square the total
            G.at(3, 3) = q(v1 * v2 * v2);
            Matrix<Rational> M(4, 4, q(0));
            M.at(1, 0) = q(1);  // row convention: e2 |-> e1 means column action M e2 = e1
            M.at(2, 1) = q(1);
            // exp(M) for nilpotent M of order 3
            Matrix<Rational> A = Matrix<Rational>::identity(4, q(1)) + M +
                                 M * M * Rational(BigInt(1), BigInt(2));
            auto V = make_quadratic_space(G);
            auto iso = make_isometry(V, A);
            CHECK(iso.special);
            auto rt = rt_chain(s1_complex(iso));
            // RT = -(<N^2 e1, e1> * v2-part) = -(v1 * v1*v2^2) ~ -1; also via the formula
            CHECK(rt == rt_circle(iso));
            CHECK(rt == sq_classify(Rational(-1)));
        }
    }
    // case (b): even Jordan block E + E^*, hyperbolic pairing
    {
        Matrix<Rational> G(4, 4, q(0));
        for (int i = 0; i < 2; ++i) {
            G.at(i, 2 + i) = q(1);
            G.at(2 + i, i) = q(1);
        }
        Matrix<Rational> N(4, 4, q(0));
        N.at(1, 0) = q(1);   // e2 -> e1 on E
        N.at(2, 3) = q(-1);  // -N^t on E^*
        // check skewness N^t G + G N = 0, then A = 1 + N (N^2 = 0)
        Matrix<Rational> skew = N.transpose() * G + G * N;
        for (auto& x : skew.a) CHECK(x.is_zero());
        Matrix<Rational> A = Matrix<Rational>::identity(4, q(1)) + N;
        auto V = make_quadratic_space(G);
        auto iso = make_isometry(V, A);
        auto rt = rt_chain(s1_complex(iso));
        CHECK(rt == rt_circle(iso));
        CHECK(rt == sq_classify(Rational(-1)));  // -(square) for case (b)
    }
}

TEST_CASE("orientation swap multiplies rt_chain by (-1)^{chi_1/2}") {
    torsq::testing::Rng rng(507);
    for (int t = 0; t < 25; ++t) {
        size_t dim = 2 + 2 * static_cast<size_t>(rng.in(0, 1));
        auto V = torsq::testing::random_square_disc_space(rng, dim, Rational(1));
        auto A = torsq::testing::random_special_orthogonal(rng, V, Rational(1), 2);
        auto S = s1_complex(A);
        SymmetricComplex<Rational> Sneg = S;
        for (auto& [p, T] : Sneg.pairing) T = -T;
        auto a = rt_chain(S);
        auto b = rt_chain(Sneg);
        int chihalf = semicharacteristic(S.C, 1);
        if (chihalf % 2)
            CHECK(sq_mul(a, sq_classify(Rational(-1))) == b);
        else
            CHECK(a == b);
    }
}

TEST_CASE("lagrangian volume in a symplectic vector space does not depend on the Lagrangian") {
    // one degree pair {0,1}, zero differential, skew pairing: C_0 x C_1
    LineRng rng(508);
    for (int t = 0; t < 20; ++t) {
        SymmetricComplex<Rational> S;
        S.n = 1;
        S.eps = -1;
        S.C.exemplar = q(1);
        S.C.lo = 0;
        S.C.dims = {2, 2};
        S.C.diffs.resize(2);
        Matrix<Rational> T0(2, 2, q(0));
        do {
            for (auto& x : T0.a) x = q(rng.in(-3, 3));
        } while (det(T0).is_zero());
        S.pairing[0] = T0;
        S.pairing[1] = -T0.transpose();  // eps (-1)^{pq} with pq = 0
        validate_symmetric(S);
        // Lagrangians: graph rows (x, phi(x)) with phi chosen to keep isotropy:
        // in a symplectic space W = C_0 (+) C_1 with <(:,b),(c,:)> pairing,
        // row spans L_0 x L_1 with dim 1 + 1 work whenever the pairing of the
        // two lines vanishes
        std::vector<SquareClass> seen;
        for (int trial = 0; trial < 12; ++trial) {
            std::vector<Rational> u(2), w(2);
            for (auto& x : u) x = q(rng.in(-3, 3));
            if (u[0].is_zero() && u[1].is_zero()) continue;
            // w must satisfy u T0 w^t = 0: pick w in the kernel of the row u T0
            Matrix<Rational> row(1, 2, q(0));
            auto ut = T0.transpose().apply(u);
            row.at(0, 0) = ut[0];
            row.at(0, 1) = ut[1];
            auto ker = right_kernel(row);
            if (ker.empty()) continue;
            w = ker[0];
            Matrix<Rational> L0(1, 2, q(0)), L1(1, 2, q(0));
            L0.at(0, 0) = u[0];
            L0.at(0, 1) = u[1];
            L1.at(0, 0) = w[0];
            L1.at(0, 1) = w[1];
            try {
                seen.push_back(lagrangian_volume(S, {L0, L1}));
            } catch (const TorsqError&) {
            }
        }
        REQUIRE(seen.size() >= 2);
        for (auto& c : seen) CHECK(c == seen[0]);
    }
}

TEST_CASE("lagrangian volume of a strongly even direct sum is the product") {
    LineRng rng(509);
    int done = 0;
    while (done < 12) {
        SymmetricComplex<Rational> D1, D2;
        try {
            D1 = random_strict_odd(rng, 3, -1, 4, Rational(1), true);
            D2 = random_strict_odd(rng, 3, -1, 4, Rational(1), true);
        } catch (const TorsqError&) {
            continue;
        }
        if (!D1.C.strongly_even() || !D2.C.strongly_even()) continue;
        ++done;
        auto S = direct_sum(D1, D2);
        // Lagrangian: brutal upper truncation at degree >= 2 (n = 3)
        auto upper = [&](const SymmetricComplex<Rational>& X) {
            std::vector<Matrix<Rational>> L;
            for (int j = X.C.lo; j <= X.C.hi(); ++j)
                L.push_back(j >= 2 ? Matrix<Rational>::identity(X.C.dim(j), q(1))
                                   : Matrix<Rational>(0, X.C.dim(j), q(0)));
            return L;
        };
        SquareClass c1, c2, cs;
        try {
            c1 = lagrangian_volume(D1, upper(D1));
            c2 = lagrangian_volume(D2, upper(D2));
            cs = lagrangian_volume(S, upper(S));
        } catch (const TorsqError&) {
            --done;
            continue;
        }
        CHECK(cs == sq_mul(c1, c2));
    }
}

TEST_CASE("verify_abc holds on random strongly even skew complexes (Q and F13)") {
    LineRng rng(510);
    int doneQ = 0;
    while (doneQ < 15) {
        auto C = random_based_complex(rng, static_cast<int>(rng.in(0, 1)), 3, 4, Rational(1), true);
        SymmetricComplex<Rational> S;
        try {
            S = random_closed_pairing(rng, C, 4, -1);
        } catch (const TorsqError&) {
            continue;
        }
        auto rep = verify_abc(S);
        CHECK(rep.holds);
        ++doneQ;
    }
    const FiniteField* F13 = FiniteField::prime_field(13);
    int doneF = 0;
    while (doneF < 15) {
        auto C = random_based_complex(rng, static_cast<int>(rng.in(0, 1)), 3, 4, F13->one(), true);
        SymmetricComplex<FFElem> S;
        try {
            S = random_closed_pairing(rng, C, 4, -1);
        } catch (const TorsqError&) {
            continue;
        }
        auto rep = verify_abc(S);
        CHECK(rep.holds);
        ++doneF;
    }
}

TEST_CASE("verify_abc edge cases: zero complex and a middle-degree skew form") {
    SymmetricComplex<Rational> Z;
    Z.n = 4;
    Z.eps = -1;
    Z.C.exemplar = q(1);
    Z.C.lo = 0;
    Z.C.dims = {};
    auto repz = verify_abc(Z);
    CHECK(repz.holds);
    CHECK(repz.r == 0);
    CHECK(repz.a.is_trivial());

    // a single skew form in middle degree 2 (n = 4): acyclic cone
    for (size_t m : {2u, 4u}) {
        SymmetricComplex<Rational> S;
        S.n = 4;
        S.eps = -1;
        S.C.exemplar = q(1);
        S.C.lo = 2;
        S.C.dims = {m};
        S.C.diffs.resize(1);
        Matrix<Rational> T(m, m, q(0));
        for (size_t i = 0; i + 1 < m; i += 2) {
            T.at(i, i + 1) = q(1 + static_cast<long long>(i));
            T.at(i + 1, i) = q(-1 - static_cast<long long>(i));
        }
        S.pairing[2] = T;
        validate_symmetric(S);
        auto rep = verify_abc(S);
        CHECK(rep.holds);
        // D_2 analysis: (b) and (c) differ by (-1)^{m/2}
        CHECK(rep.r == static_cast<int>((m / 2) % 2));
    }
}

TEST_CASE("strictify returns a strict model with matching cohomology") {
    LineRng rng(511);
    int done = 0;
    while (done < 12) {
        SymmetricComplex<Rational> D;
        try {
            D = random_strict_odd(rng, 3, -1, 3, Rational(1));
        } catch (const TorsqError&) {
            continue;
        }
        ++done;
        auto H = strictify(D);
        auto f = duality_map(H);
        CHECK(f.strict);
        auto hm = homology_model(D.C);
        for (int j = H.C.lo; j <= H.C.hi(); ++j) CHECK(H.C.dim(j) == hm.H.dim(j));
        // already-strict zero-differential complexes are fixed points
        auto H2 = strictify(H);
        for (int j = H.C.lo; j <= H.C.hi(); ++j) CHECK(H2.C.dim(j) == H.C.dim(j));
    }
}

TEST_CASE("split_strict: pieces are orthogonal subcomplexes reassembling the space") {
    LineRng rng(512);
    int done = 0;
    while (done < 15) {
        SymmetricComplex<Rational> S;
        try {
            S = random_strict_odd(rng, 1, 1, 3, Rational(1));
        } catch (const TorsqError&) {
            continue;
        }
        ++done;
        auto sp = split_strict(S);
        for (int j = S.C.lo; j <= S.C.hi(); ++j) {
            size_t i = static_cast<size_t>(j - S.C.lo);
            size_t total = sp.q_rows[i].rows + sp.qdual_rows[i].rows + sp.r_rows[i].rows;
            CHECK(total == S.C.dim(j));
            // direct sum: stacked rows invertible
            if (S.C.dim(j)) {
                Matrix<Rational> stack(total, S.C.dim(j), q(0));
                size_t r0 = 0;
                for (auto* part : {&sp.q_rows[i], &sp.qdual_rows[i], &sp.r_rows[i]}) {
                    for (size_t r = 0; r < part->rows; ++r)
                        for (size_t c = 0; c < S.C.dim(j); ++c) stack.at(r0 + r, c) = part->at(r, c);
                    r0 += part->rows;
                }
                CHECK(!det(stack).is_zero());
            }
        }
        // R is acyclic two-term in degrees {0,1}: d maps E0 isomorphically to B1
        size_t i0 = static_cast<size_t>(-S.C.lo), i1 = i0 + 1;
        if (sp.r_rows[i0].rows) {
            Matrix<Rational> img = sp.r_rows[i0] * S.C.diff(0);
            Matrix<Rational> stacked(img.rows + sp.r_rows[i1].rows, S.C.dim(1), q(0));
            for (size_t r = 0; r < img.rows; ++r)
                for (size_t c = 0; c < img.cols; ++c) stacked.at(r, c) = img.at(r, c);
            for (size_t r = 0; r < sp.r_rows[i1].rows; ++r)
                for (size_t c = 0; c < S.C.dim(1); ++c) stacked.at(img.rows + r, c) = sp.r_rows[i1].at(r, c);
            CHECK(rank(stacked) == sp.r_rows[i1].rows);
            CHECK(img.rows == sp.r_rows[i1].rows);
        }
        // orthogonality of the splitting: Q+R part pairs to zero with E1 etc.
        // <e0 + z0, e1 + b1> decomposes; check E0 against E1 and Z0 against B1
        auto pair_rows = [&](const Matrix<Rational>& X, int px, const Matrix<Rational>& Y) {
            // X rows in degree px, Y rows in degree 1-px
            Matrix<Rational> P = X * S.T(px) * Y.transpose();
            for (auto& x : P.a) CHECK(x.is_zero());
        };
        if (sp.r_rows[i0].rows && sp.qdual_rows[i1].rows) pair_rows(sp.r_rows[i0], 0, sp.qdual_rows[i1]);
        if (sp.q_rows[i0].rows && sp.r_rows[i1].rows) pair_rows(sp.q_rows[i0], 0, sp.r_rows[i1]);
    }
}

TEST_CASE("verify_abc also holds in dimension 8 and shifted ranges") {
    LineRng rng(515);
    int done = 0;
    while (done < 10) {
        int n = rng.in(0, 1) ? 4 : 8;
        auto C = random_based_complex(rng, static_cast<int>(rng.in(-2, 2)), 2 + static_cast<int>(rng.in(0, 2)),
                                      4, Rational(1), true);
        SymmetricComplex<Rational> S;
        try {
            S = random_closed_pairing(rng, C, n, -1);
        } catch (const TorsqError&) {
            continue;
        }
        AbcReport<Rational> rep;
        try {
            rep = verify_abc(S);
        } catch (const TorsqError&) {
            continue;
        }
        ++done;
        CHECK(rep.holds);
    }
}
