// Reidemeister-torsion square classes of mapping tori via the cocycle
// operator on V^3 (coordinates phi -> (phi(b1), phi(a2), phi(b2))), and the
// circle case via the spinor norm.
//
// The H^1 quadratic form is realized at cocycle level by evaluating the cup
// product against the fundamental 2-cycle sum_k [pre_k | g_k] - sum_x [x|x^-1]
// of the relator r = g1...gm:
//   <phi, psi> = sum_k B(phi(pre_k), rho(pre_k) psi(g_k)) + sum_x B(phi(x), psi(x))
// with B the ambient symplectic form; the second sum comes from the
// degenerate cells and makes the value a cohomological invariant.  Overall
// scale conventions drop out of every square-class computation on
// even-dimensional spaces.
#pragma once

#include "torsq/orth.hpp"
#include "torsq/surface.hpp"

namespace torsq {

template <class K>
struct TwistedSystem {
    SurfaceRep<K> rep;
    TwistWord twist;
    Matrix<K> conj;  // M with rho(t(g)) = M rho(g) M^{-1}
};

template <class K>
TwistedSystem<K> make_twisted_system(SurfaceRep<K> rep, TwistWord t, Matrix<K> M) {
    SurfaceRep<K> tw = twisted_rep(rep, t);
    Matrix<K> Minv = inverse(M);
    for (int g = 1; g <= 4; ++g)
        if (M * rep.image(g) * Minv != tw.image(g))
            throw TorsqError("InputError", "conjugator does not intertwine the twisted representation");
    const K ex = rep.images[0].a[0];
    Matrix<K> J = standard_symplectic_form(rep.dim(), ex);
    if (M.transpose() * J * M != J) throw TorsqError("InputError", "conjugator not symplectic");
    return {std::move(rep), std::move(t), std::move(M)};
}

namespace detail {

// phi(a1) = L^{-1}[ (rho(a1 b1 a1^-1 b1^-1) - rho(a1)) phi(b1)
//                 + (rho(b2) - rho(a1 b1 a1^-1 b1^-1)) phi(a2)
//                 + (1 - rho(b2 a2 b2^-1)) phi(b2) ],  L = 1 - rho(a1 b1 a1^-1)
template <class K>
struct CocycleSolver {
    const SurfaceRep<K>* rep;
    Matrix<K> coef_b1, coef_a2, coef_b2;  // 2r x 2r blocks producing phi(a1)

    explicit CocycleSolver(const SurfaceRep<K>& r) : rep(&r) {
        const K ex = r.images[0].a[0];
        const size_t n = r.dim();
        Matrix<K> I = Matrix<K>::identity(n, ex);
        Matrix<K> conj_b1 = eval_rep(r, FreeWord{{1, 2, -1}});
        Matrix<K> L = I - conj_b1;
        Matrix<K> Linv;
        if (!try_inverse(L, Linv))
            throw TorsqError("DegenerateB1", "1 - rho(a1 b1 a1^-1) singular (rho(b1) has eigenvalue 1)");
        Matrix<K> comm = eval_rep(r, FreeWord{{1, 2, -1, -2}});
        coef_b1 = Linv * (comm - r.image(1));
        coef_a2 = Linv * (r.image(4) - comm);
        coef_b2 = Linv * (I - eval_rep(r, FreeWord{{4, 3, -4}}));
    }

    // full cocycle values (phi(a1..b2)) from coordinates (phi(b1), phi(a2), phi(b2))
    std::array<std::vector<K>, 4> extend(const std::vector<K>& vb1, const std::vector<K>& va2,
                                         const std::vector<K>& vb2) const {
        std::array<std::vector<K>, 4> phi;
        phi[1] = vb1;
        phi[2] = va2;
        phi[3] = vb2;
        std::vector<K> a1 = coef_b1.apply(vb1);
        std::vector<K> t = coef_a2.apply(va2);
        for (size_t i = 0; i < a1.size(); ++i) a1[i] += t[i];
        t = coef_b2.apply(vb2);
        for (size_t i = 0; i < a1.size(); ++i) a1[i] += t[i];
        phi[0] = std::move(a1);
        return phi;
    }

    // phi(w) by the cocycle rule phi(gh) = rho(g) phi(h) + phi(g)
    std::vector<K> value(const std::array<std::vector<K>, 4>& phi, const FreeWord& w) const {
        const K ex = rep->images[0].a[0];
        const size_t n = rep->dim();
        std::vector<K> acc(n, zero_like(ex));
        Matrix<K> pre = Matrix<K>::identity(n, ex);
        for (int l : w.letters) {
            int g = std::abs(l);
            if (l > 0) {
                auto v = pre.apply(phi[g - 1]);
                for (size_t i = 0; i < n; ++i) acc[i] += v[i];
                pre = pre * rep->image(g);
            } else {
                Matrix<K> ginv = inverse(rep->image(g));
                auto mg = ginv.apply(phi[g - 1]);
                auto v = pre.apply(mg);
                for (size_t i = 0; i < n; ++i) acc[i] -= v[i];
                pre = pre * ginv;
            }
        }
        return acc;
    }
};

}  // namespace detail

template <class K>
struct CocycleOperator {
    Matrix<K> tmat;   // 6r x 6r, columns = images of the basis cocycles
    Matrix<K> iota;   // 6r x 2r, v -> (b1 v - v, a2 v - v, b2 v - v)
    Matrix<K> mconj;  // the conjugator used
};

template <class K>
CocycleOperator<K> cocycle_operator(const TwistedSystem<K>& sys) {
    const SurfaceRep<K>& rep = sys.rep;
    const size_t n = rep.dim();
    const K ex = rep.images[0].a[0];
    detail::CocycleSolver<K> solver(rep);
    Matrix<K> Minv = inverse(sys.conj);

    FreeWord tb1 = apply_twist_word(sys.twist, FreeWord::gen(2));
    FreeWord ta2 = apply_twist_word(sys.twist, FreeWord::gen(3));
    FreeWord tb2 = apply_twist_word(sys.twist, FreeWord::gen(4));

    Matrix<K> T(3 * n, 3 * n, zero_like(ex));
    for (size_t k = 0; k < 3 * n; ++k) {
        std::vector<K> vb1(n, zero_like(ex)), va2(n, zero_like(ex)), vb2(n, zero_like(ex));
        if (k < n)
            vb1[k] = one_like(ex);
        else if (k < 2 * n)
            va2[k - n] = one_like(ex);
        else
            vb2[k - 2 * n] = one_like(ex);
        auto phi = solver.extend(vb1, va2, vb2);
        auto img_b1 = Minv.apply(solver.value(phi, tb1));
        auto img_a2 = Minv.apply(solver.value(phi, ta2));
        auto img_b2 = Minv.apply(solver.value(phi, tb2));
        for (size_t i = 0; i < n; ++i) {
            T.at(i, k) = img_b1[i];
            T.at(n + i, k) = img_a2[i];
            T.at(2 * n + i, k) = img_b2[i];
        }
    }

    Matrix<K> I = Matrix<K>::identity(n, ex);
    Matrix<K> iota(3 * n, n, zero_like(ex));
    std::array<Matrix<K>, 3> blocks = {rep.image(2) - I, rep.image(3) - I, rep.image(4) - I};
    for (size_t b = 0; b < 3; ++b)
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) iota.at(b * n + i, j) = blocks[b].at(i, j);

    if (T * iota != iota * Minv) throw TorsqError("InputError", "cocycle operator square does not commute");
    return {std::move(T), std::move(iota), sys.conj};
}

// Quotient model of H^1 = coker(iota) with the induced operator and the
// cup-product Gram.
template <class K>
struct H1Model {
    Matrix<K> proj_basis;  // 6r x h1dim: selected standard basis vectors spanning the complement
    Matrix<K> op;          // induced T on H^1
    Matrix<K> gram;        // induced symmetric form on H^1 (cup product)
    std::vector<size_t> basis_idx;
};

template <class K>
H1Model<K> h1_model(const TwistedSystem<K>& sys, const CocycleOperator<K>& op) {
    const SurfaceRep<K>& rep = sys.rep;
    const size_t n = rep.dim(), N = 3 * n;
    const K ex = rep.images[0].a[0];
    // choose complement: standard vectors completing the column space of iota
    Matrix<K> work(N, op.iota.cols + N, zero_like(ex));
    for (size_t i = 0; i < N; ++i) {
        for (size_t j = 0; j < op.iota.cols; ++j) work.at(i, j) = op.iota.at(i, j);
        work.at(i, op.iota.cols + i) = one_like(ex);
    }
    auto piv = rref(work);
    std::vector<size_t> basis_idx;
    size_t iota_rank = 0;
    for (size_t p : piv) {
        if (p < op.iota.cols)
            ++iota_rank;
        else
            basis_idx.push_back(p - op.iota.cols);
    }
    if (iota_rank != op.iota.cols)
        throw TorsqError("DegenerateB1", "iota not injective (H^0 nonzero)");
    const size_t h1 = basis_idx.size();
    // reduction mod im(iota): solve [iota | chosen] * y = x, take chosen part
    Matrix<K> full(N, op.iota.cols + h1, zero_like(ex));
    for (size_t i = 0; i < N; ++i) {
        for (size_t j = 0; j < op.iota.cols; ++j) full.at(i, j) = op.iota.at(i, j);
        for (size_t j = 0; j < h1; ++j) full.at(i, op.iota.cols + j) = (i == basis_idx[j]) ? one_like(ex) : zero_like(ex);
    }
    Matrix<K> full_inv = inverse(full);
    auto reduce = [&](const std::vector<K>& x) {
        auto y = full_inv.apply(x);
        return std::vector<K>(y.begin() + static_cast<long>(op.iota.cols), y.end());
    };
    Matrix<K> T1(h1, h1, zero_like(ex));
    for (size_t j = 0; j < h1; ++j) {
        std::vector<K> e(N, zero_like(ex));
        e[basis_idx[j]] = one_like(ex);
        auto img = reduce(op.tmat.apply(e));
        for (size_t i = 0; i < h1; ++i) T1.at(i, j) = img[i];
    }

    // cup-product pairing of the basis cocycles, then restricted to the
    // chosen complement
    detail::CocycleSolver<K> solver(rep);
    Matrix<K> B = standard_symplectic_form(n, ex);
    FreeWord rel = surface_relator();
    auto bform = [&](const std::vector<K>& u, const std::vector<K>& w) {
        K acc = zero_like(ex);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (!B.at(i, j).is_zero()) acc += u[i] * B.at(i, j) * w[j];
        return acc;
    };
    auto pair_cocycles = [&](const std::array<std::vector<K>, 4>& phi,
                             const std::array<std::vector<K>, 4>& psi) {
        K acc = zero_like(ex);
        Matrix<K> pre = Matrix<K>::identity(n, ex);
        FreeWord prefix;
        for (int l : rel.letters) {
            // phi(prefix) and rho(prefix) psi(g_k) with g_k the next letter
            auto u = solver.value(phi, prefix);
            FreeWord letter{{l}};
            auto w = pre.apply(solver.value(psi, letter));
            acc += bform(u, w);
            prefix.letters.push_back(l);
            int g = std::abs(l);
            pre = l > 0 ? pre * rep.image(g) : pre * inverse(rep.image(g));
        }
        // degenerate cells [x|x^-1] of the fundamental cycle
        for (int g = 1; g <= 4; ++g) acc += bform(phi[g - 1], psi[g - 1]);
        return acc;
    };
    auto basis_cocycle = [&](size_t k) {
        std::vector<K> vb1(n, zero_like(ex)), va2(n, zero_like(ex)), vb2(n, zero_like(ex));
        if (k < n)
            vb1[k] = one_like(ex);
        else if (k < 2 * n)
            va2[k - n] = one_like(ex);
        else
            vb2[k - 2 * n] = one_like(ex);
        return solver.extend(vb1, va2, vb2);
    };
    Matrix<K> G(h1, h1, zero_like(ex));
    for (size_t i = 0; i < h1; ++i)
        for (size_t j = 0; j < h1; ++j)
            G.at(i, j) = pair_cocycles(basis_cocycle(basis_idx[i]), basis_cocycle(basis_idx[j]));
    Matrix<K> P(N, h1, zero_like(ex));
    for (size_t j = 0; j < h1; ++j) P.at(basis_idx[j], j) = one_like(ex);
    return {std::move(P), std::move(T1), std::move(G), std::move(basis_idx)};
}

template <class K>
K h1_determinant(const TwistedSystem<K>& sys) {
    auto op = cocycle_operator(sys);
    auto h1 = h1_model(sys, op);
    if (h1.op.rows == 0) return one_like(sys.rep.images[0].a[0]);
    return det(h1.op);
}

template <class K>
struct FiberedTorsion {
    SquareClass spinor_class;  // (-1)^{h/2} RT(M, rho); the h=0 value is det(1-T)
    SquareClass rt_class;      // RT(M, rho) itself
    size_t h = 0;
    K det_one_minus_tmat;   // det(1 - Ttilde) on V^3
    K det_one_minus_minv;   // det(1 - M^{-1}) on V
    K det_prime;            // det(1-T) off the generalized fixed space (h>0)
    bool arv_gram_ok = true;  // Gram on the fixed space nondegenerate
};

template <class K>
FiberedTorsion<K> rt_fibered(const TwistedSystem<K>& sys) {
    const K ex = sys.rep.images[0].a[0];
    auto op = cocycle_operator(sys);
    auto h1 = h1_model(sys, op);
    const size_t N = op.tmat.rows, n = sys.rep.dim();

    FiberedTorsion<K> out;
    out.det_one_minus_tmat = det(Matrix<K>(Matrix<K>::identity(N, ex) - op.tmat));
    Matrix<K> Minv = inverse(sys.conj);
    out.det_one_minus_minv = det(Matrix<K>(Matrix<K>::identity(n, ex) - Minv));
    out.det_prime = zero_like(ex);

    QuadraticSpace<K> H1space = make_quadratic_space(h1.gram);
    IsometryMap<K> T = make_isometry(H1space, h1.op);

    // consistency of the quotient formula whenever both sides are defined:
    // det(1 - Ttilde) = det(1 - M^{-1}) det(1 - T|H^1)
    K dT = det(Matrix<K>(Matrix<K>::identity(h1.op.rows, ex) - h1.op));
    if (out.det_one_minus_tmat != out.det_one_minus_minv * dT)
        throw TorsqError("InputError", "quotient determinant identity failed");

    // h = dimension of the fixed space of T on H^1
    Matrix<K> oneminus = Matrix<K>::identity(h1.op.rows, ex) - h1.op;
    out.h = right_kernel(oneminus).size();
    if (out.h % 2) throw TorsqError("InputError", "odd-dimensional fixed space");

    out.spinor_class = spinor_norm(T);
    SquareClass sign_cls =
        (out.h / 2) % 2 ? sq_classify(-one_like(ex)) : SquareClass::trivial(field_of(ex));
    out.rt_class = sq_mul(sign_cls, out.spinor_class);

    if (out.h > 0) {
        // Eq-arv data: det(1-T) off the generalized fixed space, and the Gram
        // on the strict fixed space (nondegenerate iff T semisimple at 1)
        EigenSplit<K> sp = eigen_split(T);
        Matrix<K> compl_basis(h1.op.rows, sp.v_minus.cols + sp.w.cols, zero_like(ex));
        for (size_t j = 0; j < sp.v_minus.cols; ++j)
            for (size_t i = 0; i < h1.op.rows; ++i) compl_basis.at(i, j) = sp.v_minus.at(i, j);
        for (size_t j = 0; j < sp.w.cols; ++j)
            for (size_t i = 0; i < h1.op.rows; ++i)
                compl_basis.at(i, sp.v_minus.cols + j) = sp.w.at(i, j);
        if (compl_basis.cols) {
            Matrix<K> rest = restrict_to_invariant(h1.op, compl_basis);
            out.det_prime = det(Matrix<K>(Matrix<K>::identity(rest.rows, ex) - rest));
        } else {
            out.det_prime = one_like(ex);
        }
        Matrix<K> fixed = columns_from(right_kernel(oneminus), h1.op.rows, ex);
        Matrix<K> fixed_gram = fixed.transpose() * h1.gram * fixed;
        out.arv_gram_ok = !det(fixed_gram).is_zero();
    }
    return out;
}

template <class K>
SquareClass rt_circle(const IsometryMap<K>& A) {
    require_spinor_preconditions(A);
    const K ex = A.mat.a[0];
    Matrix<K> oneminus = Matrix<K>::identity(A.space.dim(), ex) - A.mat;
    size_t h = right_kernel(oneminus).size();
    if (h % 2) throw TorsqError("NotSpecialOrthogonal", "odd fixed space");
    SquareClass sign_cls = (h / 2) % 2 ? sq_classify(-one_like(ex)) : SquareClass::trivial(field_of(ex));
    return sq_mul(sign_cls, spinor_norm(A));
}

}  // namespace torsq
