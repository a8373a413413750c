// Quadratic spaces, isometries, generalized +-1 eigenspace splitting, and the
// Zassenhaus spinor norm
//
//   spinor(A) = det(1-A)|_W * disc(V+)
//
// on even-dimensional spaces of square discriminant, with the Taylor-leading-
// coefficient reformulation for vanishing det(1-A).
#pragma once

#include "torsq/genpoly.hpp"
#include "torsq/matrix.hpp"
#include "torsq/squareclass.hpp"

namespace torsq {

template <class K>
struct QuadraticSpace {
    Matrix<K> gram;  // symmetric, nondegenerate, even dimension

    size_t dim() const { return gram.rows; }
};

template <class K>
QuadraticSpace<K> make_quadratic_space(const Matrix<K>& gram, bool require_even_dim = true) {
    if (!gram.is_square()) throw TorsqError("Degenerate", "gram not square");
    if (gram != gram.transpose()) throw TorsqError("Degenerate", "gram not symmetric");
    if (gram.rows == 0 || det(gram).is_zero()) throw TorsqError("Degenerate", "gram singular");
    if (require_even_dim && gram.rows % 2) throw TorsqError("Degenerate", "odd dimension");
    return QuadraticSpace<K>{gram};
}

template <class K>
struct IsometryMap {
    QuadraticSpace<K> space;
    Matrix<K> mat;
    bool special = false;  // det = +1
};

template <class K>
IsometryMap<K> make_isometry(const QuadraticSpace<K>& V, const Matrix<K>& A) {
    if (A.rows != V.dim() || A.cols != V.dim()) throw TorsqError("NotIsometry", "shape");
    if (A.transpose() * V.gram * A != V.gram) throw TorsqError("NotIsometry", "A^t G A != G");
    K d = det(A);
    IsometryMap<K> m{V, A, d.is_one()};
    if (!m.special && !(d + one_like(d)).is_zero()) throw TorsqError("NotIsometry", "det not +-1");
    return m;
}

// Columns of `basis` span an A-invariant subspace; matrix of A restricted to
// it in that basis.
template <class K>
Matrix<K> restrict_to_invariant(const Matrix<K>& A, const Matrix<K>& basis) {
    if (basis.cols == 0) return Matrix<K>(0, 0, zero_like(A.a[0]));
    Matrix<K> img = A * basis;
    Matrix<K> out(basis.cols, basis.cols, zero_like(A.a[0]));
    for (size_t j = 0; j < img.cols; ++j) {
        std::vector<K> b(img.rows), x;
        for (size_t i = 0; i < img.rows; ++i) b[i] = img.at(i, j);
        if (!solve(basis, b, x)) throw TorsqError("NotIsometry", "subspace not invariant");
        for (size_t i = 0; i < basis.cols; ++i) out.at(i, j) = x[i];
    }
    return out;
}

template <class K>
Matrix<K> columns_from(const std::vector<std::vector<K>>& cols, size_t nrows, const K& exemplar) {
    Matrix<K> m(nrows, cols.size(), zero_like(exemplar));
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < nrows; ++i) m.at(i, j) = cols[j][i];
    return m;
}

template <class K>
struct EigenSplit {
    Matrix<K> v_plus;   // columns: basis of generalized +1 eigenspace
    Matrix<K> v_minus;  // generalized -1 eigenspace
    Matrix<K> w;        // the complementary invariant piece
};

template <class K>
EigenSplit<K> eigen_split(const IsometryMap<K>& A) {
    const size_t n = A.space.dim();
    const K ex = A.mat.a[0];
    Matrix<K> I = Matrix<K>::identity(n, ex);
    Matrix<K> P = (A.mat - I).pow(n, ex);
    Matrix<K> M = (A.mat + I).pow(n, ex);
    Matrix<K> vp = columns_from(right_kernel(P), n, ex);
    Matrix<K> vm = columns_from(right_kernel(M), n, ex);
    // W = image of P*M; column space basis
    Matrix<K> PM = P * M;
    Matrix<K> t = PM.transpose();
    auto pivots = rref(t);
    Matrix<K> w(n, pivots.size(), zero_like(ex));
    for (size_t r = 0; r < pivots.size(); ++r)
        for (size_t i = 0; i < n; ++i) w.at(i, r) = t.at(r, i);
    if (vp.cols + vm.cols + w.cols != n) throw TorsqError("NotIsometry", "split dimensions");
    // (V+ + V-) is gram-orthogonal to W
    Matrix<K> vpm(n, vp.cols + vm.cols, zero_like(ex));
    for (size_t j = 0; j < vp.cols; ++j)
        for (size_t i = 0; i < n; ++i) vpm.at(i, j) = vp.at(i, j);
    for (size_t j = 0; j < vm.cols; ++j)
        for (size_t i = 0; i < n; ++i) vpm.at(i, vp.cols + j) = vm.at(i, j);
    Matrix<K> cross = vpm.transpose() * A.space.gram * w;
    for (const K& x : cross.a)
        if (!x.is_zero()) throw TorsqError("NotIsometry", "eigen split not orthogonal");
    return {vp, vm, w};
}

template <class K>
SquareClass discriminant(const QuadraticSpace<K>& V) {
    return sq_classify(det(V.gram));
}

template <class K>
SquareClass subspace_disc(const Matrix<K>& gram, const Matrix<K>& basis_cols, const GroundField& f) {
    if (basis_cols.cols == 0) return SquareClass::trivial(f);
    K d = det(Matrix<K>(basis_cols.transpose() * gram * basis_cols));
    if (d.is_zero()) throw TorsqError("Degenerate", "restricted form degenerate");
    return sq_classify(d);
}

template <class K>
GroundField field_of(const K& exemplar);
template <>
inline GroundField field_of<Rational>(const Rational&) { return GroundField::rationals(); }
template <>
inline GroundField field_of<GaussianRational>(const GaussianRational&) { return GroundField::gaussian(); }
template <>
inline GroundField field_of<FFElem>(const FFElem& x) { return GroundField::of(x.F); }

template <class K>
void require_spinor_preconditions(const IsometryMap<K>& A) {
    if (!A.special) throw TorsqError("NotSpecialOrthogonal", "det(A) != 1");
    if (!discriminant(A.space).is_trivial())
        throw TorsqError("NonSquareDiscriminant", "space discriminant not a square");
}

template <class K>
SquareClass spinor_norm(const IsometryMap<K>& A) {
    require_spinor_preconditions(A);
    const GroundField f = field_of(A.mat.a[0]);
    EigenSplit<K> sp = eigen_split(A);
    SquareClass cls = subspace_disc(A.space.gram, sp.v_plus, f);
    if (sp.w.cols) {
        Matrix<K> aw = restrict_to_invariant(A.mat, sp.w);
        K d = det(Matrix<K>(Matrix<K>::identity(aw.rows, A.mat.a[0]) - aw));
        cls = sq_mul(cls, sq_classify(d));
    }
    return cls;
}

template <class K>
SquareClass det_one_minus(const IsometryMap<K>& A) {
    require_spinor_preconditions(A);
    K d = det(Matrix<K>(Matrix<K>::identity(A.space.dim(), A.mat.a[0]) - A.mat));
    if (d.is_zero()) throw TorsqError("SingularOneMinus", "1 is an eigenvalue");
    return sq_classify(d);
}

// Central-value style evaluation: the h-th Taylor coefficient of det(1-tA) at
// t=1, divided by the discriminant of the generalized fixed space.  Agrees
// with spinor_norm; both are computed and compared.
template <class K>
SquareClass l_star(const IsometryMap<K>& A) {
    require_spinor_preconditions(A);
    const GroundField f = field_of(A.mat.a[0]);
    auto p = det_one_minus_t(A.mat);        // det(1 - tA)
    auto taylor = poly_shift_one(p);        // coefficients around t = 1
    size_t h = 0;
    while (h < taylor.size() && taylor[h].is_zero()) ++h;
    if (h == taylor.size()) throw TorsqError("Degenerate", "det(1-tA) identically zero");
    EigenSplit<K> sp = eigen_split(A);
    if (sp.v_plus.cols != h) throw TorsqError("Degenerate", "vanishing order mismatch");
    SquareClass lead = sq_classify(taylor[h]);
    SquareClass cls = sq_mul(lead, subspace_disc(A.space.gram, sp.v_plus, f));
    SquareClass zass = spinor_norm(A);
    if (!(cls == zass)) throw TorsqError("Degenerate", "leading-coefficient and Zassenhaus forms disagree");
    return cls;
}

}  // namespace torsq
