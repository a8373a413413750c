// Based chain complexes, epsilon-symmetric pairings, boundary cones,
// determinant-line volume classes, Lagrangian square classes, and the
// chain-level Reidemeister torsion.
//
// Conventions, fixed once and tested against:
//  - elements are ROW vectors, differentials and pairings act on the right;
//  - the dual complex has q-th differential (-1)^{q+1} d^t;
//  - the cone differential is [[d, 0], [f, -d]];
//  - det(C) is coordinatized by the word vol(C_hi)^{e_hi} (x) ... (x)
//    vol(C_lo)^{e_lo}, e_j = (-1)^j, largest degree leftmost;
//  - (x (x) y)^{-1} = y^{-1} (x) x^{-1}; (l^{-1})^{-1} = (-1)^{parity} l;
//  - duality on lines is v_1...v_n -> (v_n^* ... v_1^*)^{-1}, the standard
//    identification twisted by (-1)^{n(n-1)/2}.
#pragma once

#include <map>
#include <optional>

#include "torsq/matrix.hpp"
#include "torsq/orth.hpp"
#include "torsq/squareclass.hpp"

namespace torsq {

template <class K>
struct BasedComplex {
    int lo = 0;
    std::vector<size_t> dims;      // dims[i] = dim C_{lo+i}
    std::vector<Matrix<K>> diffs;  // diffs[i] = d_{lo+i} : C_{lo+i} -> C_{lo+i+1}, row action
    K exemplar;

    int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
    size_t dim(int j) const {
        if (j < lo || j > hi()) return 0;
        return dims[static_cast<size_t>(j - lo)];
    }
    Matrix<K> diff(int j) const {
        if (j >= lo && j < hi()) {
            size_t i = static_cast<size_t>(j - lo);
            if (i < diffs.size() && diffs[i].rows == dim(j) && diffs[i].cols == dim(j + 1))
                return diffs[i];
        }
        return Matrix<K>::zeros(dim(j), dim(j + 1), exemplar);
    }
    void set_diff(int j, Matrix<K> d) {
        diffs.resize(dims.size());
        diffs[static_cast<size_t>(j - lo)] = std::move(d);
    }
    long long euler() const {
        long long chi = 0;
        for (int j = lo; j <= hi(); ++j) chi += (j % 2 ? -1ll : 1ll) * static_cast<long long>(dim(j));
        return chi;
    }
    int parity() const {
        size_t t = 0;
        for (auto d : dims) t += d;
        return static_cast<int>(t % 2);
    }
    bool strongly_even() const {
        for (auto d : dims)
            if (d % 2) return false;
        return true;
    }
    void validate() const {
        for (int j = lo; j < hi(); ++j) {
            Matrix<K> z = diff(j) * diff(j + 1);
            for (const K& x : z.a)
                if (!x.is_zero()) throw TorsqError("InputError", "d.d != 0");
        }
    }
};

template <class K>
BasedComplex<K> shift_complex(const BasedComplex<K>& C, int k) {
    BasedComplex<K> S = C;
    S.lo = C.lo - k;
    if (k % 2)
        for (auto& d : S.diffs) d = -d;
    return S;
}

template <class K>
BasedComplex<K> dual_complex(const BasedComplex<K>& C) {
    BasedComplex<K> D;
    D.exemplar = C.exemplar;
    D.lo = -C.hi();
    for (int j = C.hi(); j >= C.lo; --j) D.dims.push_back(C.dim(j));
    D.diffs.resize(D.dims.size());
    for (int q = D.lo; q < D.hi(); ++q) {
        Matrix<K> t = C.diff(-1 - q).transpose();
        D.set_diff(q, (q % 2 == 0) ? Matrix<K>(-t) : t);
    }
    return D;
}

template <class K>
BasedComplex<K> direct_sum(const BasedComplex<K>& A, const BasedComplex<K>& B) {
    BasedComplex<K> S;
    S.exemplar = A.dims.empty() ? B.exemplar : A.exemplar;
    S.lo = std::min(A.dims.empty() ? B.lo : A.lo, B.dims.empty() ? A.lo : B.lo);
    int hi = std::max(A.dims.empty() ? B.hi() : A.hi(), B.dims.empty() ? A.hi() : B.hi());
    for (int j = S.lo; j <= hi; ++j) S.dims.push_back(A.dim(j) + B.dim(j));
    S.diffs.resize(S.dims.size());
    for (int j = S.lo; j < hi; ++j) {
        Matrix<K> d(S.dim(j), S.dim(j + 1), zero_like(S.exemplar));
        Matrix<K> da = A.diff(j), db = B.diff(j);
        for (size_t r = 0; r < da.rows; ++r)
            for (size_t c = 0; c < da.cols; ++c) d.at(r, c) = da.at(r, c);
        for (size_t r = 0; r < db.rows; ++r)
            for (size_t c = 0; c < db.cols; ++c) d.at(A.dim(j) + r, A.dim(j + 1) + c) = db.at(r, c);
        S.set_diff(j, std::move(d));
    }
    return S;
}

// ---------------------------------------------------------------------------
// determinant-line scalars

namespace lines {

struct Factor {
    int key;
    int parity;
};

inline int koszul_sign(const std::vector<Factor>& src, const std::vector<int>& target_keys) {
    std::vector<int> pos(src.size());
    for (size_t i = 0; i < src.size(); ++i) {
        int p = -1;
        for (size_t t = 0; t < target_keys.size(); ++t)
            if (target_keys[t] == src[i].key) p = static_cast<int>(t);
        if (p < 0) throw std::logic_error("koszul: key missing");
        pos[i] = p;
    }
    int sign = 1;
    for (size_t i = 0; i < src.size(); ++i)
        for (size_t j = i + 1; j < src.size(); ++j)
            if (pos[i] > pos[j] && (src[i].parity & 1) && (src[j].parity & 1)) sign = -sign;
    return sign;
}

// row basis of the image of d (row convention)
template <class K>
Matrix<K> row_basis(Matrix<K> m, const K& exemplar) {
    auto piv = rref(m);
    Matrix<K> out(piv.size(), m.cols, zero_like(exemplar));
    for (size_t r = 0; r < piv.size(); ++r)
        for (size_t c = 0; c < m.cols; ++c) out.at(r, c) = m.at(r, c);
    return out;
}

// standard basis vectors completing span(rows) to K^n
template <class K>
Matrix<K> complement_rows(const Matrix<K>& rows, size_t n, const K& exemplar) {
    std::vector<size_t> chosen;
    Matrix<K> acc = rows;
    size_t cur_rank = rows.rows ? rank(rows) : 0;
    for (size_t i = 0; i < n && cur_rank < n; ++i) {
        Matrix<K> trial(acc.rows + 1, n, zero_like(exemplar));
        for (size_t r = 0; r < acc.rows; ++r)
            for (size_t c = 0; c < n; ++c) trial.at(r, c) = acc.at(r, c);
        trial.at(acc.rows, i) = one_like(exemplar);
        if (rank(trial) > cur_rank) {
            acc = trial;
            ++cur_rank;
            chosen.push_back(i);
        }
    }
    Matrix<K> out(chosen.size(), n, zero_like(exemplar));
    for (size_t r = 0; r < chosen.size(); ++r) out.at(r, chosen[r]) = one_like(exemplar);
    return out;
}

// {x : x d = 0} as rows
template <class K>
Matrix<K> left_kernel_rows(const Matrix<K>& d, size_t dim, const K& exemplar) {
    if (d.cols == 0 || d.rows == 0) return Matrix<K>::identity(dim, exemplar);
    auto ker = right_kernel(Matrix<K>(d.transpose()));
    Matrix<K> out(ker.size(), dim, zero_like(exemplar));
    for (size_t r = 0; r < ker.size(); ++r)
        for (size_t c = 0; c < dim; ++c) out.at(r, c) = ker[r][c];
    return out;
}

}  // namespace lines

// Scalar lambda of the s.e.s. identification g_B |-> lambda (g_A (x) g_Q) for
// a degreewise split A >-> B ->> Q; sub_rows/lift_rows indexed from B.lo.
template <class K>
K ses_scalar(const BasedComplex<K>& B, const std::vector<Matrix<K>>& sub_rows,
             const std::vector<Matrix<K>>& lift_rows) {
    K scalar = one_like(B.exemplar);
    std::vector<lines::Factor> word;
    for (int j = B.hi(); j >= B.lo; --j) {
        size_t idx = static_cast<size_t>(j - B.lo);
        size_t na = sub_rows[idx].rows, nq = lift_rows[idx].rows, nb = B.dim(j);
        if (na + nq != nb) throw TorsqError("InputError", "ses: dimensions do not add up");
        if (nb) {
            Matrix<K> M(nb, nb, zero_like(B.exemplar));
            for (size_t r = 0; r < na; ++r)
                for (size_t c = 0; c < nb; ++c) M.at(r, c) = sub_rows[idx].at(r, c);
            for (size_t r = 0; r < nq; ++r)
                for (size_t c = 0; c < nb; ++c) M.at(na + r, c) = lift_rows[idx].at(r, c);
            K d = det(M);
            if (d.is_zero()) throw TorsqError("InputError", "ses: chosen rows not a basis");
            // (vol A) ^ (vol lift) = det(M) vol(B_j): coordinate factor det^{-e_j}
            scalar = (j % 2 == 0) ? scalar / d : scalar * d;
        }
        int parA = static_cast<int>(na % 2), parQ = static_cast<int>(nq % 2);
        if (j % 2 == 0) {
            word.push_back({2 * j, parA});
            word.push_back({2 * j + 1, parQ});
        } else {  // inverse of a product reverses order
            word.push_back({2 * j + 1, parQ});
            word.push_back({2 * j, parA});
        }
    }
    std::vector<int> target;
    for (int j = B.hi(); j >= B.lo; --j) target.push_back(2 * j);
    for (int j = B.hi(); j >= B.lo; --j) target.push_back(2 * j + 1);
    if (lines::koszul_sign(word, target) < 0) scalar = -scalar;
    return scalar;
}

// Coordinate alpha of the acyclic volume form, a_X = alpha g_X.
template <class K>
K acyclic_volume(const BasedComplex<K>& X) {
    using namespace lines;
    const K one = one_like(X.exemplar);
    BasedComplex<K> cur = X;
    K lambda_total = one;
    while (true) {
        // drop zero levels at the bottom
        while (!cur.dims.empty() && cur.dims.front() == 0) {
            cur.dims.erase(cur.dims.begin());
            if (!cur.diffs.empty()) cur.diffs.erase(cur.diffs.begin());
            ++cur.lo;
        }
        if (cur.dims.empty()) break;
        int j = cur.lo;
        if (cur.dims.size() == 1) throw TorsqError("InputError", "complex not acyclic");
        // bottom degree: kernel must vanish, complement is everything
        Matrix<K> ker = lines::left_kernel_rows(cur.diff(j), cur.dim(j), cur.exemplar);
        if (ker.rows != 0) throw TorsqError("InputError", "complex not acyclic at bottom");
        Matrix<K> E = Matrix<K>::identity(cur.dim(j), cur.exemplar);
        Matrix<K> Bnext = cur.dim(j) ? Matrix<K>(E * cur.diff(j))
                                     : Matrix<K>(0, cur.dim(j + 1), zero_like(cur.exemplar));
        Matrix<K> Enext = lines::complement_rows(Bnext, cur.dim(j + 1), cur.exemplar);
        // peel Y = [C_j -> im d_j]; quotient has E-rows as its degree-(j+1) basis
        std::vector<Matrix<K>> sub(cur.dims.size(), Matrix<K>(0, 0, zero_like(cur.exemplar)));
        std::vector<Matrix<K>> lift(cur.dims.size(), Matrix<K>(0, 0, zero_like(cur.exemplar)));
        for (int d = cur.lo; d <= cur.hi(); ++d) {
            size_t ci = static_cast<size_t>(d - cur.lo);
            size_t n = cur.dim(d);
            if (d == j) {
                sub[ci] = E;
                lift[ci] = Matrix<K>(0, n, zero_like(cur.exemplar));
            } else if (d == j + 1) {
                sub[ci] = Bnext;
                lift[ci] = Enext;
            } else {
                sub[ci] = Matrix<K>(0, n, zero_like(cur.exemplar));
                lift[ci] = Matrix<K>::identity(n, cur.exemplar);
            }
        }
        lambda_total = lambda_total * ses_scalar(cur, sub, lift);
        // rest complex: degree j+1 in the Enext basis, higher degrees unchanged
        BasedComplex<K> rest;
        rest.exemplar = cur.exemplar;
        rest.lo = j + 1;
        for (int d = j + 1; d <= cur.hi(); ++d)
            rest.dims.push_back(d == j + 1 ? Enext.rows : cur.dim(d));
        rest.diffs.resize(rest.dims.size());
        for (int d = j + 1; d < cur.hi(); ++d) {
            if (d == j + 1)
                rest.set_diff(d, Enext.rows ? Matrix<K>(Enext * cur.diff(d))
                                            : Matrix<K>(0, cur.dim(d + 1), zero_like(cur.exemplar)));
            else
                rest.set_diff(d, cur.diff(d));
        }
        cur = std::move(rest);
    }
    // a_X = (prod lambda)^{-1} g_X: all two-term pieces have coordinate 1
    return one / lambda_total;
}

// theta: [C[1]] -> [C]^{-1}, theta(g_{C[1]}) = theta_scalar(C) * g_C^{-1}.
template <class K>
K theta_scalar(const BasedComplex<K>& C) {
    if (C.dims.empty()) return one_like(C.exemplar);
    // cone(1_C): cone_q = C_q (+) C_{q+1}
    BasedComplex<K> cone;
    cone.exemplar = C.exemplar;
    cone.lo = C.lo - 1;
    for (int q = cone.lo; q <= C.hi(); ++q) cone.dims.push_back(C.dim(q) + C.dim(q + 1));
    cone.diffs.resize(cone.dims.size());
    for (int q = cone.lo; q < C.hi(); ++q) {
        Matrix<K> d(cone.dim(q), cone.dim(q + 1), zero_like(C.exemplar));
        Matrix<K> dq = C.diff(q), dq1 = C.diff(q + 1);
        // rows: [x in C_q | y in C_{q+1}], image (x d_q + y, -y d_{q+1})
        for (size_t r = 0; r < dq.rows; ++r)
            for (size_t c = 0; c < dq.cols; ++c) d.at(r, c) = dq.at(r, c);
        for (size_t r = 0; r < C.dim(q + 1); ++r) d.at(C.dim(q) + r, r) = one_like(C.exemplar);
        for (size_t r = 0; r < dq1.rows; ++r)
            for (size_t c = 0; c < dq1.cols; ++c) d.at(C.dim(q) + r, C.dim(q + 1) + c) = -dq1.at(r, c);
        cone.set_diff(q, std::move(d));
    }
    K alpha = acyclic_volume(cone);
    std::vector<Matrix<K>> sub(cone.dims.size(), Matrix<K>(0, 0, zero_like(C.exemplar)));
    std::vector<Matrix<K>> lift(cone.dims.size(), Matrix<K>(0, 0, zero_like(C.exemplar)));
    for (int q = cone.lo; q <= cone.hi(); ++q) {
        size_t ci = static_cast<size_t>(q - cone.lo);
        Matrix<K> s(C.dim(q), cone.dim(q), zero_like(C.exemplar));
        for (size_t r = 0; r < C.dim(q); ++r) s.at(r, r) = one_like(C.exemplar);
        Matrix<K> l(C.dim(q + 1), cone.dim(q), zero_like(C.exemplar));
        for (size_t r = 0; r < C.dim(q + 1); ++r) l.at(r, C.dim(q) + r) = one_like(C.exemplar);
        sub[ci] = std::move(s);
        lift[ci] = std::move(l);
    }
    K lambda1 = ses_scalar(cone, sub, lift);
    return one_like(C.exemplar) / (alpha * lambda1);
}

// H^* data of a based complex: chosen boundary/homology-lift/transversal rows.
template <class K>
struct HomologyModel {
    BasedComplex<K> H;            // zero differentials, dims = h_j
    std::vector<Matrix<K>> reps;  // rows: cycle representatives of the H bases, from C.lo
    K caniso;                     // g_C |-> caniso * g_H under [C] ~ [H]
};

template <class K>
HomologyModel<K> homology_model(const BasedComplex<K>& C) {
    using namespace lines;
    const K one = one_like(C.exemplar);
    HomologyModel<K> out;
    out.H.exemplar = C.exemplar;
    out.H.lo = C.lo;
    size_t levels = C.dims.size();
    std::vector<Matrix<K>> Brow(levels + 1), Hrow(levels), Erow(levels);
    for (int j = C.lo; j <= C.hi(); ++j) {
        size_t i = static_cast<size_t>(j - C.lo);
        Matrix<K> ker = left_kernel_rows(C.diff(j), C.dim(j), C.exemplar);
        if (j == C.lo) Brow[0] = Matrix<K>(0, C.dim(j), zero_like(C.exemplar));
        // homology lifts: extend Brow[i] to a basis of ker
        Matrix<K> stacked(Brow[i].rows + ker.rows, C.dim(j), zero_like(C.exemplar));
        for (size_t r = 0; r < Brow[i].rows; ++r)
            for (size_t c = 0; c < C.dim(j); ++c) stacked.at(r, c) = Brow[i].at(r, c);
        // greedily pick kernel rows extending the boundary rows
        std::vector<std::vector<K>> hreps;
        Matrix<K> acc = Brow[i];
        size_t cur_rank = acc.rows ? rank(acc) : 0;
        if (cur_rank != acc.rows) throw std::logic_error("boundary rows dependent");
        for (size_t r = 0; r < ker.rows && hreps.size() + Brow[i].rows < ker.rows; ++r) {
            Matrix<K> trial(acc.rows + 1, C.dim(j), zero_like(C.exemplar));
            for (size_t rr = 0; rr < acc.rows; ++rr)
                for (size_t c = 0; c < C.dim(j); ++c) trial.at(rr, c) = acc.at(rr, c);
            for (size_t c = 0; c < C.dim(j); ++c) trial.at(acc.rows, c) = ker.at(r, c);
            if (rank(trial) > cur_rank) {
                acc = trial;
                ++cur_rank;
                std::vector<K> row(C.dim(j));
                for (size_t c = 0; c < C.dim(j); ++c) row[c] = ker.at(r, c);
                hreps.push_back(std::move(row));
            }
        }
        Hrow[i] = Matrix<K>(hreps.size(), C.dim(j), zero_like(C.exemplar));
        for (size_t r = 0; r < hreps.size(); ++r)
            for (size_t c = 0; c < C.dim(j); ++c) Hrow[i].at(r, c) = hreps[r][c];
        // transversal E: completes ker to C_j
        Erow[i] = complement_rows(acc, C.dim(j), C.exemplar);
        Brow[i + 1] = Erow[i].rows ? Matrix<K>(Erow[i] * C.diff(j))
                                   : Matrix<K>(0, C.dim(j + 1), zero_like(C.exemplar));
        out.H.dims.push_back(Hrow[i].rows);
    }
    out.H.diffs.resize(out.H.dims.size());
    out.reps = Hrow;

    // scalar: [C] -ses1-> [Z](x)[Q] -(1(x)theta)-> [Z](x)[B]^{-1}
    //         -ses2(x)1-> [B](x)[H](x)[B]^{-1} -swap+contract-> [H]
    std::vector<Matrix<K>> sub1(levels, Matrix<K>(0, 0, zero_like(C.exemplar))),
        lift1(levels, Matrix<K>(0, 0, zero_like(C.exemplar)));
    for (int j = C.lo; j <= C.hi(); ++j) {
        size_t i = static_cast<size_t>(j - C.lo);
        // Z rows: B then H
        Matrix<K> z(Brow[i].rows + Hrow[i].rows, C.dim(j), zero_like(C.exemplar));
        for (size_t r = 0; r < Brow[i].rows; ++r)
            for (size_t c = 0; c < C.dim(j); ++c) z.at(r, c) = Brow[i].at(r, c);
        for (size_t r = 0; r < Hrow[i].rows; ++r)
            for (size_t c = 0; c < C.dim(j); ++c) z.at(Brow[i].rows + r, c) = Hrow[i].at(r, c);
        sub1[i] = std::move(z);
        lift1[i] = Erow[i];
    }
    K lam1 = ses_scalar(C, sub1, lift1);

    // theta on the B-shape complex (zero differentials, dims of B shifted by 1:
    // Q_j ~ B_{j+1}): theta: [B[1]] -> [B]^{-1}
    BasedComplex<K> Bcpx;
    Bcpx.exemplar = C.exemplar;
    Bcpx.lo = C.lo;
    for (size_t i = 0; i <= levels; ++i) Bcpx.dims.push_back(i < levels + 1 ? Brow[i].rows : 0);
    while (!Bcpx.dims.empty() && Bcpx.dims.back() == 0) Bcpx.dims.pop_back();
    while (!Bcpx.dims.empty() && Bcpx.dims.front() == 0) {
        Bcpx.dims.erase(Bcpx.dims.begin());
        ++Bcpx.lo;
    }
    Bcpx.diffs.resize(Bcpx.dims.size());
    K lam_theta = theta_scalar(Bcpx);

    // ses2 degreewise on the zero-differential Z: B (x) H; bases are already
    // blocks in Z's coordinates, so only reordering signs appear.
    BasedComplex<K> Z;
    Z.exemplar = C.exemplar;
    Z.lo = C.lo;
    for (size_t i = 0; i < levels; ++i) Z.dims.push_back(Brow[i].rows + Hrow[i].rows);
    Z.diffs.resize(Z.dims.size());
    std::vector<Matrix<K>> sub2(levels, Matrix<K>(0, 0, zero_like(C.exemplar))),
        lift2(levels, Matrix<K>(0, 0, zero_like(C.exemplar)));
    for (size_t i = 0; i < levels; ++i) {
        Matrix<K> s(Brow[i].rows, Z.dims[i], zero_like(C.exemplar));
        for (size_t r = 0; r < Brow[i].rows; ++r) s.at(r, r) = one;
        Matrix<K> l(Hrow[i].rows, Z.dims[i], zero_like(C.exemplar));
        for (size_t r = 0; r < Hrow[i].rows; ++r) l.at(r, Brow[i].rows + r) = one;
        sub2[i] = std::move(s);
        lift2[i] = std::move(l);
    }
    K lam2 = ses_scalar(Z, sub2, lift2);

    int parB = 0, parH = 0;
    for (size_t i = 0; i <= levels; ++i) parB += static_cast<int>(Brow[i].rows);
    for (size_t i = 0; i < levels; ++i) parH += static_cast<int>(Hrow[i].rows);
    K sign = (parB % 2 && parH % 2) ? -one : one;
    out.caniso = lam1 * lam2 * lam_theta * sign;
    return out;
}

// ---------------------------------------------------------------------------
// epsilon-symmetric complexes

template <class K>
struct SymmetricComplex {
    BasedComplex<K> C;
    int n = 0;    // dimension
    int eps = 1;  // +1 symmetric, -1 skew
    std::map<int, Matrix<K>> pairing;  // p -> T_{p, n-p} (dim_p x dim_{n-p})

    Matrix<K> T(int p) const {
        auto it = pairing.find(p);
        if (it != pairing.end()) return it->second;
        return Matrix<K>::zeros(C.dim(p), C.dim(n - p), C.exemplar);
    }
};

template <class K>
void validate_symmetric(const SymmetricComplex<K>& S) {
    S.C.validate();
    const int n = S.n;
    for (int p = S.C.lo; p <= S.C.hi(); ++p) {
        int q = n - p;
        Matrix<K> Tpq = S.T(p);
        if (Tpq.rows != S.C.dim(p) || Tpq.cols != S.C.dim(q))
            throw TorsqError("NotClosed", "pairing block shape");
        // symmetry: T_{p,q} = eps (-1)^{pq} T_{q,p}^t
        Matrix<K> rhs = S.T(q).transpose();
        int s = ((p * q) % 2 ? -1 : 1) * S.eps;
        if (s < 0) rhs = -rhs;
        if (Tpq != rhs) throw TorsqError("NotClosed", "pairing not eps-symmetric");
        // closedness: d_{p-1} T_{p,q} + (-1)^{p-1} T_{p-1,q+1} d_q^t = 0
        Matrix<K> lhs = S.C.diff(p - 1) * Tpq;
        Matrix<K> other = S.T(p - 1) * S.C.diff(q).transpose();
        if ((p - 1) % 2) other = -other;
        Matrix<K> sum = lhs + other;
        for (const K& x : sum.a)
            if (!x.is_zero()) throw TorsqError("NotClosed", "pairing not closed");
    }
}

// duality chain map f: C -> C^v[-n]; f_p = T_{p,n-p} in row convention.
template <class K>
struct DualityMap {
    std::vector<Matrix<K>> blocks;  // from C.lo
    bool strict = true;
};

template <class K>
Matrix<K> dual_shifted_diff(const SymmetricComplex<K>& S, int j) {
    // differential of C^v[-n] at degree j: (-1)^{j+1} (d_{n-1-j})^t
    Matrix<K> t = S.C.diff(S.n - 1 - j).transpose();
    return (j % 2 == 0) ? Matrix<K>(-t) : t;
}

template <class K>
DualityMap<K> duality_map(const SymmetricComplex<K>& S) {
    validate_symmetric(S);
    DualityMap<K> f;
    for (int p = S.C.lo; p <= S.C.hi(); ++p) {
        Matrix<K> Tp = S.T(p);
        // chain condition: d_{p} T_{p+1} = T_p * dual_diff(p)
        Matrix<K> lhs = S.C.diff(p) * S.T(p + 1);
        Matrix<K> rhs = Tp * dual_shifted_diff(S, p);
        if (lhs != rhs) throw TorsqError("NotClosed", "duality map not a chain map");
        if (Tp.rows != Tp.cols || (Tp.rows && det(Tp).is_zero())) f.strict = false;
        f.blocks.push_back(std::move(Tp));
    }
    return f;
}

// boundary cone D = cone(f: C -> C^v[-n]) with its strict pairing in
// dimension n-1.  D_q = C_{n-q}^* (+) C_{q+1} with the dual basis first.
template <class K>
SymmetricComplex<K> boundary_cone(const SymmetricComplex<K>& S) {
    validate_symmetric(S);
    const int n = S.n;
    const K one = one_like(S.C.exemplar);
    SymmetricComplex<K> D;
    D.eps = S.eps;
    D.n = n - 1;
    D.C.exemplar = S.C.exemplar;
    D.C.lo = std::min(n - S.C.hi(), S.C.lo - 1);
    int hi = std::max(n - S.C.lo, S.C.hi() - 1);
    for (int q = D.C.lo; q <= hi; ++q) D.C.dims.push_back(S.C.dim(n - q) + S.C.dim(q + 1));
    D.C.diffs.resize(D.C.dims.size());
    for (int q = D.C.lo; q < hi; ++q) {
        Matrix<K> d(D.C.dim(q), D.C.dim(q + 1), zero_like(one));
        // psi-block: Delta_q = (-1)^{q+1} d_{n-q-1}^t : C_{n-q}^* -> C_{n-q-1}^*
        Matrix<K> delta = dual_shifted_diff(S, q);
        for (size_t r = 0; r < delta.rows; ++r)
            for (size_t c = 0; c < delta.cols; ++c) d.at(r, c) = delta.at(r, c);
        // c-block: f_{q+1} = T_{q+1, n-q-1} into the psi-part, -d_{q+1} into the c-part
        Matrix<K> f = S.T(q + 1);
        for (size_t r = 0; r < f.rows; ++r)
            for (size_t c = 0; c < f.cols; ++c) d.at(S.C.dim(n - q) + r, c) = f.at(r, c);
        Matrix<K> dq1 = S.C.diff(q + 1);
        for (size_t r = 0; r < dq1.rows; ++r)
            for (size_t c = 0; c < dq1.cols; ++c)
                d.at(S.C.dim(n - q) + r, S.C.dim(n - q - 1) + c) = -dq1.at(r, c);
        D.C.set_diff(q, std::move(d));
    }
    // pairing: T^D_{p,q}((psi,c),(psi',c')) = a psi(c') + b psi'(c),
    // a = (-1)^p; b = eps for n odd, -(-1)^p eps for n even.
    for (int p = D.C.lo; p <= D.C.hi(); ++p) {
        int q = n - 1 - p;
        Matrix<K> T(D.C.dim(p), D.C.dim(q), zero_like(one));
        size_t psi_p = S.C.dim(n - p), c_p = S.C.dim(p + 1);
        size_t psi_q = S.C.dim(n - q), c_q = S.C.dim(q + 1);
        (void)c_p;
        K a = (p % 2) ? -one : one;
        K b = (n % 2) ? (S.eps < 0 ? -one : one)
                      : ((p % 2 == 0) == (S.eps < 0) ? one : -one);  // -(-1)^p eps
        // psi(c'): rows 0..psi_p-1 (dual of C_{n-p} = C_{q+1}), cols psi_q..: c' in C_{q+1}
        for (size_t i = 0; i < psi_p; ++i) T.at(i, psi_q + i) = a;
        // psi'(c): rows psi_p.. (c in C_{p+1}), cols 0..psi_q-1 (dual of C_{n-q} = C_{p+1})
        for (size_t i = 0; i < S.C.dim(p + 1); ++i) T.at(psi_p + i, i) = b;
        D.pairing[p] = std::move(T);
    }
    validate_symmetric(D);
    return D;
}

// change of basis: rows of Q_j express the new basis in the old coordinates
template <class K>
SymmetricComplex<K> change_basis(const SymmetricComplex<K>& S, const std::vector<Matrix<K>>& Q) {
    SymmetricComplex<K> R = S;
    for (int j = S.C.lo; j <= S.C.hi(); ++j) {
        size_t i = static_cast<size_t>(j - S.C.lo);
        if (j < S.C.hi()) {
            Matrix<K> Qn_inv = inverse(Q[i + 1]);
            R.C.set_diff(j, Matrix<K>(Q[i] * S.C.diff(j) * Qn_inv));
        }
    }
    for (auto& [p, T] : R.pairing) {
        size_t i = static_cast<size_t>(p - S.C.lo);
        size_t iq = static_cast<size_t>(S.n - p - S.C.lo);
        T = Q[i] * S.T(p) * Q[iq].transpose();
    }
    return R;
}

// Semicharacteristic sum_{j < mid} (-1)^j dim H^j modulo 2.
template <class K>
int semicharacteristic(const BasedComplex<K>& C, int mid) {
    auto hm = homology_model(C);
    int chi = 0;
    for (int j = hm.H.lo; j <= hm.H.hi() && j < mid; ++j) chi += static_cast<int>(hm.H.dim(j));
    return chi % 2;
}

// Strict model on cohomology with the induced (symmetrized) pairing.
template <class K>
SymmetricComplex<K> strictify(const SymmetricComplex<K>& S, HomologyModel<K>* model_out = nullptr) {
    validate_symmetric(S);
    auto hm = homology_model(S.C);
    SymmetricComplex<K> R;
    R.C = hm.H;
    R.n = S.n;
    R.eps = S.eps;
    for (int p = R.C.lo; p <= R.C.hi(); ++p) {
        int q = S.n - p;
        if (q < R.C.lo || q > R.C.hi()) {
            if (R.C.dim(p)) throw TorsqError("NotPoincare", "unpaired cohomology");
            continue;
        }
        size_t ip = static_cast<size_t>(p - R.C.lo), iq = static_cast<size_t>(q - R.C.lo);
        Matrix<K> T = hm.reps[ip] * S.T(p) * hm.reps[iq].transpose();
        // symmetrize
        int sgn = ((p * q) % 2 ? -1 : 1) * S.eps;
        Matrix<K> sym = S.T(q).rows ? Matrix<K>(hm.reps[iq] * S.T(q) * hm.reps[ip].transpose())
                                    : Matrix<K>::zeros(R.C.dim(q), R.C.dim(p), S.C.exemplar);
        Matrix<K> symT = sym.transpose();
        if (sgn < 0) symT = -symT;
        K half = one_like(S.C.exemplar) / (one_like(S.C.exemplar) + one_like(S.C.exemplar));
        T = (T + symT) * half;
        if (T.rows != T.cols || (T.rows && det(T).is_zero()))
            throw TorsqError("NotPoincare", "induced pairing on cohomology degenerate");
        R.pairing[p] = std::move(T);
    }
    validate_symmetric(R);
    if (model_out) *model_out = std::move(hm);
    return R;
}

// Lagrangian data: rows of L_j inside the ambient strict complex, from C.lo.
// Returns the Lagrangian square class nu_L as a class of coordinates w.r.t.
// the ambient distinguished volume g_C.
template <class K>
SquareClass lagrangian_volume(const SymmetricComplex<K>& S, const std::vector<Matrix<K>>& Lrows) {
    const int n = S.n;
    if (n % 2 == 0) throw TorsqError("NotLagrangian", "ambient dimension must be odd");
    const K one = one_like(S.C.exemplar);
    size_t levels = S.C.dims.size();
    if (Lrows.size() != levels) throw TorsqError("NotLagrangian", "row data size");
    // exactness data: quotient map at degree j is x -> (T_{j, n-j} L_{n-j}^t) x
    std::vector<Matrix<K>> lifts(levels, Matrix<K>(0, 0, zero_like(one)));
    for (int j = S.C.lo; j <= S.C.hi(); ++j) {
        size_t ij = static_cast<size_t>(j - S.C.lo);
        int nj = n - j;
        Matrix<K> Lnj = (nj >= S.C.lo && nj <= S.C.hi())
                            ? Lrows[static_cast<size_t>(nj - S.C.lo)]
                            : Matrix<K>(0, S.C.dim(nj), zero_like(one));
        if (Lrows[ij].rows + Lnj.rows != S.C.dim(j))
            throw TorsqError("NotLagrangian", "L + L^perp dimension mismatch");
        Matrix<K> P = S.T(j) * Lnj.transpose();  // dim_j x dim L_{n-j}
        // isotropy: L_j P = 0
        if (Lrows[ij].rows) {
            Matrix<K> z = Lrows[ij] * P;
            for (const K& x : z.a)
                if (!x.is_zero()) throw TorsqError("NotLagrangian", "L not isotropic");
        }
        // lift rows: solve u P = e_k
        Matrix<K> Pt = P.transpose();
        Matrix<K> lift(Lnj.rows, S.C.dim(j), zero_like(one));
        for (size_t k = 0; k < Lnj.rows; ++k) {
            std::vector<K> e(Lnj.rows, zero_like(one)), u;
            e[k] = one;
            if (!solve(Pt, e, u)) throw TorsqError("NotLagrangian", "quotient map not surjective");
            for (size_t c = 0; c < S.C.dim(j); ++c) lift.at(k, c) = u[c];
        }
        lifts[ij] = std::move(lift);
    }
    K lam_ses = ses_scalar(S.C, Lrows, lifts);

    // L as a complex (restricted differential)
    BasedComplex<K> L;
    L.exemplar = S.C.exemplar;
    L.lo = S.C.lo;
    for (size_t i = 0; i < levels; ++i) L.dims.push_back(Lrows[i].rows);
    L.diffs.resize(L.dims.size());
    for (int j = L.lo; j < L.hi(); ++j) {
        size_t ij = static_cast<size_t>(j - L.lo);
        if (!Lrows[ij].rows) continue;
        // express L_j d_j in the L_{j+1} row basis
        Matrix<K> img = Lrows[ij] * S.C.diff(j);
        Matrix<K> dj(Lrows[ij].rows, Lrows[ij + 1].rows, zero_like(one));
        for (size_t r = 0; r < img.rows; ++r) {
            std::vector<K> b(img.cols), x;
            for (size_t c = 0; c < img.cols; ++c) b[c] = img.at(r, c);
            Matrix<K> Lt = Lrows[ij + 1].transpose();
            if (!solve(Lt, b, x)) throw TorsqError("NotLagrangian", "L not a subcomplex");
            for (size_t c = 0; c < x.size(); ++c) dj.at(r, c) = x[c];
        }
        L.set_diff(j, std::move(dj));
    }
    L.validate();

    // rho: [L^v[-n]] -> [L], via iterated theta and the duality map
    BasedComplex<K> Ldual = dual_complex(L);
    int par = L.parity();
    K c = one;
    int k = n, invflag = 0;
    while (k > 0) {
        // step [L^v[-k]] -> [L^v[-(k-1)]]^{-1}, scalar theta(L^v[-k]) (-1)^par
        K s = theta_scalar(shift_complex(Ldual, -k)) * ((par % 2) ? -one : one);
        if (invflag == 0) {
            c = c * s;
            invflag = 1;
        } else {
            c = c / s;
            if (par % 2) c = -c;
            invflag = 0;
        }
        --k;
    }
    if (invflag != 1) throw std::logic_error("odd shift should end in an inverse line");
    // now at [L^v]^{-1}; apply A^{-1}: [L^v]^{-1} -> [L]
    K nu = one;
    for (int j = L.lo; j <= L.hi(); ++j) {
        size_t m = L.dim(j);
        // alterdual scalar (-1)^{m(m-1)/2}; extra (-1)^m from double inverse on odd degrees
        if (((m * (m - 1) / 2) % 2) != 0) nu = -nu;
        if (j % 2 && m % 2) nu = -nu;
    }
    c = c / nu;

    // total: g_C |-> lam_ses (g_L (x) g_{L^v[-n]}) |-> lam_ses * c (g_L (x) g_L).
    // The theta iteration across a level of degree j accumulates
    // (-1)^{j(j+1)/2} per basis vector; only odd-dimensional levels survive
    // modulo squares.
    K total = lam_ses * c;
    for (int j = L.lo; j <= L.hi(); ++j)
        if ((L.dim(j) % 2) && ((static_cast<long long>(j) * (j + 1) / 2) % 2)) total = -total;
    return sq_classify(total);
}

// Reidemeister torsion square class of a strict (or Poincare) odd-dimensional
// complex with distinguished bases; e_coord is the coordinate of the
// triangulation volume form w.r.t. the distinguished basis volume.
template <class K>
SquareClass rt_chain(const SymmetricComplex<K>& S, const K& e_coord) {
    validate_symmetric(S);
    if (S.n % 2 == 0) throw TorsqError("NotStrict", "odd dimension required");
    // parity matching: n = 2k-1 needs eps = (-1)^{k+1}
    int kk = (S.n + 1) / 2;
    int want = (kk + 1) % 2 ? -1 : 1;
    if (S.eps != want) throw TorsqError("NotStrict", "parity does not match dimension");
    HomologyModel<K> hm;
    SymmetricComplex<K> H = strictify(S, &hm);
    // Lagrangian: upper half of cohomology, degrees >= k
    size_t levels = H.C.dims.size();
    std::vector<Matrix<K>> Lrows(levels, Matrix<K>(0, 0, zero_like(S.C.exemplar)));
    for (int j = H.C.lo; j <= H.C.hi(); ++j) {
        size_t i = static_cast<size_t>(j - H.C.lo);
        Lrows[i] = (j >= kk) ? Matrix<K>::identity(H.C.dim(j), S.C.exemplar)
                             : Matrix<K>(0, H.C.dim(j), zero_like(S.C.exemplar));
    }
    SquareClass nu = lagrangian_volume(H, Lrows);  // class of coordinate w.r.t. g_H
    // transport e_X: e_coord g_C |-> e_coord * caniso * g_H
    SquareClass e_cls = sq_classify(K(e_coord * hm.caniso));
    return sq_mul(e_cls, nu);
}

template <class K>
SquareClass rt_chain(const SymmetricComplex<K>& S) {
    return rt_chain(S, one_like(S.C.exemplar));
}

// ---------------------------------------------------------------------------
// the (a) = (b) = (-1)^r (c) comparison for boundary cones

template <class K>
struct AbcReport {
    SquareClass a, b, c;
    int r = 0;
    bool holds = false;
};

template <class K>
AbcReport<K> verify_abc(const SymmetricComplex<K>& S) {
    validate_symmetric(S);
    if (S.eps != -1) throw TorsqError("PreconditionViolated", "skew pairing required");
    if (S.n % 4 != 0) throw TorsqError("PreconditionViolated", "dimension must be 0 mod 4");
    if (!S.C.strongly_even()) throw TorsqError("PreconditionViolated", "complex not strongly even");
    const int n = S.n;
    const K one = one_like(S.C.exemplar);
    SymmetricComplex<K> D = boundary_cone(S);
    size_t levels = D.C.dims.size();

    // (a): Lagrangian C^v[-n], the first block of each cone level
    std::vector<Matrix<K>> La(levels, Matrix<K>(0, 0, zero_like(one)));
    for (int q = D.C.lo; q <= D.C.hi(); ++q) {
        size_t i = static_cast<size_t>(q - D.C.lo);
        size_t npsi = S.C.dim(n - q);
        Matrix<K> rows(npsi, D.C.dim(q), zero_like(one));
        for (size_t r = 0; r < npsi; ++r) rows.at(r, r) = one;
        La[i] = std::move(rows);
    }
    SquareClass a = lagrangian_volume(D, La);

    // (b): brutal truncation sigma_{>= k}, k = n/2
    int kk = n / 2;
    std::vector<Matrix<K>> Lb(levels, Matrix<K>(0, 0, zero_like(one)));
    for (int q = D.C.lo; q <= D.C.hi(); ++q) {
        size_t i = static_cast<size_t>(q - D.C.lo);
        Lb[i] = (q >= kk) ? Matrix<K>::identity(D.C.dim(q), one)
                          : Matrix<K>(0, D.C.dim(q), zero_like(one));
    }
    SquareClass b = lagrangian_volume(D, Lb);

    // (c): cohomology Lagrangian transported back through [D] ~ [H]
    HomologyModel<K> hm;
    SymmetricComplex<K> H = strictify(D, &hm);
    size_t hlevels = H.C.dims.size();
    std::vector<Matrix<K>> Lc(hlevels, Matrix<K>(0, 0, zero_like(one)));
    for (int j = H.C.lo; j <= H.C.hi(); ++j) {
        size_t i = static_cast<size_t>(j - H.C.lo);
        Lc[i] = (j >= kk) ? Matrix<K>::identity(H.C.dim(j), one)
                          : Matrix<K>(0, H.C.dim(j), zero_like(one));
    }
    SquareClass c_in_H = lagrangian_volume(H, Lc);
    SquareClass c = sq_mul(sq_classify(hm.caniso), c_in_H);

    AbcReport<K> rep;
    rep.a = a;
    rep.b = b;
    rep.c = c;
    long long chiC = S.C.euler();
    int chihalf = 0;  // sum_{j < (n-1)/2} (-1)^j h^j(D)
    for (int j = hm.H.lo; j <= hm.H.hi() && 2 * j < n - 1; ++j)
        chihalf += (j % 2 ? -1 : 1) * static_cast<int>(hm.H.dim(j));
    long long rsum = chiC + chihalf;
    if (rsum % 2) throw TorsqError("PreconditionViolated", "chi(C) + chi_1/2(D) odd");
    rep.r = static_cast<int>(((rsum / 2) % 2 + 2) % 2);
    SquareClass c_signed = rep.r ? sq_mul(sq_classify(-one), rep.c) : rep.c;
    rep.holds = (rep.a == rep.b) && (rep.b == c_signed);
    return rep;
}

// Splitting of a strict 1-symmetric 1-dimensional complex:
// S ~ Q (+) Q^v[-1] (+) R with R acyclic two-term in degrees {0,1}.
template <class K>
struct StrictSplit {
    std::vector<Matrix<K>> q_rows, qdual_rows, r_rows;  // rows in S coordinates, per level from lo
};

template <class K>
StrictSplit<K> split_strict(const SymmetricComplex<K>& S) {
    validate_symmetric(S);
    if (S.n != 1 || S.eps != 1) throw TorsqError("NotStrict", "need a strict 1-symmetric 1-complex");
    auto f = duality_map(S);
    if (!f.strict) throw TorsqError("NotStrict", "duality map not an isomorphism");
    const K one = one_like(S.C.exemplar);
    size_t levels = S.C.dims.size();
    StrictSplit<K> out;
    out.q_rows.assign(levels, Matrix<K>(0, 0, zero_like(one)));
    out.qdual_rows.assign(levels, Matrix<K>(0, 0, zero_like(one)));
    out.r_rows.assign(levels, Matrix<K>(0, 0, zero_like(one)));
    for (int j = S.C.lo; j <= S.C.hi(); ++j) {
        size_t i = static_cast<size_t>(j - S.C.lo);
        size_t nj = S.C.dim(j);
        if (j <= -1) {
            out.q_rows[i] = Matrix<K>::identity(nj, one);
        } else if (j >= 2) {
            out.qdual_rows[i] = Matrix<K>::identity(nj, one);
        } else if (j == 0) {
            // Z_0 = ker d_0 -> Q; complement E_0 -> R
            Matrix<K> Z = lines::left_kernel_rows(S.C.diff(0), nj, one);
            out.q_rows[i] = Z;
            out.r_rows[i] = lines::complement_rows(Z, nj, one);
        } else {  // j == 1
            // B_1 = im d_0 -> R; E_1 = f^{-1}(annihilator-dual of Z_0) -> Q^v part
            Matrix<K> B = lines::row_basis(Matrix<K>(S.C.diff(0)), one);
            out.r_rows[i] = B;
            // E_1: preimage under T_{1,0} of the span of the Z_0-dual vectors:
            // choose rows e with <e, E_0-part> = 0 w.r.t. the pairing into C_0:
            // concretely: rows u with u T_{1,0} E_0^t = 0 extended to a complement of B
            Matrix<K> E0 = out.r_rows[static_cast<size_t>(-S.C.lo)];  // degree 0 complement
            Matrix<K> cond = S.T(1) * E0.transpose();                 // dim C1 x |E0|
            // kernel rows of x -> x cond
            Matrix<K> ker = lines::left_kernel_rows(cond, nj, one);
            // intersect: rows of ker independent from B
            Matrix<K> acc = B;
            size_t cur = acc.rows ? rank(acc) : 0;
            std::vector<size_t> picked;
            for (size_t r = 0; r < ker.rows; ++r) {
                Matrix<K> trial(acc.rows + 1, nj, zero_like(one));
                for (size_t rr = 0; rr < acc.rows; ++rr)
                    for (size_t cc = 0; cc < nj; ++cc) trial.at(rr, cc) = acc.at(rr, cc);
                for (size_t cc = 0; cc < nj; ++cc) trial.at(acc.rows, cc) = ker.at(r, cc);
                if (rank(trial) > cur) {
                    acc = trial;
                    ++cur;
                    picked.push_back(r);
                }
            }
            Matrix<K> E1(picked.size(), nj, zero_like(one));
            for (size_t r = 0; r < picked.size(); ++r)
                for (size_t cc = 0; cc < nj; ++cc) E1.at(r, cc) = ker.at(picked[r], cc);
            out.qdual_rows[i] = std::move(E1);
        }
    }
    return out;
}

}  // namespace torsq
