// Seeded random based complexes and closed epsilon-symmetric pairings, used
// by the randomized verification suites and the complex-check command.
#pragma once

#include "torsq/complexes.hpp"

namespace torsq {

struct LineRng {
    uint64_t s;
    explicit LineRng(uint64_t seed) : s(seed ? seed : 0x9e3779b9) {}
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long long in(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
};

template <class K>
K small_scalar(LineRng& rng, const K& exemplar, int spread = 2);
inline Rational small_scalar(LineRng& rng, const Rational&, int spread) {
    return Rational(rng.in(-spread, spread));
}
inline GaussianRational small_scalar(LineRng& rng, const GaussianRational&, int spread) {
    return GaussianRational(Rational(rng.in(-spread, spread)), Rational(rng.in(-spread, spread)));
}
inline FFElem small_scalar(LineRng& rng, const FFElem& x, int) {
    return x.F->from_ordinal(rng.next() % x.F->size());
}

// d^2 = 0 via a staircase profile conjugated by random invertible matrices.
template <class K>
BasedComplex<K> random_based_complex(LineRng& rng, int lo, int levels, size_t maxdim,
                                     const K& exemplar, bool force_even_dims = false) {
    BasedComplex<K> C;
    C.exemplar = exemplar;
    C.lo = lo;
    std::vector<size_t> ranks(static_cast<size_t>(levels), 0);
    for (int i = 0; i < levels; ++i) {
        size_t d = 1 + static_cast<size_t>(rng.in(0, static_cast<long long>(maxdim - 1)));
        if (force_even_dims) d = 2 * ((d + 1) / 2);
        C.dims.push_back(d);
    }
    C.diffs.resize(C.dims.size());
    for (int i = 0; i + 1 < levels; ++i) {
        size_t prev = i ? ranks[static_cast<size_t>(i - 1)] : 0;
        size_t cap = std::min(C.dims[static_cast<size_t>(i)] - prev, C.dims[static_cast<size_t>(i + 1)]);
        ranks[static_cast<size_t>(i)] = cap ? static_cast<size_t>(rng.in(0, static_cast<long long>(cap))) : 0;
    }
    // staircase: last r_i basis vectors of level i map to the first r_i of level i+1,
    // offset past the incoming image to keep d.d = 0
    for (int i = 0; i + 1 < levels; ++i) {
        size_t r = ranks[static_cast<size_t>(i)];
        Matrix<K> d(C.dims[static_cast<size_t>(i)], C.dims[static_cast<size_t>(i + 1)], zero_like(exemplar));
        for (size_t t = 0; t < r; ++t)
            d.at(C.dims[static_cast<size_t>(i)] - r + t, t) = one_like(exemplar);
        C.set_diff(lo + i, std::move(d));
    }
    // sanity: incoming image occupies the first ranks[i-1] vectors, outgoing
    // uses the last ranks[i]; the profile above guarantees disjointness
    C.validate();
    // conjugate by random invertible basis changes
    for (int i = 0; i < levels; ++i) {
        size_t n = C.dims[static_cast<size_t>(i)];
        Matrix<K> Q(n, n, zero_like(exemplar));
        do {
            for (auto& x : Q.a) x = small_scalar(rng, exemplar, 2);
        } while (n && det(Q).is_zero());
        // new differential: Q_i d Q_{i+1}^{-1} pattern, applied incrementally
        if (i + 1 <= levels - 1) C.set_diff(lo + i, Matrix<K>(Q * C.diff(lo + i)));
        if (i > 0) {
            Matrix<K> Qi = inverse(Q);
            C.set_diff(lo + i - 1, Matrix<K>(C.diff(lo + i - 1) * Qi));
        }
    }
    C.validate();
    return C;
}

// Random closed eps-symmetric pairing of dimension n on C (possibly zero).
// Solves the closedness+symmetry linear system and picks a random kernel
// combination.
template <class K>
SymmetricComplex<K> random_closed_pairing(LineRng& rng, const BasedComplex<K>& C, int n, int eps,
                                          int tries = 8) {
    const K one = one_like(C.exemplar);
    // unknown blocks: T_p for p <= n-p within range; T_{n-p} from symmetry
    struct Block {
        int p;
        size_t rows, cols, offset;
        bool diagonal;  // p == n-p
    };
    std::vector<Block> blocks;
    size_t nvars = 0;
    for (int p = C.lo; p <= C.hi(); ++p) {
        int q = n - p;
        if (p > q || q < C.lo || q > C.hi()) continue;
        if (!C.dim(p) || !C.dim(q)) continue;
        blocks.push_back({p, C.dim(p), C.dim(q), nvars, p == q});
        nvars += C.dim(p) * C.dim(q);
    }
    auto blocks_to_pairing = [&](const std::vector<K>& v) {
        SymmetricComplex<K> S;
        S.C = C;
        S.n = n;
        S.eps = eps;
        for (auto& b : blocks) {
            Matrix<K> T(b.rows, b.cols, zero_like(one));
            for (size_t i = 0; i < b.rows; ++i)
                for (size_t j = 0; j < b.cols; ++j) T.at(i, j) = v[b.offset + i * b.cols + j];
            S.pairing[b.p] = T;
            if (!b.diagonal) {
                // T_{q,p} = eps (-1)^{pq} T_{p,q}^t
                Matrix<K> Tt = T.transpose();
                int s = ((b.p * (n - b.p)) % 2 ? -1 : 1) * eps;
                S.pairing[n - b.p] = s < 0 ? Matrix<K>(-Tt) : Tt;
            }
        }
        return S;
    };
    if (nvars == 0) return blocks_to_pairing({});

    // linear conditions: diagonal symmetry + closedness, assembled row by row
    std::vector<std::vector<K>> rows;
    auto add_row = [&](std::vector<K> r) { rows.push_back(std::move(r)); };
    auto var_index = [&](int p, size_t i, size_t j, bool* transposed, int* sign) -> size_t {
        // entry T_{p,n-p}(i,j); may live in the transposed stored block
        for (auto& b : blocks) {
            if (b.p == p) {
                *transposed = false;
                *sign = 1;
                return b.offset + i * b.cols + j;
            }
            if (n - b.p == p && !b.diagonal) {
                *transposed = true;
                *sign = ((b.p * (n - b.p)) % 2 ? -1 : 1) * eps;
                return b.offset + j * b.cols + i;
            }
        }
        throw std::logic_error("pairing block not found");
    };
    // diagonal blocks must satisfy T = eps (-1)^{p^2} T^t
    for (auto& b : blocks) {
        if (!b.diagonal) continue;
        int s = ((b.p * b.p) % 2 ? -1 : 1) * eps;
        for (size_t i = 0; i < b.rows; ++i)
            for (size_t j = 0; j < b.cols; ++j) {
                std::vector<K> r(nvars, zero_like(one));
                r[b.offset + i * b.cols + j] += one;
                K sgn = s < 0 ? -one : one;
                r[b.offset + j * b.cols + i] -= sgn;
                add_row(std::move(r));
            }
    }
    // closedness: d_{p-1} T_p + (-1)^{p-1} T_{p-1} d_{n-p}^t = 0
    for (int p = C.lo; p <= C.hi() + 1; ++p) {
        int q = n - p;
        size_t rp = C.dim(p - 1), cq = C.dim(q);
        if (!rp || !cq) continue;
        bool hasTp = C.dim(p) && q >= C.lo && q <= C.hi();
        bool hasTm = C.dim(p - 1) && C.dim(q + 1);
        if (!hasTp && !hasTm) continue;
        Matrix<K> dpm1 = C.diff(p - 1);
        Matrix<K> dq = C.diff(q);
        for (size_t i = 0; i < rp; ++i)
            for (size_t j = 0; j < cq; ++j) {
                std::vector<K> r(nvars, zero_like(one));
                bool nontrivial = false;
                if (hasTp) {
                    // (d_{p-1} T_p)(i,j) = sum_k d(i,k) T_p(k,j)
                    for (size_t k = 0; k < C.dim(p); ++k) {
                        if (dpm1.at(i, k).is_zero()) continue;
                        bool tr;
                        int sg;
                        size_t vi = var_index(p, k, j, &tr, &sg);
                        K coef = dpm1.at(i, k);
                        if (sg < 0) coef = -coef;
                        r[vi] += coef;
                        nontrivial = true;
                    }
                }
                if (hasTm) {
                    // (-1)^{p-1} (T_{p-1} d_q^t)(i,j) = (-1)^{p-1} sum_k T_{p-1}(i,k) d_q(j,k)
                    for (size_t k = 0; k < C.dim(q + 1); ++k) {
                        if (dq.at(j, k).is_zero()) continue;
                        bool tr;
                        int sg;
                        size_t vi = var_index(p - 1, i, k, &tr, &sg);
                        K coef = dq.at(j, k);
                        if ((p - 1) % 2) coef = -coef;
                        if (sg < 0) coef = -coef;
                        r[vi] += coef;
                        nontrivial = true;
                    }
                }
                if (nontrivial) add_row(std::move(r));
            }
    }
    Matrix<K> sys(rows.size(), nvars, zero_like(one));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < nvars; ++j) sys.at(i, j) = rows[i][j];
    auto ker = right_kernel(sys);
    for (int attempt = 0; attempt < tries; ++attempt) {
        std::vector<K> v(nvars, zero_like(one));
        for (auto& kv : ker) {
            K c = small_scalar(rng, one, 2);
            for (size_t i = 0; i < nvars; ++i) v[i] += c * kv[i];
        }
        auto S = blocks_to_pairing(v);
        try {
            validate_symmetric(S);
            return S;
        } catch (const TorsqError&) {
            continue;
        }
    }
    // fall back to the zero pairing (always closed)
    return blocks_to_pairing(std::vector<K>(nvars, zero_like(one)));
}

// random invertible basis change per level
template <class K>
SymmetricComplex<K> random_basis_change(LineRng& rng, const SymmetricComplex<K>& S) {
    std::vector<Matrix<K>> Q;
    for (int j = S.C.lo; j <= S.C.hi(); ++j) {
        size_t nj = S.C.dim(j);
        Matrix<K> m(nj, nj, zero_like(S.C.exemplar));
        do {
            for (auto& x : m.a) x = small_scalar(rng, S.C.exemplar, 2);
        } while (nj && det(m).is_zero());
        Q.push_back(std::move(m));
    }
    auto R = change_basis(S, Q);
    validate_symmetric(R);
    return R;
}

// Direct sum of symmetric complexes (same n and eps).
template <class K>
SymmetricComplex<K> direct_sum(const SymmetricComplex<K>& A, const SymmetricComplex<K>& B) {
    if (A.n != B.n || A.eps != B.eps) throw TorsqError("InputError", "direct sum shape mismatch");
    SymmetricComplex<K> S;
    S.n = A.n;
    S.eps = A.eps;
    S.C = direct_sum(A.C, B.C);
    for (int p = S.C.lo; p <= S.C.hi(); ++p) {
        int q = S.n - p;
        Matrix<K> T(S.C.dim(p), S.C.dim(q), zero_like(S.C.exemplar));
        Matrix<K> Ta = A.T(p), Tb = B.T(p);
        for (size_t i = 0; i < Ta.rows; ++i)
            for (size_t j = 0; j < Ta.cols; ++j) T.at(i, j) = Ta.at(i, j);
        for (size_t i = 0; i < Tb.rows; ++i)
            for (size_t j = 0; j < Tb.cols; ++j) T.at(A.C.dim(p) + i, A.C.dim(q) + j) = Tb.at(i, j);
        S.pairing[p] = std::move(T);
    }
    validate_symmetric(S);
    return S;
}

// Random strict eps-symmetric complex of odd dimension m: the boundary cone
// of a random (m+1)-dimensional complex with a random closed pairing, in a
// random basis.
template <class K>
SymmetricComplex<K> random_strict_odd(LineRng& rng, int m, int eps, size_t maxdim, const K& exemplar,
                                      bool strongly_even = false) {
    int levels = 2 + static_cast<int>(rng.in(0, 1));
    int lo = static_cast<int>(rng.in(0, 1));
    auto C = random_based_complex(rng, lo, levels, maxdim, exemplar, strongly_even);
    auto S = random_closed_pairing(rng, C, m + 1, eps);
    auto D = boundary_cone(S);
    return random_basis_change(rng, D);
}

}  // namespace torsq
