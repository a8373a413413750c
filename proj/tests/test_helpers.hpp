// Shared generators for the randomized suites: quadratic spaces with square
// discriminant and special-orthogonal maps built from reflections.
#pragma once

#include "torsq/orth.hpp"

namespace torsq::testing {

struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed ? seed : 1) {}
    uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long long in(long long lo, long long hi) {  // inclusive
        return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
};

template <class K>
K from_int(long long v, const K& exemplar);
inline Rational from_int(long long v, const Rational&) { return Rational(v); }
inline GaussianRational from_int(long long v, const GaussianRational&) { return GaussianRational(v); }
inline FFElem from_int(long long v, const FFElem& x) { return x.F->from_int(v); }

// Gram = M^t D M with unit diagonal D; discriminant is automatically square
// when det(D) is.
template <class K>
QuadraticSpace<K> random_square_disc_space(Rng& rng, size_t dim, const K& exemplar) {
    while (true) {
        Matrix<K> m(dim, dim, zero_like(exemplar));
        for (auto& x : m.a) x = from_int(rng.in(-2, 2), exemplar);
        if (det(m).is_zero()) continue;
        Matrix<K> g = m.transpose() * m;
        if (det(g).is_zero()) continue;  // finite fields can degenerate
        return QuadraticSpace<K>{g};
    }
}

template <class K>
std::vector<K> random_anisotropic_vector(Rng& rng, const QuadraticSpace<K>& V, const K& exemplar) {
    const size_t n = V.dim();
    while (true) {
        std::vector<K> v(n, zero_like(exemplar));
        for (auto& x : v) x = from_int(rng.in(-2, 2), exemplar);
        auto gv = V.gram.apply(v);
        K q = zero_like(exemplar);
        for (size_t i = 0; i < n; ++i) q += v[i] * gv[i];
        if (!q.is_zero()) return v;
    }
}

template <class K>
Matrix<K> reflection_matrix(const QuadraticSpace<K>& V, const std::vector<K>& v, const K& exemplar) {
    const size_t n = V.dim();
    auto gv = V.gram.apply(v);
    K q = zero_like(exemplar);
    for (size_t i = 0; i < n; ++i) q += v[i] * gv[i];
    Matrix<K> r = Matrix<K>::identity(n, exemplar);
    K two = from_int(2, exemplar);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r.at(i, j) -= two * v[i] * gv[j] / q;
    return r;
}

// product of an even number of reflections: special orthogonal
template <class K>
IsometryMap<K> random_special_orthogonal(Rng& rng, const QuadraticSpace<K>& V, const K& exemplar,
                                         int max_pairs = 3) {
    const size_t n = V.dim();
    Matrix<K> A = Matrix<K>::identity(n, exemplar);
    int pairs = static_cast<int>(rng.in(0, max_pairs));
    for (int k = 0; k < 2 * pairs; ++k)
        A = A * reflection_matrix(V, random_anisotropic_vector(rng, V, exemplar), exemplar);
    return make_isometry(V, A);
}

// Independent oracle: constructive Cartan-Dieudonne factorization into
// reflections; spinor norm = product of the <v,v> classes.
template <class K>
SquareClass spinor_by_reflections(const IsometryMap<K>& A) {
    const K ex = A.mat.a[0];
    const size_t n = A.space.dim();
    const Matrix<K>& G = A.space.gram;
    auto quad = [&](const std::vector<K>& v) {
        auto gv = G.apply(v);
        K q = zero_like(ex);
        for (size_t i = 0; i < n; ++i) q += v[i] * gv[i];
        return q;
    };
    Matrix<K> cur = A.mat;
    SquareClass cls = SquareClass::trivial(field_of(ex));
    Rng probe(0xC0FFEE);
    int guard = 0;
    while (cur != Matrix<K>::identity(n, ex)) {
        if (++guard > 200) throw std::logic_error("reflection factorization stuck");
        // find x with cur x != x and Q(cur x - x) != 0, else the two-step trick
        bool done = false;
        for (int attempt = 0; attempt < 200 && !done; ++attempt) {
            std::vector<K> x(n, zero_like(ex));
            if (attempt < static_cast<int>(n))
                x[attempt] = one_like(ex);
            else
                for (auto& c : x) c = from_int(probe.in(-3, 3), ex);
            auto cx = cur.apply(x);
            std::vector<K> diff(n), sum(n);
            bool moved = false;
            for (size_t i = 0; i < n; ++i) {
                diff[i] = cx[i] - x[i];
                sum[i] = cx[i] + x[i];
                if (!diff[i].is_zero()) moved = true;
            }
            if (!moved) continue;
            if (!quad(diff).is_zero()) {
                // r_diff * cur fixes x and shrinks the moved space
                cls = sq_mul(cls, sq_classify(quad(diff)));
                cur = reflection_matrix(A.space, diff, ex) * cur;
                done = true;
            } else if (!quad(sum).is_zero() && !quad(x).is_zero()) {
                cls = sq_mul(cls, sq_classify(quad(sum)));
                cls = sq_mul(cls, sq_classify(quad(x)));
                cur = reflection_matrix(A.space, x, ex) * reflection_matrix(A.space, sum, ex) * cur;
                done = true;
            }
        }
        if (!done) throw std::logic_error("no usable reflection vector found");
    }
    return cls;
}

}  // namespace torsq::testing
