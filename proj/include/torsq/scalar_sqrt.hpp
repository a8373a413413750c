// Exact square roots inside the ground fields, where they exist.
#pragma once

#include "torsq/finitefield.hpp"
#include "torsq/rational.hpp"

namespace torsq {

inline bool try_sqrt(const Rational& x, Rational& out) {
    if (x.sign() < 0) return false;
    BigInt rn, rd;
    if (!x.num().is_perfect_square(&rn) || !x.den().is_perfect_square(&rd)) return false;
    out = Rational(rn, rd);
    return true;
}

inline bool try_sqrt(const GaussianRational& z, GaussianRational& out) {
    // (p+qi)^2 = a+bi: p^2-q^2 = a, 2pq = b
    const Rational &a = z.re(), &b = z.im();
    if (b.is_zero()) {
        Rational r;
        if (try_sqrt(a, r)) {
            out = GaussianRational(r);
            return true;
        }
        if (try_sqrt(Rational(0) - a, r)) {
            out = GaussianRational(Rational(0), r);
            return true;
        }
        return false;
    }
    Rational norm = a * a + b * b, m;
    if (!try_sqrt(norm, m)) return false;
    Rational half(BigInt(1), BigInt(2));
    Rational p2 = (a + m) * half, p;
    if (!try_sqrt(p2, p) || p.is_zero()) return false;
    Rational q = b * half / p;
    out = GaussianRational(p, q);
    return out * out == z;
}

inline bool try_sqrt(const FFElem& x, FFElem& out) {
    if (x.is_zero()) {
        out = x;
        return true;
    }
    return x.F->sqrt(x, out);
}

// Deterministic sign normalization: true when x is the canonical one of {x,-x}.
inline bool canonical_positive(const Rational& x) { return x.sign() > 0; }
inline bool canonical_positive(const GaussianRational& x) {
    if (x.re().sign() != 0) return x.re().sign() > 0;
    return x.im().sign() > 0;
}
inline bool canonical_positive(const FFElem& x) {
    if (x.is_zero()) return true;
    return x.ordinal() <= (-x).ordinal();
}

}  // namespace torsq
