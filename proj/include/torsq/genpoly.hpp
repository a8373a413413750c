// Minimal dense polynomial helpers over a generic field scalar; coefficient
// vectors low-to-high.  Enough for leading-coefficient extraction at t = 1.
#pragma once

#include <vector>

namespace torsq {

template <class K>
K poly_eval(const std::vector<K>& p, const K& x) {
    if (p.empty()) return zero_like(x);
    K acc = zero_like(x);
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

// Coefficients of p(t+1): q[h] is the h-th Taylor coefficient of p at t=1,
// computed without divisions so it works in any characteristic.
template <class K>
std::vector<K> poly_shift_one(const std::vector<K>& p) {
    if (p.empty()) return p;
    std::vector<K> q(p.size(), zero_like(p[0]));
    // Horner: p(t+1) = (...((a_n (t+1) + a_{n-1})(t+1) + ...)
    for (size_t i = p.size(); i-- > 0;) {
        // multiply q by (t+1), then add a_i
        K carry = zero_like(p[0]);
        for (size_t j = q.size(); j-- > 0;) {
            K nv = q[j] + (j ? q[j - 1] : zero_like(p[0]));
            q[j] = nv;
        }
        (void)carry;
        q[0] += p[i];
    }
    return q;
}

// Order of vanishing at the given root (0 = nonzero there).
template <class K>
size_t poly_order_at_one(const std::vector<K>& p) {
    auto q = poly_shift_one(p);  // expand around t=1: q[h] = coeff of (t-1)^h ... see note
    for (size_t h = 0; h < q.size(); ++h)
        if (!q[h].is_zero()) return h;
    return q.size();
}

}  // namespace torsq
