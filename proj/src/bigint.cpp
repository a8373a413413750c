#include "torsq/bigint.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace torsq {

BigInt::BigInt(long long v) {
    if (v == 0) return;
    unsigned long long u;
    if (v < 0) {
        neg_ = true;
        u = ~static_cast<unsigned long long>(v) + 1ull;
    } else {
        u = static_cast<unsigned long long>(v);
    }
    while (u) {
        limbs_.push_back(static_cast<uint32_t>(u & 0xffffffffull));
        u >>= 32;
    }
}

BigInt BigInt::from_u64(unsigned long long u) {
    BigInt r;
    while (u) {
        r.limbs_.push_back(static_cast<uint32_t>(u & 0xffffffffull));
        u >>= 32;
    }
    return r;
}

BigInt::BigInt(std::string_view s) {
    bool neg = false;
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: empty literal");
    BigInt acc;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
        acc = acc * BigInt(10) + BigInt(s[i] - '0');
    }
    *this = acc;
    neg_ = neg && !limbs_.empty();
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) neg_ = false;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const auto& lo = a.size() >= b.size() ? b : a;
    const auto& hi = a.size() >= b.size() ? a : b;
    std::vector<uint32_t> r(hi.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < hi.size(); ++i) {
        uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0);
        r[i] = static_cast<uint32_t>(s);
        carry = s >> 32;
    }
    r[hi.size()] = static_cast<uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (s < 0) {
            s += (int64_t(1) << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<uint32_t>(s);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        uint64_t ai = a[i];
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t s = uint64_t(r[i + j]) + ai * b[j] + carry;
            r[i + j] = static_cast<uint32_t>(s);
            carry = s >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t s = uint64_t(r[k]) + carry;
            r[k] = static_cast<uint32_t>(s);
            carry = s >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

// Knuth algorithm D.
void BigInt::divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    if (b.empty()) throw std::domain_error("BigInt: division by zero");
    if (cmp_mag(a, b) < 0) {
        q.clear();
        r = a;
        return;
    }
    if (b.size() == 1) {
        uint64_t d = b[0], rem = 0;
        q.assign(a.size(), 0);
        for (size_t i = a.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | a[i];
            q[i] = static_cast<uint32_t>(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        r.clear();
        if (rem) r.push_back(static_cast<uint32_t>(rem));
        return;
    }

    int shift = 0;
    for (uint32_t top = b.back(); !(top & 0x80000000u); top <<= 1) ++shift;
    auto shl_vec = [&](const std::vector<uint32_t>& v) {
        std::vector<uint32_t> out(v.size() + 1, 0);
        for (size_t i = 0; i < v.size(); ++i) {
            out[i] |= shift ? (v[i] << shift) : v[i];
            if (shift) out[i + 1] = v[i] >> (32 - shift);
        }
        while (!out.empty() && out.back() == 0) out.pop_back();
        return out;
    };
    std::vector<uint32_t> u = shl_vec(a), v = shl_vec(b);
    size_t n = v.size(), m = u.size() - n;
    u.resize(u.size() + 1, 0);
    q.assign(m + 1, 0);

    uint64_t vtop = v[n - 1];
    uint64_t vsec = n >= 2 ? v[n - 2] : 0;
    for (size_t j = m + 1; j-- > 0;) {
        uint64_t num = (uint64_t(u[j + n]) << 32) | u[j + n - 1];
        uint64_t qhat = num / vtop;
        uint64_t rhat = num % vtop;
        if (qhat > 0xffffffffull) {
            qhat = 0xffffffffull;
            rhat = num - qhat * vtop;
        }
        while (rhat <= 0xffffffffull && qhat * vsec > ((rhat << 32) | (n >= 2 ? u[j + n - 2] : 0))) {
            --qhat;
            rhat += vtop;
        }
        // u[j..j+n] -= qhat * v
        int64_t borrow = 0;
        uint64_t carry = 0;
        for (size_t i = 0; i < n; ++i) {
            uint64_t p = qhat * v[i] + carry;
            carry = p >> 32;
            int64_t s = int64_t(u[i + j]) - borrow - int64_t(p & 0xffffffffull);
            if (s < 0) {
                s += int64_t(1) << 32;
                borrow = 1;
            } else {
                borrow = 0;
            }
            u[i + j] = static_cast<uint32_t>(s);
        }
        int64_t s = int64_t(u[j + n]) - borrow - int64_t(carry);
        if (s < 0) {
            // qhat was one too large; add back
            s += int64_t(1) << 32;
            --qhat;
            uint64_t c2 = 0;
            for (size_t i = 0; i < n; ++i) {
                uint64_t t = uint64_t(u[i + j]) + v[i] + c2;
                u[i + j] = static_cast<uint32_t>(t);
                c2 = t >> 32;
            }
            s += int64_t(c2);
            s &= 0xffffffffll;
        }
        u[j + n] = static_cast<uint32_t>(s);
        q[j] = static_cast<uint32_t>(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    u.resize(n);
    if (shift) {
        for (size_t i = 0; i < u.size(); ++i) {
            u[i] >>= shift;
            if (i + 1 < u.size()) u[i] |= u[i + 1] << (32 - shift);
        }
    }
    while (!u.empty() && u.back() == 0) u.pop_back();
    r = std::move(u);
}

int BigInt::cmp(const BigInt& o) const {
    if (neg_ != o.neg_) return neg_ ? -1 : 1;
    int c = cmp_mag(limbs_, o.limbs_);
    return neg_ ? -c : c;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.limbs_.empty()) r.neg_ = !r.neg_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    r.neg_ = false;
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    BigInt r;
    if (neg_ == o.neg_) {
        r.limbs_ = add_mag(limbs_, o.limbs_);
        r.neg_ = neg_;
    } else {
        int c = cmp_mag(limbs_, o.limbs_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.limbs_ = sub_mag(limbs_, o.limbs_);
            r.neg_ = neg_;
        } else {
            r.limbs_ = sub_mag(o.limbs_, limbs_);
            r.neg_ = o.neg_;
        }
    }
    r.trim();
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    BigInt r;
    r.limbs_ = mul_mag(limbs_, o.limbs_);
    r.neg_ = !r.limbs_.empty() && (neg_ != o.neg_);
    return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    std::vector<uint32_t> qm, rm;
    divmod_mag(a.limbs_, b.limbs_, qm, rm);
    q.limbs_ = std::move(qm);
    r.limbs_ = std::move(rm);
    q.neg_ = !q.limbs_.empty() && (a.neg_ != b.neg_);
    r.neg_ = !r.limbs_.empty() && a.neg_;
}

BigInt BigInt::operator/(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return r;
}

BigInt BigInt::shl(size_t bits) const {
    if (is_zero()) return BigInt();
    size_t words = bits / 32, rem = bits % 32;
    BigInt r;
    r.limbs_.assign(words, 0);
    uint32_t carry = 0;
    for (uint32_t limb : limbs_) {
        r.limbs_.push_back(rem ? ((limb << rem) | carry) : limb);
        carry = rem ? static_cast<uint32_t>(uint64_t(limb) >> (32 - rem)) : 0;
    }
    if (carry) r.limbs_.push_back(carry);
    r.neg_ = neg_;
    r.trim();
    return r;
}

BigInt BigInt::shr(size_t bits) const {
    size_t words = bits / 32, rem = bits % 32;
    if (words >= limbs_.size()) return BigInt();
    BigInt r;
    r.limbs_.assign(limbs_.begin() + words, limbs_.end());
    if (rem) {
        for (size_t i = 0; i < r.limbs_.size(); ++i) {
            r.limbs_[i] >>= rem;
            if (i + 1 < r.limbs_.size()) r.limbs_[i] |= r.limbs_[i + 1] << (32 - rem);
        }
    }
    r.neg_ = neg_;
    r.trim();
    return r;
}

size_t BigInt::bit_length() const {
    if (limbs_.empty()) return 0;
    size_t n = (limbs_.size() - 1) * 32;
    uint32_t top = limbs_.back();
    while (top) {
        ++n;
        top >>= 1;
    }
    return n;
}

bool BigInt::bit(size_t i) const {
    size_t w = i / 32;
    if (w >= limbs_.size()) return false;
    return (limbs_[w] >> (i % 32)) & 1u;
}

// Binary GCD; avoids the division-heavy Euclid on large operands.
BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.neg_ = false;
    b.neg_ = false;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    size_t az = 0, bz = 0;
    while (!a.bit(az)) ++az;
    while (!b.bit(bz)) ++bz;
    size_t shift = std::min(az, bz);
    a = a.shr(az);
    b = b.shr(bz);
    while (true) {
        if (cmp_mag(a.limbs_, b.limbs_) < 0) std::swap(a, b);
        a = a - b;
        if (a.is_zero()) break;
        size_t z = 0;
        while (!a.bit(z)) ++z;
        a = a.shr(z);
    }
    return b.shl(shift);
}

BigInt BigInt::isqrt(const BigInt& a) {
    if (a.is_neg()) throw std::domain_error("isqrt of negative");
    if (a.is_zero()) return BigInt();
    BigInt x = BigInt(1).shl(a.bit_length() / 2 + 1);
    while (true) {
        BigInt y = (x + a / x).shr(1);
        if (y >= x) break;
        x = y;
    }
    return x;
}

bool BigInt::is_perfect_square(BigInt* root) const {
    if (neg_) return false;
    if (is_zero()) {
        if (root) *root = BigInt();
        return true;
    }
    // quadratic-residue quick reject mod 64
    static const bool sq64[64] = {1, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0,
                                  1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0,
                                  0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0,
                                  0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    if (!sq64[limbs_[0] & 63u]) return false;
    BigInt r = isqrt(*this);
    if (r * r == *this) {
        if (root) *root = r;
        return true;
    }
    return false;
}

BigInt BigInt::pow(const BigInt& b, unsigned e) {
    BigInt r(1), x = b;
    while (e) {
        if (e & 1u) r = r * x;
        x = x * x;
        e >>= 1;
    }
    return r;
}

BigInt BigInt::powmod(const BigInt& b, const BigInt& e, const BigInt& m) {
    BigInt r(1), x = b % m;
    if (x.is_neg()) x = x + m;
    for (size_t i = 0, n = e.bit_length(); i < n; ++i) {
        if (e.bit(i)) r = (r * x) % m;
        x = (x * x) % m;
    }
    return r;
}

bool BigInt::fits_i64() const {
    if (limbs_.size() < 2) return true;
    if (limbs_.size() > 2) return false;
    uint64_t mag = (uint64_t(limbs_[1]) << 32) | limbs_[0];
    return neg_ ? mag <= 0x8000000000000000ull : mag < 0x8000000000000000ull;
}

long long BigInt::to_i64() const {
    uint64_t mag = 0;
    if (!limbs_.empty()) mag = limbs_[0];
    if (limbs_.size() > 1) mag |= uint64_t(limbs_[1]) << 32;
    return neg_ ? -static_cast<long long>(mag) : static_cast<long long>(mag);
}

double BigInt::to_double() const {
    double r = 0;
    for (size_t i = limbs_.size(); i-- > 0;) r = r * 4294967296.0 + limbs_[i];
    return neg_ ? -r : r;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    std::vector<uint32_t> tmp = limbs_;
    std::string digits;
    while (!tmp.empty()) {
        uint64_t rem = 0;
        for (size_t i = tmp.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | tmp[i];
            tmp[i] = static_cast<uint32_t>(cur / 1000000000ull);
            rem = cur % 1000000000ull;
        }
        while (!tmp.empty() && tmp.back() == 0) tmp.pop_back();
        for (int k = 0; k < 9; ++k) {
            digits.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (neg_) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

size_t BigInt::hash() const {
    size_t h = neg_ ? 0x9e3779b97f4a7c15ull : 0;
    for (uint32_t limb : limbs_) h = h * 1099511628211ull ^ limb;
    return h;
}

bool miller_rabin(const BigInt& n) {
    if (n < BigInt(2)) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == BigInt(p)) return true;
        if ((n % BigInt(p)).is_zero()) return false;
    }
    BigInt d = n - BigInt(1);
    size_t s = 0;
    while (d.is_even()) {
        d = d.shr(1);
        ++s;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        BigInt x = BigInt::powmod(BigInt(a), d, n);
        if (x.is_one() || x == n - BigInt(1)) continue;
        bool witness = true;
        for (size_t i = 1; i < s; ++i) {
            x = (x * x) % n;
            if (x == n - BigInt(1)) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

namespace {

BigInt pollard_rho(const BigInt& n, uint64_t seed) {
    // Brent's variant.
    BigInt x(2 + static_cast<long long>(seed % 7)), c(1 + static_cast<long long>(seed % 11));
    BigInt y = x, d(1);
    auto step = [&](const BigInt& v) { return ((v * v) % n + c) % n; };
    while (d.is_one()) {
        x = step(x);
        y = step(step(y));
        BigInt diff = (x - y).abs();
        if (diff.is_zero()) return BigInt();  // cycle without factor
        d = BigInt::gcd(diff, n);
    }
    return d == n ? BigInt() : d;
}

void factor_rec(BigInt n, FactorResult& out, uint64_t depth) {
    if (n.is_one()) return;
    if (miller_rabin(n)) {
        out.factors.emplace_back(n, 1);
        return;
    }
    if (depth > 64) {
        out.complete = false;
        out.factors.emplace_back(n, 1);
        return;
    }
    BigInt d;
    for (uint64_t seed = depth; d.is_zero() && seed < depth + 20; ++seed) d = pollard_rho(n, seed);
    if (d.is_zero()) {
        out.complete = false;
        out.factors.emplace_back(n, 1);
        return;
    }
    factor_rec(d, out, depth + 1);
    factor_rec(n / d, out, depth + 1);
}

}  // namespace

FactorResult factor_integer(BigInt n, uint32_t trial_bound) {
    FactorResult out;
    if (n.is_neg()) n = -n;
    if (n.is_zero()) throw std::domain_error("factor_integer(0)");
    for (uint64_t p = 2; p <= trial_bound && BigInt::from_u64(p * p) <= n; p += (p == 2 ? 1 : 2)) {
        BigInt bp = BigInt::from_u64(p);
        int e = 0;
        while ((n % bp).is_zero()) {
            n = n / bp;
            ++e;
        }
        if (e) out.factors.emplace_back(bp, e);
    }
    if (!n.is_one()) {
        // strip square part first; what remains is the odd-exponent content
        BigInt root;
        if (n.is_perfect_square(&root)) {
            FactorResult sq;
            factor_rec(root, sq, 1);
            for (auto& [p, e] : sq.factors) out.factors.emplace_back(p, 2 * e);
            out.complete = out.complete && sq.complete;
        } else {
            FactorResult rest;
            factor_rec(n, rest, 1);
            for (auto& f : rest.factors) out.factors.push_back(f);
            out.complete = out.complete && rest.complete;
        }
    }
    // merge duplicate primes (pollard may duplicate trial primes on edge cases)
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<BigInt, int>> merged;
    for (auto& [p, e] : out.factors) {
        if (!merged.empty() && merged.back().first == p)
            merged.back().second += e;
        else
            merged.emplace_back(p, e);
    }
    out.factors = std::move(merged);
    return out;
}

}  // namespace torsq
