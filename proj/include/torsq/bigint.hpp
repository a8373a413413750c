// Arbitrary-precision signed integers, base 2^32 limbs.
// Self-contained: the exact paths (square-class kernels, rational linear
// algebra) need integers well beyond 64 bits and the build carries no GMP.
#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

namespace torsq {

class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);
    explicit BigInt(std::string_view decimal);

    static BigInt from_u64(unsigned long long v);

    bool is_zero() const { return limbs_.empty(); }
    bool is_neg() const { return neg_; }
    bool is_one() const { return !neg_ && limbs_.size() == 1 && limbs_[0] == 1; }
    bool is_even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }

    int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }

    BigInt operator-() const;
    BigInt abs() const;

    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    BigInt operator/(const BigInt& o) const;  // truncated toward zero
    BigInt operator%(const BigInt& o) const;  // sign follows dividend

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

    bool operator==(const BigInt& o) const { return neg_ == o.neg_ && limbs_ == o.limbs_; }
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const { return cmp(o) < 0; }
    bool operator<=(const BigInt& o) const { return cmp(o) <= 0; }
    bool operator>(const BigInt& o) const { return cmp(o) > 0; }
    bool operator>=(const BigInt& o) const { return cmp(o) >= 0; }
    int cmp(const BigInt& o) const;

    BigInt shl(size_t bits) const;
    BigInt shr(size_t bits) const;
    size_t bit_length() const;
    bool bit(size_t i) const;

    static BigInt gcd(BigInt a, BigInt b);  // nonnegative
    // Floor square root of a nonnegative value.
    static BigInt isqrt(const BigInt& a);
    bool is_perfect_square(BigInt* root = nullptr) const;

    static BigInt pow(const BigInt& b, unsigned e);
    static BigInt powmod(const BigInt& b, const BigInt& e, const BigInt& m);

    // Fits in [-2^63, 2^63)?
    bool fits_i64() const;
    long long to_i64() const;
    double to_double() const;

    std::string to_string() const;
    size_t hash() const;

private:
    // Little-endian limbs, no trailing zeros; neg_ false when zero.
    std::vector<uint32_t> limbs_;
    bool neg_ = false;

    void trim();
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r);
};

// Factorization helpers used by the square-class kernels.  Trial division up
// to `bound`, then perfect-square stripping, then Pollard rho on what is
// left.  Inputs in this artifact stay far below the hard limits.
struct FactorResult {
    std::vector<std::pair<BigInt, int>> factors;  // prime, exponent
    bool complete = true;
};
FactorResult factor_integer(BigInt n, uint32_t trial_bound = 100000);
bool miller_rabin(const BigInt& n);

}  // namespace torsq
