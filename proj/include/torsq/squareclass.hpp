// Ground fields, dynamic scalars, and square classes K^x/2 with canonical
// representatives: squarefree integers for Q, unit-and-prime lists for Q(i),
// a fixed square/nonsquare pair for finite fields.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "torsq/finitefield.hpp"
#include "torsq/rational.hpp"

namespace torsq {

struct TorsqError : std::runtime_error {
    std::string code;
    TorsqError(std::string code_, const std::string& msg)
        : std::runtime_error(code_ + ": " + msg), code(std::move(code_)) {}
};

struct GroundField {
    enum class Kind { Prime, Extension, Rationals, Gaussian };
    Kind kind = Kind::Rationals;
    const FiniteField* ff = nullptr;

    static GroundField rationals() { return {Kind::Rationals, nullptr}; }
    static GroundField gaussian() { return {Kind::Gaussian, nullptr}; }
    static GroundField finite(uint32_t p, uint32_t s = 1) {
        return {s == 1 ? Kind::Prime : Kind::Extension, FiniteField::extension(p, s)};
    }
    static GroundField of(const FiniteField* f) {
        return {f->s == 1 ? Kind::Prime : Kind::Extension, f};
    }

    bool is_finite() const { return ff != nullptr; }
    bool operator==(const GroundField& o) const { return kind == o.kind && ff == o.ff; }
    bool operator!=(const GroundField& o) const { return !(*this == o); }
    std::string name() const;

    // "Q", "Qi" / "Q(i)", "F5", "F_25", "F 7^2"
    static GroundField parse(std::string_view s);
};

// Gaussian integers, used only by the factorization backend.
struct GaussInt {
    BigInt a, b;  // a + b*i
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    BigInt norm() const { return a * a + b * b; }
    GaussInt conj() const { return {a, -b}; }
    GaussInt operator*(const GaussInt& o) const { return {a * o.a - b * o.b, a * o.b + b * o.a}; }
    GaussInt operator-(const GaussInt& o) const { return {a - o.a, b - o.b}; }
    bool operator==(const GaussInt& o) const { return a == o.a && b == o.b; }
    // exact quotient; throws if not divisible
    GaussInt exact_div(const GaussInt& d) const;
    // first-quadrant associate (Re > 0, Im >= 0) and the i-power applied
    GaussInt canonical_associate(int& ipow) const;
    std::string to_string() const;
};

class SquareClass {
public:
    SquareClass() = default;

    static SquareClass trivial(const GroundField& f);
    static SquareClass finite_nonsquare(const GroundField& f);

    const GroundField& field() const { return field_; }
    bool is_trivial() const;

    // group law; every class is its own inverse
    friend SquareClass sq_mul(const SquareClass& a, const SquareClass& b);

    bool operator==(const SquareClass& o) const;
    bool operator!=(const SquareClass& o) const { return !(*this == o); }

    std::string rep_string() const;

    // accessors for tests
    const BigInt& rational_rep() const { return rat_rep_; }
    bool gaussian_unit_i() const { return unit_i_; }
    const std::vector<GaussInt>& gaussian_primes() const { return primes_; }

    friend SquareClass sq_classify(const Rational& x);
    friend SquareClass sq_classify(const GaussianRational& x);
    friend SquareClass sq_classify(const FFElem& x);
    friend SquareClass gaussian_canonical(const GaussianRational& z);

private:
    GroundField field_;
    bool nontrivial_ = false;       // finite fields
    BigInt rat_rep_ = BigInt(1);    // rationals: squarefree integer with sign
    bool unit_i_ = false;           // gaussian: unit factor i
    std::vector<GaussInt> primes_;  // gaussian: distinct first-quadrant primes, sorted
};

SquareClass sq_classify(const Rational& x);
SquareClass sq_classify(const GaussianRational& x);
SquareClass sq_classify(const FFElem& x);
// Factorization backend for Q(i); sq_classify dispatches here.
SquareClass gaussian_canonical(const GaussianRational& z);

// Dynamic scalar used at the CLI/file boundary.
struct FieldScalar {
    GroundField field;
    std::variant<Rational, GaussianRational, FFElem> value;

    bool is_zero() const;
    std::string to_string() const;
    static FieldScalar parse(const GroundField& f, std::string_view s);
};

SquareClass sq_classify(const FieldScalar& x);

}  // namespace torsq
