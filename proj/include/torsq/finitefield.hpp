// Runtime finite fields F_{p^s} (p odd), their extensions and embeddings,
// plus univariate polynomial arithmetic and factorization over them.
//
// Fields are held by a global registry so equal parameters share one context;
// elements are plain value types carrying a context pointer.  A null context
// is a generic zero, which lets default-constructed elements live in
// containers before a field is known.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace torsq {

class FiniteField;

struct FFElem {
    const FiniteField* F = nullptr;
    std::vector<uint32_t> c;  // length s when F set; empty means zero

    bool is_zero() const;
    bool is_one() const;
    bool operator==(const FFElem& o) const;
    bool operator!=(const FFElem& o) const { return !(*this == o); }

    FFElem operator-() const;
    FFElem operator+(const FFElem& o) const;
    FFElem operator-(const FFElem& o) const;
    FFElem operator*(const FFElem& o) const;
    FFElem operator/(const FFElem& o) const;
    FFElem& operator+=(const FFElem& o) { return *this = *this + o; }
    FFElem& operator-=(const FFElem& o) { return *this = *this - o; }
    FFElem& operator*=(const FFElem& o) { return *this = *this * o; }
    FFElem& operator/=(const FFElem& o) { return *this = *this / o; }
    FFElem inv() const;
    FFElem pow(uint64_t e) const;

    uint64_t ordinal() const;  // sum c_i p^i
    std::string to_string() const;
    size_t hash() const;
};

FFElem one_like(const FFElem& x);
FFElem zero_like(const FFElem& x);

class FiniteField {
public:
    uint32_t p;
    uint32_t s;
    std::vector<uint32_t> modulus;  // monic, degree s; for s==1 this is {0,1} (x)

    uint64_t size() const { return q_; }

    FFElem zero() const { return FFElem{this, {}}; }
    FFElem one() const { return from_int(1); }
    FFElem from_int(long long v) const;
    FFElem gen() const;  // class of x (s>1); for s==1 a fixed primitive-free 1
    FFElem from_coeffs(std::vector<uint32_t> c) const;
    FFElem from_ordinal(uint64_t n) const;

    bool is_square(const FFElem& a) const;       // nonzero a
    bool sqrt(const FFElem& a, FFElem& out) const;  // false if nonsquare
    FFElem random(uint64_t& state) const;

    // Prime field F_p.
    static const FiniteField* prime_field(uint32_t p);
    // F_{p^s} with the canonical (first-in-ordinal-order irreducible) modulus.
    static const FiniteField* extension(uint32_t p, uint32_t s);
    // F_{p^s} with an explicitly given monic irreducible modulus.
    static const FiniteField* with_modulus(uint32_t p, std::vector<uint32_t> modulus);

    // Field F_{p^{s*d}} together with the embedding of *this into it.
    struct Embedding {
        const FiniteField* target;
        FFElem gen_image;  // image of this->gen() in target
        FFElem map(const FFElem& a) const;
    };
    const Embedding& embed_into_extension(uint32_t d) const;

private:
    uint64_t q_;
    mutable std::vector<std::unique_ptr<Embedding>> embeddings_;  // index d
    friend struct FFRegistry;
    FiniteField(uint32_t p, uint32_t s, std::vector<uint32_t> modulus);
};

// Dense univariate polynomials over a finite field.
struct FFPoly {
    const FiniteField* F = nullptr;
    std::vector<FFElem> c;  // c[0] + c[1] x + ...; normalized (no zero leading coeff)

    FFPoly() = default;
    explicit FFPoly(const FiniteField* F) : F(F) {}
    FFPoly(const FiniteField* F, std::vector<FFElem> coeffs);

    int deg() const { return static_cast<int>(c.size()) - 1; }  // deg(0) = -1
    bool is_zero() const { return c.empty(); }
    FFElem lead() const { return c.back(); }
    FFElem coeff(size_t i) const { return i < c.size() ? c[i] : F->zero(); }
    FFElem eval(const FFElem& x) const;

    static FFPoly x(const FiniteField* F);
    static FFPoly constant(const FFElem& a);
    static FFPoly monomial(const FiniteField* F, size_t deg, const FFElem& a);

    FFPoly operator-() const;
    FFPoly operator+(const FFPoly& o) const;
    FFPoly operator-(const FFPoly& o) const;
    FFPoly operator*(const FFPoly& o) const;
    FFPoly operator*(const FFElem& a) const;
    static void divmod(const FFPoly& a, const FFPoly& b, FFPoly& q, FFPoly& r);
    FFPoly operator/(const FFPoly& o) const;
    FFPoly operator%(const FFPoly& o) const;
    bool operator==(const FFPoly& o) const;

    FFPoly monic() const;
    FFPoly derivative() const;
    static FFPoly gcd(FFPoly a, FFPoly b);  // monic (or zero)
    static FFPoly powmod(const FFPoly& b, uint64_t e, const FFPoly& m);

    bool is_irreducible() const;
    bool is_squarefree() const { return deg() >= 1 && gcd(*this, derivative()).deg() == 0; }

    // Monic irreducible factors with multiplicity, deterministic order/seed.
    std::vector<std::pair<FFPoly, int>> factor() const;
    std::vector<FFElem> roots() const;

    std::string to_string() const;
};

// Lift v with v^2 = f (mod u) to v' with v'^2 = f (mod u^k); u irreducible,
// coprime to f.  Newton iteration, char != 2.
FFPoly hensel_sqrt_lift(const FFPoly& v, const FFPoly& f, const FFPoly& u, int k);

}  // namespace torsq
