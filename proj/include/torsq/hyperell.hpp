// Hyperelliptic curves y^2 = F(t) over odd finite fields: closed points,
// valuations, Riemann-Roch spaces of functions a(t) + b(t) w, canonical
// divisor-class representatives, fully enumerated degree-0 class groups, and
// the unramified double covers w^2 = Q(t^2) -> y^2 = x Q(x).
//
// Divisors are multisets of closed points, so all arithmetic stays over the
// base field; extension fields only appear inside point-mapping and splitting
// computations.  Class reduction is a deterministic minimal-degree search
// through Riemann-Roch spaces; uniqueness of the representative is by
// construction and its correctness is oracle-tested against principality.
#pragma once

#include <map>
#include <memory>
#include <unordered_map>

#include "torsq/bigint.hpp"
#include "torsq/finitefield.hpp"
#include "torsq/squareclass.hpp"

namespace torsq {

class HyperCurve;

struct Place {
    enum class Kind {
        AffineSplit,     // u irreducible, branch w = v mod u; degree = deg u
        AffineInert,     // u irreducible, w^2 - F irreducible over F_q[t]/u; degree = 2 deg u
        AffineRamified,  // u | F; degree = deg u
        InfOdd,          // the single place over infinity, odd model; degree 1
        InfSplit,        // one of two places at infinity, even split model; degree 1
        InfInert,        // the single degree-2 place at infinity, even inert model
    };
    Kind kind;
    FFPoly u;       // affine kinds
    FFPoly v;       // AffineSplit branch, deg v < deg u
    int inf_branch = 0;  // InfSplit: 0 or 1
    int degree = 0;

    std::string key() const;
};

// divisor = sorted list of (place index in the curve's registry, multiplicity)
using Divisor = std::vector<std::pair<uint32_t, long long>>;

void divisor_add(Divisor& d, uint32_t place, long long mult);
Divisor divisor_sum(const Divisor& a, const Divisor& b);
Divisor divisor_neg(const Divisor& a);

struct RRBasisElement {
    FFPoly a, b;  // numerator a(t) + b(t) w
};

// L(D) presented as { (a + b w) / h : (a, b) in span(basis) }
struct RRSpace {
    std::vector<RRBasisElement> basis;
    FFPoly denom;  // common denominator h(t)
    size_t dim() const { return basis.size(); }
};

struct DivisorClass {
    const HyperCurve* curve = nullptr;
    long long degree = 0;
    Divisor reduced;       // canonical effective part
    long long base_mult = 0;  // class = [reduced] - base_mult * [infinity base]
    std::string key;       // canonical string, usable as hash key

    bool operator==(const DivisorClass& o) const { return curve == o.curve && key == o.key; }
};

struct JacStructure {
    std::vector<BigInt> invariant_factors;       // > 1, dividing upward
    std::vector<DivisorClass> generators;        // matching the factors
    std::unordered_map<std::string, std::vector<uint32_t>> dlog;  // key -> coordinates
    BigInt order;
    DivisorClass degree_one;  // fixed degree-1 class c1
};

class HyperCurve {
public:
    const FiniteField* k;
    FFPoly F;        // y^2 = F(t), squarefree, deg in {2g+1, 2g+2}
    int genus;
    enum class InfModel { Odd, Split, Inert } inf_model;
    FFElem inf_sqrt_lc;  // split model: a square root of the leading coefficient

    // binary form f(x,z) of degree 2g+2 (top coefficient may vanish, giving
    // the odd model); throws NotSquarefree / BadDegree
    static std::shared_ptr<HyperCurve> create(const FiniteField* k, std::vector<FFElem> form_coeffs);

    // --- points ---------------------------------------------------------
    // places of degree <= maxdeg, deterministic order; cached
    const std::vector<Place>& places(int maxdeg) const;
    uint32_t place_index(const Place& p) const;  // registers if new
    const Place& place(uint32_t idx) const { return registry_[idx]; }
    size_t registry_size() const { return registry_.size(); }

    uint64_t count_points(int d) const;         // character-sum count over F_{q^d}
    uint64_t count_points_scan(int d) const;    // brute force (x, y) scan oracle
    std::vector<BigInt> l_polynomial() const;   // degree 2g, checked symmetry
    BigInt class_number() const;                // P(1)

    // --- function spaces -------------------------------------------------
    // L(D) = { f : div(f) >= -D }
    RRSpace rr_basis(const Divisor& D) const;
    Divisor principal_divisor(const FFPoly& a, const FFPoly& b) const;  // div(a + bw)
    // div((a + bw)/h)
    Divisor principal_divisor(const FFPoly& a, const FFPoly& b, const FFPoly& h) const;
    long long valuation(const Place& p, const FFPoly& a, const FFPoly& b) const;

    // --- divisor classes --------------------------------------------------
    DivisorClass class_reduce(const Divisor& D, long long degree_tag) const;
    DivisorClass class_of(const Divisor& D) const;  // degree from the divisor
    DivisorClass class_add(const DivisorClass& a, const DivisorClass& b) const;
    DivisorClass class_neg(const DivisorClass& a) const;
    DivisorClass class_zero() const;
    DivisorClass class_of_place(uint32_t idx) const;
    bool class_is_zero(const DivisorClass& c) const;

    Divisor class_divisor(const DivisorClass& c) const;  // reduced - base_mult * base

    // infinity base divisor (deg 1 odd/split, deg 2 inert)
    Divisor infinity_base() const;
    Divisor infinity_fiber() const;  // the full fiber over t = infinity (degree 2)
    long long infinity_base_degree() const;

    DivisorClass canonical_class() const;  // class of div(dt / w)

    // hyperelliptic involution on places and classes
    Place iota_place(const Place& p) const;
    DivisorClass iota_class(const DivisorClass& c) const;

    const JacStructure& jac_structure(uint64_t bound = 300000) const;

    long long degree_of(const Divisor& D) const;

private:
    HyperCurve() = default;
    mutable std::vector<Place> registry_;
    mutable std::map<std::string, uint32_t> registry_lookup_;
    mutable int enumerated_maxdeg_ = -1;
    mutable std::vector<Place> enumerated_;
    mutable std::unique_ptr<JacStructure> jac_;
    mutable std::vector<BigInt> lpoly_;
    // caches keyed by place/branch data
    mutable std::map<std::pair<std::string, int>, FFPoly> hensel_cache_;
    mutable std::map<std::pair<int, long long>, std::vector<std::pair<FFElem, FFElem>>> series_cache_;
    mutable std::map<std::string, Divisor> irreducible_divisor_cache_;

    Divisor divisor_of_irreducible(const FFPoly& u) const;
    // the places lying over a monic irreducible u, registered on demand
    std::vector<uint32_t> places_over(const FFPoly& u) const;
    const FFPoly& hensel_branch(const Place& p, int prec) const;
    const std::vector<std::pair<FFElem, FFElem>>& infinity_series(int branch, long long prec) const;

    void build_jac(uint64_t bound) const;

    friend struct CoverMap;
};

// the Q8 double cover pi: Xt (w^2 = Q(t^2)) -> X (y^2 = x Q(x))
struct CoverMap {
    std::shared_ptr<HyperCurve> source;  // genus 3
    std::shared_ptr<HyperCurve> target;  // genus 2
    FFPoly Q;                            // the quartic

    static CoverMap build(const FiniteField* k, const FFPoly& Q);

    // sigma: (w, t) -> (-w, -t), the deck involution of the cover
    Place sigma_place(const Place& p) const;
    DivisorClass sigma_class(const DivisorClass& c) const;

    Divisor pushforward_place(uint32_t src_idx) const;  // divisor on target
    Divisor pullback_place(uint32_t tgt_idx) const;     // divisor on source
    DivisorClass pushforward(const DivisorClass& c) const;
    DivisorClass pullback(const DivisorClass& c) const;

private:
    FFPoly cm_targetF() const;
};

}  // namespace torsq
