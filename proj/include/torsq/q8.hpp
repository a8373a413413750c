// Quaternionic local systems on the covers w^2 = Q(t^2) -> y^2 = x Q(x):
// character enumeration on Pic of the cover, central L-values by divisor
// sums, the cohomological pairing by Picard-group membership, and the
// square-class-versus-pairing verdict per instance.
#pragma once

#include <optional>

#include "torsq/hyperell.hpp"
#include "torsq/squareclass.hpp"

namespace torsq {

struct GaussInteger {
    BigInt re, im;
    GaussInteger operator+(const GaussInteger& o) const { return {re + o.re, im + o.im}; }
    bool operator==(const GaussInteger& o) const { return re == o.re && im == o.im; }
    bool is_real() const { return im.is_zero(); }
    std::string to_string() const;
};

class Q8Datum {
public:
    CoverMap cover;
    uint32_t d0_place = 0;        // the inert degree-2 place over (0,0)
    DivisorClass d0_class;        // its class in Pic^2(Xt)
    DivisorClass zero_minus_inf;  // [(0,0)] - [inf] in Pic^0(X)

    static Q8Datum build(const FiniteField* k, const FFPoly& Q, uint64_t picard_bound = 300000);

    const HyperCurve& Xt() const { return *cover.source; }
    const HyperCurve& X() const { return *cover.target; }

    // cached dlog coordinates of [P] - deg(P) c1 for places of Xt; every
    // character evaluation is a dot product against these
    struct PlaceCoords {
        long long degree = 0;
        std::vector<uint32_t> dlog;
    };
    const PlaceCoords& place_coords(uint32_t place_idx) const;

private:
    mutable std::map<uint32_t, PlaceCoords> place_cache_;
};

// alpha: Pic(Xt) -> Z/4, stored by values on the SNF generators of Pic^0 and
// on the fixed degree-1 class
struct CharacterAlpha {
    std::vector<uint32_t> on_gens;  // values mod 4 on jac.generators
    uint32_t on_c1 = 0;             // value mod 4 on jac.degree_one
    uint32_t id = 0;                // stable index among enumerated characters

    uint32_t eval_class(const Q8Datum& d, const DivisorClass& c) const;
    uint32_t eval_divisor(const Q8Datum& d, const Divisor& D) const;  // on Xt
    std::string key() const;
};

enum class AlphaSurjectivity { Order4, Nontrivial };

// all admissible characters: sigma^* alpha = -alpha, alpha(D0) = 2, and the
// chosen nontriviality on Pic^0(Xt); deduplicated into orbits under negation,
// degree twist, and hyperelliptic pullback (one representative each, orbit
// partners retrievable)
struct AlphaFamily {
    std::vector<CharacterAlpha> all;             // every admissible character
    std::vector<CharacterAlpha> representatives; // one per orbit
    std::vector<std::vector<uint32_t>> orbits;   // indices into all, per representative
};
AlphaFamily enumerate_alphas(const Q8Datum& d, AlphaSurjectivity mode = AlphaSurjectivity::Order4);

// Eq-style residue check: for closed points x of X of degree <= 2,
// alpha(pi^* x) = 2 * (0 if split, 1 if inert)
bool alphares_check(const Q8Datum& d, const CharacterAlpha& a, int maxdeg = 2);

// Dirichlet coefficients L_0..L_4: L_k = sum over effective divisors of
// degree k on Xt of i^{alpha(D)}
std::vector<GaussInteger> l_coefficients(const Q8Datum& d, const CharacterAlpha& a);

struct CentralValue {
    BigInt value;  // 2q + L_2
    bool zero = false;
};
CentralValue central_value(const Q8Datum& d, const CharacterAlpha& a);

// 0 iff (0)-(inf) lies in pi_*(ker(alpha^2) on Pic^0(Xt))
int chern_pairing(const Q8Datum& d, const CharacterAlpha& a);

struct InstanceReport {
    std::string curve;  // coefficient string of Q
    uint32_t alpha_id = 0;
    std::vector<GaussInteger> L;
    BigInt central;
    BigInt central_sqclass;  // squarefree kernel, 0 when central = 0
    int pairing = 0;
    bool zero_central = false;
    bool agree = false;  // square-class trivial <=> pairing vanishing
};

InstanceReport verify_instance(const Q8Datum& d, const CharacterAlpha& a);

// all admissible quartics over F_q: Q squarefree, Q(0) nonzero nonsquare
std::vector<FFPoly> admissible_quartics(const FiniteField* k, bool up_to_symmetry);

struct SearchResult {
    std::vector<InstanceReport> reports;
    size_t curves_tested = 0;
    size_t disagreements = 0;
    size_t witnesses = 0;  // nonsquare central value with pairing 1
};

SearchResult search_curve(const FiniteField* k, const FFPoly& Q,
                          AlphaSurjectivity mode = AlphaSurjectivity::Order4,
                          uint64_t picard_bound = 300000);
// sweep over all admissible quartics; jobs > 1 enables the OpenMP path,
// jobs == 1 forces the serial reference loop; reports are merged in a
// deterministic order either way
SearchResult search_sweep(const FiniteField* k, bool up_to_symmetry, int jobs,
                          AlphaSurjectivity mode = AlphaSurjectivity::Order4,
                          uint64_t picard_bound = 300000);

std::string quartic_string(const FFPoly& Q);

}  // namespace torsq
