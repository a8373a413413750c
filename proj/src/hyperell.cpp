#include "torsq/hyperell.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <sstream>

#include "torsq/matrix.hpp"

namespace torsq {

namespace {

// ---------------------------------------------------------------------------
// small helpers over F_q[t] and its quadratic extension F_q(sqrt(lc))

// elements x + y sqrt(nr), nr a fixed nonsquare (or any scalar)
struct QuadExt {
    FFElem x, y, nr;
    QuadExt operator+(const QuadExt& o) const { return {x + o.x, y + o.y, nr}; }
    QuadExt operator-(const QuadExt& o) const { return {x - o.x, y - o.y, nr}; }
    QuadExt operator*(const QuadExt& o) const {
        return {x * o.x + nr * (y * o.y), x * o.y + y * o.x, nr};
    }
    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    QuadExt inv() const {
        FFElem d = x * x - nr * (y * y);
        FFElem di = d.inv();
        return {x * di, -(y * di), nr};
    }
};

using Series = std::vector<QuadExt>;  // coefficients of powers of s, truncated

Series series_mul(const Series& a, const Series& b, size_t prec) {
    QuadExt z = a.empty() ? (b.empty() ? QuadExt{} : QuadExt{zero_like(b[0].x), zero_like(b[0].x), b[0].nr})
                          : QuadExt{zero_like(a[0].x), zero_like(a[0].x), a[0].nr};
    Series r(prec, z);
    for (size_t i = 0; i < a.size() && i < prec; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size() && i + j < prec; ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}

Series series_inv(const Series& a, size_t prec) {
    // Newton: x <- x(2 - a x)
    QuadExt one{one_like(a[0].x), zero_like(a[0].x), a[0].nr};
    QuadExt two = one + one;
    Series x = {a[0].inv()};
    size_t cur = 1;
    while (cur < prec) {
        cur = std::min(2 * cur, prec);
        Series ax = series_mul(a, x, cur);
        Series t(cur, QuadExt{zero_like(a[0].x), zero_like(a[0].x), a[0].nr});
        for (size_t i = 0; i < cur; ++i) {
            QuadExt v = (i == 0 ? two : QuadExt{zero_like(a[0].x), zero_like(a[0].x), a[0].nr});
            t[i] = v - (i < ax.size() ? ax[i] : t[i]);
        }
        x = series_mul(x, t, cur);
    }
    x.resize(prec, QuadExt{zero_like(a[0].x), zero_like(a[0].x), a[0].nr});
    return x;
}

uint64_t pow_u64(uint64_t b, uint32_t e) {
    uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Place

std::string Place::key() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::AffineSplit:
            os << "S:" << u.to_string() << ":" << v.to_string();
            break;
        case Kind::AffineInert:
            os << "I:" << u.to_string();
            break;
        case Kind::AffineRamified:
            os << "R:" << u.to_string();
            break;
        case Kind::InfOdd:
            os << "oo";
            break;
        case Kind::InfSplit:
            os << "oo" << (inf_branch ? "-" : "+");
            break;
        case Kind::InfInert:
            os << "oo2";
            break;
    }
    return os.str();
}

void divisor_add(Divisor& d, uint32_t place, long long mult) {
    if (!mult) return;
    for (auto& [p, m] : d) {
        if (p == place) {
            m += mult;
            if (!m) d.erase(std::remove_if(d.begin(), d.end(),
                                           [&](const auto& x) { return x.first == place; }),
                            d.end());
            return;
        }
    }
    d.emplace_back(place, mult);
    std::sort(d.begin(), d.end());
}

Divisor divisor_sum(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    for (auto& [p, m] : b) divisor_add(r, p, m);
    return r;
}

Divisor divisor_neg(const Divisor& a) {
    Divisor r = a;
    for (auto& [p, m] : r) m = -m;
    return r;
}

// ---------------------------------------------------------------------------
// curve construction

std::shared_ptr<HyperCurve> HyperCurve::create(const FiniteField* k, std::vector<FFElem> form) {
    // form: coefficients of f(x,z), degree 2g+2, highest x-power first
    size_t D = form.size() - 1;
    if (D < 5) throw TorsqError("BadDegree", "form degree must be at least 5");
    if (D % 2) throw TorsqError("BadDegree", "supply the form with even degree 2g+2 (top may vanish)");
    auto curve = std::shared_ptr<HyperCurve>(new HyperCurve());
    curve->k = k;
    // affine polynomial F(t) = f(t, 1), coefficients low-to-high
    std::vector<FFElem> c(form.rbegin(), form.rend());
    curve->F = FFPoly(k, std::move(c));
    int degF = curve->F.deg();
    if (degF < static_cast<int>(D) - 1)
        throw TorsqError("NotSquarefree", "form divisible by z^2 (degree drop > 1)");
    if (!curve->F.is_squarefree()) throw TorsqError("NotSquarefree", "F has a repeated root");
    curve->genus = (static_cast<int>(D) - 2) / 2;
    if (degF == static_cast<int>(D)) {
        FFElem lc = curve->F.lead();
        FFElem root;
        if (k->sqrt(lc, root)) {
            curve->inf_model = InfModel::Split;
            curve->inf_sqrt_lc = root;
        } else {
            curve->inf_model = InfModel::Inert;
            curve->inf_sqrt_lc = lc;  // stored nonsquare
        }
    } else {
        curve->inf_model = InfModel::Odd;
    }
    return curve;
}

uint32_t HyperCurve::place_index(const Place& p) const {
    auto it = registry_lookup_.find(p.key());
    if (it != registry_lookup_.end()) return it->second;
    registry_.push_back(p);
    registry_lookup_[p.key()] = static_cast<uint32_t>(registry_.size() - 1);
    return static_cast<uint32_t>(registry_.size() - 1);
}

std::vector<uint32_t> HyperCurve::places_over(const FFPoly& u) const {
    std::vector<uint32_t> out;
    FFPoly fu = F % u;
    const int m = u.deg();
    if (fu.is_zero()) {
        Place p{Place::Kind::AffineRamified, u, FFPoly(k), 0, m};
        out.push_back(place_index(p));
        return out;
    }
    uint64_t qm = pow_u64(k->size(), static_cast<uint32_t>(m));
    FFPoly pw = FFPoly::powmod(fu, (qm - 1) / 2, u);
    bool square = pw.deg() == 0 && pw.c[0].is_one();
    if (!square) {
        Place p{Place::Kind::AffineInert, u, FFPoly(k), 0, 2 * m};
        out.push_back(place_index(p));
        return out;
    }
    // sqrt of F mod u
    FFPoly v(k);
    if (qm % 4 == 3) {
        v = FFPoly::powmod(fu, (qm + 1) / 4, u);
    } else {
        uint64_t state = 0xfeedULL ^ (static_cast<uint64_t>(m) * 2654435761ull);
        for (auto& c : u.c) state ^= c.ordinal() * 0x9e3779b97f4a7c15ull + (state << 6);
        while (true) {
            FFPoly r(k);
            r.c.resize(static_cast<size_t>(m), k->zero());
            for (auto& cc : r.c) cc = k->random(state);
            while (!r.c.empty() && r.c.back().is_zero()) r.c.pop_back();
            // (r + z)^{(q^m-1)/2} in F_q[t]/u adjoin z with z^2 = F
            FFPoly a = FFPoly::constant(k->one()), b(k);
            FFPoly base_a = r % u, base_b = FFPoly::constant(k->one());
            uint64_t e = (qm - 1) / 2;
            while (e) {
                if (e & 1) {
                    FFPoly na = (a * base_a + ((b * base_b) % u) * fu) % u;
                    FFPoly nb = (a * base_b + b * base_a) % u;
                    a = na;
                    b = nb;
                }
                FFPoly sa = (base_a * base_a + ((base_b * base_b) % u) * fu) % u;
                FFPoly sb = ((base_a * base_b) % u) * k->from_int(2) % u;
                base_a = sa;
                base_b = sb;
                e >>= 1;
            }
            FFPoly g = FFPoly::gcd(b, u);
            if (g.deg() != 0 || b.is_zero()) continue;
            FFPoly s0 = b % u, s1 = u, t0 = FFPoly::constant(k->one()), t1(k);
            while (!s1.is_zero()) {
                FFPoly qq, rr;
                FFPoly::divmod(s0, s1, qq, rr);
                FFPoly nt = t0 - qq * t1;
                s0 = s1;
                s1 = rr;
                t0 = t1;
                t1 = nt;
            }
            FFPoly binv = (t0 * s0.c[0].inv()) % u;
            FFPoly cand = ((FFPoly::constant(k->one()) - a) * binv) % u;
            if (((cand * cand) % u) == fu) {
                v = cand;
                break;
            }
            cand = ((FFPoly::constant(-k->one()) - a) * binv) % u;
            if (((cand * cand) % u) == fu) {
                v = cand;
                break;
            }
        }
    }
    FFPoly vneg = (-v) % u;
    auto ordv = [&](const FFPoly& w) {
        uint64_t o = 0;
        for (size_t i = w.c.size(); i-- > 0;) o = o * k->size() + w.c[i].ordinal();
        return o;
    };
    FFPoly first = ordv(v) <= ordv(vneg) ? v : vneg;
    FFPoly second = ordv(v) <= ordv(vneg) ? vneg : v;
    for (const FFPoly& br : {first, second}) {
        Place p{Place::Kind::AffineSplit, u, br, 0, m};
        out.push_back(place_index(p));
    }
    return out;
}

const std::vector<Place>& HyperCurve::places(int maxdeg) const {
    if (enumerated_maxdeg_ >= maxdeg) return enumerated_;
    enumerated_.clear();
    switch (inf_model) {
        case InfModel::Odd: {
            Place p{Place::Kind::InfOdd, FFPoly(k), FFPoly(k), 0, 1};
            place_index(p);
            enumerated_.push_back(p);
            break;
        }
        case InfModel::Split:
            for (int br = 0; br < 2; ++br) {
                Place p{Place::Kind::InfSplit, FFPoly(k), FFPoly(k), br, 1};
                place_index(p);
                enumerated_.push_back(p);
            }
            break;
        case InfModel::Inert: {
            Place p{Place::Kind::InfInert, FFPoly(k), FFPoly(k), 0, 2};
            place_index(p);
            enumerated_.push_back(p);
            break;
        }
    }
    for (int m = 1; m <= maxdeg; ++m) {
        uint64_t count = pow_u64(k->size(), static_cast<uint32_t>(m));
        for (uint64_t tail = 0; tail < count; ++tail) {
            std::vector<FFElem> cs;
            uint64_t t = tail;
            for (int i = 0; i < m; ++i) {
                cs.push_back(k->from_ordinal(t % k->size()));
                t /= k->size();
            }
            cs.push_back(k->one());
            FFPoly u(k, std::move(cs));
            if (!u.is_irreducible()) continue;
            for (uint32_t idx : places_over(u)) enumerated_.push_back(registry_[idx]);
        }
    }
    enumerated_maxdeg_ = maxdeg;
    return enumerated_;
}

// ---------------------------------------------------------------------------
// counting and the zeta numerator

uint64_t HyperCurve::count_points(int d) const {
    uint64_t qd = pow_u64(k->size(), static_cast<uint32_t>(d));
    if (qd > 100000000ull) throw TorsqError("TooLarge", "field too large for direct counting");
    const auto& emb = k->embed_into_extension(static_cast<uint32_t>(d));
    const FiniteField* E = emb.target;
    FFPoly Fe(E);
    Fe.c.reserve(F.c.size());
    for (auto& c : F.c) Fe.c.push_back(emb.map(c));
    while (!Fe.c.empty() && Fe.c.back().is_zero()) Fe.c.pop_back();
    uint64_t n = 0;
    for (uint64_t i = 0; i < qd; ++i) {
        FFElem x = E->from_ordinal(i);
        FFElem fx = Fe.eval(x);
        if (fx.is_zero())
            n += 1;
        else
            n += E->is_square(fx) ? 2 : 0;
    }
    switch (inf_model) {
        case InfModel::Odd:
            n += 1;
            break;
        case InfModel::Split:
            n += 2;
            break;
        case InfModel::Inert:
            n += (d % 2 == 0) ? 2 : 0;
            break;
    }
    return n;
}

uint64_t HyperCurve::count_points_scan(int d) const {
    uint64_t qd = pow_u64(k->size(), static_cast<uint32_t>(d));
    if (qd > 4000000ull) throw TorsqError("TooLarge", "field too large for scan");
    const auto& emb = k->embed_into_extension(static_cast<uint32_t>(d));
    const FiniteField* E = emb.target;
    FFPoly Fe(E);
    for (auto& c : F.c) Fe.c.push_back(emb.map(c));
    while (!Fe.c.empty() && Fe.c.back().is_zero()) Fe.c.pop_back();
    uint64_t n = 0;
    for (uint64_t i = 0; i < qd; ++i) {
        FFElem x = E->from_ordinal(i);
        FFElem fx = Fe.eval(x);
        for (uint64_t j = 0; j < qd; ++j) {
            FFElem y = E->from_ordinal(j);
            if (y * y == fx) ++n;
        }
    }
    switch (inf_model) {
        case InfModel::Odd:
            n += 1;
            break;
        case InfModel::Split:
            n += 2;
            break;
        case InfModel::Inert:
            n += (d % 2 == 0) ? 2 : 0;
            break;
    }
    return n;
}

std::vector<BigInt> HyperCurve::l_polynomial() const {
    if (!lpoly_.empty()) return lpoly_;
    const int g = genus;
    // power sums s_d = q^d + 1 - N_d of the inverse roots
    std::vector<Rational> s(static_cast<size_t>(g) + 1);
    for (int d = 1; d <= g; ++d) {
        BigInt qd = BigInt::pow(BigInt(static_cast<long long>(k->size())), static_cast<unsigned>(d));
        s[static_cast<size_t>(d)] =
            Rational(qd + BigInt(1) - BigInt::from_u64(count_points(d)));
    }
    // Newton: k e_k = sum_{i<=k} (-1)^{i-1} e_{k-i} s_i
    std::vector<Rational> e(static_cast<size_t>(g) + 1);
    e[0] = Rational(1);
    for (int kk = 1; kk <= g; ++kk) {
        Rational acc(0);
        for (int i = 1; i <= kk; ++i) {
            Rational term = e[static_cast<size_t>(kk - i)] * s[static_cast<size_t>(i)];
            acc = (i % 2) ? acc + term : acc - term;
        }
        e[static_cast<size_t>(kk)] = acc / Rational(kk);
    }
    std::vector<BigInt> p(static_cast<size_t>(2 * g) + 1);
    p[0] = BigInt(1);
    for (int kk = 1; kk <= g; ++kk) {
        Rational coeff = (kk % 2) ? -e[static_cast<size_t>(kk)] : e[static_cast<size_t>(kk)];
        if (!coeff.den().is_one()) throw TorsqError("CountMismatch", "L-polynomial not integral");
        p[static_cast<size_t>(kk)] = coeff.num();
    }
    BigInt q(static_cast<long long>(k->size()));
    for (int kk = 0; kk < g; ++kk)
        p[static_cast<size_t>(2 * g - kk)] = BigInt::pow(q, static_cast<unsigned>(g - kk)) * p[static_cast<size_t>(kk)];
    // functional-equation consistency via an extra point count when affordable
    if (pow_u64(k->size(), static_cast<uint32_t>(g) + 1) <= 100000000ull && g >= 1) {
        BigInt qd = BigInt::pow(q, static_cast<unsigned>(g + 1));
        BigInt expect = qd + BigInt(1) - BigInt::from_u64(count_points(g + 1));
        // s_{g+1} from the recursion with the completed coefficients
        std::vector<Rational> efull(static_cast<size_t>(2 * g) + 1);
        for (int kk = 0; kk <= 2 * g; ++kk)
            efull[static_cast<size_t>(kk)] =
                Rational((kk % 2) ? -p[static_cast<size_t>(kk)] : p[static_cast<size_t>(kk)]);
        Rational acc(0);
        int d = g + 1;
        for (int i = 1; i <= d; ++i) {
            Rational si = i <= g ? s[static_cast<size_t>(i)] : Rational(0);
            (void)si;
        }
        // Newton for s_{g+1}: s_d = (-1)^{d-1} d e_d + sum_{i=1}^{d-1} (-1)^{d-1-i} e_{d-i} s_i
        std::vector<Rational> sfull(static_cast<size_t>(2 * g) + 2);
        for (int i = 1; i <= g; ++i) sfull[static_cast<size_t>(i)] = s[static_cast<size_t>(i)];
        for (int dd = g + 1; dd <= g + 1; ++dd) {
            Rational a = efull[static_cast<size_t>(dd)] * Rational(dd);
            if ((dd - 1) % 2) a = -a;
            for (int i = 1; i < dd; ++i) {
                Rational t = efull[static_cast<size_t>(dd - i)] * sfull[static_cast<size_t>(i)];
                if ((dd - 1 - i) % 2) t = -t;
                a += t;
            }
            sfull[static_cast<size_t>(dd)] = a;
        }
        if (!(sfull[static_cast<size_t>(g + 1)] == Rational(expect)))
            throw TorsqError("CountMismatch", "functional-equation check failed");
    }
    lpoly_ = p;
    return p;
}

BigInt HyperCurve::class_number() const {
    auto p = l_polynomial();
    BigInt h(0);
    for (auto& c : p) h = h + c;
    if (!(h > BigInt(0))) throw TorsqError("CountMismatch", "nonpositive class number");
    return h;
}

// ---------------------------------------------------------------------------
// valuations

namespace {

long long poly_val_at(const FFPoly& a, const FFPoly& u) {
    if (a.is_zero()) return 1 << 28;  // effectively +infinity
    long long v = 0;
    FFPoly cur = a;
    while (true) {
        FFPoly q, r;
        FFPoly::divmod(cur, u, q, r);
        if (!r.is_zero()) return v;
        cur = q;
        ++v;
    }
}

}  // namespace

const FFPoly& HyperCurve::hensel_branch(const Place& p, int prec) const {
    auto key = std::make_pair(p.key(), prec);
    auto it = hensel_cache_.find(key);
    if (it != hensel_cache_.end()) return it->second;
    FFPoly lift = hensel_sqrt_lift(p.v, F, p.u, prec);
    return hensel_cache_.emplace(std::move(key), std::move(lift)).first->second;
}

const std::vector<std::pair<FFElem, FFElem>>& HyperCurve::infinity_series(int branch,
                                                                          long long prec) const {
    {
        long long p2 = 32;
        while (p2 < prec) p2 *= 2;
        prec = p2;
    }
    auto key = std::make_pair(branch, prec);
    auto it = series_cache_.find(key);
    if (it != series_cache_.end()) return it->second;
    bool inert = inf_model == InfModel::Inert;
    FFElem nr = inert ? inf_sqrt_lc : k->one();
    auto lift_cst = [&](const FFElem& c) { return QuadExt{c, zero_like(k->one()), nr}; };
    size_t P = static_cast<size_t>(prec);
    Series Ft(P + static_cast<size_t>(2 * genus + 4), lift_cst(k->zero()));
    for (int i = 0; i <= F.deg(); ++i) {
        size_t sp = static_cast<size_t>(2 * genus + 2 - i);
        if (sp < Ft.size()) Ft[sp] = lift_cst(F.coeff(static_cast<size_t>(i)));
    }
    Series W(P, lift_cst(k->zero()));
    if (inert)
        W[0] = QuadExt{zero_like(k->one()), k->one(), nr};
    else
        W[0] = lift_cst(branch ? -inf_sqrt_lc : inf_sqrt_lc);
    QuadExt half = lift_cst(k->from_int(2).inv());
    size_t cur = 1;
    while (cur < P) {
        cur = std::min(2 * cur, P);
        Series Wi = series_inv(W, cur);
        Series t = series_mul(Ft, Wi, cur);
        Series nw(cur, lift_cst(k->zero()));
        for (size_t i = 0; i < cur; ++i)
            nw[i] = ((i < W.size() ? W[i] : lift_cst(k->zero())) + t[i]) * half;
        W = std::move(nw);
    }
    std::vector<std::pair<FFElem, FFElem>> out;
    out.reserve(P);
    for (auto& c : W) out.emplace_back(c.x, c.y);
    return series_cache_.emplace(std::move(key), std::move(out)).first->second;
}

long long HyperCurve::valuation(const Place& p, const FFPoly& a, const FFPoly& b) const {
    const long long INF = 1 << 28;
    if (a.is_zero() && b.is_zero()) return INF;
    switch (p.kind) {
        case Place::Kind::AffineRamified: {
            long long va = a.is_zero() ? INF : 2 * poly_val_at(a, p.u);
            long long vb = b.is_zero() ? INF : 2 * poly_val_at(b, p.u) + 1;
            return std::min(va, vb);
        }
        case Place::Kind::AffineInert: {
            long long va = a.is_zero() ? INF : poly_val_at(a, p.u);
            long long vb = b.is_zero() ? INF : poly_val_at(b, p.u);
            return std::min(va, vb);
        }
        case Place::Kind::AffineSplit: {
            // the valuation is bounded by the norm valuation
            FFPoly norm = a * a - F * (b * b);
            long long vmax = norm.is_zero() ? INF : poly_val_at(norm, p.u);
            if (norm.is_zero()) return INF;
            int prec = static_cast<int>(vmax) + 1;
            FFPoly upow = FFPoly::constant(k->one());
            for (int i = 0; i < prec; ++i) upow = upow * p.u;
            const FFPoly& vlift = hensel_branch(p, prec);
            FFPoly expr = (a + b * vlift) % upow;
            if (expr.is_zero()) return vmax;  // all of it sits on this branch
            return poly_val_at(expr, p.u);
        }
        case Place::Kind::InfOdd: {
            long long va = a.is_zero() ? INF : -2 * a.deg();
            long long vb = b.is_zero() ? INF : -2 * b.deg() - (2 * genus + 1);
            return std::min(va, vb);
        }
        case Place::Kind::InfSplit:
        case Place::Kind::InfInert: {
            bool inert = p.kind == Place::Kind::InfInert;
            int da = a.deg(), db = b.deg();
            long long N = std::max<long long>(std::max(da, 0), (db >= 0 ? db : 0) + genus + 1);
            long long prec = 2 * N + 2 * F.deg() + 2 * genus + 12;
            const auto& W = infinity_series(inert ? 0 : p.inf_branch, prec);
            // s^N (a + b w) = s^{N-da} rev(a) + s^{N-db-(g+1)} rev(b) W
            std::vector<std::pair<FFElem, FFElem>> total(static_cast<size_t>(prec),
                                                         {k->zero(), k->zero()});
            if (!a.is_zero())
                for (int i = 0; i <= da; ++i) {
                    size_t sp = static_cast<size_t>(N - i);
                    if (sp < total.size()) total[sp].first = total[sp].first + a.coeff(static_cast<size_t>(i));
                }
            if (!b.is_zero())
                for (int i = 0; i <= db; ++i) {
                    long long base = N - i - (genus + 1);
                    for (size_t wj = 0; wj < W.size(); ++wj) {
                        long long sp = base + static_cast<long long>(wj);
                        if (sp < 0 || sp >= prec) continue;
                        const FFElem& bc = b.coeff(static_cast<size_t>(i));
                        total[static_cast<size_t>(sp)].first =
                            total[static_cast<size_t>(sp)].first + bc * W[wj].first;
                        total[static_cast<size_t>(sp)].second =
                            total[static_cast<size_t>(sp)].second + bc * W[wj].second;
                    }
                }
            for (size_t i = 0; i < total.size(); ++i)
                if (!total[i].first.is_zero() || !total[i].second.is_zero())
                    return static_cast<long long>(i) - N;
            return INF;
        }
    }
    throw std::logic_error("unreachable");
}

Divisor HyperCurve::divisor_of_irreducible(const FFPoly& u) const {
    std::string key = u.to_string();
    auto it = irreducible_divisor_cache_.find(key);
    if (it != irreducible_divisor_cache_.end()) return it->second;
    Divisor d;
    FFPoly fu = F % u;
    if (fu.is_zero()) {
        Place p{Place::Kind::AffineRamified, u, FFPoly(k), 0, u.deg()};
        divisor_add(d, place_index(p), 2);
    } else {
        uint64_t qm = pow_u64(k->size(), static_cast<uint32_t>(u.deg()));
        FFPoly pw = FFPoly::powmod(fu, (qm - 1) / 2, u);
        bool square = pw.deg() == 0 && pw.c[0].is_one();
        if (square) {
            for (uint32_t i : places_over(u)) divisor_add(d, i, 1);
        } else {
            Place p{Place::Kind::AffineInert, u, FFPoly(k), 0, 2 * u.deg()};
            divisor_add(d, place_index(p), 1);
        }
    }
    // infinity poles of the polynomial u
    places(1);
    for (uint32_t i = 0; i < registry_.size(); ++i) {
        const Place& p = registry_[i];
        switch (p.kind) {
            case Place::Kind::InfOdd:
                divisor_add(d, i, -2 * u.deg());
                break;
            case Place::Kind::InfSplit:
            case Place::Kind::InfInert:
                divisor_add(d, i, -u.deg());
                break;
            default:
                break;
        }
    }
    if (degree_of(d) != 0) throw std::logic_error("divisor of irreducible has nonzero degree");
    irreducible_divisor_cache_.emplace(std::move(key), d);
    return d;
}

Divisor HyperCurve::principal_divisor(const FFPoly& a, const FFPoly& b) const {
    if (a.is_zero() && b.is_zero()) throw TorsqError("ZeroInput", "divisor of zero");
    if (b.is_zero()) {
        // polynomial: assemble from cached irreducible divisors
        Divisor d;
        FFElem lead = a.lead();
        (void)lead;
        for (auto& [irr, e] : a.factor()) {
            Divisor di = divisor_of_irreducible(irr);
            for (auto& [p, m] : di) divisor_add(d, p, m * e);
        }
        return d;
    }
    Divisor div;
    FFPoly norm = a * a - F * (b * b);
    // affine places live over irreducible factors of the norm (or of gcd(a,b)
    // at inert places where the norm may vanish identically only if f = 0)
    std::vector<FFPoly> candidates;
    if (!norm.is_zero())
        for (auto& [irr, e] : norm.factor()) candidates.push_back(irr);
    for (auto& u : candidates) {
        FFPoly fu = F % u;
        if (fu.is_zero()) {
            Place p{Place::Kind::AffineRamified, u, FFPoly(k), 0, u.deg()};
            long long v = valuation(p, a, b);
            if (v) divisor_add(div, place_index(p), v);
            continue;
        }
        uint64_t qm = pow_u64(k->size(), static_cast<uint32_t>(u.deg()));
        FFPoly pw = FFPoly::powmod(fu, (qm - 1) / 2, u);
        bool square = pw.deg() == 0 && pw.c[0].is_one();
        if (!square) {
            Place p{Place::Kind::AffineInert, u, FFPoly(k), 0, 2 * u.deg()};
            long long v = valuation(p, a, b);
            if (v) divisor_add(div, place_index(p), v);
            continue;
        }
        for (uint32_t idx : places_over(u)) {
            long long v = valuation(registry_[idx], a, b);
            if (v) divisor_add(div, idx, v);
        }
    }
    // infinity
    places(1);
    for (uint32_t idx = 0; idx < registry_.size(); ++idx) {
        const Place& p = registry_[idx];
        if (p.kind == Place::Kind::InfOdd || p.kind == Place::Kind::InfSplit ||
            p.kind == Place::Kind::InfInert) {
            long long v = valuation(p, a, b);
            if (v) divisor_add(div, idx, v);
        }
    }
    if (degree_of(div) != 0) throw std::logic_error("principal divisor has nonzero degree");
    return div;
}

long long HyperCurve::degree_of(const Divisor& D) const {
    long long d = 0;
    for (auto& [p, m] : D) d += m * registry_[p].degree;
    return d;
}

// ---------------------------------------------------------------------------
// Riemann-Roch spaces

RRSpace HyperCurve::rr_basis(const Divisor& D) const {
    // clear affine poles: f = (A + B w) / h
    FFPoly h = FFPoly::constant(k->one());
    for (auto& [pi, m] : D) {
        const Place& p = registry_[pi];
        if (m <= 0) continue;
        long long mult = m;
        if (p.kind == Place::Kind::AffineRamified) mult = (m + 1) / 2;
        if (p.kind == Place::Kind::AffineSplit || p.kind == Place::Kind::AffineInert ||
            p.kind == Place::Kind::AffineRamified) {
            for (long long i = 0; i < mult; ++i) h = h * p.u;
        }
    }
    Divisor Dh = D;
    if (h.deg() > 0) {
        // f = g/h with g = A + B w: div(g) >= -(D - div(h)); div(h) assembled
        // from the cached irreducible-factor divisors
        Divisor dh;
        for (auto& [pi, m] : D) {
            const Place& p = registry_[pi];
            if (m <= 0) continue;
            long long mult = (p.kind == Place::Kind::AffineRamified) ? (m + 1) / 2 : m;
            if (p.kind == Place::Kind::AffineSplit || p.kind == Place::Kind::AffineInert ||
                p.kind == Place::Kind::AffineRamified) {
                Divisor du = divisor_of_irreducible(p.u);
                for (auto& [q, qm] : du) divisor_add(dh, q, qm * mult);
            }
        }
        Dh = divisor_sum(D, divisor_neg(dh));
    }
    // infinity pole allowances of D'
    long long m_inf0 = 0, m_inf1 = 0;
    for (auto& [pi, m] : Dh) {
        const Place& p = registry_[pi];
        if (p.kind == Place::Kind::InfOdd || p.kind == Place::Kind::InfInert)
            m_inf0 = m;
        else if (p.kind == Place::Kind::InfSplit)
            (p.inf_branch ? m_inf1 : m_inf0) = m;
    }
    long long da_max, db_max;
    switch (inf_model) {
        case InfModel::Odd:
            da_max = m_inf0 >= 0 ? m_inf0 / 2 : -1;
            db_max = (m_inf0 - (2 * genus + 1)) >= 0 ? (m_inf0 - (2 * genus + 1)) / 2 : -1;
            break;
        case InfModel::Split: {
            long long mx = std::max(m_inf0, m_inf1);
            da_max = mx >= 0 ? mx : -1;
            db_max = mx - (genus + 1) >= 0 ? mx - (genus + 1) : -1;
            break;
        }
        case InfModel::Inert: {
            da_max = m_inf0 >= 0 ? m_inf0 : -1;
            db_max = m_inf0 - (genus + 1) >= 0 ? m_inf0 - (genus + 1) : -1;
            break;
        }
    }
    size_t na = static_cast<size_t>(da_max + 1), nb = static_cast<size_t>(db_max + 1);
    size_t nvars = na + nb;
    if (nvars == 0) return {};
    // linear conditions over F_q
    std::vector<std::vector<FFElem>> rows;
    auto add_conditions_affine = [&](const Place& p, long long need) {
        // val_P(A + Bw) >= need (need > 0)
        if (p.kind == Place::Kind::AffineInert || p.kind == Place::Kind::AffineRamified) {
            long long va_need = need, vb_need = need;
            if (p.kind == Place::Kind::AffineRamified) {
                va_need = (need + 1) / 2;  // 2 val_u(A) >= need
                vb_need = need / 2;        // 2 val_u(B) + 1 >= need
            }
            // u^{va_need} | A: conditions on coefficients of A mod u^{va_need}
            auto add_div = [&](size_t offset, size_t count, long long vneed) {
                if (vneed <= 0) return;
                FFPoly upow = FFPoly::constant(k->one());
                for (long long i = 0; i < vneed; ++i) upow = upow * p.u;
                size_t conds = static_cast<size_t>(upow.deg());
                // coefficient of t^j in (poly mod upow) must vanish: build per
                // monomial remainders
                std::vector<FFPoly> rem(count);
                for (size_t i = 0; i < count; ++i)
                    rem[i] = FFPoly::monomial(k, i, k->one()) % upow;
                for (size_t cnum = 0; cnum < conds; ++cnum) {
                    std::vector<FFElem> row(nvars, k->zero());
                    for (size_t i = 0; i < count; ++i) row[offset + i] = rem[i].coeff(cnum);
                    rows.push_back(std::move(row));
                }
            };
            add_div(0, na, va_need);
            add_div(na, nb, vb_need);
        } else if (p.kind == Place::Kind::AffineSplit) {
            // (A + B v_lift) = 0 mod u^{need}
            FFPoly upow = FFPoly::constant(k->one());
            for (long long i = 0; i < need; ++i) upow = upow * p.u;
            FFPoly vlift = hensel_sqrt_lift(p.v, F, p.u, static_cast<int>(need));
            std::vector<FFPoly> rema(na), remb(nb);
            for (size_t i = 0; i < na; ++i) rema[i] = FFPoly::monomial(k, i, k->one()) % upow;
            for (size_t i = 0; i < nb; ++i)
                remb[i] = (FFPoly::monomial(k, i, k->one()) * vlift) % upow;
            for (size_t cnum = 0; cnum < static_cast<size_t>(upow.deg()); ++cnum) {
                std::vector<FFElem> row(nvars, k->zero());
                for (size_t i = 0; i < na; ++i) row[i] = rema[i].coeff(cnum);
                for (size_t i = 0; i < nb; ++i) row[na + i] = remb[i].coeff(cnum);
                rows.push_back(std::move(row));
            }
        }
    };
    for (auto& [pi, m] : Dh) {
        const Place& p = registry_[pi];
        if (m < 0 && (p.kind == Place::Kind::AffineSplit || p.kind == Place::Kind::AffineInert ||
                      p.kind == Place::Kind::AffineRamified))
            add_conditions_affine(p, -m);
    }
    // infinity conditions beyond the degree bounds (split/inert cancellations)
    if (inf_model != InfModel::Odd) {
        bool inert = inf_model == InfModel::Inert;
        long long N = std::max<long long>(da_max, db_max + genus + 1);
        std::vector<std::pair<int, long long>> branches;  // (branch id, allowance)
        if (inert)
            branches.emplace_back(0, m_inf0);
        else {
            branches.emplace_back(0, m_inf0);
            branches.emplace_back(1, m_inf1);
        }
        for (auto& [br, allow] : branches) {
            long long upto = N - allow;  // coefficients s^0 .. s^{upto-1} vanish
            if (upto <= 0) continue;
            const auto& W = infinity_series(br, upto + 2);
            for (long long cnum = 0; cnum < upto; ++cnum) {
                std::vector<FFElem> row_x(nvars, k->zero()), row_y(nvars, k->zero());
                for (size_t i = 0; i < na; ++i) {
                    long long sp = N - static_cast<long long>(i);
                    if (sp == cnum) row_x[i] = k->one();
                }
                for (size_t i = 0; i < nb; ++i) {
                    long long base = N - static_cast<long long>(i) - (genus + 1);
                    long long widx = cnum - base;
                    if (widx >= 0 && widx < static_cast<long long>(W.size())) {
                        row_x[na + i] = W[static_cast<size_t>(widx)].first;
                        row_y[na + i] = W[static_cast<size_t>(widx)].second;
                    }
                }
                rows.push_back(std::move(row_x));
                if (inert) rows.push_back(std::move(row_y));
            }
        }
    }
    std::vector<std::vector<FFElem>> ker;
    if (rows.empty()) {
        for (size_t i = 0; i < nvars; ++i) {
            std::vector<FFElem> v(nvars, k->zero());
            v[i] = k->one();
            ker.push_back(std::move(v));
        }
    } else {
        Matrix<FFElem> sys(rows.size(), nvars, k->zero());
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < nvars; ++j) sys.at(i, j) = rows[i][j];
        ker = right_kernel(sys);
    }
    RRSpace out;
    out.denom = h;
    for (auto& v : ker) {
        FFPoly A(k), B(k);
        A.c.assign(v.begin(), v.begin() + static_cast<long>(na));
        while (!A.c.empty() && A.c.back().is_zero()) A.c.pop_back();
        B.c.assign(v.begin() + static_cast<long>(na), v.end());
        while (!B.c.empty() && B.c.back().is_zero()) B.c.pop_back();
        out.basis.push_back(RRBasisElement{std::move(A), std::move(B)});
    }
    return out;
}

Divisor HyperCurve::principal_divisor(const FFPoly& a, const FFPoly& b, const FFPoly& h) const {
    Divisor d = principal_divisor(a, b);
    if (h.deg() > 0) d = divisor_sum(d, divisor_neg(principal_divisor(h, FFPoly(k))));
    return d;
}

// ---------------------------------------------------------------------------
// canonical class representatives

Divisor HyperCurve::infinity_base() const {
    places(1);
    Divisor d;
    for (uint32_t i = 0; i < registry_.size(); ++i) {
        const Place& p = registry_[i];
        if (p.kind == Place::Kind::InfOdd || p.kind == Place::Kind::InfInert) {
            divisor_add(d, i, 1);
            return d;
        }
        if (p.kind == Place::Kind::InfSplit && p.inf_branch == 0) {
            divisor_add(d, i, 1);
            return d;
        }
    }
    throw std::logic_error("no infinity place");
}

Divisor HyperCurve::infinity_fiber() const {
    places(1);
    Divisor d;
    for (uint32_t i = 0; i < registry_.size(); ++i) {
        const Place& p = registry_[i];
        switch (p.kind) {
            case Place::Kind::InfOdd:
                divisor_add(d, i, 2);  // ramified
                break;
            case Place::Kind::InfSplit:
            case Place::Kind::InfInert:
                divisor_add(d, i, 1);
                break;
            default:
                break;
        }
    }
    return d;
}

long long HyperCurve::infinity_base_degree() const {
    return inf_model == InfModel::Inert ? 2 : 1;
}

namespace {

// deterministic infinity allocations of a given total degree
std::vector<Divisor> allocations_of_degree(const HyperCurve& C, long long deg) {
    std::vector<Divisor> out;
    std::vector<std::pair<uint32_t, int>> infs;  // (place idx, place degree)
    for (uint32_t i = 0; i < C.registry_size(); ++i) {
        const Place& p = C.place(i);
        if (p.kind == Place::Kind::InfOdd || p.kind == Place::Kind::InfSplit ||
            p.kind == Place::Kind::InfInert)
            infs.emplace_back(i, p.degree);
    }
    std::sort(infs.begin(), infs.end());
    if (infs.size() == 1) {
        if (deg % infs[0].second == 0) {
            Divisor d;
            divisor_add(d, infs[0].first, deg / infs[0].second);
            out.push_back(std::move(d));
        }
        return out;
    }
    // split model: (n0, n1), balanced first, larger first-branch on ties
    std::vector<std::pair<long long, long long>> pairs;
    for (long long n0 = 0; n0 <= deg; ++n0) pairs.emplace_back(n0, deg - n0);
    std::sort(pairs.begin(), pairs.end(), [](auto& a, auto& b) {
        long long da = std::llabs(a.first - a.second), db = std::llabs(b.first - b.second);
        if (da != db) return da < db;
        return a.first > b.first;
    });
    for (auto& [n0, n1] : pairs) {
        Divisor d;
        if (n0) divisor_add(d, infs[0].first, n0);
        if (n1) divisor_add(d, infs[1].first, n1);
        out.push_back(std::move(d));
    }
    return out;
}

std::string divisor_key(const HyperCurve& C, const Divisor& D, long long base_mult) {
    std::ostringstream os;
    for (auto& [p, m] : D) os << C.place(p).key() << "^" << m << ";";
    os << "|" << base_mult;
    return os.str();
}

}  // namespace

DivisorClass HyperCurve::class_reduce(const Divisor& D, long long degree_tag) const {
    places(1);  // infinity places only; affine places come from the inputs
    const long long degB = infinity_base_degree();
    const Divisor baseD = infinity_base();
    // inert models can only allocate even degrees at infinity; a fixed
    // odd-degree anchor place keeps the search systems one-dimensional
    std::optional<uint32_t> anchor;
    long long anchor_deg = 0;
    if (inf_model == InfModel::Inert) {
        for (int deg = 1; deg <= genus + 1 && !anchor; deg += 2) {
            for (auto& p : places(deg)) {
                if (p.degree == deg && (p.kind == Place::Kind::AffineSplit ||
                                        p.kind == Place::Kind::AffineRamified)) {
                    anchor = place_index(p);
                    anchor_deg = deg;
                    break;
                }
            }
        }
    }
    for (long long d_aff = 0; d_aff <= genus + 2; ++d_aff) {
        for (int use_anchor = 0; use_anchor <= (anchor ? 1 : 0); ++use_anchor) {
            for (long long alloc_deg = 0; alloc_deg <= 2 * genus + 4; ++alloc_deg) {
                long long num = d_aff + use_anchor * anchor_deg + alloc_deg - degree_tag;
                if (num % degB) continue;
                long long m = num / degB;
                for (const Divisor& alloc : allocations_of_degree(*this, alloc_deg)) {
                    Divisor bound = D;
                    for (auto& [p, mm] : baseD) divisor_add(bound, p, mm * m);
                    bound = divisor_sum(bound, divisor_neg(alloc));
                    if (use_anchor) divisor_add(bound, *anchor, -1);
                    RRSpace L = rr_basis(bound);
                    if (L.dim() == 0) continue;
                    uint64_t vsize = 1;
                    for (size_t i = 0; i < L.dim(); ++i) {
                        vsize *= k->size();
                        if (vsize > 2000000)
                            throw TorsqError("TooLarge", "linear system too large in reduction");
                    }
                    std::string best_key;
                    Divisor best_E;
                    for (uint64_t fidx = 1; fidx < vsize; ++fidx) {
                        std::vector<FFElem> coef(L.dim(), k->zero());
                        uint64_t t = fidx;
                        size_t lead = L.dim();
                        for (size_t i = 0; i < L.dim(); ++i) {
                            coef[i] = k->from_ordinal(t % k->size());
                            t /= k->size();
                        }
                        for (size_t i = L.dim(); i-- > 0;)
                            if (!coef[i].is_zero()) lead = i;
                        if (lead == L.dim() || !coef[lead].is_one()) continue;
                        FFPoly A(k), B(k);
                        for (size_t i = 0; i < L.dim(); ++i) {
                            A = A + L.basis[i].a * coef[i];
                            B = B + L.basis[i].b * coef[i];
                        }
                        if (A.is_zero() && B.is_zero()) continue;
                        Divisor df = principal_divisor(A, B, L.denom);
                        Divisor E = divisor_sum(df, bound);
                        bool effective_affine = true;
                        long long adeg = 0;
                        for (auto& [pi, mm] : E) {
                            const Place& p = registry_[pi];
                            bool is_inf = p.kind == Place::Kind::InfOdd ||
                                          p.kind == Place::Kind::InfSplit ||
                                          p.kind == Place::Kind::InfInert;
                            if (mm < 0 || is_inf) {
                                effective_affine = false;
                                break;
                            }
                            adeg += mm * p.degree;
                        }
                        if (!effective_affine || adeg != d_aff) continue;
                        Divisor full = divisor_sum(E, alloc);
                        if (use_anchor) divisor_add(full, *anchor, 1);
                        std::string key = divisor_key(*this, full, m);
                        if (best_key.empty() || key < best_key) {
                            best_key = key;
                            best_E = full;
                        }
                    }
                    if (!best_key.empty()) {
                        DivisorClass c;
                        c.curve = this;
                        c.degree = degree_tag;
                        c.reduced = best_E;
                        c.base_mult = m;
                        c.key = best_key;
                        return c;
                    }
                }
            }
        }
    }
    throw std::logic_error("class reduction did not terminate");
}

DivisorClass HyperCurve::class_of(const Divisor& D) const {
    return class_reduce(D, degree_of(D));
}

DivisorClass HyperCurve::class_add(const DivisorClass& a, const DivisorClass& b) const {
    Divisor d = divisor_sum(class_divisor(a), class_divisor(b));
    return class_reduce(d, a.degree + b.degree);
}

DivisorClass HyperCurve::class_neg(const DivisorClass& a) const {
    return class_reduce(divisor_neg(class_divisor(a)), -a.degree);
}

DivisorClass HyperCurve::class_zero() const { return class_reduce(Divisor{}, 0); }

DivisorClass HyperCurve::class_of_place(uint32_t idx) const {
    Divisor d;
    divisor_add(d, idx, 1);
    return class_of(d);
}

bool HyperCurve::class_is_zero(const DivisorClass& c) const { return c == class_zero(); }

Divisor HyperCurve::class_divisor(const DivisorClass& c) const {
    Divisor d = c.reduced;
    for (auto& [p, m] : infinity_base()) divisor_add(d, p, -m * c.base_mult);
    return d;
}

DivisorClass HyperCurve::canonical_class() const {
    Divisor fiber = infinity_fiber();
    Divisor K;
    for (auto& [p, m] : fiber) divisor_add(K, p, m * (genus - 1));
    return class_reduce(K, 2 * genus - 2);
}

Place HyperCurve::iota_place(const Place& p) const {
    Place q = p;
    switch (p.kind) {
        case Place::Kind::AffineSplit:
            q.v = (-p.v) % p.u;
            break;
        case Place::Kind::InfSplit:
            q.inf_branch = 1 - p.inf_branch;
            break;
        default:
            break;
    }
    return q;
}

DivisorClass HyperCurve::iota_class(const DivisorClass& c) const {
    Divisor d;
    for (auto& [pi, m] : class_divisor(c)) divisor_add(d, place_index(iota_place(registry_[pi])), m);
    return class_reduce(d, c.degree);
}

}  // namespace torsq
