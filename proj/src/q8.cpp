#include "torsq/q8.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#ifdef TORSQ_HAVE_OPENMP
#include <omp.h>
#endif

namespace torsq {

std::string GaussInteger::to_string() const {
    if (im.is_zero()) return re.to_string();
    std::string s = re.is_zero() ? "" : re.to_string();
    std::string t = im.to_string();
    if (t == "1")
        t = "i";
    else if (t == "-1")
        t = "-i";
    else
        t += "*i";
    if (s.empty()) return t;
    return t[0] == '-' ? s + t : s + "+" + t;
}

std::string quartic_string(const FFPoly& Q) {
    std::string s;
    for (int i = 4; i >= 0; --i) {
        if (!s.empty()) s += ",";
        s += Q.coeff(static_cast<size_t>(i)).to_string();
    }
    return s;
}

Q8Datum Q8Datum::build(const FiniteField* k, const FFPoly& Q, uint64_t picard_bound) {
    Q8Datum d;
    d.cover = CoverMap::build(k, Q);
    // D0: the fiber over (0,0), an inert degree-2 place at t = 0
    Place zero_place{Place::Kind::AffineRamified, FFPoly::x(k), FFPoly(k), 0, 1};
    uint32_t zp = d.cover.target->place_index(zero_place);
    Divisor D0 = d.cover.pullback_place(zp);
    if (D0.size() != 1 || d.cover.source->place(D0[0].first).kind != Place::Kind::AffineInert)
        throw TorsqError("Ramified", "(0,0) does not pull back to an inert point");
    d.d0_place = D0[0].first;
    d.d0_class = d.cover.source->class_reduce(D0, 2);
    Divisor zmi;
    divisor_add(zmi, zp, 1);
    for (auto& [p, m] : d.cover.target->infinity_base()) divisor_add(zmi, p, -m);
    d.zero_minus_inf = d.cover.target->class_reduce(zmi, 0);
    // force both class groups (and fail early when above the bound)
    d.cover.source->jac_structure(picard_bound);
    d.cover.target->jac_structure(picard_bound);
    return d;
}

uint32_t CharacterAlpha::eval_class(const Q8Datum& d, const DivisorClass& c) const {
    const auto& jac = d.Xt().jac_structure();
    // c = deg * c1 + z with z in Pic^0
    DivisorClass z = c;
    if (c.degree != 0) {
        DivisorClass shift = d.Xt().class_zero();
        DivisorClass step = c.degree > 0 ? d.Xt().class_neg(jac.degree_one) : jac.degree_one;
        long long n = std::llabs(c.degree);
        for (long long i = 0; i < n; ++i) shift = d.Xt().class_add(shift, step);
        z = d.Xt().class_add(c, shift);
    }
    auto it = jac.dlog.find(z.key);
    if (it == jac.dlog.end()) throw std::logic_error("class not in the dlog table");
    uint64_t acc = static_cast<uint64_t>(((c.degree % 4) + 4) % 4) * on_c1;
    for (size_t i = 0; i < on_gens.size(); ++i) acc += static_cast<uint64_t>(it->second[i]) * on_gens[i];
    return static_cast<uint32_t>(acc % 4);
}

uint32_t CharacterAlpha::eval_divisor(const Q8Datum& d, const Divisor& D) const {
    uint64_t acc = 0;
    for (auto& [pi, m] : D) {
        const auto& pc = d.place_coords(pi);
        uint64_t mm = static_cast<uint64_t>(((m % 4) + 4) % 4);
        acc += mm * static_cast<uint64_t>(((pc.degree % 4) + 4) % 4) * on_c1;
        for (size_t i = 0; i < on_gens.size(); ++i)
            acc += mm * (pc.dlog[i] % 4) * on_gens[i];
    }
    return static_cast<uint32_t>(acc % 4);
}

const Q8Datum::PlaceCoords& Q8Datum::place_coords(uint32_t place_idx) const {
    auto it = place_cache_.find(place_idx);
    if (it != place_cache_.end()) return it->second;
    const auto& jac = Xt().jac_structure();
    PlaceCoords pc;
    pc.degree = Xt().place(place_idx).degree;
    Divisor dv;
    divisor_add(dv, place_idx, 1);
    Divisor c1d = Xt().class_divisor(jac.degree_one);
    for (auto& [cp, cm] : c1d) divisor_add(dv, cp, -cm * pc.degree);
    DivisorClass z = Xt().class_reduce(dv, 0);
    auto dit = jac.dlog.find(z.key);
    if (dit == jac.dlog.end()) throw std::logic_error("place class not in dlog");
    pc.dlog = dit->second;
    return place_cache_.emplace(place_idx, std::move(pc)).first->second;
}

std::string CharacterAlpha::key() const {
    std::string s;
    for (auto v : on_gens) s += std::to_string(v) + ",";
    s += "|" + std::to_string(on_c1);
    return s;
}

AlphaFamily enumerate_alphas(const Q8Datum& d, AlphaSurjectivity mode) {
    const auto& jac = d.Xt().jac_structure();
    const size_t r = jac.generators.size();
    AlphaFamily fam;

    // image of each SNF generator and of c1 under sigma and iota, as dlog data
    std::vector<DivisorClass> sigma_gens, iota_gens;
    for (auto& g : jac.generators) {
        sigma_gens.push_back(d.cover.sigma_class(g));
        iota_gens.push_back(d.Xt().iota_class(g));
    }
    DivisorClass sigma_c1 = d.cover.sigma_class(jac.degree_one);
    DivisorClass iota_c1 = d.Xt().iota_class(jac.degree_one);

    // enumerate value tuples: on_gens[i] must satisfy n_i * v_i = 0 mod 4
    std::vector<std::vector<uint32_t>> choices(r);
    for (size_t i = 0; i < r; ++i) {
        BigInt n = jac.invariant_factors[i];
        for (uint32_t v = 0; v < 4; ++v)
            if (((n * BigInt(v)) % BigInt(4)).is_zero()) choices[i].push_back(v);
    }
    std::vector<uint32_t> tuple(r, 0);
    std::vector<CharacterAlpha> admissible;
    auto dlog_of = [&](const DivisorClass& deg0) {
        auto it = jac.dlog.find(deg0.key);
        if (it == jac.dlog.end()) throw std::logic_error("dlog missing");
        return it->second;
    };
    // degree-zero parts of sigma(c1) - (-1)*c1 etc. are handled through
    // eval_class below, which needs a full candidate; instead evaluate the
    // constraints directly on classes:
    //   sigma^* alpha = -alpha  <=>  alpha(sigma(g)) = -alpha(g) for SNF gens
    //                              and alpha(sigma(c1)) = -alpha(c1)
    //   alpha(D0) = 2
    std::function<void(size_t)> rec = [&](size_t pos) {
        if (pos == r) {
            for (uint32_t c1v = 0; c1v < 4; ++c1v) {
                CharacterAlpha a;
                a.on_gens = tuple;
                a.on_c1 = c1v;
                // sigma-antisymmetry on generators
                bool ok = true;
                for (size_t i = 0; i < r && ok; ++i) {
                    uint32_t lhs = a.eval_class(d, sigma_gens[i]);
                    if ((lhs + tuple[i]) % 4 != 0) ok = false;
                }
                if (!ok) continue;
                if ((a.eval_class(d, sigma_c1) + c1v) % 4 != 0) continue;
                if (a.eval_class(d, d.d0_class) != 2) continue;
                // nontriviality on Pic^0
                bool order4 = false, nontrivial = false;
                for (size_t i = 0; i < r; ++i) {
                    if (tuple[i] % 2) order4 = true;
                    if (tuple[i]) nontrivial = true;
                }
                if (mode == AlphaSurjectivity::Order4 ? !order4 : !nontrivial) continue;
                a.id = static_cast<uint32_t>(admissible.size());
                admissible.push_back(std::move(a));
            }
            return;
        }
        for (uint32_t v : choices[pos]) {
            tuple[pos] = v;
            rec(pos + 1);
        }
        tuple[pos] = 0;
    };
    rec(0);
    fam.all = admissible;

    // orbit moves on the value tables
    auto negate = [&](const CharacterAlpha& a) {
        CharacterAlpha b = a;
        for (auto& v : b.on_gens) v = (4 - v) % 4;
        b.on_c1 = (4 - a.on_c1) % 4;
        return b;
    };
    auto degree_twist = [&](const CharacterAlpha& a) {
        CharacterAlpha b = a;
        b.on_c1 = (a.on_c1 + 2) % 4;
        return b;
    };
    auto iota_pull = [&](const CharacterAlpha& a) {
        CharacterAlpha b = a;
        for (size_t i = 0; i < r; ++i) b.on_gens[i] = a.eval_class(d, iota_gens[i]);
        b.on_c1 = a.eval_class(d, iota_c1);
        return b;
    };
    std::map<std::string, size_t> index_of;
    for (size_t i = 0; i < fam.all.size(); ++i) index_of[fam.all[i].key()] = i;
    std::vector<bool> seen(fam.all.size(), false);
    for (size_t i = 0; i < fam.all.size(); ++i) {
        if (seen[i]) continue;
        // close the orbit under the three moves
        std::vector<uint32_t> orbit;
        std::vector<size_t> stack{i};
        seen[i] = true;
        while (!stack.empty()) {
            size_t cur = stack.back();
            stack.pop_back();
            orbit.push_back(static_cast<uint32_t>(cur));
            for (auto& mv : {negate(fam.all[cur]), degree_twist(fam.all[cur]), iota_pull(fam.all[cur])}) {
                auto it = index_of.find(mv.key());
                if (it == index_of.end()) continue;  // move leaves the admissible set? keep orbit partial
                if (!seen[it->second]) {
                    seen[it->second] = true;
                    stack.push_back(it->second);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        fam.representatives.push_back(fam.all[orbit[0]]);
        fam.orbits.push_back(std::move(orbit));
    }
    return fam;
}

bool alphares_check(const Q8Datum& d, const CharacterAlpha& a, int maxdeg) {
    const auto& pls = d.X().places(maxdeg);
    for (auto& p : pls) {
        if (p.kind == Place::Kind::InfOdd) continue;  // infinity handled by D0-style logic anyway
        uint32_t idx = d.X().place_index(p);
        Divisor fiber = d.cover.pullback_place(idx);
        uint32_t val = a.eval_divisor(d, fiber);
        // split <=> two places upstairs (or one ramified-free pair)
        long long updeg_places = 0;
        for (auto& [sp, sm] : fiber) {
            (void)sm;
            ++updeg_places;
        }
        bool split = updeg_places == 2;
        uint32_t expect = split ? 0 : 2;
        if (val != expect) return false;
        if (val % 2) return false;
    }
    return true;
}

namespace {

GaussInteger ipow_sum_add(GaussInteger acc, uint32_t e) {
    switch (e % 4) {
        case 0: acc.re = acc.re + BigInt(1); break;
        case 1: acc.im = acc.im + BigInt(1); break;
        case 2: acc.re = acc.re - BigInt(1); break;
        default: acc.im = acc.im - BigInt(1); break;
    }
    return acc;
}

}  // namespace

std::vector<GaussInteger> l_coefficients(const Q8Datum& d, const CharacterAlpha& a) {
    const HyperCurve& Xt = d.Xt();
    const auto& pls = Xt.places(4);
    // truncated Euler product: prod_P (1 - i^{alpha(P)} T^{deg P})^{-1} up to T^4
    std::vector<GaussInteger> c(5, GaussInteger{BigInt(0), BigInt(0)});
    c[0] = GaussInteger{BigInt(1), BigInt(0)};
    auto unit_pow = [](uint32_t e) {
        switch (e % 4) {
            case 0: return GaussInteger{BigInt(1), BigInt(0)};
            case 1: return GaussInteger{BigInt(0), BigInt(1)};
            case 2: return GaussInteger{BigInt(-1), BigInt(0)};
            default: return GaussInteger{BigInt(0), BigInt(-1)};
        }
    };
    auto mul = [](const GaussInteger& x, const GaussInteger& y) {
        return GaussInteger{x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    };
    for (auto& p : pls) {
        if (p.degree > 4) continue;
        uint32_t idx = Xt.place_index(p);
        Divisor dv;
        divisor_add(dv, idx, 1);
        uint32_t val = a.eval_divisor(d, dv);
        // local factor 1 + u T^d + u^2 T^{2d} + ... truncated
        std::vector<GaussInteger> updated(5, GaussInteger{BigInt(0), BigInt(0)});
        for (int k = 0; k <= 4; ++k) {
            GaussInteger upow{BigInt(1), BigInt(0)};
            for (int j = 0; k + j * p.degree <= 4; ++j) {
                updated[static_cast<size_t>(k + j * p.degree)] =
                    updated[static_cast<size_t>(k + j * p.degree)] + mul(c[static_cast<size_t>(k)], upow);
                upow = mul(upow, unit_pow(val));
            }
        }
        c = std::move(updated);
    }
    return c;
}

CentralValue central_value(const Q8Datum& d, const CharacterAlpha& a) {
    auto L = l_coefficients(d, a);
    if (!L[2].is_real()) throw TorsqError("CountMismatch", "L_2 not real");
    CentralValue cv;
    cv.value = BigInt(2) * BigInt(static_cast<long long>(d.X().k->size())) + L[2].re;
    cv.zero = cv.value.is_zero();
    if (!cv.zero && cv.value.is_neg())
        throw TorsqError("CountMismatch", "central value negative: " + cv.value.to_string());
    return cv;
}

int chern_pairing(const Q8Datum& d, const CharacterAlpha& a) {
    // S = pi_*(ker(alpha^2) on Pic^0(Xt)) is computed through the pushforward
    // homomorphism matrix on SNF generators
    const auto& jt = d.Xt().jac_structure();
    const auto& jx = d.X().jac_structure();
    const size_t rt = jt.generators.size(), rx = jx.generators.size();
    // pushforward matrix M: coords of pi_*(G_i) in X's SNF coordinates
    std::vector<std::vector<uint32_t>> M(rt);
    for (size_t i = 0; i < rt; ++i) {
        DivisorClass img = d.cover.pushforward(jt.generators[i]);
        auto it = jx.dlog.find(img.key);
        if (it == jx.dlog.end()) throw std::logic_error("pushforward not in dlog");
        M[i] = it->second;
    }
    auto target = jx.dlog.find(d.zero_minus_inf.key);
    if (target == jx.dlog.end()) throw std::logic_error("target class not in dlog");
    // enumerate ker(alpha^2) = {x : sum x_i alpha_i even} inside prod Z/n_i,
    // push each through M, and test membership; done with a meet-in-the-middle
    // free direct walk since the groups are small
    std::vector<uint64_t> mods(rt);
    for (size_t i = 0; i < rt; ++i) mods[i] = static_cast<uint64_t>(jt.invariant_factors[i].to_i64());
    std::vector<uint64_t> xmods(rx);
    for (size_t i = 0; i < rx; ++i) xmods[i] = static_cast<uint64_t>(jx.invariant_factors[i].to_i64());
    std::vector<uint32_t> x(rt, 0);
    bool found = false;
    std::function<void(size_t)> walk = [&](size_t pos) {
        if (found) return;
        if (pos == rt) {
            uint64_t parity = 0;
            for (size_t i = 0; i < rt; ++i) parity += static_cast<uint64_t>(x[i]) * a.on_gens[i];
            if (parity % 2) return;  // not in ker(alpha^2)
            for (size_t j = 0; j < rx; ++j) {
                uint64_t acc = 0;
                for (size_t i = 0; i < rt; ++i) acc += static_cast<uint64_t>(x[i]) * M[i][j];
                if (acc % xmods[j] != target->second[j]) return;
            }
            found = true;
            return;
        }
        for (uint64_t v = 0; v < mods[pos] && !found; ++v) {
            x[pos] = static_cast<uint32_t>(v);
            walk(pos + 1);
        }
        x[pos] = 0;
    };
    walk(0);
    return found ? 0 : 1;
}

InstanceReport verify_instance(const Q8Datum& d, const CharacterAlpha& a) {
    InstanceReport rep;
    rep.curve = quartic_string(d.cover.Q);
    rep.alpha_id = a.id;
    rep.L = l_coefficients(d, a);
    auto cv = central_value(d, a);
    rep.central = cv.value;
    rep.zero_central = cv.zero;
    rep.pairing = chern_pairing(d, a);
    if (!cv.zero) {
        auto cls = sq_classify(Rational(cv.value));
        rep.central_sqclass = cls.rational_rep();
        rep.agree = cls.is_trivial() == (rep.pairing == 0);
    }
    return rep;
}

std::vector<FFPoly> admissible_quartics(const FiniteField* k, bool up_to_symmetry) {
    std::vector<FFPoly> out;
    const uint64_t q = k->size();
    std::map<std::string, bool> seen;
    for (uint64_t a4 = 1; a4 < q; ++a4)
        for (uint64_t a3 = 0; a3 < q; ++a3)
            for (uint64_t a2 = 0; a2 < q; ++a2)
                for (uint64_t a1 = 0; a1 < q; ++a1)
                    for (uint64_t a0 = 1; a0 < q; ++a0) {
                        FFElem c0 = k->from_ordinal(a0);
                        if (k->is_square(c0)) continue;
                        FFPoly Q(k, {c0, k->from_ordinal(a1), k->from_ordinal(a2),
                                     k->from_ordinal(a3), k->from_ordinal(a4)});
                        if (!Q.is_squarefree()) continue;
                        if (up_to_symmetry) {
                            // orbit of Q under Q(u) -> mu^2 Q(lambda^2 u): the
                            // data (X, Xt, cover) is unchanged
                            std::string best;
                            for (uint64_t lam = 1; lam < q; ++lam)
                                for (uint64_t mu = 1; mu < q; ++mu) {
                                    FFElem l2 = k->from_ordinal(lam) * k->from_ordinal(lam);
                                    FFElem m2 = k->from_ordinal(mu) * k->from_ordinal(mu);
                                    FFPoly R(k);
                                    FFElem pw = k->one();
                                    for (int i = 0; i <= 4; ++i) {
                                        R.c.push_back(m2 * Q.coeff(static_cast<size_t>(i)) * pw);
                                        pw = pw * l2;
                                    }
                                    while (!R.c.empty() && R.c.back().is_zero()) R.c.pop_back();
                                    std::string key = quartic_string(R);
                                    if (best.empty() || key < best) best = key;
                                }
                            if (seen.count(best)) continue;
                            seen[best] = true;
                        }
                        out.push_back(Q);
                    }
    return out;
}

SearchResult search_curve(const FiniteField* k, const FFPoly& Q, AlphaSurjectivity mode,
                          uint64_t picard_bound) {
    SearchResult res;
    res.curves_tested = 1;
    Q8Datum d = Q8Datum::build(k, Q, picard_bound);
    auto fam = enumerate_alphas(d, mode);
    for (auto& a : fam.all) {
        auto rep = verify_instance(d, a);
        if (!rep.zero_central) {
            if (!rep.agree) ++res.disagreements;
            if (rep.pairing == 1 && !BigInt(rep.central_sqclass).is_one()) ++res.witnesses;
        }
        res.reports.push_back(std::move(rep));
    }
    return res;
}

SearchResult search_sweep(const FiniteField* k, bool up_to_symmetry, int jobs,
                          AlphaSurjectivity mode, uint64_t picard_bound) {
    auto quartics = admissible_quartics(k, up_to_symmetry);
    std::vector<SearchResult> partial(quartics.size());
#ifdef TORSQ_HAVE_OPENMP
    if (jobs > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
        for (long long i = 0; i < static_cast<long long>(quartics.size()); ++i)
            partial[static_cast<size_t>(i)] =
                search_curve(k, quartics[static_cast<size_t>(i)], mode, picard_bound);
    } else
#endif
    {
        // serial reference path
        for (size_t i = 0; i < quartics.size(); ++i)
            partial[i] = search_curve(k, quartics[i], mode, picard_bound);
    }
    SearchResult merged;
    for (auto& p : partial) {
        merged.curves_tested += p.curves_tested;
        merged.disagreements += p.disagreements;
        merged.witnesses += p.witnesses;
        for (auto& r : p.reports) merged.reports.push_back(std::move(r));
    }
    return merged;
}

}  // namespace torsq
