#include <algorithm>
#include <deque>

#include "torsq/hyperell.hpp"

#include "torsq/matrix.hpp"

namespace torsq {

namespace {

// Smith normal form of a small integer matrix (BigInt entries).
// Returns (D, V) with U A V = D for some unimodular U; only V and the
// diagonal are needed: the new generators are integer combinations via V.
struct Snf {
    std::vector<std::vector<BigInt>> V;     // n x n unimodular
    std::vector<std::vector<BigInt>> Vinv;  // its inverse, tracked alongside
    std::vector<BigInt> diag;               // min(m,n) entries, d1 | d2 | ...
};

Snf smith_normal_form(std::vector<std::vector<BigInt>> A, size_t n) {
    size_t m = A.size();
    Snf out;
    out.V.assign(n, std::vector<BigInt>(n, BigInt(0)));
    out.Vinv.assign(n, std::vector<BigInt>(n, BigInt(0)));
    for (size_t i = 0; i < n; ++i) out.V[i][i] = out.Vinv[i][i] = BigInt(1);
    size_t t = 0;
    auto col_swap = [&](size_t i, size_t j) {
        for (size_t r = 0; r < m; ++r) std::swap(A[r][i], A[r][j]);
        for (size_t r = 0; r < n; ++r) std::swap(out.V[r][i], out.V[r][j]);
        std::swap(out.Vinv[i], out.Vinv[j]);
    };
    auto col_addmul = [&](size_t dst, size_t src, const BigInt& f) {
        for (size_t r = 0; r < m; ++r) A[r][dst] = A[r][dst] + f * A[r][src];
        for (size_t r = 0; r < n; ++r) out.V[r][dst] = out.V[r][dst] + f * out.V[r][src];
        for (size_t c = 0; c < n; ++c) out.Vinv[src][c] = out.Vinv[src][c] - f * out.Vinv[dst][c];
    };
    auto col_neg = [&](size_t i) {
        for (size_t r = 0; r < m; ++r) A[r][i] = -A[r][i];
        for (size_t r = 0; r < n; ++r) out.V[r][i] = -out.V[r][i];
        for (size_t c = 0; c < n; ++c) out.Vinv[i][c] = -out.Vinv[i][c];
    };
    auto row_swap = [&](size_t i, size_t j) { std::swap(A[i], A[j]); };
    auto row_addmul = [&](size_t dst, size_t src, const BigInt& f) {
        for (size_t c = 0; c < n; ++c) A[dst][c] = A[dst][c] + f * A[src][c];
    };
    while (t < m && t < n) {
        // find a nonzero pivot
        size_t pi = m, pj = n;
        for (size_t i = t; i < m && pi == m; ++i)
            for (size_t j = t; j < n; ++j)
                if (!A[i][j].is_zero()) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == m) break;
        row_swap(t, pi);
        col_swap(t, pj);
        bool again = true;
        while (again) {
            again = false;
            for (size_t i = t + 1; i < m; ++i) {
                if (A[i][t].is_zero()) continue;
                BigInt q = A[i][t] / A[t][t];
                row_addmul(i, t, -q);
                if (!A[i][t].is_zero()) {
                    row_swap(t, i);
                    again = true;
                }
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (A[t][j].is_zero()) continue;
                BigInt q = A[t][j] / A[t][t];
                col_addmul(j, t, -q);
                if (!A[t][j].is_zero()) {
                    col_swap(t, j);
                    again = true;
                }
            }
        }
        if (A[t][t].is_neg()) col_neg(t);
        ++t;
    }
    // enforce divisibility d_i | d_{i+1}
    for (size_t i = 0; t > 0 && i + 1 < t; ++i) {
        for (size_t j = i + 1; j < t; ++j) {
            if (A[i][i].is_zero() || (A[j][j] % A[i][i]).is_zero()) continue;
            // standard trick: add column j to column i, re-reduce the 2x2 block
            col_addmul(i, j, BigInt(1));
            // local reduction
            while (!A[j][i].is_zero() || !A[i][j].is_zero()) {
                if (!A[j][i].is_zero()) {
                    BigInt q = A[j][i] / A[i][i];
                    row_addmul(j, i, -q);
                    if (!A[j][i].is_zero()) row_swap(i, j);
                }
                if (!A[i][j].is_zero()) {
                    BigInt q = A[i][j] / A[i][i];
                    col_addmul(j, i, -q);
                    if (!A[i][j].is_zero()) col_swap(i, j);
                }
            }
            if (A[i][i].is_neg()) col_neg(i);
            if (A[j][j].is_neg()) col_neg(j);
        }
    }
    for (size_t i = 0; i < std::min(m, n); ++i) out.diag.push_back(i < t ? A[i][i] : BigInt(0));
    return out;
}

}  // namespace

void HyperCurve::build_jac(uint64_t bound) const {
    BigInt h = class_number();
    if (h > BigInt::from_u64(bound))
        throw TorsqError("TooLarge", "class group order " + h.to_string() + " above the bound");
    const uint64_t order = static_cast<uint64_t>(h.to_i64());
    auto jac = std::make_unique<JacStructure>();
    jac->order = h;

    places(genus + 1);
    // degree-one class c1: combination of small places with total degree 1
    {
        std::vector<std::pair<long long, uint32_t>> by_deg;
        for (uint32_t i = 0; i < registry_.size(); ++i) by_deg.emplace_back(registry_[i].degree, i);
        std::sort(by_deg.begin(), by_deg.end());
        bool found = false;
        for (auto& [d, i] : by_deg) {
            if (d == 1) {
                Divisor dv;
                divisor_add(dv, i, 1);
                jac->degree_one = class_reduce(dv, 1);
                found = true;
                break;
            }
        }
        if (!found) {
            // gcd of available degrees is 1 (F.K. Schmidt); find x - y = 1
            for (auto& [d1, i1] : by_deg) {
                for (auto& [d2, i2] : by_deg) {
                    if (d1 - d2 == 1) {
                        Divisor dv;
                        divisor_add(dv, i1, 1);
                        divisor_add(dv, i2, -1);
                        jac->degree_one = class_reduce(dv, 1);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
        }
        if (!found) throw std::logic_error("no degree-1 divisor class found");
    }

    // generators of Pic^0: [P] - deg(P) c1 over small places; the subgroup
    // grows incrementally, one coset layer per accepted generator, and each
    // wrap-around yields one relation.  The wrap relations generate the full
    // relation lattice: their product of indices equals the group order.
    Divisor c1_div = class_divisor(jac->degree_one);
    std::vector<DivisorClass> gens;
    DivisorClass zero = class_zero();
    std::unordered_map<std::string, std::vector<long long>> table;  // key -> exponents
    std::unordered_map<std::string, DivisorClass> elts;
    table[zero.key] = {};
    elts[zero.key] = zero;
    std::vector<std::vector<BigInt>> relations;
    for (uint32_t i = 0; i < registry_.size() && table.size() < order; ++i) {
        const Place& p = registry_[i];
        Divisor dv;
        divisor_add(dv, i, 1);
        for (auto& [cp, cm] : c1_div) divisor_add(dv, cp, -cm * p.degree);
        DivisorClass cand = class_reduce(dv, 0);
        if (table.count(cand.key)) continue;
        size_t gi = gens.size();
        gens.push_back(cand);
        for (auto& [key, vec] : table) {
            (void)key;
            vec.resize(gens.size(), 0);
        }
        for (auto& rel : relations) rel.resize(gens.size(), BigInt(0));
        std::vector<std::pair<std::string, DivisorClass>> base(elts.begin(), elts.end());
        std::vector<std::vector<long long>> base_vecs;
        base_vecs.reserve(base.size());
        for (auto& [key, cls] : base) base_vecs.push_back(table[key]);
        DivisorClass shift = zero;
        long long j = 0;
        while (true) {
            ++j;
            shift = class_add(shift, cand);
            auto hit = table.find(shift.key);
            if (hit != table.end()) {
                std::vector<BigInt> rel(gens.size(), BigInt(0));
                rel[gi] = BigInt(j);
                for (size_t t = 0; t < hit->second.size(); ++t)
                    rel[t] = rel[t] - BigInt(hit->second[t]);
                relations.push_back(std::move(rel));
                break;
            }
            for (size_t bidx = 0; bidx < base.size(); ++bidx) {
                DivisorClass nxt = class_add(base[bidx].second, shift);
                if (table.count(nxt.key)) continue;
                auto vec = base_vecs[bidx];
                vec.resize(gens.size(), 0);
                vec[gi] = j;
                table[nxt.key] = std::move(vec);
                elts[nxt.key] = nxt;
            }
        }
    }
    if (table.size() != order)
        throw TorsqError("CountMismatch", "enumerated group has order " +
                                              std::to_string(table.size()) + " but P(1) = " +
                                              h.to_string());
    Snf snf = smith_normal_form(relations, gens.size());
    // new generators G_i = sum_j V[j][i] gens[j], of order diag[i]
    for (size_t i = 0; i < gens.size(); ++i) {
        BigInt d = i < snf.diag.size() ? snf.diag[i] : BigInt(0);
        if (d.is_zero())
            throw std::logic_error("free part in a finite class group");
        if (d.is_one()) continue;
        DivisorClass gi = zero;
        for (size_t j = 0; j < gens.size(); ++j) {
            BigInt e = snf.Vinv[i][j] % d;
            if (e.is_neg()) e = e + d;
            long long reps = e.to_i64();
            DivisorClass term = zero;
            DivisorClass doubling = gens[j];
            long long r = reps;
            while (r > 0) {
                if (r & 1) term = class_add(term, doubling);
                r >>= 1;
                if (r) doubling = class_add(doubling, doubling);
            }
            gi = class_add(gi, term);
        }
        jac->invariant_factors.push_back(d);
        jac->generators.push_back(gi);
    }
    // consistency: product of invariant factors = order
    BigInt prod(1);
    for (auto& d : jac->invariant_factors) prod = prod * d;
    if (prod != h) throw std::logic_error("invariant factors do not multiply to the order");

    // dlog table over the SNF generators
    jac->dlog.clear();
    std::vector<std::pair<std::string, DivisorClass>> frontier{{zero.key, zero}};
    jac->dlog[zero.key] = std::vector<uint32_t>(jac->generators.size(), 0);
    std::unordered_map<std::string, DivisorClass> all;
    all[zero.key] = zero;
    for (size_t gi = 0; gi < jac->generators.size(); ++gi) {
        uint64_t d = static_cast<uint64_t>(jac->invariant_factors[gi].to_i64());
        std::unordered_map<std::string, DivisorClass> next_all = all;
        for (auto& [key, cls] : all) {
            DivisorClass cur = cls;
            for (uint64_t e = 1; e < d; ++e) {
                cur = class_add(cur, jac->generators[gi]);
                auto vec = jac->dlog[key];
                vec[gi] = static_cast<uint32_t>(e);
                jac->dlog[cur.key] = vec;
                next_all[cur.key] = cur;
            }
        }
        all = std::move(next_all);
    }
    if (all.size() != order) throw std::logic_error("dlog table incomplete");
    jac_ = std::move(jac);
}

const JacStructure& HyperCurve::jac_structure(uint64_t bound) const {
    if (!jac_) build_jac(bound);
    return *jac_;
}

// ---------------------------------------------------------------------------
// the double cover

namespace {

// minimal polynomial over the base field k of an element alpha in E = F_{q^d}
FFPoly minpoly_over_base(const FiniteField* k, const FiniteField* E, const FFElem& alpha) {
    // degree = least e with alpha^{q^e} = alpha
    uint64_t q = k->size();
    int d = static_cast<int>(E->s / k->s);
    int e = 1;
    FFElem fr = alpha;
    for (; e <= d; ++e) {
        fr = fr.pow(q);  // note: q fits in uint64
        if (fr == alpha) break;
    }
    // minpoly = prod_{i<e} (x - alpha^{q^i}) computed in E[x], coefficients in k
    FFPoly m(E);
    m.c = {E->one()};
    FFElem root = alpha;
    for (int i = 0; i < e; ++i) {
        FFPoly lin(E, {-root, E->one()});
        m = m * lin;
        root = root.pow(q);
    }
    // pull coefficients back to k: solve in terms of the embedding of k's basis
    const auto& emb = k->embed_into_extension(static_cast<uint32_t>(E->s / k->s));
    if (emb.target != E) throw std::logic_error("embedding mismatch");
    FFPoly out(k);
    for (auto& c : m.c) {
        // write c = sum_i x_i emb(gen^i), x_i in F_p... solve over F_p
        // coordinates: both sides are F_p-vectors of length E->s
        size_t dims = E->s;
        Matrix<FFElem> sys(dims, k->s, FiniteField::prime_field(k->p)->zero());
        const FiniteField* Fp = FiniteField::prime_field(k->p);
        FFElem basis = k->one();
        for (uint32_t j = 0; j < k->s; ++j) {
            FFElem img = emb.map(basis);
            std::vector<uint32_t> cc = img.c;
            cc.resize(dims, 0);
            for (size_t r = 0; r < dims; ++r) sys.at(r, j) = Fp->from_int(cc[r]);
            basis = basis * k->gen();
        }
        std::vector<FFElem> rhs(dims, Fp->zero()), sol;
        std::vector<uint32_t> cvec = c.c;
        cvec.resize(dims, 0);
        for (size_t r = 0; r < dims; ++r) rhs[r] = Fp->from_int(cvec[r]);
        if (!solve(sys, rhs, sol)) throw std::logic_error("coefficient not in base field");
        std::vector<uint32_t> kc(k->s, 0);
        for (uint32_t j = 0; j < k->s; ++j) kc[j] = static_cast<uint32_t>(sol[j].ordinal());
        out.c.push_back(k->from_coeffs(kc));
    }
    while (!out.c.empty() && out.c.back().is_zero()) out.c.pop_back();
    return out;
}

}  // namespace

CoverMap CoverMap::build(const FiniteField* k, const FFPoly& Q) {
    if (Q.deg() != 4) throw TorsqError("BadDegree", "Q must be a quartic");
    if (!Q.is_squarefree()) throw TorsqError("NotSquarefree", "Q has repeated roots");
    FFElem q0 = Q.coeff(0);
    if (q0.is_zero()) throw TorsqError("QZeroSquare", "Q(0) = 0");
    if (k->is_square(q0)) throw TorsqError("QZeroSquare", "Q(0) is a square");
    CoverMap cm;
    cm.Q = Q;
    // target X: y^2 = x Q(x), genus 2, odd model (degree 5)
    {
        std::vector<FFElem> form(7, k->zero());  // degree-6 binary form, top zero
        // x Q(x) has degree 5: form coefficients highest-x first
        for (int i = 0; i <= 4; ++i) form[static_cast<size_t>(6 - (i + 1))] = Q.coeff(static_cast<size_t>(i));
        cm.target = HyperCurve::create(k, form);
        if (cm.target->genus != 2) throw std::logic_error("target genus");
    }
    // source Xt: w^2 = Q(t^2), genus 3 (degree 8)
    {
        std::vector<FFElem> form(9, k->zero());
        for (int i = 0; i <= 4; ++i) form[static_cast<size_t>(8 - 2 * i)] = Q.coeff(static_cast<size_t>(i));
        cm.source = HyperCurve::create(k, form);
        if (cm.source->genus != 3) throw std::logic_error("source genus");
    }
    return cm;
}

Place CoverMap::sigma_place(const Place& p) const {
    // (w, t) -> (-w, -t): u(t) -> +-u(-t) monic, v(t) -> -v(-t)
    Place q = p;
    auto negate_t = [&](const FFPoly& f) {
        FFPoly r = f;
        for (size_t i = 0; i < r.c.size(); ++i)
            if (i % 2) r.c[i] = -r.c[i];
        return r;
    };
    switch (p.kind) {
        case Place::Kind::AffineSplit:
            q.u = negate_t(p.u).monic();
            q.v = (-negate_t(p.v)) % q.u;
            break;
        case Place::Kind::AffineInert:
        case Place::Kind::AffineRamified:
            q.u = negate_t(p.u).monic();
            break;
        case Place::Kind::InfSplit:
            // w/t^{g+1} -> -w/(-t)^4 = -w/t^4: swaps the branches (g = 3)
            q.inf_branch = 1 - p.inf_branch;
            break;
        default:
            break;
    }
    return q;
}

DivisorClass CoverMap::sigma_class(const DivisorClass& c) const {
    Divisor d;
    for (auto& [pi, m] : source->class_divisor(c))
        divisor_add(d, source->place_index(sigma_place(source->place(pi))), m);
    return source->class_reduce(d, c.degree);
}

Divisor CoverMap::pushforward_place(uint32_t src_idx) const {
    const Place& p = source->place(src_idx);
    const FiniteField* k = source->k;
    Divisor out;
    auto add_target_point = [&](const FiniteField* E, const FFElem& x0, const FFElem& y0,
                                long long mult) {
        // residue degree of (x0, y0) over k
        uint64_t q = k->size();
        int dmax = static_cast<int>(E->s / k->s);
        int e = dmax;
        for (int cand = 1; cand <= dmax; ++cand) {
            if (dmax % cand) continue;
            uint64_t qe = 1;
            for (int i = 0; i < cand; ++i) qe *= q;
            if (x0.pow(qe) == x0 && y0.pow(qe) == y0) {
                e = cand;
                break;
            }
        }
        long long f = dmax / e;
        FFPoly ux = minpoly_over_base(k, E, x0);
        // classify the target place
        FFPoly FX = cm_targetF();
        if ((FX % ux).is_zero()) {
            Place tp{Place::Kind::AffineRamified, ux, FFPoly(k), 0, ux.deg()};
            divisor_add(out, target->place_index(tp), mult * f);
            return;
        }
        // is y0 in k(x0)? then split branch with v = poly(x0)
        // k(x0) = F_{q^{deg ux}}; test Frobenius fixing
        uint64_t qq = 1;
        for (int i = 0; i < ux.deg(); ++i) qq *= q;
        if (y0.pow(qq) == y0) {
            // interpolate v with v(x0) = y0, deg v < deg ux: solve linear system
            size_t n = static_cast<size_t>(ux.deg());
            Matrix<FFElem> sys(E->s, n, FiniteField::prime_field(k->p)->zero());
            const FiniteField* Fp = FiniteField::prime_field(k->p);
            // columns: coordinates of x0^j (j < n) as F_p-vectors; this assumes
            // k prime; general s uses the same trick with k-basis tensor
            if (k->s != 1) throw TorsqError("TooLarge", "cover machinery requires a prime base field");
            FFElem pw = E->one();
            for (size_t j = 0; j < n; ++j) {
                std::vector<uint32_t> cc = pw.c;
                cc.resize(E->s, 0);
                for (size_t r = 0; r < E->s; ++r) sys.at(r, j) = Fp->from_int(cc[r]);
                pw = pw * x0;
            }
            std::vector<FFElem> rhs(E->s, Fp->zero()), sol;
            std::vector<uint32_t> yc = y0.c;
            yc.resize(E->s, 0);
            for (size_t r = 0; r < E->s; ++r) rhs[r] = Fp->from_int(yc[r]);
            if (!solve(sys, rhs, sol)) throw std::logic_error("branch interpolation failed");
            FFPoly v(k);
            for (auto& s : sol) v.c.push_back(k->from_int(static_cast<long long>(s.ordinal())));
            while (!v.c.empty() && v.c.back().is_zero()) v.c.pop_back();
            Place tp{Place::Kind::AffineSplit, ux, v, 0, ux.deg()};
            divisor_add(out, target->place_index(tp), mult * f);
        } else {
            Place tp{Place::Kind::AffineInert, ux, FFPoly(k), 0, 2 * ux.deg()};
            divisor_add(out, target->place_index(tp), mult * f);
        }
    };
    switch (p.kind) {
        case Place::Kind::InfSplit:
        case Place::Kind::InfInert: {
            // all infinity places map to the single odd-model infinity of X
            long long f = p.degree;
            for (auto& [ti, tm] : target->infinity_base()) divisor_add(out, ti, tm * f);
            return out;
        }
        case Place::Kind::AffineRamified: {
            // w = 0 on the fiber: image (t0^2, 0)
            const FiniteField* E = k->embed_into_extension(static_cast<uint32_t>(p.u.deg())).target;
            const auto& emb = k->embed_into_extension(static_cast<uint32_t>(p.u.deg()));
            FFPoly ue(E);
            for (auto& c : p.u.c) ue.c.push_back(emb.map(c));
            auto roots = ue.roots();
            if (roots.empty()) throw std::logic_error("no root of u in its splitting field");
            FFElem t0 = roots[0];
            add_target_point(E, t0 * t0, E->zero(), 1);
            return out;
        }
        case Place::Kind::AffineSplit: {
            int d = p.u.deg();
            const auto& emb = k->embed_into_extension(static_cast<uint32_t>(d));
            const FiniteField* E = emb.target;
            FFPoly ue(E), ve(E);
            for (auto& c : p.u.c) ue.c.push_back(emb.map(c));
            for (auto& c : p.v.c) ve.c.push_back(emb.map(c));
            while (!ve.c.empty() && ve.c.back().is_zero()) ve.c.pop_back();
            auto roots = ue.roots();
            FFElem t0 = roots[0];
            FFElem w0 = ve.eval(t0);
            add_target_point(E, t0 * t0, w0 * t0, 1);
            return out;
        }
        case Place::Kind::AffineInert: {
            int d = p.u.deg();
            const auto& emb = k->embed_into_extension(static_cast<uint32_t>(2 * d));
            const FiniteField* E = emb.target;
            FFPoly ue(E), Fe(E);
            for (auto& c : p.u.c) ue.c.push_back(emb.map(c));
            for (auto& c : source->F.c) Fe.c.push_back(emb.map(c));
            auto roots = ue.roots();
            FFElem t0 = roots[0];
            FFElem w0;
            if (!E->sqrt(Fe.eval(t0), w0)) throw std::logic_error("inert fiber sqrt failed");
            add_target_point(E, t0 * t0, w0 * t0, 1);
            return out;
        }
        default:
            throw std::logic_error("unexpected source place kind");
    }
}

// helper giving the target curve's F polynomial inside pushforward_place
// (member-free static storage via thread_local is overkill; wire through a
// small accessor)
FFPoly CoverMap::cm_targetF() const { return target->F; }

Divisor CoverMap::pullback_place(uint32_t tgt_idx) const {
    const Place& p = target->place(tgt_idx);
    const FiniteField* k = target->k;
    Divisor out;
    if (p.kind == Place::Kind::InfOdd) {
        // unramified: the two points over infinity of the source
        for (auto& [si, sm] : source->infinity_fiber()) divisor_add(out, si, sm);
        return out;
    }
    // affine: fiber over u(x): u(t^2); enumerate source places over its factors
    FFPoly ufib(k);
    for (size_t i = 0; i < p.u.c.size(); ++i) {
        // substitute x = t^2
        if (p.u.c[i].is_zero()) continue;
        FFPoly mono = FFPoly::monomial(k, 2 * i, p.u.c[i]);
        ufib = ufib + mono;
    }
    auto push_matches = [&](const Place& sp) {
        Divisor img = pushforward_place(source->place_index(sp));
        // sp lies over p iff p appears in the pushforward
        for (auto& [ti, tm] : img)
            if (target->place(ti).key() == p.key()) {
                divisor_add(out, source->place_index(sp), 1);
                return;
            }
    };
    for (auto& [irr, e] : ufib.factor()) {
        FFPoly fu = source->F % irr;
        if (fu.is_zero()) {
            push_matches(Place{Place::Kind::AffineRamified, irr, FFPoly(k), 0, irr.deg()});
            continue;
        }
        uint64_t qm = 1;
        for (int i = 0; i < irr.deg(); ++i) qm *= k->size();
        FFPoly pw = FFPoly::powmod(fu, (qm - 1) / 2, irr);
        bool square = pw.deg() == 0 && pw.c[0].is_one();
        if (!square) {
            push_matches(Place{Place::Kind::AffineInert, irr, FFPoly(k), 0, 2 * irr.deg()});
        } else {
            for (uint32_t i : source->places_over(irr)) push_matches(source->place(i));
        }
    }
    // degree check: unramified double cover
    if (target->degree_of(Divisor{{tgt_idx, 1}}) * 2 != source->degree_of(out))
        throw TorsqError("Ramified", "pullback degree mismatch at " + p.key());
    return out;
}

DivisorClass CoverMap::pushforward(const DivisorClass& c) const {
    Divisor d;
    for (auto& [pi, m] : source->class_divisor(c)) {
        Divisor img = pushforward_place(pi);
        for (auto& [ti, tm] : img) divisor_add(d, ti, tm * m);
    }
    return target->class_reduce(d, c.degree);
}

DivisorClass CoverMap::pullback(const DivisorClass& c) const {
    Divisor d;
    for (auto& [pi, m] : target->class_divisor(c)) {
        Divisor img = pullback_place(pi);
        for (auto& [si, sm] : img) divisor_add(d, si, sm * m);
    }
    return source->class_reduce(d, 2 * c.degree);
}

}  // namespace torsq
