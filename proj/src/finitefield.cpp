#include "torsq/finitefield.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace torsq {

namespace {

uint64_t splitmix(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// polynomial arithmetic on raw coefficient vectors mod p (used before a field
// object exists, e.g. while searching for an irreducible modulus)
using Raw = std::vector<uint32_t>;

void raw_trim(Raw& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Raw raw_mulmod(const Raw& a, const Raw& b, const Raw& m, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint64_t> t(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) t[i + j] = (t[i + j] + uint64_t(a[i]) * b[j]) % p;
    // reduce mod m (monic)
    size_t dm = m.size() - 1;
    for (size_t i = t.size(); i-- > dm;) {
        uint64_t f = t[i] % p;
        if (!f) continue;
        for (size_t j = 0; j < dm; ++j) t[i - dm + j] = (t[i - dm + j] + (p - m[j] % p) * f) % p;
        t[i] = 0;
    }
    Raw r(dm, 0);
    for (size_t i = 0; i < dm && i < t.size(); ++i) r[i] = static_cast<uint32_t>(t[i] % p);
    raw_trim(r);
    return r;
}

Raw raw_powmod_xq(const Raw& m, uint64_t e, uint64_t p) {
    // x^e mod m
    Raw result = {1}, base = {0, 1};
    if (m.size() - 1 == 1) base = raw_mulmod({0, 1}, {1}, m, p);
    while (e) {
        if (e & 1) result = raw_mulmod(result, base, m, p);
        base = raw_mulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

Raw raw_gcd(Raw a, Raw b, uint64_t p) {
    auto inv_mod = [&](uint64_t x) {
        uint64_t r = 1, e = p - 2, base = x % p;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    raw_trim(a);
    raw_trim(b);
    while (!b.empty()) {
        // a mod b
        uint64_t lead_inv = inv_mod(b.back());
        while (a.size() >= b.size() && !a.empty()) {
            uint64_t f = uint64_t(a.back()) * lead_inv % p;
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i)
                a[off + i] = static_cast<uint32_t>((a[off + i] + (p - f * b[i] % p)) % p);
            raw_trim(a);
            if (a.size() < b.size()) break;
        }
        std::swap(a, b);
    }
    return a;
}

bool raw_irreducible(const Raw& m, uint64_t p) {
    size_t n = m.size() - 1;
    if (n == 0) return false;
    // x^{p^n} == x mod m, and gcd(x^{p^{n/r}} - x, m) == const for prime r | n
    uint64_t pn = 1;
    for (size_t i = 0; i < n; ++i) pn *= p;
    Raw xq = raw_powmod_xq(m, pn, p);
    Raw x = {0, 1};
    if (n == 1) {
        x = raw_mulmod({0, 1}, {1}, m, p);
    }
    raw_trim(x);
    Raw diff = xq;
    diff.resize(std::max(diff.size(), x.size()), 0);
    for (size_t i = 0; i < x.size(); ++i) diff[i] = static_cast<uint32_t>((diff[i] + p - x[i]) % p);
    raw_trim(diff);
    if (!diff.empty()) return false;
    for (size_t r = 2; r <= n; ++r) {
        if (n % r != 0) continue;
        bool prime = true;
        for (size_t d = 2; d * d <= r; ++d)
            if (r % d == 0) prime = false;
        if (!prime) continue;
        uint64_t e = 1;
        for (size_t i = 0; i < n / r; ++i) e *= p;
        Raw xe = raw_powmod_xq(m, e, p);
        Raw diff2 = xe;
        diff2.resize(std::max(diff2.size(), x.size()), 0);
        for (size_t i = 0; i < x.size(); ++i)
            diff2[i] = static_cast<uint32_t>((diff2[i] + p - x[i]) % p);
        raw_trim(diff2);
        Raw g = raw_gcd(m, diff2, p);
        if (g.size() > 1) return false;
    }
    return true;
}

}  // namespace

struct FFRegistry {
    std::mutex mu;
    std::map<std::pair<uint32_t, std::vector<uint32_t>>, std::unique_ptr<FiniteField>> fields;

    static FFRegistry& get() {
        static FFRegistry r;
        return r;
    }

    const FiniteField* field(uint32_t p, std::vector<uint32_t> modulus) {
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(p, modulus);
        auto it = fields.find(key);
        if (it != fields.end()) return it->second.get();
        auto f = std::unique_ptr<FiniteField>(
            new FiniteField(p, static_cast<uint32_t>(modulus.size() - 1), modulus));
        const FiniteField* ptr = f.get();
        fields.emplace(std::move(key), std::move(f));
        return ptr;
    }
};

FiniteField::FiniteField(uint32_t p, uint32_t s, std::vector<uint32_t> modulus)
    : p(p), s(s), modulus(std::move(modulus)) {
    q_ = 1;
    for (uint32_t i = 0; i < s; ++i) q_ *= p;
}

const FiniteField* FiniteField::prime_field(uint32_t p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("odd prime required");
    for (uint32_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) throw std::invalid_argument("p not prime");
    return FFRegistry::get().field(p, {0, 1});
}

const FiniteField* FiniteField::extension(uint32_t p, uint32_t s) {
    if (s == 1) return prime_field(p);
    prime_field(p);  // validates p
    // first irreducible monic x^s + tail in ordinal order of the tail
    uint64_t ps = 1;
    for (uint32_t i = 0; i < s; ++i) ps *= p;
    for (uint64_t tail = 1; tail < ps; ++tail) {
        Raw m(s + 1, 0);
        m[s] = 1;
        uint64_t t = tail;
        for (uint32_t i = 0; i < s; ++i) {
            m[i] = static_cast<uint32_t>(t % p);
            t /= p;
        }
        if (raw_irreducible(m, p)) return FFRegistry::get().field(p, m);
    }
    throw std::logic_error("no irreducible polynomial found");
}

const FiniteField* FiniteField::with_modulus(uint32_t p, std::vector<uint32_t> modulus) {
    for (auto& c : modulus) c %= p;
    raw_trim(modulus);
    if (modulus.size() < 2 || modulus.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree >= 1");
    if (modulus.size() > 2 && !raw_irreducible(modulus, p))
        throw std::invalid_argument("modulus not irreducible");
    return FFRegistry::get().field(p, modulus);
}

FFElem FiniteField::from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    if (r == 0) return zero();
    std::vector<uint32_t> c(s, 0);
    c[0] = static_cast<uint32_t>(r);
    return FFElem{this, std::move(c)};
}

FFElem FiniteField::gen() const {
    if (s == 1) return one();
    std::vector<uint32_t> c(s, 0);
    c[1] = 1;
    return FFElem{this, std::move(c)};
}

FFElem FiniteField::from_coeffs(std::vector<uint32_t> c) const {
    c.resize(s, 0);
    for (auto& x : c) x %= p;
    bool zero = std::all_of(c.begin(), c.end(), [](uint32_t x) { return x == 0; });
    if (zero) return FFElem{this, {}};
    return FFElem{this, std::move(c)};
}

FFElem FiniteField::from_ordinal(uint64_t n) const {
    std::vector<uint32_t> c(s, 0);
    for (uint32_t i = 0; i < s; ++i) {
        c[i] = static_cast<uint32_t>(n % p);
        n /= p;
    }
    return from_coeffs(std::move(c));
}

bool FFElem::is_zero() const { return c.empty() || std::all_of(c.begin(), c.end(), [](uint32_t x) { return x == 0; }); }

bool FFElem::is_one() const {
    if (!F || c.empty()) return false;
    if (c[0] != 1) return false;
    for (size_t i = 1; i < c.size(); ++i)
        if (c[i]) return false;
    return true;
}

bool FFElem::operator==(const FFElem& o) const {
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    if (F != o.F) throw std::invalid_argument("FFElem: field mismatch");
    return c == o.c;
}

FFElem FFElem::operator-() const {
    if (is_zero()) return *this;
    FFElem r = *this;
    for (auto& x : r.c) x = x ? F->p - x : 0;
    return r;
}

FFElem FFElem::operator+(const FFElem& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (F != o.F) throw std::invalid_argument("FFElem: field mismatch");
    FFElem r = *this;
    for (size_t i = 0; i < r.c.size(); ++i) {
        r.c[i] += o.c[i];
        if (r.c[i] >= F->p) r.c[i] -= F->p;
    }
    if (r.is_zero()) return FFElem{F, {}};
    return r;
}

FFElem FFElem::operator-(const FFElem& o) const { return *this + (-o); }

FFElem FFElem::operator*(const FFElem& o) const {
    if (is_zero() || o.is_zero()) return FFElem{F ? F : o.F, {}};
    if (F != o.F) throw std::invalid_argument("FFElem: field mismatch");
    const uint64_t p = F->p;
    if (F->s == 1) {
        uint64_t v = uint64_t(c[0]) * o.c[0] % p;
        return v ? FFElem{F, {static_cast<uint32_t>(v)}} : FFElem{F, {}};
    }
    std::vector<uint64_t> t(2 * F->s - 1, 0);
    for (size_t i = 0; i < c.size(); ++i) {
        if (!c[i]) continue;
        for (size_t j = 0; j < o.c.size(); ++j) t[i + j] = (t[i + j] + uint64_t(c[i]) * o.c[j]) % p;
    }
    for (size_t i = t.size(); i-- > F->s;) {
        uint64_t f = t[i];
        if (!f) continue;
        for (size_t j = 0; j < F->s; ++j)
            t[i - F->s + j] = (t[i - F->s + j] + (p - F->modulus[j]) * f) % p;
        t[i] = 0;
    }
    std::vector<uint32_t> rc(F->s);
    for (size_t i = 0; i < F->s; ++i) rc[i] = static_cast<uint32_t>(t[i]);
    FFElem r{F, std::move(rc)};
    if (r.is_zero()) return FFElem{F, {}};
    return r;
}

FFElem FFElem::inv() const {
    if (is_zero()) throw std::domain_error("FFElem: inverse of zero");
    return pow(F->size() - 2);
}

FFElem FFElem::operator/(const FFElem& o) const { return *this * o.inv(); }

FFElem FFElem::pow(uint64_t e) const {
    if (is_zero()) return e == 0 ? one_like(*this) : *this;
    FFElem r = F->one(), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

uint64_t FFElem::ordinal() const {
    if (!F || c.empty()) return 0;
    uint64_t n = 0;
    for (size_t i = c.size(); i-- > 0;) n = n * F->p + c[i];
    return n;
}

std::string FFElem::to_string() const {
    if (is_zero()) return "0";
    if (F->s == 1) return std::to_string(c[0]);
    std::string out = "[";
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(c[i]);
    }
    return out + "]";
}

size_t FFElem::hash() const {
    size_t h = 1469598103934665603ull;
    h = h * 1099511628211ull ^ (F ? F->p : 0);
    h = h * 1099511628211ull ^ ordinal();
    return h;
}

FFElem one_like(const FFElem& x) {
    if (!x.F) throw std::logic_error("one_like on contextless zero");
    return x.F->one();
}
FFElem zero_like(const FFElem& x) { return FFElem{x.F, {}}; }

bool FiniteField::is_square(const FFElem& a) const {
    if (a.is_zero()) return true;
    return a.pow((q_ - 1) / 2).is_one();
}

bool FiniteField::sqrt(const FFElem& a, FFElem& out) const {
    if (a.is_zero()) {
        out = zero();
        return true;
    }
    if (!is_square(a)) return false;
    // Tonelli-Shanks in F_q
    uint64_t q1 = q_ - 1, e = 0;
    while (q1 % 2 == 0) {
        q1 /= 2;
        ++e;
    }
    if (e == 1) {
        out = a.pow((q_ + 1) / 4);
        return true;
    }
    // find a nonsquare deterministically
    FFElem n = zero();
    for (uint64_t i = 2; i < q_; ++i) {
        n = from_ordinal(i);
        if (!n.is_zero() && !is_square(n)) break;
    }
    FFElem z = n.pow(q1);
    FFElem x = a.pow((q1 + 1) / 2);
    FFElem b = a.pow(q1);
    uint64_t r = e;
    while (!b.is_one()) {
        uint64_t m = 0;
        FFElem t = b;
        while (!t.is_one()) {
            t = t * t;
            ++m;
        }
        FFElem c = z;
        for (uint64_t i = 0; i + m + 1 < r; ++i) c = c * c;
        x = x * c;
        z = c * c;
        b = b * z;
        r = m;
    }
    out = x;
    return true;
}

FFElem FiniteField::random(uint64_t& state) const { return from_ordinal(splitmix(state) % q_); }

FFElem FiniteField::Embedding::map(const FFElem& a) const {
    if (a.is_zero()) return target->zero();
    FFElem acc = target->zero();
    for (size_t i = a.c.size(); i-- > 0;) acc = acc * gen_image + target->from_int(a.c[i]);
    return acc;
}

const FiniteField::Embedding& FiniteField::embed_into_extension(uint32_t d) const {
    if (embeddings_.size() <= d) embeddings_.resize(d + 1);
    if (embeddings_[d]) return *embeddings_[d];
    auto emb = std::make_unique<Embedding>();
    if (d == 1) {
        emb->target = this;
        emb->gen_image = gen();
    } else {
        const FiniteField* big = extension(p, s * d);
        emb->target = big;
        if (s == 1) {
            emb->gen_image = big->one();
        } else {
            // root of our modulus in the big field
            FFPoly m(big);
            m.c.resize(modulus.size());
            for (size_t i = 0; i < modulus.size(); ++i) m.c[i] = big->from_int(modulus[i]);
            auto rts = m.roots();
            if (rts.empty()) throw std::logic_error("embedding root not found");
            // deterministic choice: smallest ordinal
            FFElem best = rts[0];
            for (auto& r : rts)
                if (r.ordinal() < best.ordinal()) best = r;
            emb->gen_image = best;
        }
    }
    embeddings_[d] = std::move(emb);
    return *embeddings_[d];
}

// ---------------------------------------------------------------------------
// FFPoly

FFPoly::FFPoly(const FiniteField* F, std::vector<FFElem> coeffs) : F(F), c(std::move(coeffs)) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

FFPoly FFPoly::x(const FiniteField* F) { return FFPoly(F, {F->zero(), F->one()}); }

FFPoly FFPoly::constant(const FFElem& a) {
    FFPoly r(a.F);
    if (!a.is_zero()) r.c = {a};
    return r;
}

FFPoly FFPoly::monomial(const FiniteField* F, size_t deg, const FFElem& a) {
    FFPoly r(F);
    if (a.is_zero()) return r;
    r.c.assign(deg + 1, F->zero());
    r.c[deg] = a;
    return r;
}

FFElem FFPoly::eval(const FFElem& x) const {
    FFElem acc = F->zero();
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

FFPoly FFPoly::operator-() const {
    FFPoly r = *this;
    for (auto& a : r.c) a = -a;
    return r;
}

FFPoly FFPoly::operator+(const FFPoly& o) const {
    FFPoly r(F ? F : o.F);
    r.c.resize(std::max(c.size(), o.c.size()), r.F->zero());
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = coeff(i) + (i < o.c.size() ? o.c[i] : r.F->zero());
    while (!r.c.empty() && r.c.back().is_zero()) r.c.pop_back();
    return r;
}

FFPoly FFPoly::operator-(const FFPoly& o) const { return *this + (-o); }

FFPoly FFPoly::operator*(const FFPoly& o) const {
    FFPoly r(F ? F : o.F);
    if (is_zero() || o.is_zero()) return r;
    r.c.assign(c.size() + o.c.size() - 1, r.F->zero());
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    while (!r.c.empty() && r.c.back().is_zero()) r.c.pop_back();
    return r;
}

FFPoly FFPoly::operator*(const FFElem& a) const {
    FFPoly r(F);
    if (a.is_zero() || is_zero()) return r;
    r.c = c;
    for (auto& x : r.c) x = x * a;
    while (!r.c.empty() && r.c.back().is_zero()) r.c.pop_back();
    return r;
}

void FFPoly::divmod(const FFPoly& a, const FFPoly& b, FFPoly& q, FFPoly& r) {
    if (b.is_zero()) throw std::domain_error("FFPoly: division by zero");
    q = FFPoly(a.F);
    r = a;
    FFElem lead_inv = b.lead().inv();
    if (r.deg() >= b.deg()) q.c.assign(r.deg() - b.deg() + 1, a.F->zero());
    while (r.deg() >= b.deg()) {
        FFElem f = r.lead() * lead_inv;
        size_t off = r.deg() - b.deg();
        q.c[off] = f;
        for (size_t i = 0; i < b.c.size(); ++i) r.c[off + i] -= f * b.c[i];
        while (!r.c.empty() && r.c.back().is_zero()) r.c.pop_back();
    }
    while (!q.c.empty() && q.c.back().is_zero()) q.c.pop_back();
}

FFPoly FFPoly::operator/(const FFPoly& o) const {
    FFPoly q, r;
    divmod(*this, o, q, r);
    return q;
}

FFPoly FFPoly::operator%(const FFPoly& o) const {
    FFPoly q, r;
    divmod(*this, o, q, r);
    return r;
}

bool FFPoly::operator==(const FFPoly& o) const {
    if (c.size() != o.c.size()) return false;
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != o.c[i]) return false;
    return true;
}

FFPoly FFPoly::monic() const {
    if (is_zero() || lead().is_one()) return *this;
    return *this * lead().inv();
}

FFPoly FFPoly::derivative() const {
    FFPoly r(F);
    for (size_t i = 1; i < c.size(); ++i) r.c.push_back(c[i] * F->from_int(static_cast<long long>(i)));
    while (!r.c.empty() && r.c.back().is_zero()) r.c.pop_back();
    return r;
}

FFPoly FFPoly::gcd(FFPoly a, FFPoly b) {
    while (!b.is_zero()) {
        FFPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FFPoly FFPoly::powmod(const FFPoly& b, uint64_t e, const FFPoly& m) {
    FFPoly r = constant(m.F->one());
    FFPoly base = b % m;
    while (e) {
        if (e & 1) r = (r * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return r;
}

bool FFPoly::is_irreducible() const {
    int n = deg();
    if (n <= 0) return false;
    if (n == 1) return true;
    const FFPoly m = monic();
    const FFPoly X = x(F);
    uint64_t q = F->size();
    // x^{q^n} = x mod m
    FFPoly t = X;
    for (int i = 0; i < n; ++i) t = powmod(t, q, m);
    if (!((t - X) % m).is_zero()) return false;
    for (int r = 2; r <= n; ++r) {
        if (n % r) continue;
        bool prime = true;
        for (int d = 2; d * d <= r; ++d)
            if (r % d == 0) prime = false;
        if (!prime) continue;
        FFPoly u = X;
        for (int i = 0; i < n / r; ++i) u = powmod(u, q, m);
        if (gcd(m, u - X).deg() != 0) return false;
    }
    return true;
}

namespace {

void edf(const FFPoly& f, int d, std::vector<FFPoly>& out, uint64_t& state) {
    // Cantor-Zassenhaus equal-degree factorization, q odd.
    if (f.deg() == d) {
        out.push_back(f.monic());
        return;
    }
    const FiniteField* F = f.F;
    uint64_t qd = 1;
    for (int i = 0; i < d; ++i) qd *= F->size();
    while (true) {
        FFPoly r(F);
        int dr = f.deg() - 1;
        r.c.resize(dr + 1, F->zero());
        for (int i = 0; i <= dr; ++i) r.c[i] = F->random(state);
        while (!r.c.empty() && r.c.back().is_zero()) r.c.pop_back();
        if (r.deg() < 1) continue;
        FFPoly g = FFPoly::gcd(f, r);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            edf(g, d, out, state);
            edf(f / g, d, out, state);
            return;
        }
        FFPoly h = FFPoly::powmod(r, (qd - 1) / 2, f) - FFPoly::constant(F->one());
        g = FFPoly::gcd(f, h);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            edf(g, d, out, state);
            edf(f / g, d, out, state);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<FFPoly, int>> FFPoly::factor() const {
    std::vector<std::pair<FFPoly, int>> out;
    if (deg() < 1) return out;
    FFPoly f = monic();
    // multiplicity by repeated division, then distinct-degree + equal-degree
    // (inputs here are tiny; no need for fancy squarefree decomposition)
    std::vector<FFPoly> irreducibles;
    FFPoly work = f;
    while (work.deg() > 0) {
        FFPoly sf = work;
        FFPoly d = sf.derivative();
        if (d.is_zero()) {
            // perfect p-th power: f(x) = g(x^p); deflate
            const uint32_t p = F->p;
            FFPoly g(F);
            g.c.resize(sf.c.size() / p + 1, F->zero());
            for (size_t i = 0; i < sf.c.size(); i += p) g.c[i / p] = sf.c[i];
            while (!g.c.empty() && g.c.back().is_zero()) g.c.pop_back();
            work = g;
            continue;
        }
        sf = sf / gcd(sf, d);  // squarefree part
        // DDF on sf
        FFPoly rem = sf;
        FFPoly X = x(F);
        FFPoly h = X;
        for (int dd = 1; rem.deg() > 0 && dd <= rem.deg(); ++dd) {
            h = powmod(h, F->size(), rem);
            FFPoly g = gcd(rem, h - X);
            if (g.deg() > 0) {
                uint64_t state = 0x5eedULL + 1315423911ull * dd;
                std::vector<FFPoly> eq;
                edf(g, dd, eq, state);
                for (auto& irr : eq) irreducibles.push_back(irr);
                rem = rem / g;
                if (rem.deg() > 0) h = h % rem;
            }
            if (2 * (dd + 1) > sf.deg() && rem.deg() > 0) {
                irreducibles.push_back(rem.monic());
                rem = constant(F->one());
            }
        }
        break;
    }
    // recompute exact multiplicities against the original
    std::sort(irreducibles.begin(), irreducibles.end(), [](const FFPoly& a, const FFPoly& b) {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        for (size_t i = a.c.size(); i-- > 0;)
            if (a.c[i].ordinal() != b.c[i].ordinal()) return a.c[i].ordinal() < b.c[i].ordinal();
        return false;
    });
    irreducibles.erase(std::unique(irreducibles.begin(), irreducibles.end(),
                                   [](const FFPoly& a, const FFPoly& b) { return a == b; }),
                       irreducibles.end());
    FFPoly rem = f;
    for (auto& irr : irreducibles) {
        int e = 0;
        while (true) {
            FFPoly q, r;
            divmod(rem, irr, q, r);
            if (!r.is_zero()) break;
            rem = q;
            ++e;
        }
        if (e) out.emplace_back(irr, e);
    }
    if (rem.deg() > 0) {
        // leftovers can only be p-th powers of already found factors' products;
        // recurse to be safe
        auto extra = rem.factor();
        for (auto& [irr, e] : extra) {
            bool merged = false;
            for (auto& [p0, e0] : out)
                if (p0 == irr) {
                    e0 += e;
                    merged = true;
                }
            if (!merged) out.emplace_back(irr, e);
        }
    }
    return out;
}

std::vector<FFElem> FFPoly::roots() const {
    std::vector<FFElem> out;
    for (auto& [irr, e] : factor())
        if (irr.deg() == 1) out.push_back(-irr.c[0]);
    return out;
}

std::string FFPoly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += c[i].to_string();
        if (i) s += "*t^" + std::to_string(i);
    }
    return s;
}

FFPoly hensel_sqrt_lift(const FFPoly& v, const FFPoly& f, const FFPoly& u, int k) {
    // Newton: v <- (v + f/v)/2 mod u^{2^j}
    const FiniteField* F = v.F;
    FFPoly mod = u;
    FFPoly cur = v % u;
    int prec = 1;
    FFElem half = F->from_int(2).inv();
    while (prec < k) {
        prec = std::min(2 * prec, k);
        mod = FFPoly::constant(F->one());
        for (int i = 0; i < prec; ++i) mod = mod * u;
        // inverse of cur mod u^prec via extended Euclid (cur coprime to u)
        FFPoly g = cur, h = mod, a = FFPoly::constant(F->one()), b(F);
        while (!h.is_zero()) {
            FFPoly q, r;
            FFPoly::divmod(g, h, q, r);
            FFPoly na = b, nb = a - q * b;
            g = h;
            h = r;
            a = na;
            b = nb;
        }
        // g = gcd (a constant), a = inverse-scaled
        FFPoly inv = a * g.c[0].inv();
        cur = ((cur + (f % mod) * inv % mod) * half) % mod;
    }
    return cur;
}

}  // namespace torsq
