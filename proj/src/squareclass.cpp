#include "torsq/squareclass.hpp"

#include <algorithm>
#include <cassert>

namespace torsq {

std::string GroundField::name() const {
    switch (kind) {
        case Kind::Rationals:
            return "Q";
        case Kind::Gaussian:
            return "Q(i)";
        case Kind::Prime:
            return "F_" + std::to_string(ff->p);
        case Kind::Extension:
            return "F_" + std::to_string(ff->p) + "^" + std::to_string(ff->s);
    }
    return "?";
}

GroundField GroundField::parse(std::string_view s) {
    std::string t;
    for (char ch : s)
        if (!isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    if (t == "Q") return rationals();
    if (t == "Qi" || t == "Q(i)" || t == "QI") return gaussian();
    if (!t.empty() && (t[0] == 'F' || t[0] == 'f')) {
        std::string body = t.substr(t[1] == '_' ? 2 : 1);
        size_t caret = body.find('^');
        uint32_t p = static_cast<uint32_t>(std::stoul(body.substr(0, caret)));
        uint32_t deg = 1;
        if (caret != std::string::npos) deg = static_cast<uint32_t>(std::stoul(body.substr(caret + 1)));
        return finite(p, deg);
    }
    throw TorsqError("InputError", "unknown field '" + std::string(s) + "'");
}

GaussInt GaussInt::exact_div(const GaussInt& d) const {
    BigInt n = d.norm();
    GaussInt t = *this * d.conj();
    BigInt qa, ra, qb, rb;
    BigInt::divmod(t.a, n, qa, ra);
    BigInt::divmod(t.b, n, qb, rb);
    if (!ra.is_zero() || !rb.is_zero()) throw std::domain_error("GaussInt: not divisible");
    return {qa, qb};
}

GaussInt GaussInt::canonical_associate(int& ipow) const {
    GaussInt z = *this;
    ipow = 0;
    for (int k = 0; k < 4; ++k) {
        if (z.a.sign() > 0 && z.b.sign() >= 0) return z;
        z = z * GaussInt{BigInt(0), BigInt(1)};  // multiply by i
        ++ipow;
    }
    throw std::domain_error("GaussInt: zero has no associate");
}

std::string GaussInt::to_string() const {
    if (b.is_zero()) return a.to_string();
    std::string s = a.is_zero() ? "" : a.to_string();
    std::string bs = b.to_string();
    if (bs == "1")
        bs = "i";
    else if (bs == "-1")
        bs = "-i";
    else
        bs += "*i";
    if (s.empty()) return bs;
    return bs[0] == '-' ? s + bs : s + "+" + bs;
}

SquareClass SquareClass::trivial(const GroundField& f) {
    SquareClass c;
    c.field_ = f;
    return c;
}

SquareClass SquareClass::finite_nonsquare(const GroundField& f) {
    SquareClass c;
    c.field_ = f;
    c.nontrivial_ = true;
    return c;
}

bool SquareClass::is_trivial() const {
    switch (field_.kind) {
        case GroundField::Kind::Prime:
        case GroundField::Kind::Extension:
            return !nontrivial_;
        case GroundField::Kind::Rationals:
            return rat_rep_.is_one();
        case GroundField::Kind::Gaussian:
            return !unit_i_ && primes_.empty();
    }
    return true;
}

bool SquareClass::operator==(const SquareClass& o) const {
    if (field_ != o.field_) return false;
    switch (field_.kind) {
        case GroundField::Kind::Prime:
        case GroundField::Kind::Extension:
            return nontrivial_ == o.nontrivial_;
        case GroundField::Kind::Rationals:
            return rat_rep_ == o.rat_rep_;
        case GroundField::Kind::Gaussian:
            return unit_i_ == o.unit_i_ && primes_ == o.primes_;
    }
    return false;
}

namespace {

bool gauss_less(const GaussInt& x, const GaussInt& y) {
    if (x.norm() != y.norm()) return x.norm() < y.norm();
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
}

// canonical nonsquare of a finite field: least ordinal nonsquare
FFElem canonical_nonsquare(const FiniteField* F) {
    for (uint64_t n = 2; n < F->size(); ++n) {
        FFElem x = F->from_ordinal(n);
        if (!x.is_zero() && !F->is_square(x)) return x;
    }
    throw std::logic_error("no nonsquare found");
}

}  // namespace

SquareClass sq_mul(const SquareClass& a, const SquareClass& b) {
    if (a.field_ != b.field_) throw TorsqError("FieldMismatch", "square classes over different fields");
    SquareClass r;
    r.field_ = a.field_;
    switch (a.field_.kind) {
        case GroundField::Kind::Prime:
        case GroundField::Kind::Extension:
            r.nontrivial_ = a.nontrivial_ != b.nontrivial_;
            break;
        case GroundField::Kind::Rationals: {
            BigInt prod = a.rat_rep_ * b.rat_rep_;
            BigInt g = BigInt::gcd(a.rat_rep_, b.rat_rep_);
            r.rat_rep_ = prod / (g * g);  // both reps squarefree
            break;
        }
        case GroundField::Kind::Gaussian: {
            r.unit_i_ = a.unit_i_ != b.unit_i_;
            // symmetric difference of sorted prime lists
            size_t i = 0, j = 0;
            while (i < a.primes_.size() || j < b.primes_.size()) {
                if (i < a.primes_.size() && j < b.primes_.size() && a.primes_[i] == b.primes_[j]) {
                    ++i;
                    ++j;
                } else if (j == b.primes_.size() ||
                           (i < a.primes_.size() && gauss_less(a.primes_[i], b.primes_[j]))) {
                    r.primes_.push_back(a.primes_[i++]);
                } else {
                    r.primes_.push_back(b.primes_[j++]);
                }
            }
            break;
        }
    }
    return r;
}

std::string SquareClass::rep_string() const {
    switch (field_.kind) {
        case GroundField::Kind::Prime:
        case GroundField::Kind::Extension:
            return nontrivial_ ? canonical_nonsquare(field_.ff).to_string() : "1";
        case GroundField::Kind::Rationals:
            return rat_rep_.to_string();
        case GroundField::Kind::Gaussian: {
            if (!unit_i_ && primes_.empty()) return "1";
            std::string s = unit_i_ ? "i" : "";
            for (const auto& p : primes_) {
                if (!s.empty()) s += "*";
                s += "(" + p.to_string() + ")";
            }
            return s;
        }
    }
    return "?";
}

SquareClass sq_classify(const Rational& x) {
    if (x.is_zero()) throw TorsqError("ZeroInput", "square class of zero");
    SquareClass r;
    r.field_ = GroundField::rationals();
    BigInt n = x.num() * x.den();
    auto fac = factor_integer(n.abs());
    if (!fac.complete) throw TorsqError("FactorTooLarge", "could not factor " + n.to_string());
    BigInt rep(1);
    for (auto& [p, e] : fac.factors)
        if (e % 2) rep = rep * p;
    if (n.is_neg()) rep = -rep;
    r.rat_rep_ = rep;
    return r;
}

SquareClass gaussian_canonical(const GaussianRational& z) {
    if (z.is_zero()) throw TorsqError("ZeroInput", "square class of zero");
    SquareClass r;
    r.field_ = GroundField::gaussian();

    // clear denominators: class(n/d) = class(n*d)
    BigInt d = BigInt::gcd(z.re().den(), z.im().den());
    BigInt lcm = z.re().den() * (z.im().den() / d);
    Rational scale{lcm, BigInt(1)};
    GaussianRational w = z * GaussianRational(scale * scale);  // now integral? re*lcm^2/den ...
    // w = z * lcm^2 has integral parts since lcm kills both denominators
    GaussInt g{w.re().num(), w.im().num()};
    assert(w.re().den().is_one() && w.im().den().is_one());

    BigInt norm = g.norm();
    auto fac = factor_integer(norm);
    if (!fac.complete) throw TorsqError("FactorTooLarge", "could not factor norm " + norm.to_string());

    int unit_ipow = 0;
    std::vector<GaussInt> odd_primes;
    for (auto& [p, e] : fac.factors) {
        if (p == BigInt(2)) {
            // (1+i)^e divides g
            GaussInt pi{BigInt(1), BigInt(1)};
            for (int k = 0; k < e; ++k) g = g.exact_div(pi);
            if (e % 2) odd_primes.push_back(pi);
            continue;
        }
        BigInt pm4 = p % BigInt(4);
        if (pm4 == BigInt(3)) {
            // inert: norm exponent e = 2 val_p(g); the valuation itself may be odd
            GaussInt pi{p, BigInt(0)};
            for (int k = 0; k < e / 2; ++k) g = g.exact_div(pi);
            if ((e / 2) % 2) odd_primes.push_back(pi);
            continue;
        }
        // split prime: p = pi * conj(pi); find pi = gcd(p, x+i), x^2 = -1 mod p
        BigInt x;
        {
            BigInt n(2);
            while (true) {
                BigInt t = BigInt::powmod(n, (p - BigInt(1)) / BigInt(2), p);
                if (t == p - BigInt(1)) {
                    x = BigInt::powmod(n, (p - BigInt(1)) / BigInt(4), p);
                    break;
                }
                n = n + BigInt(1);
            }
        }
        // Euclidean gcd in Z[i]
        GaussInt a{p, BigInt(0)}, b{x, BigInt(1)};
        while (!b.is_zero()) {
            // a mod b with rounded division
            BigInt n2 = b.norm();
            GaussInt t = a * b.conj();
            auto round_div = [&](const BigInt& num) {
                BigInt twice = num * BigInt(2) + n2;
                BigInt q, rr;
                BigInt::divmod(twice, n2 * BigInt(2), q, rr);
                if (rr.is_neg()) q = q - BigInt(1);  // floor
                return q;
            };
            GaussInt q{round_div(t.a), round_div(t.b)};
            GaussInt rem = a - b * q;
            a = b;
            b = rem;
        }
        GaussInt pi = a;
        int count_pi = 0;
        while (true) {
            try {
                g = g.exact_div(pi);
                ++count_pi;
            } catch (const std::domain_error&) {
                break;
            }
        }
        GaussInt pibar = pi.conj();
        int count_bar = e - count_pi;
        for (int k = 0; k < count_bar; ++k) g = g.exact_div(pibar);
        int ip;
        if (count_pi % 2) odd_primes.push_back(pi.canonical_associate(ip));
        if (count_bar % 2) odd_primes.push_back(pibar.canonical_associate(ip));
    }
    // leftover g is a unit
    if (g.norm() != BigInt(1)) throw std::logic_error("gaussian factorization incomplete");
    (void)unit_ipow;

    // The class is unit * prod(odd-exponent canonical primes).  Since -1 = i^2
    // is a square, only the i-parity of the unit matters.  Recover it by
    // dividing the integral input by the canonical primes: what is left is a
    // unit times a perfect square, and the parity is 1 exactly when that
    // leftover is not +-(a Gaussian square).
    std::sort(odd_primes.begin(), odd_primes.end(), gauss_less);
    GaussInt prod{BigInt(1), BigInt(0)};
    for (auto& pi : odd_primes) prod = prod * pi;
    GaussInt w_int{w.re().num(), w.im().num()};
    GaussInt quo = w_int.exact_div(prod);
    auto is_square_up_to_sign = [](const GaussInt& v) {
        // v = +-h^2? Then N(h)^2 = N(v) and 2x^2 = root +- v.a for h = x+yi.
        BigInt root;
        if (!v.norm().is_perfect_square(&root)) return false;
        for (int sgn = 0; sgn < 2; ++sgn) {
            BigInt rhs = sgn ? root - v.a : root + v.a;
            if (rhs.is_neg() || !rhs.is_even()) continue;
            BigInt x2 = rhs / BigInt(2), x;
            if (!x2.is_perfect_square(&x)) continue;
            BigInt y2 = root - x2, y;
            if (y2.is_neg() || !y2.is_perfect_square(&y)) continue;
            for (int sx = -1; sx <= 1; sx += 2)
                for (int sy = -1; sy <= 1; sy += 2) {
                    GaussInt h{sx < 0 ? -x : x, sy < 0 ? -y : y};
                    GaussInt sq = h * h;
                    if (sq == v) return true;
                    if (GaussInt{-sq.a, -sq.b} == v) return true;
                }
        }
        return false;
    };
    r.unit_i_ = !is_square_up_to_sign(quo);
    r.primes_ = std::move(odd_primes);
    return r;
}

SquareClass sq_classify(const GaussianRational& x) { return gaussian_canonical(x); }

SquareClass sq_classify(const FFElem& x) {
    if (x.is_zero()) throw TorsqError("ZeroInput", "square class of zero");
    GroundField f = GroundField::of(x.F);
    return x.F->is_square(x) ? SquareClass::trivial(f) : SquareClass::finite_nonsquare(f);
}

bool FieldScalar::is_zero() const {
    return std::visit([](const auto& v) { return v.is_zero(); }, value);
}

std::string FieldScalar::to_string() const {
    if (field.is_finite()) {
        const FFElem& e = std::get<FFElem>(value);
        if (field.ff->s == 1) return e.to_string() + " mod " + std::to_string(field.ff->p);
        return e.to_string() + " mod " + std::to_string(field.ff->p) + "^" + std::to_string(field.ff->s);
    }
    return std::visit([](const auto& v) { return v.to_string(); }, value);
}

FieldScalar FieldScalar::parse(const GroundField& f, std::string_view s) {
    // strip whitespace and any trailing "mod ..." annotation
    std::string t;
    for (char ch : s) {
        if (isspace(static_cast<unsigned char>(ch))) continue;
        t.push_back(ch);
    }
    size_t mod_pos = t.find("mod");
    if (mod_pos != std::string::npos) t = t.substr(0, mod_pos);
    FieldScalar out;
    out.field = f;
    switch (f.kind) {
        case GroundField::Kind::Rationals:
            out.value = Rational::parse(t);
            break;
        case GroundField::Kind::Gaussian:
            out.value = GaussianRational::parse(t);
            break;
        default: {
            if (!t.empty() && t[0] == '[') {
                std::vector<uint32_t> coeffs;
                std::string cur;
                for (size_t i = 1; i < t.size(); ++i) {
                    if (t[i] == ',' || t[i] == ']') {
                        if (!cur.empty()) {
                            long long v = std::stoll(cur);
                            long long m = v % static_cast<long long>(f.ff->p);
                            if (m < 0) m += f.ff->p;
                            coeffs.push_back(static_cast<uint32_t>(m));
                            cur.clear();
                        }
                    } else {
                        cur.push_back(t[i]);
                    }
                }
                out.value = f.ff->from_coeffs(coeffs);
            } else {
                out.value = f.ff->from_int(std::stoll(t));
            }
        }
    }
    return out;
}

SquareClass sq_classify(const FieldScalar& x) {
    if (x.is_zero()) throw TorsqError("ZeroInput", "square class of zero");
    return std::visit([](const auto& v) { return sq_classify(v); }, x.value);
}

}  // namespace torsq
