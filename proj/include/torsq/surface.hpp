// Genus-2 surface group words, the five Dehn twists acting on pi_1, the
// standard symplectic representations, and intertwiner solving.
//
// Letters: 1=a1, 2=b1, 3=a2, 4=b2, negatives are inverses.  A twist word
// "T4^2 T2 T3 T1" acts left to right: the leftmost twist is applied first.
// That order reproduces the worked twisted representations exactly; the
// opposite order does not.
#pragma once

#include <array>
#include <sstream>

#include "torsq/matrix.hpp"
#include "torsq/scalar_sqrt.hpp"
#include "torsq/squareclass.hpp"

namespace torsq {

struct FreeWord {
    std::vector<int> letters;  // freely reduced

    static FreeWord gen(int g) { return FreeWord{{g}}; }
    static FreeWord identity() { return {}; }

    void reduce() {
        std::vector<int> out;
        for (int l : letters) {
            if (!out.empty() && out.back() == -l)
                out.pop_back();
            else
                out.push_back(l);
        }
        letters = std::move(out);
    }

    FreeWord operator*(const FreeWord& o) const {
        FreeWord w{letters};
        w.letters.insert(w.letters.end(), o.letters.begin(), o.letters.end());
        w.reduce();
        return w;
    }
    FreeWord inverse() const {
        FreeWord w;
        for (size_t i = letters.size(); i-- > 0;) w.letters.push_back(-letters[i]);
        return w;
    }
    bool operator==(const FreeWord& o) const { return letters == o.letters; }

    std::string to_string() const {
        static const char* names[] = {"", "a1", "b1", "a2", "b2"};
        if (letters.empty()) return "1";
        std::string s;
        for (int l : letters) {
            s += names[std::abs(l)];
            if (l < 0) s += "^-1";
            s += " ";
        }
        s.pop_back();
        return s;
    }
};

inline FreeWord surface_relator() {
    // [a1,b1][a2,b2]
    FreeWord w{{1, 2, -1, -2, 3, 4, -3, -4}};
    return w;
}

struct TwistWord {
    std::vector<std::pair<int, int>> tokens;  // (twist index 1..5, exponent != 0)

    // "T4^2 T2 T3 T1"
    static TwistWord parse(std::string_view s) {
        TwistWord t;
        std::istringstream in{std::string(s)};
        std::string tok;
        while (in >> tok) {
            if (tok.size() < 2 || (tok[0] != 'T' && tok[0] != 't'))
                throw TorsqError("InputError", "bad twist token '" + tok + "'");
            size_t caret = tok.find('^');
            int idx = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
            int e = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
            if (idx < 1 || idx > 5 || e == 0) throw TorsqError("InputError", "bad twist token '" + tok + "'");
            t.tokens.emplace_back(idx, e);
        }
        return t;
    }

    std::string to_string() const {
        std::string s;
        for (auto& [i, e] : tokens) {
            if (!s.empty()) s += " ";
            s += "T" + std::to_string(i);
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }
};

// Image of generator g (1..4) under T_i^{sign} (sign = +1 or -1).
inline FreeWord twist_image(int twist, int sign, int g) {
    auto W = [](std::initializer_list<int> ls) { return FreeWord{std::vector<int>(ls)}; };
    if (sign > 0) {
        switch (twist) {
            case 1: return g == 2 ? W({2, -1}) : FreeWord::gen(g);
            case 2: return g == 1 ? W({1, 2}) : FreeWord::gen(g);
            case 3:
                if (g == 2) return W({-1, -3, 2});
                if (g == 4) return W({-3, -1, 4});
                return FreeWord::gen(g);
            case 4: return g == 4 ? W({4, -3}) : FreeWord::gen(g);
            case 5: return g == 3 ? W({3, 4}) : FreeWord::gen(g);
        }
    } else {
        switch (twist) {
            case 1: return g == 2 ? W({2, 1}) : FreeWord::gen(g);
            case 2: return g == 1 ? W({1, -2}) : FreeWord::gen(g);
            case 3:
                if (g == 2) return W({3, 1, 2});
                if (g == 4) return W({1, 3, 4});
                return FreeWord::gen(g);
            case 4: return g == 4 ? W({4, 3}) : FreeWord::gen(g);
            case 5: return g == 3 ? W({3, -4}) : FreeWord::gen(g);
        }
    }
    throw TorsqError("InputError", "twist index out of range");
}

inline FreeWord apply_single_twist(int twist, int sign, const FreeWord& w) {
    FreeWord out;
    for (int l : w.letters) {
        FreeWord img = twist_image(twist, sign, std::abs(l));
        if (l < 0) img = img.inverse();
        out.letters.insert(out.letters.end(), img.letters.begin(), img.letters.end());
    }
    out.reduce();
    return out;
}

inline FreeWord apply_twist_word(const TwistWord& t, const FreeWord& w) {
    FreeWord cur = w;
    for (auto& [idx, e] : t.tokens) {
        int sign = e > 0 ? 1 : -1;
        for (int k = 0; k < std::abs(e); ++k) cur = apply_single_twist(idx, sign, cur);
    }
    return cur;
}

template <class K>
struct SurfaceRep {
    std::array<Matrix<K>, 4> images;  // rho(a1), rho(b1), rho(a2), rho(b2)

    size_t dim() const { return images[0].rows; }
    const Matrix<K>& image(int g) const { return images[static_cast<size_t>(g - 1)]; }
};

template <class K>
Matrix<K> standard_symplectic_form(size_t n, const K& exemplar) {
    // antidiagonal block form on pairs (e_i, f_i): <e_i, f_i> = 1
    Matrix<K> J = Matrix<K>::zeros(n, n, exemplar);
    K one = one_like(exemplar);
    for (size_t i = 0; i + 1 < n; i += 2) {
        J.at(i, i + 1) = one;
        J.at(i + 1, i) = -one;
    }
    return J;
}

template <class K>
Matrix<K> eval_rep(const SurfaceRep<K>& rep, const FreeWord& w) {
    const K ex = rep.images[0].a[0];
    Matrix<K> m = Matrix<K>::identity(rep.dim(), ex);
    for (int l : w.letters) {
        const Matrix<K>& g = rep.image(std::abs(l));
        m = l > 0 ? m * g : m * inverse(g);
    }
    return m;
}

template <class K>
SurfaceRep<K> make_surface_rep(std::array<Matrix<K>, 4> images) {
    SurfaceRep<K> rep{std::move(images)};
    const size_t n = rep.dim();
    const K ex = rep.images[0].a[0];
    Matrix<K> J = standard_symplectic_form(n, ex);
    for (const auto& m : rep.images)
        if (m.transpose() * J * m != J) throw TorsqError("InputError", "generator image not symplectic");
    if (eval_rep(rep, surface_relator()) != Matrix<K>::identity(n, ex))
        throw TorsqError("InputError", "surface relator not satisfied");
    return rep;
}

template <class K>
SurfaceRep<K> twisted_rep(const SurfaceRep<K>& rep, const TwistWord& t) {
    SurfaceRep<K> out = rep;
    for (int g = 1; g <= 4; ++g) out.images[g - 1] = eval_rep(rep, apply_twist_word(t, FreeWord::gen(g)));
    return out;
}

// Solutions M of M rho(g) = rho'(g) M for all generators, filtered to
// invertible symplectic ones, det normalized to 1 when possible, returned as
// the +-M pair with the canonical sign first.
template <class K>
std::vector<Matrix<K>> solve_conjugator(const SurfaceRep<K>& rep, const SurfaceRep<K>& rep2) {
    const size_t n = rep.dim();
    if (rep2.dim() != n) throw TorsqError("FieldMismatch", "representation sizes differ");
    const K ex = rep.images[0].a[0];
    // unknowns m_{ij} row-major; equations for each generator: M A - B M = 0
    Matrix<K> sys(4 * n * n, n * n, zero_like(ex));
    size_t row = 0;
    for (int g = 1; g <= 4; ++g) {
        const Matrix<K>&A = rep.image(g), &B = rep2.image(g);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                // (M A)_{ij} = sum_k m_{ik} A_{kj}; (B M)_{ij} = sum_k B_{ik} m_{kj}
                for (size_t k = 0; k < n; ++k) {
                    sys.at(row, i * n + k) += A.at(k, j);
                    sys.at(row, k * n + j) -= B.at(i, k);
                }
                ++row;
            }
    }
    auto ker = right_kernel(sys);
    std::vector<Matrix<K>> sols;
    auto to_matrix = [&](const std::vector<K>& v) {
        Matrix<K> m(n, n, zero_like(ex));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) m.at(i, j) = v[i * n + j];
        return m;
    };
    std::vector<Matrix<K>> candidates;
    for (auto& v : ker) candidates.push_back(to_matrix(v));
    // small combinations in case single basis vectors are singular
    for (size_t i = 0; i < ker.size(); ++i)
        for (size_t j = i + 1; j < ker.size(); ++j) {
            std::vector<K> v(ker[i]);
            for (size_t t = 0; t < v.size(); ++t) v[t] += ker[j][t];
            candidates.push_back(to_matrix(v));
        }
    Matrix<K> J = standard_symplectic_form(n, ex);
    for (auto& M : candidates) {
        Matrix<K> Minv;
        if (!try_inverse(M, Minv)) continue;
        // normalize: det -> 1 when det is a square, then canonical sign
        K d = det(M);
        Matrix<K> N = M;
        K root = d;
        if (try_sqrt(d, root) && !root.is_zero()) {
            K rinv = one_like(root) / root;
            N = M * rinv;
        }
        if (N.transpose() * J * N != J) continue;
        // canonical sign on first nonzero entry
        for (const K& x : N.a) {
            if (x.is_zero()) continue;
            if (!canonical_positive(x)) N = -N;
            break;
        }
        bool dup = false;
        for (auto& s : sols)
            if (s == N || s == -N) dup = true;
        if (!dup) {
            sols.push_back(N);
            sols.push_back(-N);
        }
    }
    if (sols.empty()) throw TorsqError("NoConjugator", "no invertible symplectic intertwiner");
    return sols;
}

}  // namespace torsq
