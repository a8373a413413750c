#include "torsq/rational.hpp"

namespace torsq {

Rational Rational::parse(std::string_view s) {
    size_t slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

std::string GaussianRational::to_string() const {
    if (im_.is_zero()) return re_.to_string();
    std::string im_part;
    if (im_ == Rational(1))
        im_part = "i";
    else if (im_ == Rational(-1))
        im_part = "-i";
    else
        im_part = im_.to_string() + "*i";
    if (re_.is_zero()) return im_part;
    if (im_part[0] != '-') return re_.to_string() + "+" + im_part;
    return re_.to_string() + im_part;
}

GaussianRational GaussianRational::parse(std::string_view s) {
    // split into real and imaginary terms at a top-level +/- (not the leading sign,
    // not a sign inside "/")
    auto parse_term = [](std::string_view t, Rational& re, Rational& im) {
        bool imag = false;
        if (!t.empty() && t.back() == 'i') {
            imag = true;
            t.remove_suffix(1);
            if (!t.empty() && t.back() == '*') t.remove_suffix(1);
        }
        Rational v;
        if (t.empty() || t == "+")
            v = Rational(1);
        else if (t == "-")
            v = Rational(-1);
        else
            v = Rational::parse(t);
        (imag ? im : re) += v;
    };
    Rational re(0), im(0);
    size_t start = 0;
    for (size_t i = 1; i <= s.size(); ++i) {
        if (i == s.size() || ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/' && s[i - 1] != '*')) {
            parse_term(s.substr(start, i - start), re, im);
            start = i;
        }
    }
    return {re, im};
}

}  // namespace torsq
