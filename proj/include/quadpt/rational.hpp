#pragma once

// Exact rational coefficients. Everything in the engine is computed over Q;
// there is no floating point anywhere in the library.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace quadpt {

using Rat = mpq_class;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator. The result is always canonical.
inline Rat parse_rat(std::string_view text) {
    std::string s(text);
    auto strip = [](std::string& v) {
        auto b = v.find_first_not_of(" \t");
        auto e = v.find_last_not_of(" \t");
        v = (b == std::string::npos) ? std::string{} : v.substr(b, e - b + 1);
    };
    strip(s);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    strip(num);
    strip(den);
    auto is_int = [](const std::string& v, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !v.empty() && (v[0] == '-' || v[0] == '+')) i = 1;
        if (i >= v.size()) return false;
        for (; i < v.size(); ++i)
            if (v[i] < '0' || v[i] > '9') return false;
        return true;
    };
    if (!is_int(num, true) || !is_int(den, false))
        throw std::invalid_argument("malformed rational literal: " + s);
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator in: " + s);
    Rat r(n, d);
    r.canonicalize();
    return r;
}

/// Always renders "p/q", including integers ("-6/1").
inline std::string to_fraction_string(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Short form used by the text and LaTeX renderers ("-6", "1/3").
inline std::string to_short_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_pow(const Rat& base, unsigned e) {
    Rat out = 1;
    for (unsigned i = 0; i < e; ++i) out *= base;
    return out;
}

inline mpz_class binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

inline mpz_class factorial(long n) {
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

}  // namespace quadpt
