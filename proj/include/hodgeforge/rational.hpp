#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <vector>

#include "hodgeforge/errors.hpp"

namespace hodgeforge {

/// Exact rational scalar. All arithmetic in the library is exact; no
/// floating point appears anywhere.
using Rat = mpq_class;
using RatVec = std::vector<Rat>;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw InputError("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "-p", or "p/q" with q > 0 after canonicalization.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw InputError("empty rational literal");
    std::size_t i = 0;
    auto digits = [&](std::size_t from) {
        std::size_t j = from;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        return j;
    };
    if (s[i] == '-' || s[i] == '+') ++i;
    std::size_t j = digits(i);
    if (j == i) throw InputError("bad rational literal '" + s + "'");
    if (j < s.size()) {
        if (s[j] != '/') throw InputError("bad rational literal '" + s + "'");
        std::size_t k = digits(j + 1);
        if (k == j + 1 || k != s.size())
            throw InputError("bad rational literal '" + s + "'");
    }
    Rat q;
    if (q.set_str(s, 10) != 0) throw InputError("bad rational literal '" + s + "'");
    if (q.get_den() == 0) throw InputError("rational with zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

/// Canonical serialization: "p" when the denominator is 1, else "p/q".
inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline bool is_zero(const RatVec& v) {
    for (const Rat& x : v)
        if (x != 0) return false;
    return true;
}

inline RatVec zero_vec(std::size_t n) { return RatVec(n, Rat(0)); }

inline RatVec add(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVec sub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVec scale(const Rat& c, const RatVec& a) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray (positive multiple, integer entries, content 1).
inline RatVec primitive(const RatVec& v) {
    mpz_class den_lcm = 1;
    for (const Rat& x : v) {
        mpz_class d = x.get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        den_lcm = den_lcm / g * d;
    }
    mpz_class content = 0;
    RatVec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat x = v[i] * Rat(den_lcm);
        x.canonicalize();
        w[i] = x;
        mpz_class num = x.get_num();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), num.get_mpz_t());
    }
    if (content == 0) throw PreconditionFailure("primitive() on the zero vector");
    for (Rat& x : w) {
        x /= Rat(content);
        x.canonicalize();
    }
    return w;
}

inline std::string vec_to_string(const RatVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += rat_to_string(v[i]);
    }
    return s + ")";
}

} // namespace hodgeforge
