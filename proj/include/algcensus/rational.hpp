#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>

#include <gmpxx.h>

#include "algcensus/error.hpp"

namespace algcensus {

using Integer  = mpz_class;
using Rational = mpq_class;  // canonical: den > 0, gcd(num, den) = 1

inline int sgn(const Integer& x) { return mpz_sgn(x.get_mpz_t()); }
inline int sgn(const Rational& x) { return mpq_sgn(x.get_mpq_t()); }

inline Integer abs(const Integer& x) { Integer r; mpz_abs(r.get_mpz_t(), x.get_mpz_t()); return r; }
inline Rational abs(const Rational& x) { Rational r; mpq_abs(r.get_mpq_t(), x.get_mpq_t()); return r; }

inline Integer pow_int(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/// base^e for signed e; base must be nonzero when e < 0.
inline Rational pow_rat(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0 && e < 0) throw validation_error("pow_rat: zero base with negative exponent");
    const unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), ue);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), ue);
    r.canonicalize();
    if (e < 0) r = 1 / r;
    return r;
}

inline Integer numerator(const Rational& q) { return Integer(mpq_numref(q.get_mpq_t())); }
inline Integer denominator(const Rational& q) { return Integer(mpq_denref(q.get_mpq_t())); }

inline std::string to_string(const Integer& x) { return x.get_str(); }

/// "p/q" for non-integers, plain decimal string otherwise.
inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).get_str();
    return numerator(q).get_str() + "/" + denominator(q).get_str();
}

/// Accepts "a/b", plain integers, and decimals with at most 6 fractional
/// digits ("1.4" -> 7/5); everything is converted exactly.
inline Rational parse_rational(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; }), s.end());
    if (s.empty()) throw validation_error("empty rational literal");
    const auto bad = [&] { throw validation_error("cannot parse rational: '" + text + "'"); };
    const auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        return t.find_first_not_of("0123456789", i) == std::string::npos;
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) bad();
        Integer d(den);
        if (d == 0) bad();
        Rational r{Integer(num), d};
        r.canonicalize();
        return r;
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = false;
        if (!ip.empty() && (ip[0] == '+' || ip[0] == '-')) {
            neg = ip[0] == '-';
            ip = ip.substr(1);
        }
        if (fp.empty() || fp.size() > 6) bad();
        if (!ip.empty() && !is_int(ip)) bad();
        if (!is_int(fp)) bad();
        Integer scale = pow_int(10, static_cast<unsigned long>(fp.size()));
        Integer whole = ip.empty() ? Integer(0) : Integer(ip);
        Rational r{whole * scale + Integer(fp), scale};
        r.canonicalize();
        if (neg) r = -r;
        return r;
    }
    if (!is_int(s)) bad();
    return Rational(Integer(s));
}

/// Closed interval [lo, hi] over the rationals. All arithmetic on
/// enclosures is exact, so outward rounding is containment by equality.
struct Enclosure {
    Rational lo;
    Rational hi;

    Enclosure() = default;
    Enclosure(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw validation_error("enclosure with lo > hi");
    }

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const Enclosure& other) const { return lo <= other.lo && other.hi <= hi; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    bool is_point() const { return lo == hi; }

    bool operator==(const Enclosure& o) const { return lo == o.lo && hi == o.hi; }
};

inline Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

inline Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)), std::max(std::max(p1, p2), std::max(p3, p4))};
}

inline Enclosure operator+(const Enclosure& a, const Rational& c) { return {a.lo + c, a.hi + c}; }
inline Enclosure operator*(const Enclosure& a, const Rational& c) {
    return sgn(c) >= 0 ? Enclosure{a.lo * c, a.hi * c} : Enclosure{a.hi * c, a.lo * c};
}

inline Enclosure abs(const Enclosure& a) {
    if (sgn(a.lo) >= 0) return a;
    if (sgn(a.hi) <= 0) return {Rational(-a.hi), Rational(-a.lo)};
    Rational neg_lo = -a.lo;
    return {Rational(0), std::max(neg_lo, a.hi)};
}

inline std::string to_string(const Enclosure& e) {
    return "[" + to_string(e.lo) + ", " + to_string(e.hi) + "]";
}

}  // namespace algcensus
