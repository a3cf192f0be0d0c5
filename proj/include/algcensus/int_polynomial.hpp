#pragma once

#include <cctype>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algcensus/rational.hpp"

namespace algcensus {

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// stored constant term first (index i holds the coefficient of x^i).
/// The zero polynomial is the empty sequence; nonzero polynomials never
/// store a zero leading coefficient.
class IntPolynomial {
  public:
    IntPolynomial() = default;

    explicit IntPolynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { normalize(); }

    IntPolynomial(std::initializer_list<long> coeffs) {
        c_.reserve(coeffs.size());
        for (long v : coeffs) c_.emplace_back(v);
        normalize();
    }

    static IntPolynomial zero() { return IntPolynomial(); }
    static IntPolynomial constant(Integer v) { return IntPolynomial(std::vector<Integer>{std::move(v)}); }

    /// x^k with the given coefficient.
    static IntPolynomial monomial(Integer coeff, std::size_t k) {
        std::vector<Integer> c(k + 1, Integer(0));
        c[k] = std::move(coeff);
        return IntPolynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }

    int degree() const {
        if (is_zero()) throw validation_error("degree of the zero polynomial is undefined");
        return static_cast<int>(c_.size()) - 1;
    }

    std::size_t size() const { return c_.size(); }

    /// Coefficient of x^i; zero beyond the stored range.
    const Integer& coeff(std::size_t i) const {
        static const Integer kZero(0);
        return i < c_.size() ? c_[i] : kZero;
    }

    const Integer& leading() const {
        if (is_zero()) throw validation_error("leading coefficient of the zero polynomial");
        return c_.back();
    }

    const std::vector<Integer>& coefficients() const { return c_; }

    Integer height() const {
        Integer h(0);
        for (const auto& a : c_) {
            Integer m = algcensus::abs(a);
            if (m > h) h = m;
        }
        return h;
    }

    /// (content, primitive part): content > 0, primitive part keeps the
    /// sign of the leading coefficient.
    std::pair<Integer, IntPolynomial> content_and_primitive() const {
        if (is_zero()) throw validation_error("no content: zero polynomial");
        Integer g(0);
        for (const auto& a : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        std::vector<Integer> q(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) q[i] = c_[i] / g;
        return {g, IntPolynomial(std::move(q))};
    }

    IntPolynomial primitive_part() const { return content_and_primitive().second; }

    Rational evaluate(const Rational& x) const {
        Rational acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + Rational(c_[i]);
        return acc;
    }

    Integer evaluate(const Integer& x) const {
        Integer acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    /// Exact j-th derivative; the zero polynomial when j exceeds the degree.
    IntPolynomial derivative(unsigned order = 1) const {
        IntPolynomial r = *this;
        for (unsigned j = 0; j < order; ++j) {
            if (r.c_.size() <= 1) return IntPolynomial();
            std::vector<Integer> d(r.c_.size() - 1);
            for (std::size_t i = 1; i < r.c_.size(); ++i) d[i - 1] = r.c_[i] * static_cast<long>(i);
            r = IntPolynomial(std::move(d));
        }
        return r;
    }

    /// Coefficients of p(x + xi): entry j equals p^(j)(xi) / j!.
    std::vector<Rational> taylor_shift(const Rational& xi) const {
        std::vector<Rational> t(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) t[i] = Rational(c_[i]);
        if (t.empty()) return t;
        const std::size_t n = t.size() - 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = n - 1; j + 1 > i; --j) t[j] += xi * t[j + 1];
        return t;
    }

    IntPolynomial operator-() const {
        std::vector<Integer> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
        return IntPolynomial(std::move(r));
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()), Integer(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return IntPolynomial(std::move(r));
    }

    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<Integer> r(std::max(a.c_.size(), b.c_.size()), Integer(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return IntPolynomial(std::move(r));
    }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return IntPolynomial();
        std::vector<Integer> r(a.c_.size() + b.c_.size() - 1, Integer(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return IntPolynomial(std::move(r));
    }

    friend IntPolynomial operator*(const IntPolynomial& a, const Integer& k) {
        if (k == 0) return IntPolynomial();
        std::vector<Integer> r(a.c_.size());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i] * k;
        return IntPolynomial(std::move(r));
    }

    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }
    bool operator!=(const IntPolynomial& o) const { return c_ != o.c_; }

    /// Lexicographic order on (degree, coefficients); used for canonical
    /// sorting and distinctness of factors.
    int compare(const IntPolynomial& o) const {
        if (c_.size() != o.c_.size()) return c_.size() < o.c_.size() ? -1 : 1;
        for (std::size_t i = c_.size(); i-- > 0;) {
            int c = mpz_cmp(c_[i].get_mpz_t(), o.c_[i].get_mpz_t());
            if (c != 0) return c;
        }
        return 0;
    }
    bool operator<(const IntPolynomial& o) const { return compare(o) < 0; }

    /// Human form: "x^3-x^2+x-1", "2x^2+3", "-x+5", "0".
    std::string to_human() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            const Integer& a = c_[i];
            if (a == 0) continue;
            const bool first = out.empty();
            if (sgn(a) < 0)
                out += first ? "-" : "-";
            else if (!first)
                out += "+";
            Integer m = algcensus::abs(a);
            if (i == 0) {
                out += m.get_str();
            } else {
                if (m != 1) out += m.get_str();
                out += "x";
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

    /// Dense form: "a0,a1,...,an".
    std::string to_dense() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) out += ",";
            out += c_[i].get_str();
        }
        return out;
    }

    /// Parses both accepted text forms: a dense coefficient list
    /// "a0,a1,...,an" and the human form "x^2-2" (an optional '*' between
    /// coefficient and 'x' is allowed).
    static IntPolynomial parse(const std::string& text);

  private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Integer> c_;
};

inline IntPolynomial IntPolynomial::parse(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw validation_error("empty polynomial literal");

    if (s.find('x') == std::string::npos && s.find(',') != std::string::npos) {
        std::vector<Integer> coeffs;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t comma = s.find(',', pos);
            std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (tok.empty()) throw validation_error("malformed coefficient list: '" + text + "'");
            Rational r = parse_rational(tok);
            if (denominator(r) != 1) throw validation_error("non-integer coefficient: '" + tok + "'");
            coeffs.push_back(numerator(r));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return IntPolynomial(std::move(coeffs));
    }
    if (s.find('x') == std::string::npos) {
        Rational r = parse_rational(s);
        if (denominator(r) != 1) throw validation_error("non-integer constant: '" + text + "'");
        return IntPolynomial::constant(numerator(r));
    }

    // Human form: signed terms of shape [coef][*]x[^exp] or bare integers.
    std::vector<Integer> coeffs;
    const auto add_term = [&](const Integer& coef, std::size_t exp) {
        if (coeffs.size() <= exp) coeffs.resize(exp + 1, Integer(0));
        coeffs[exp] += coef;
    };
    std::size_t i = 0;
    const auto bad = [&] { throw validation_error("cannot parse polynomial: '" + text + "'"); };
    while (i < s.size()) {
        int sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
        }
        if (i >= s.size()) bad();
        std::string digits;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits.push_back(s[i++]);
        if (i < s.size() && s[i] == '*') {
            if (digits.empty()) bad();
            ++i;
            if (i >= s.size() || s[i] != 'x') bad();
        }
        if (i < s.size() && s[i] == 'x') {
            ++i;
            std::size_t exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string e;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e.push_back(s[i++]);
                if (e.empty()) bad();
                exp = std::stoul(e);
                if (exp > 4096) throw validation_error("exponent too large in '" + text + "'");
            }
            Integer coef = digits.empty() ? Integer(1) : Integer(digits);
            add_term(sign < 0 ? Integer(-coef) : coef, exp);
        } else {
            if (digits.empty()) bad();
            Integer coef(digits);
            add_term(sign < 0 ? Integer(-coef) : coef, 0);
        }
    }
    return IntPolynomial(std::move(coeffs));
}

/// Exact interval evaluation by Horner; the result encloses p(x) for every
/// x in the input interval.
inline Enclosure eval_interval(const IntPolynomial& p, const Enclosure& x) {
    Enclosure acc{Rational(0), Rational(0)};
    const auto& c = p.coefficients();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + Rational(c[i]);
    return acc;
}

/// Pseudo-remainder of a by b scaled so the result stays integral and the
/// scale factor is positive: returns rem(|lc(b)|^(deg a - deg b + 1) * a, b).
inline IntPolynomial pseudo_rem_positive(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw validation_error("pseudo-remainder by zero");
    if (a.is_zero() || a.degree() < b.degree()) return a;
    const int da = a.degree(), db = b.degree();
    std::vector<Integer> r(a.coefficients());
    const Integer lb = b.leading();
    int sign_flip = (sgn(lb) < 0 && ((da - db + 1) % 2 != 0)) ? -1 : 1;
    // Work with lc(b)^(delta+1) * a, then fix the sign at the end.
    Integer scale = pow_int(lb, static_cast<unsigned long>(da - db + 1));
    for (auto& x : r) x *= scale;
    for (int k = da; k >= db; --k) {
        if (r[static_cast<std::size_t>(k)] == 0) continue;
        Integer q = r[static_cast<std::size_t>(k)] / lb;  // exact by construction
        for (int j = 0; j <= db; ++j)
            r[static_cast<std::size_t>(k - db + j)] -= q * b.coeff(static_cast<std::size_t>(j));
    }
    r.resize(static_cast<std::size_t>(db));
    IntPolynomial rem{std::move(r)};
    return sign_flip < 0 ? -rem : rem;
}

/// Exact division: b*q == a with b primitive or dividing exactly; returns
/// nullopt when b does not divide a over the rationals or the quotient is
/// not integral.
inline std::optional<IntPolynomial> divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw validation_error("division by the zero polynomial");
    if (a.is_zero()) return IntPolynomial();
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<Rational> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rational(a.coeff(i));
    const int da = a.degree(), db = b.degree();
    const Rational lb{b.leading()};
    std::vector<Rational> q(static_cast<std::size_t>(da - db + 1));
    for (int k = da; k >= db; --k) {
        Rational qc = r[static_cast<std::size_t>(k)] / lb;
        q[static_cast<std::size_t>(k - db)] = qc;
        if (qc != 0)
            for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= qc * Rational(b.coeff(static_cast<std::size_t>(j)));
    }
    for (int i = 0; i < db; ++i)
        if (r[static_cast<std::size_t>(i)] != 0) return std::nullopt;
    std::vector<Integer> qi(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (denominator(q[i]) != 1) return std::nullopt;
        qi[i] = numerator(q[i]);
    }
    return IntPolynomial(std::move(qi));
}

/// Polynomial gcd over Z (primitive PRS), normalized to a positive leading
/// coefficient; the content gcd is included.
inline IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() && b.is_zero()) return IntPolynomial();
    if (a.is_zero()) return sgn(b.leading()) < 0 ? -b : b;
    if (b.is_zero()) return sgn(a.leading()) < 0 ? -a : a;
    auto [ca, pa] = a.content_and_primitive();
    auto [cb, pb] = b.content_and_primitive();
    Integer cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    IntPolynomial u = pa, v = pb;
    if (u.degree() < v.degree()) std::swap(u, v);
    while (!v.is_zero()) {
        IntPolynomial r = pseudo_rem_positive(u, v);
        u = std::move(v);
        v = r.is_zero() ? IntPolynomial() : r.primitive_part();
    }
    if (sgn(u.leading()) < 0) u = -u;
    return u * cg;
}

/// p / gcd(p, p'), primitive with positive leading coefficient.
inline IntPolynomial square_free_part(const IntPolynomial& p) {
    if (p.is_zero()) throw validation_error("square-free part of zero");
    IntPolynomial pp = p.primitive_part();
    if (sgn(pp.leading()) < 0) pp = -pp;
    if (pp.degree() == 0) return IntPolynomial::constant(1);
    IntPolynomial g = gcd(pp, pp.derivative());
    if (g.degree() == 0) return pp;
    auto q = divide_exact(pp, g);
    if (!q) throw internal_error("square_free_part: gcd does not divide");
    IntPolynomial r = q->primitive_part();
    return sgn(r.leading()) < 0 ? -r : r;
}

/// Yun's square-free decomposition of a primitive polynomial with positive
/// leading coefficient: returns [(u_1, 1), (u_2, 2), ...] with p = prod u_i^i
/// and the u_i square-free, pairwise coprime (factors of degree 0 dropped).
inline std::vector<std::pair<IntPolynomial, unsigned>> square_free_decomposition(const IntPolynomial& p) {
    if (p.is_zero()) throw validation_error("square-free decomposition of zero");
    std::vector<std::pair<IntPolynomial, unsigned>> out;
    if (p.degree() == 0) return out;
    IntPolynomial g = gcd(p, p.derivative());
    if (g.degree() == 0) {
        out.emplace_back(p, 1);
        return out;
    }
    auto c0 = divide_exact(p, g);
    if (!c0) throw internal_error("yun: bad gcd division");
    IntPolynomial c = *c0;
    IntPolynomial d = *divide_exact(p.derivative(), g) - c.derivative();
    unsigned i = 1;
    while (true) {
        if (c.degree() == 0) break;
        IntPolynomial a = gcd(c, d);
        if (a.degree() > 0) out.emplace_back(a.primitive_part(), i);
        auto cn = divide_exact(c, a);
        if (!cn) throw internal_error("yun: division failure");
        c = *cn;
        d = *divide_exact(d, a) - c.derivative();
        ++i;
    }
    return out;
}

}  // namespace algcensus
