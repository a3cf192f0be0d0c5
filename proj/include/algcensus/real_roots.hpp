#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "algcensus/int_polynomial.hpp"

namespace algcensus {

namespace detail {

/// Sturm sequence of a square-free polynomial: s0 = p, s1 = p', then
/// negated remainders, content-reduced with the sign preserved.
struct SturmChain {
    std::vector<IntPolynomial> seq;

    explicit SturmChain(const IntPolynomial& p) {
        seq.push_back(p);
        IntPolynomial d = p.derivative();
        if (d.is_zero()) return;
        seq.push_back(d);
        while (true) {
            const IntPolynomial& a = seq[seq.size() - 2];
            const IntPolynomial& b = seq.back();
            if (b.degree() == 0) break;
            IntPolynomial r = pseudo_rem_positive(a, b);
            if (r.is_zero()) break;
            seq.push_back(-(r.primitive_part()));
            if (seq.back().degree() == 0) break;
        }
    }

    /// Number of sign changes of the sequence at x, zeros skipped.
    int variations(const Rational& x) const {
        int count = 0, prev = 0;
        for (const auto& s : seq) {
            int sg = sgn(s.evaluate(x));
            if (sg == 0) continue;
            if (prev != 0 && sg != prev) ++count;
            prev = sg;
        }
        return count;
    }

    /// Exact number of distinct roots in (lo, hi]; endpoints must not be
    /// roots of seq[0].
    int count(const Enclosure& e) const { return variations(e.lo) - variations(e.hi); }
};

inline const Rational& tie_test_width() {
    static const Rational w{Integer(1), pow_int(Integer(10), 40)};
    return w;
}

}  // namespace detail

/// A real algebraic number: a square-free integer polynomial together with
/// a certified isolating interval (exactly one real root inside, rational
/// endpoints that are not roots).
struct IsolatedRoot {
    IntPolynomial poly;
    Enclosure interval;
};

/// Exact number of distinct real roots of p in (lo, hi]. The caller must
/// pass a polynomial that is square-free on the interval; endpoints that
/// are roots are rejected so the caller can perturb them.
inline unsigned sturm_count(const IntPolynomial& p, const Enclosure& interval) {
    if (p.is_zero()) throw validation_error("sturm_count: zero polynomial");
    if (sgn(p.evaluate(interval.lo)) == 0 || sgn(p.evaluate(interval.hi)) == 0)
        throw validation_error("sturm_count: interval endpoint is a root; perturb the endpoints");
    detail::SturmChain chain(p);
    int c = chain.count(interval);
    if (c < 0) throw internal_error("sturm_count: negative variation difference");
    return static_cast<unsigned>(c);
}

namespace detail {

/// One bisection step preserving the sign change; switches to the primitive
/// linear annihilator when the midpoint happens to be the root itself.
inline void refine_step(IsolatedRoot& r) {
    const Rational mid = r.interval.midpoint();
    const int sm = sgn(r.poly.evaluate(mid));
    if (sm == 0) {
        // mid is the root: represent it by den*x - num and re-center.
        IntPolynomial lin(std::vector<Integer>{-numerator(mid), denominator(mid)});
        Rational w = r.interval.width() / 8;
        r.poly = std::move(lin);
        r.interval = Enclosure{mid - w, mid + w};
        return;
    }
    const int slo = sgn(r.poly.evaluate(r.interval.lo));
    if (slo == 0 || sgn(r.poly.evaluate(r.interval.hi)) == 0)
        throw internal_error("refine_step: endpoint became a root");
    if (sm != slo)
        r.interval = Enclosure{r.interval.lo, mid};
    else
        r.interval = Enclosure{mid, r.interval.hi};
}

}  // namespace detail

/// Sub-enclosure of the root's interval with width at most the request;
/// a no-op when the interval is already tight enough.
inline Enclosure refine(const IsolatedRoot& root, const Rational& width) {
    if (sgn(width) <= 0) throw validation_error("refine: width must be positive");
    IsolatedRoot r = root;
    while (r.interval.width() > width) detail::refine_step(r);
    return r.interval;
}

inline IsolatedRoot refined_root(const IsolatedRoot& root, const Rational& width) {
    IsolatedRoot r = root;
    while (r.interval.width() > width) detail::refine_step(r);
    return r;
}

/// Exact sign of g at the root: refines the enclosure until the interval
/// evaluation of g excludes zero; once the enclosure width drops below the
/// 10^-40 floor, an exact tie test (common-root check via polynomial gcd)
/// settles potential equality.
inline int sign_at_root(const IsolatedRoot& root, const IntPolynomial& g) {
    if (g.is_zero()) return 0;
    IsolatedRoot r = root;
    bool tie_tested = false;
    while (true) {
        Enclosure v = eval_interval(g, r.interval);
        if (!v.contains_zero()) return sgn(v.lo) > 0 ? 1 : -1;
        if (!tie_tested && r.interval.width() < detail::tie_test_width()) {
            tie_tested = true;
            IntPolynomial d = gcd(r.poly, g);
            if (!d.is_zero() && d.degree() >= 1) {
                // alpha is a root of d iff d changes sign or vanishes on the
                // (tiny) interval; endpoints of r are non-roots of r.poly,
                // hence of d as well.
                if (sturm_count(d, r.interval) >= 1) return 0;
            }
        }
        detail::refine_step(r);
    }
}

/// Pairwise-disjoint isolating intervals, one per distinct real root of p
/// in the closed interval. Exact rational roots (including roots at the
/// interval endpoints) are represented by their primitive linear
/// annihilator.
inline std::vector<IsolatedRoot> isolate_roots_in(const IntPolynomial& p, const Enclosure& domain) {
    if (p.is_zero()) throw validation_error("isolate_roots_in: zero polynomial");
    std::vector<IsolatedRoot> out;
    if (p.degree() == 0) return out;
    IntPolynomial q = square_free_part(p);
    if (q.degree() == 0) return out;

    const auto exact_root = [&](const Rational& r, const Rational& radius) {
        IntPolynomial lin(std::vector<Integer>{-numerator(r), denominator(r)});
        out.push_back(IsolatedRoot{std::move(lin), Enclosure{r - radius, r + radius}});
    };

    Rational span = domain.width();
    if (span == 0) {
        if (sgn(q.evaluate(domain.lo)) == 0) exact_root(domain.lo, Rational(1, 4));
        return out;
    }

    // Strip exact roots at the endpoints so Sturm counts are valid inside.
    IntPolynomial q2 = q;
    for (const Rational& end : {domain.lo, domain.hi}) {
        if (sgn(q2.evaluate(end)) == 0) {
            exact_root(end, span / 8);
            IntPolynomial lin(std::vector<Integer>{-numerator(end), denominator(end)});
            auto quot = divide_exact(q2, lin.primitive_part());
            if (!quot) throw internal_error("isolate_roots_in: endpoint deflation failed");
            q2 = *quot;
        }
    }
    if (!q2.is_zero() && q2.degree() >= 1) {
        detail::SturmChain chain(q2);
        struct Seg {
            Rational a, b;
            int count;
        };
        std::vector<Seg> work;
        int total = chain.variations(domain.lo) - chain.variations(domain.hi);
        if (total > 0) work.push_back({domain.lo, domain.hi, total});
        while (!work.empty()) {
            Seg s = work.back();
            work.pop_back();
            if (s.count == 1) {
                out.push_back(IsolatedRoot{q2, Enclosure{s.a, s.b}});
                continue;
            }
            Rational m = (s.a + s.b) / 2;
            if (sgn(q2.evaluate(m)) == 0) {
                // Rational root at the midpoint: isolate it, then recurse on
                // both sides with the point excluded.
                Rational w = (s.b - s.a) / 8;
                while (sgn(q2.evaluate(m - w)) == 0 || sgn(q2.evaluate(m + w)) == 0) w /= 2;
                while (chain.variations(m - w) - chain.variations(m + w) != 1) {
                    w /= 2;
                    while (sgn(q2.evaluate(m - w)) == 0 || sgn(q2.evaluate(m + w)) == 0) w /= 2;
                }
                exact_root(m, w / 2);
                int left = chain.variations(s.a) - chain.variations(m - w);
                int right = chain.variations(m + w) - chain.variations(s.b);
                if (left > 0) work.push_back({s.a, m - w, left});
                if (right > 0) work.push_back({m + w, s.b, right});
            } else {
                int left = chain.variations(s.a) - chain.variations(m);
                int right = chain.variations(m) - chain.variations(s.b);
                if (left > 0) work.push_back({s.a, m, left});
                if (right > 0) work.push_back({m, s.b, right});
            }
        }
    }

    std::sort(out.begin(), out.end(),
              [](const IsolatedRoot& x, const IsolatedRoot& y) { return x.interval.lo < y.interval.lo; });
    // Separate touching or overlapping intervals; roots are distinct, so
    // bisection always terminates.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < out.size(); ++i) {
            while (out[i].interval.hi >= out[i + 1].interval.lo) {
                detail::refine_step(out[i]);
                detail::refine_step(out[i + 1]);
                changed = true;
            }
        }
    }
    return out;
}

/// All real roots of p, isolated inside the Cauchy bound.
inline std::vector<IsolatedRoot> isolate_all_real_roots(const IntPolynomial& p) {
    if (p.is_zero()) throw validation_error("isolate_all_real_roots: zero polynomial");
    if (p.degree() == 0) return {};
    Rational maxratio(0);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        Rational r = Rational(abs(p.coeff(i))) / Rational(abs(p.leading()));
        if (r > maxratio) maxratio = r;
    }
    Rational bound = maxratio + 2;  // strictly outside every root
    return isolate_roots_in(p, Enclosure{-bound, bound});
}

/// A positive rational L such that |xi - alpha| >= L for every complex
/// root alpha of p (Cauchy-bound argument); soundness, not tightness.
struct RootDistanceBound {
    Rational point;
    Rational bound;
};

inline RootDistanceBound certified_min_root_distance(const IntPolynomial& p, const Rational& xi) {
    if (p.is_zero()) throw validation_error("certified_min_root_distance: zero polynomial");
    Rational value = abs(p.evaluate(xi));
    if (value == 0) throw validation_error("certified_min_root_distance: xi is a root");
    const int deg = p.degree();
    Rational lc{abs(p.leading())};
    Rational maxratio(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        Rational r = Rational(abs(p.coeff(i))) / lc;
        if (r > maxratio) maxratio = r;
    }
    Rational base = 1 + abs(xi) + maxratio;
    Rational denom = lc * pow_rat(base, deg > 0 ? deg - 1 : 0) * pow_rat(Rational(2), deg);
    return RootDistanceBound{xi, value / denom};
}

enum class ThresholdDecision { Below, NotBelow };

namespace detail {

/// g(x) with sign(g(alpha)) = sign(|p'(alpha)| - cd * Q^(1-v)); built from
/// the even power p'(x)^(2b) so absolute values drop out.
inline IntPolynomial threshold_polynomial(const IntPolynomial& p, const Integer& Q, const Rational& v,
                                          const Rational& cd) {
    const Integer vb = denominator(v);
    const Integer va = numerator(v);
    const unsigned long b = vb.get_ui();
    IntPolynomial dpow = IntPolynomial::constant(1);
    {
        IntPolynomial base = p.derivative();
        unsigned long e = 2 * b;
        while (e) {
            if (e & 1) dpow = dpow * base;
            base = base * base;
            e >>= 1;
        }
    }
    Integer cdn = numerator(cd), cdd = denominator(cd);
    Integer cdn2 = pow_int(cdn, 2 * b), cdd2 = pow_int(cdd, 2 * b);
    Integer e = vb - va;  // threshold = cd * Q^(e / b)
    if (sgn(e) >= 0) {
        Integer rhs = cdn2 * pow_int(Q, 2 * static_cast<unsigned long>(e.get_ui()));
        return dpow * cdd2 - IntPolynomial::constant(rhs);
    }
    Integer scale = cdd2 * pow_int(Q, 2 * static_cast<unsigned long>(Integer(-e).get_ui()));
    return dpow * scale - IntPolynomial::constant(cdn2);
}

inline ThresholdDecision decide_derivative_threshold_unchecked(const IntPolynomial& p, const IsolatedRoot& root,
                                                               const Integer& Q, const Rational& v,
                                                               const Rational& cd) {
    IntPolynomial g = threshold_polynomial(p, Q, v, cd);
    int s = sign_at_root(root, g);
    // A proven tie means the strict inequality fails.
    return s < 0 ? ThresholdDecision::Below : ThresholdDecision::NotBelow;
}

inline void validate_threshold_query(const Integer& Q, const Rational& v, const Rational& cd) {
    if (Q < 2) throw validation_error("threshold: Q must be >= 2");
    if (sgn(v) < 0) throw validation_error("threshold: v must be >= 0");
    if (denominator(v) > 64) throw validation_error("threshold: v must be a rational a/b with b <= 64");
    if (sgn(cd) <= 0) throw validation_error("threshold: the constant C_D must be > 0");
}

}  // namespace detail

}  // namespace algcensus
