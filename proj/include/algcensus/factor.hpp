#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "algcensus/int_polynomial.hpp"

namespace algcensus {

/// Exact decomposition p = sign * content * prod p_i^{e_i} with the p_i
/// primitive irreducible, positive leading coefficient, pairwise distinct.
struct FactorDecomposition {
    int sign = 1;
    Integer content{1};
    std::vector<std::pair<IntPolynomial, unsigned>> factors;

    IntPolynomial expand() const {
        IntPolynomial r = IntPolynomial::constant(sign < 0 ? Integer(-content) : content);
        for (const auto& [f, e] : factors)
            for (unsigned i = 0; i < e; ++i) r = r * f;
        return r;
    }
};

/// Gelfond/Mignotte coefficient bound for divisors of p: any factor of p
/// has height at most 2^n * sqrt(n+1) * H(p). Returned squared to stay in
/// integers: bound2 = 4^n * (n+1) * H(p)^2.
inline Integer factor_height_bound_squared(const IntPolynomial& p) {
    const unsigned long n = static_cast<unsigned long>(p.degree());
    Integer h = p.height();
    return pow_int(Integer(4), n) * Integer(n + 1) * h * h;
}

namespace detail {

// ---- complex arithmetic over mpf with explicit per-value precision ----
// No global GMP default-precision state is touched, so concurrent
// factorizations from census workers stay safe.

struct ComplexF {
    mpf_class re, im;
    explicit ComplexF(unsigned long prec) : re(0, prec), im(0, prec) {}
    unsigned long prec() const { return re.get_prec(); }
};

inline ComplexF cadd(const ComplexF& a, const ComplexF& b) {
    ComplexF r(a.prec());
    r.re = a.re + b.re;
    r.im = a.im + b.im;
    return r;
}

inline ComplexF csub(const ComplexF& a, const ComplexF& b) {
    ComplexF r(a.prec());
    r.re = a.re - b.re;
    r.im = a.im - b.im;
    return r;
}

inline ComplexF cmul(const ComplexF& a, const ComplexF& b) {
    ComplexF r(a.prec());
    r.re = a.re * b.re - a.im * b.im;
    r.im = a.re * b.im + a.im * b.re;
    return r;
}

inline mpf_class cnorm(const ComplexF& a) {
    mpf_class r(0, a.prec());
    r = a.re * a.re + a.im * a.im;
    return r;
}

inline mpf_class cabs(const ComplexF& a) {
    mpf_class n = cnorm(a);
    mpf_class r(0, a.prec());
    mpf_sqrt(r.get_mpf_t(), n.get_mpf_t());
    return r;
}

inline ComplexF cdiv(const ComplexF& a, const ComplexF& b) {
    mpf_class n = cnorm(b);
    ComplexF r(a.prec());
    r.re = (a.re * b.re + a.im * b.im) / n;
    r.im = (a.im * b.re - a.re * b.im) / n;
    return r;
}

inline ComplexF ceval(const std::vector<mpf_class>& coeffs, const ComplexF& z) {
    ComplexF acc(z.prec());
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        acc = cmul(acc, z);
        acc.re += coeffs[i];
    }
    return acc;
}

/// Multiply an ascending-coefficient complex polynomial by (x - z).
inline std::vector<ComplexF> mul_linear(const std::vector<ComplexF>& c, const ComplexF& z, unsigned long prec) {
    std::vector<ComplexF> r(c.size() + 1, ComplexF(prec));
    for (std::size_t k = 0; k < c.size(); ++k) {
        r[k + 1] = cadd(r[k + 1], c[k]);
        r[k] = csub(r[k], cmul(z, c[k]));
    }
    return r;
}

struct ApproxRoots {
    std::vector<ComplexF> z;
    std::vector<mpf_class> radius;  // every true root lies within radius[i] of exactly one z[i]
};

/// Durand-Kerner on the monic version of u. Returns nullopt when the
/// iteration fails to converge or the a-posteriori Weierstrass disks
/// (radius d * |correction|) are not pairwise disjoint; the caller then
/// doubles the precision. On success the disks each hold one true root.
inline std::optional<ApproxRoots> durand_kerner(const IntPolynomial& u, unsigned long prec) {
    const int d = u.degree();
    std::vector<mpf_class> monic(static_cast<std::size_t>(d) + 1, mpf_class(0, prec));
    {
        mpf_class lc(u.leading().get_str(), prec, 10);
        for (int i = 0; i <= d; ++i) {
            mpf_class c(u.coeff(static_cast<std::size_t>(i)).get_str(), prec, 10);
            monic[static_cast<std::size_t>(i)] = c / lc;
        }
    }
    mpf_class bound(1, prec);
    for (int i = 0; i < d; ++i) {
        mpf_class m(0, prec);
        mpf_abs(m.get_mpf_t(), monic[static_cast<std::size_t>(i)].get_mpf_t());
        if (m > bound) bound = m;
    }
    bound += 1;  // Cauchy: all roots inside |z| < bound

    std::vector<ComplexF> z;
    z.reserve(static_cast<std::size_t>(d));
    ComplexF seed(prec), acc(prec);
    seed.re = 0.4;
    seed.im = 0.9;
    acc.re = 1;
    for (int i = 0; i < d; ++i) {
        acc = cmul(acc, seed);
        ComplexF zi(prec);
        zi.re = acc.re * bound;
        zi.im = acc.im * bound;
        z.push_back(zi);
    }

    mpf_class eps(0, prec), two(2, prec);
    mpf_pow_ui(eps.get_mpf_t(), two.get_mpf_t(), prec > 24 ? prec - 24 : 1);
    eps = bound / eps;

    const int max_iter = 400 + static_cast<int>(prec);
    bool converged = false;
    for (int it = 0; it < max_iter && !converged; ++it) {
        converged = true;
        for (int i = 0; i < d; ++i) {
            ComplexF num = ceval(monic, z[static_cast<std::size_t>(i)]);
            ComplexF den(prec);
            den.re = 1;
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                den = cmul(den, csub(z[static_cast<std::size_t>(i)], z[static_cast<std::size_t>(j)]));
            }
            if (sgn(cnorm(den)) == 0) return std::nullopt;
            ComplexF w = cdiv(num, den);
            z[static_cast<std::size_t>(i)] = csub(z[static_cast<std::size_t>(i)], w);
            if (cabs(w) > eps) converged = false;
        }
    }
    if (!converged) return std::nullopt;

    ApproxRoots out;
    out.z = z;
    out.radius.assign(static_cast<std::size_t>(d), mpf_class(0, prec));
    for (int i = 0; i < d; ++i) {
        ComplexF num = ceval(monic, z[static_cast<std::size_t>(i)]);
        ComplexF den(prec);
        den.re = 1;
        for (int j = 0; j < d; ++j) {
            if (j == i) continue;
            den = cmul(den, csub(z[static_cast<std::size_t>(i)], z[static_cast<std::size_t>(j)]));
        }
        mpf_class r = cabs(cdiv(num, den));
        out.radius[static_cast<std::size_t>(i)] = r * d;
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            mpf_class dist = cabs(csub(out.z[static_cast<std::size_t>(i)], out.z[static_cast<std::size_t>(j)]));
            if (dist <= out.radius[static_cast<std::size_t>(i)] + out.radius[static_cast<std::size_t>(j)])
                return std::nullopt;  // disks overlap: can't certify assignment
        }
    return out;
}

inline bool next_combination(std::vector<int>& comb, int n) {
    const int k = static_cast<int>(comb.size());
    for (int i = k - 1; i >= 0; --i) {
        if (comb[static_cast<std::size_t>(i)] < n - (k - i)) {
            ++comb[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

inline void nearest_integer(const mpf_class& x, Integer& out, mpf_class& dist) {
    mpf_class shifted(0, x.get_prec());
    shifted = x + mpf_class(0.5, x.get_prec());
    mpf_class fl(0, x.get_prec());
    mpf_floor(fl.get_mpf_t(), shifted.get_mpf_t());
    mpz_set_f(out.get_mpz_t(), fl.get_mpf_t());
    mpf_class back(0, x.get_prec());
    mpf_set_z(back.get_mpf_t(), out.get_mpz_t());
    dist = x - back;
    mpf_abs(dist.get_mpf_t(), dist.get_mpf_t());
}

/// One recombination attempt at a fixed precision over a square-free
/// primitive u, deg >= 2. Returns nullopt when some subset was ambiguous
/// (coefficient error bound >= 1/4) so the caller can raise the precision;
/// otherwise the result is a complete list of provably irreducible factors
/// (every candidate was either soundly rejected or verified by exact
/// division, and subset sizes are scanned in increasing order).
inline std::optional<std::vector<IntPolynomial>> recombine_at_precision(const IntPolynomial& u, unsigned long prec) {
    auto roots = durand_kerner(u, prec);
    if (!roots) return std::nullopt;
    const int d = u.degree();
    std::vector<int> avail(static_cast<std::size_t>(d));
    std::iota(avail.begin(), avail.end(), 0);

    std::vector<IntPolynomial> found;
    IntPolynomial remaining = u;
    const Integer hbound2 = factor_height_bound_squared(u);
    bool ambiguous = false;

    mpf_class quarter(0.25, prec);
    // absolute slack for mpf rounding; dominated by the Weierstrass radii
    mpf_class slack(0, prec), two(2, prec);
    mpf_pow_ui(slack.get_mpf_t(), two.get_mpf_t(), prec > 48 ? prec - 48 : 1);
    slack = 1 / slack;

    int size = 1;
    while (remaining.degree() >= 2 && size <= remaining.degree() / 2) {
        const int n = static_cast<int>(avail.size());
        if (size > n) break;
        std::vector<int> comb(static_cast<std::size_t>(size));
        std::iota(comb.begin(), comb.end(), 0);
        bool factor_found = false;
        do {
            std::vector<ComplexF> cf(1, ComplexF(prec));
            cf[0].re = 1;
            mpf_class prod_outer(1, prec), prod_inner(1, prec);
            for (int ci : comb) {
                const int ri = avail[static_cast<std::size_t>(ci)];
                cf = mul_linear(cf, roots->z[static_cast<std::size_t>(ri)], prec);
                mpf_class a = cabs(roots->z[static_cast<std::size_t>(ri)]);
                prod_inner *= a;
                a += roots->radius[static_cast<std::size_t>(ri)];
                prod_outer *= a;
            }
            mpf_class A(remaining.leading().get_str(), prec, 10);
            mpf_class Aabs(0, prec);
            mpf_abs(Aabs.get_mpf_t(), A.get_mpf_t());
            mpf_class E(0, prec);
            E = Aabs * (prod_outer - prod_inner) * 2 + (Aabs * prod_outer + 1) * slack;
            if (E >= quarter) {
                ambiguous = true;
                continue;
            }
            bool reject = false;
            std::vector<Integer> ic(cf.size());
            for (std::size_t k = 0; k < cf.size() && !reject; ++k) {
                mpf_class re(0, prec), im(0, prec);
                re = A * cf[k].re;
                im = A * cf[k].im;
                mpf_abs(im.get_mpf_t(), im.get_mpf_t());
                if (im > E) {
                    reject = true;
                    break;
                }
                mpf_class dist(0, prec);
                nearest_integer(re, ic[k], dist);
                if (dist > E) reject = true;
            }
            if (reject) continue;
            IntPolynomial cand{std::move(ic)};
            if (cand.is_zero() || cand.degree() != size) continue;
            cand = cand.primitive_part();
            if (sgn(cand.leading()) < 0) cand = -cand;
            Integer h = cand.height();
            if (h * h > hbound2) continue;
            if (auto q = divide_exact(remaining, cand)) {
                found.push_back(cand);
                remaining = *q;
                std::vector<int> keep;
                keep.reserve(avail.size() - comb.size());
                std::size_t ci = 0;
                for (int i = 0; i < n; ++i) {
                    if (ci < comb.size() && comb[ci] == i) {
                        ++ci;
                        continue;
                    }
                    keep.push_back(avail[static_cast<std::size_t>(i)]);
                }
                avail = std::move(keep);
                factor_found = true;
                break;
            }
        } while (next_combination(comb, n));
        if (factor_found)
            size = 1;
        else
            ++size;
    }
    if (ambiguous) return std::nullopt;
    if (!remaining.is_zero() && remaining.degree() >= 1) {
        IntPolynomial r = remaining.primitive_part();
        if (sgn(r.leading()) < 0) r = -r;
        found.push_back(r);
    }
    return found;
}

/// Trial-division fallback for small inputs: searches divisors of degree
/// 1..deg/2 within the Mignotte height bound, constrained by the exact
/// divisibility of leading and constant coefficients.
inline std::optional<IntPolynomial> exhaustive_find_divisor(const IntPolynomial& u) {
    const int d = u.degree();
    const Integer a0 = u.coeff(0);
    const Integer an = u.leading();
    if (a0 == 0) return IntPolynomial({0, 1});
    Integer b2 = factor_height_bound_squared(u);
    Integer bound;
    mpz_sqrt(bound.get_mpz_t(), b2.get_mpz_t());
    const auto divisors = [](const Integer& v) {
        std::vector<Integer> out;
        Integer a = algcensus::abs(v);
        for (Integer i(1); i * i <= a; ++i) {
            if (a % i == 0) {
                out.push_back(i);
                if (i * i != a) out.push_back(a / i);
            }
        }
        return out;
    };
    std::vector<Integer> lead = divisors(an), tail = divisors(a0);
    for (int dg = 1; dg <= d / 2; ++dg) {
        for (const Integer& gl : lead) {
            for (const Integer& gt0 : tail) {
                for (int tsign = -1; tsign <= 1; tsign += 2) {
                    Integer g0 = tsign < 0 ? Integer(-gt0) : gt0;
                    // enumerate middle coefficients in [-bound, bound]
                    std::vector<Integer> c(static_cast<std::size_t>(dg) + 1, Integer(0));
                    c[0] = g0;
                    c[static_cast<std::size_t>(dg)] = gl;
                    std::vector<Integer> m(static_cast<std::size_t>(std::max(0, dg - 1)), Integer(-bound));
                    bool more = true;
                    while (more) {
                        for (int i = 0; i < dg - 1; ++i) c[static_cast<std::size_t>(i) + 1] = m[static_cast<std::size_t>(i)];
                        IntPolynomial cand{std::vector<Integer>(c)};
                        if (!cand.is_zero() && cand.degree() == dg) {
                            IntPolynomial pp = cand.primitive_part();
                            if (sgn(pp.leading()) < 0) pp = -pp;
                            if (divide_exact(u, pp)) return pp;
                        }
                        int i = 0;
                        for (; i < dg - 1; ++i) {
                            if (m[static_cast<std::size_t>(i)] < bound) {
                                m[static_cast<std::size_t>(i)] += 1;
                                break;
                            }
                            m[static_cast<std::size_t>(i)] = -bound;
                        }
                        if (i == dg - 1) more = false;
                        if (dg == 1) more = false;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

inline std::vector<Integer> small_divisors(const Integer& v) {
    std::vector<Integer> out;
    Integer a = algcensus::abs(v);
    for (Integer i(1); i * i <= a; ++i) {
        if (a % i == 0) {
            out.push_back(i);
            if (i * i != a) out.push_back(a / i);
        }
    }
    return out;
}

/// Factors of a primitive square-free polynomial with positive leading
/// coefficient, each primitive irreducible with positive leading
/// coefficient. Rational roots are split off exactly first; the remainder
/// goes through root recombination with escalating precision.
inline std::vector<IntPolynomial> factor_squarefree(const IntPolynomial& u0) {
    std::vector<IntPolynomial> out;
    IntPolynomial u = u0;
    if (u.degree() < 1) return out;

    // Linear factors by the rational-root test, when divisor enumeration
    // is cheap; recombination would find them anyway.
    const Integer kDivisorCap = pow_int(Integer(10), 12);
    while (u.degree() >= 1 && u.coeff(0) == 0) {
        out.push_back(IntPolynomial({0, 1}));
        auto q = divide_exact(u, IntPolynomial({0, 1}));
        if (!q) throw internal_error("factor: x does not divide");
        u = *q;
    }
    if (u.degree() >= 2 && algcensus::abs(u.coeff(0)) <= kDivisorCap && algcensus::abs(u.leading()) <= kDivisorCap) {
        std::vector<Integer> nums = small_divisors(u.coeff(0)), dens = small_divisors(u.leading());
        for (const Integer& den : dens) {
            for (const Integer& num : nums) {
                Integer g;
                mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                if (g != 1) continue;
                for (int s = -1; s <= 1; s += 2) {
                    if (u.degree() < 2) break;
                    Integer nn = s < 0 ? Integer(-num) : num;
                    IntPolynomial lin(std::vector<Integer>{Integer(-nn), den});
                    while (true) {
                        auto q = divide_exact(u, lin);
                        if (!q) break;
                        out.push_back(lin);
                        u = *q;
                        if (u.degree() < 1) break;
                    }
                }
            }
        }
    }
    if (u.degree() == 0) return out;
    if (u.degree() == 1) {
        out.push_back(u);
        return out;
    }

    for (unsigned long prec = 128; prec <= 1024; prec *= 2) {
        if (auto f = recombine_at_precision(u, prec)) {
            for (auto& g : *f) out.push_back(std::move(g));
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    if (u.degree() <= 4 && u.height() <= 8) {
        while (u.degree() >= 2) {
            auto div = exhaustive_find_divisor(u);
            if (!div) break;
            out.push_back(*div);
            u = *divide_exact(u, *div);
        }
        if (u.degree() >= 1) out.push_back(u);
        std::sort(out.begin(), out.end());
        return out;
    }
    throw internal_error("factorization: precision cap (1024 bits) exceeded");
}

}  // namespace detail

/// Complete factorization into prime powers; every answer is verified by
/// exact arithmetic before it is returned.
inline FactorDecomposition factorize(const IntPolynomial& p) {
    if (p.is_zero()) throw validation_error("factorize: zero polynomial");
    if (p.degree() > 16) throw validation_error("factorize: degree > 16 unsupported");
    FactorDecomposition out;
    auto [content, pp] = p.content_and_primitive();
    out.content = content;
    out.sign = sgn(pp.is_zero() ? Integer(1) : pp.leading()) < 0 ? -1 : 1;
    if (out.sign < 0) pp = -pp;
    if (pp.degree() >= 1) {
        for (const auto& [part, mult] : square_free_decomposition(pp)) {
            IntPolynomial sf = part;
            if (sgn(sf.leading()) < 0) sf = -sf;
            for (const auto& f : detail::factor_squarefree(sf)) out.factors.emplace_back(f, mult);
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i + 1 < out.factors.size(); ++i)
        if (out.factors[i].first == out.factors[i + 1].first)
            throw internal_error("factorize: repeated prime across square-free parts");
    if (out.expand() != p) throw internal_error("factorize: expansion mismatch");

    // Height multiplicativity band with explicit constants: the prime-power
    // divisor heights must satisfy
    //   H(pp) * (n+1)^-(k-1) <= prod H(t_i) <= 2^n * sqrt(n+1) * H(pp).
    if (!out.factors.empty() && pp.degree() >= 1) {
        const unsigned long n = static_cast<unsigned long>(pp.degree());
        Integer hp = pp.height();
        Integer prod(1);
        std::size_t k = out.factors.size();
        for (const auto& [f, e] : out.factors) {
            IntPolynomial t = IntPolynomial::constant(1);
            for (unsigned i = 0; i < e; ++i) t = t * f;
            prod *= t.height();
        }
        Integer np1k = pow_int(Integer(n + 1), static_cast<unsigned long>(k - 1));
        if (prod * np1k < hp) throw internal_error("factorize: lower height band violated");
        if (prod * prod > pow_int(Integer(4), n) * Integer(n + 1) * hp * hp)
            throw internal_error("factorize: upper height band violated");
    }
    return out;
}

/// True iff the primitive polynomial has no nontrivial factorization over
/// the integers. Degrees 1-3 take exact shortcut paths.
inline bool is_irreducible(const IntPolynomial& p) {
    if (p.is_zero()) throw validation_error("is_irreducible: zero polynomial");
    if (p.degree() < 1) throw validation_error("is_irreducible: degree must be >= 1");
    if (p.degree() > 16) throw validation_error("is_irreducible: degree > 16 unsupported");
    if (p.content_and_primitive().first != 1) throw validation_error("is_irreducible: input is not primitive");
    const int d = p.degree();
    if (d == 1) return true;
    if (p.coeff(0) == 0) return false;  // x divides
    if (d == 2) {
        Integer disc = p.coeff(1) * p.coeff(1) - 4 * p.coeff(2) * p.coeff(0);
        if (sgn(disc) < 0) return true;
        return mpz_perfect_square_p(disc.get_mpz_t()) == 0;
    }
    const Integer kDivisorCap = pow_int(Integer(10), 12);
    if (d == 3 && algcensus::abs(p.coeff(0)) <= kDivisorCap && algcensus::abs(p.leading()) <= kDivisorCap) {
        for (const Integer& den : detail::small_divisors(p.leading())) {
            for (const Integer& num : detail::small_divisors(p.coeff(0))) {
                Integer g;
                mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                if (g != 1) continue;
                Rational r{num, den};
                r.canonicalize();
                if (p.evaluate(r) == 0 || p.evaluate(Rational(-r)) == 0) return false;
            }
        }
        return true;
    }
    FactorDecomposition f = factorize(p);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

/// The prime-power divisors t_i = p_i^{e_i} of a primitive polynomial,
/// expanded to coefficient form; their product equals p (for a negative
/// leading coefficient the first divisor carries the sign).
inline std::vector<IntPolynomial> prime_power_divisors(const IntPolynomial& p) {
    if (p.is_zero()) throw validation_error("prime_power_divisors: zero polynomial");
    if (p.content_and_primitive().first != 1) throw validation_error("prime_power_divisors: input is not primitive");
    FactorDecomposition f = factorize(p);
    std::vector<IntPolynomial> out;
    for (const auto& [base, e] : f.factors) {
        IntPolynomial t = IntPolynomial::constant(1);
        for (unsigned i = 0; i < e; ++i) t = t * base;
        out.push_back(t);
    }
    if (f.sign < 0 && !out.empty()) out[0] = -out[0];
    return out;
}

}  // namespace algcensus
