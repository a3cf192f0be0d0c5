#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "algcensus/census.hpp"
#include "algcensus/resultant.hpp"
#include "algcensus/rng.hpp"
#include "algcensus/threshold.hpp"

namespace algcensus {

/// Outcome of one executable lemma experiment. Witnesses carry exact
/// value strings so reports round-trip losslessly.
struct LemmaReport {
    struct Witness {
        std::string input;
        std::string lhs;
        std::string rhs;
        bool operator==(const Witness& o) const { return input == o.input && lhs == o.lhs && rhs == o.rhs; }
    };

    std::string lemma_id;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    std::vector<Witness> witnesses;
    std::map<std::string, std::string> parameters;

    bool operator==(const LemmaReport& o) const {
        return lemma_id == o.lemma_id && trials == o.trials && failures == o.failures && witnesses == o.witnesses &&
               parameters == o.parameters;
    }
};

namespace detail {

inline std::string approx(const Rational& r) {
    std::ostringstream os;
    os.precision(15);
    os << mpq_get_d(r.get_mpq_t());
    return os.str();
}

inline std::string approx(double d) {
    std::ostringstream os;
    os.precision(15);
    os << d;
    return os.str();
}

/// Exact comparison r1 < r2 * Q^(en/ed), r1, r2 > 0 rationals, ed >= 1.
inline bool less_than_power(const Rational& r1, const Rational& r2, const Integer& Q, const Integer& en,
                            const Integer& ed) {
    if (r1 == 0) return true;
    Rational ratio = r1 / r2;
    // ratio^ed < Q^en
    unsigned long e = ed.get_ui();
    Rational lhs = pow_rat(ratio, static_cast<long>(e));
    Rational rhs = sgn(en) >= 0 ? Rational(pow_int(Q, en.get_ui())) : Rational(1) / Rational(pow_int(Q, Integer(-en).get_ui()));
    return lhs < rhs;
}

inline bool coprime(const IntPolynomial& a, const IntPolynomial& b) { return gcd(a, b).degree() == 0; }

inline IntPolynomial random_poly_exact_degree(SplitMix64& rng, int degree, long height_max) {
    std::vector<Integer> c(static_cast<std::size_t>(degree) + 1);
    for (int i = 0; i < degree; ++i) c[static_cast<std::size_t>(i)] = Integer(rng.range(-height_max, height_max));
    long lead = rng.range(1, height_max);
    c[static_cast<std::size_t>(degree)] = Integer(rng.coin() ? lead : -lead);
    return IntPolynomial(std::move(c));
}

inline Rational random_xi_half(SplitMix64& rng) {
    long den = rng.range(2, 64);
    long num = rng.range(-(den / 2), den / 2);
    Rational r{Integer(num), Integer(den)};
    r.canonicalize();
    return r;
}

/// Validates H(p) <= Q^lambda exactly (lambda = a/b >= 0).
inline void require_height_bound(const IntPolynomial& p, const Integer& Q, const Rational& lambda,
                                 const char* who) {
    if (sgn(lambda) < 0) throw validation_error(std::string(who) + ": lambda must be >= 0");
    Integer h = p.height();
    Integer a = numerator(lambda), b = denominator(lambda);
    if (pow_int(h, b.get_ui()) > pow_int(Q, a.get_ui()))
        throw validation_error(std::string(who) + ": H(p) exceeds Q^lambda");
}

}  // namespace detail

/// Lemma 3 experiment: |det of the shifted Sylvester matrix| must equal
/// |Res| exactly for random coprime pairs and random rational shift points.
inline LemmaReport check_shifted_sylvester(std::uint64_t trials, int degree_max, long height_max,
                                           std::uint64_t seed) {
    if (degree_max < 1 || degree_max > 8) throw validation_error("check_shifted_sylvester: degreeMax in [1, 8]");
    if (height_max < 1) throw validation_error("check_shifted_sylvester: heightMax >= 1");
    LemmaReport rep;
    rep.lemma_id = "shifted-sylvester";
    rep.parameters["degreeMax"] = std::to_string(degree_max);
    rep.parameters["heightMax"] = std::to_string(height_max);
    rep.parameters["seed"] = std::to_string(seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng = derived_stream(seed, t);
        IntPolynomial p1, p2;
        Integer res;
        while (true) {
            p1 = detail::random_poly_exact_degree(rng, static_cast<int>(rng.range(1, degree_max)), height_max);
            p2 = detail::random_poly_exact_degree(rng, static_cast<int>(rng.range(1, degree_max)), height_max);
            res = resultant(p1, p2);
            if (res != 0) break;
        }
        ++rep.trials;
        for (int k = 0; k < 5; ++k) {
            Rational xi = detail::random_xi_half(rng);
            Rational det = resultant_shifted(p1, p2, xi);
            if (!(abs(det) == Rational(abs(res)))) {
                ++rep.failures;
                rep.witnesses.push_back({p1.to_human() + " ; " + p2.to_human() + " ; xi=" + to_string(xi),
                                         to_string(det), to_string(res)});
            }
        }
    }
    return rep;
}

namespace detail {

/// One term value * q^e with q = Q^(1/L); sums collect by exponent.
using LaurentSum = std::map<long, Rational>;

struct LaurentEntry {
    Rational val;
    int row;
    long expo;  // q-exponent contributed by this row's normalization
};

inline void laurent_permanent_dfs(const std::vector<std::vector<LaurentEntry>>& cols, std::size_t col,
                                  std::uint32_t used_rows, Rational val, long expo, LaurentSum& out) {
    if (col == cols.size()) {
        out[expo] += val;
        return;
    }
    for (const auto& e : cols[col]) {
        const std::uint32_t row_bit = 1u << e.row;
        if (used_rows & row_bit) continue;
        if (e.val == 0) continue;
        laurent_permanent_dfs(cols, col + 1, used_rows | row_bit, Rational(val * e.val), expo + e.expo, out);
    }
}

/// Decides sum(c_e q^e) >= target exactly, q = Q^(1/L), c_e >= 0.
inline bool laurent_at_least(const LaurentSum& sum, const Rational& target, const Integer& Q, long L) {
    if (L == 1) {
        Rational total(0);
        for (const auto& [e, c] : sum)
            total += c * (e >= 0 ? Rational(pow_int(Q, static_cast<unsigned long>(e)))
                                 : Rational(1) / Rational(pow_int(Q, static_cast<unsigned long>(-e))));
        return total >= target;
    }
    Integer grid = pow_int(Integer(2), 32);
    for (int round = 0; round < 10; ++round) {
        Integer scaled = Q * pow_int(grid, static_cast<unsigned long>(L));
        Integer root;
        mpz_root(root.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(L));
        Rational ql{root, grid}, qh{root + 1, grid};
        ql.canonicalize();
        qh.canonicalize();
        Rational lo(0), hi(0);
        for (const auto& [e, c] : sum) {
            if (e >= 0) {
                lo += c * pow_rat(ql, e);
                hi += c * pow_rat(qh, e);
            } else {
                lo += c * pow_rat(qh, e);
                hi += c * pow_rat(ql, e);
            }
        }
        if (lo >= target) return true;
        if (hi < target) return false;
        grid *= pow_int(Integer(2), 16);
    }
    throw internal_error("laurent_at_least: enclosure failed to separate");
}

}  // namespace detail

/// Lemma 6, Eq. (colsk): the k-column permanent of normalized derivative
/// magnitudes times Q^(n1 l2 + n2 l1) is at least 1/C(n) with the explicit
/// constant C(n) = (n1+n2)! * ((n+1) 2^n)^(n1+n2-k), n = n1+n2.
inline LemmaReport check_permanent_bound(const IntPolynomial& p1, const IntPolynomial& p2, const Integer& Q,
                                         const Rational& lambda1, const Rational& lambda2, const Rational& xi,
                                         int k) {
    if (p1.is_zero() || p2.is_zero() || p1.degree() < 1 || p2.degree() < 1)
        throw validation_error("check_permanent_bound: degrees must be >= 1");
    if (!detail::coprime(p1, p2)) throw validation_error("check_permanent_bound: polynomials share a root");
    if (Q < 2) throw validation_error("check_permanent_bound: Q >= 2");
    if (abs(xi) > Rational(1, 2)) throw validation_error("check_permanent_bound: xi must lie in [-1/2, 1/2]");
    detail::require_height_bound(p1, Q, lambda1, "check_permanent_bound(p1)");
    detail::require_height_bound(p2, Q, lambda2, "check_permanent_bound(p2)");
    const int n1 = p1.degree(), n2 = p2.degree(), n = n1 + n2;
    if (k < 1 || k > n) throw validation_error("check_permanent_bound: k must be in [1, n1+n2]");

    const long b1 = static_cast<long>(denominator(lambda1).get_si());
    const long b2 = static_cast<long>(denominator(lambda2).get_si());
    const long a1 = static_cast<long>(numerator(lambda1).get_si());
    const long a2 = static_cast<long>(numerator(lambda2).get_si());
    const long L = std::lcm(b1, b2);

    std::vector<Rational> d1(static_cast<std::size_t>(n1) + 1), d2(static_cast<std::size_t>(n2) + 1);
    for (int j = 0; j <= n1; ++j) d1[static_cast<std::size_t>(j)] = abs(p1.derivative(static_cast<unsigned>(j)).evaluate(xi));
    for (int j = 0; j <= n2; ++j) d2[static_cast<std::size_t>(j)] = abs(p2.derivative(static_cast<unsigned>(j)).evaluate(xi));

    // columns of the first-k-column matrix; each entry is (value, packed
    // row index | q-exponent of the row's normalization)
    std::vector<std::vector<detail::LaurentEntry>> cols(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
        for (int r = 0; r < n2; ++r) {
            int j = c - r;
            if (j < 0 || j > n1) continue;
            cols[static_cast<std::size_t>(c)].push_back({d1[static_cast<std::size_t>(j)], r, -a1 * (L / b1)});
        }
        for (int s = 0; s < n1; ++s) {
            int j = c - s;
            if (j < 0 || j > n2) continue;
            cols[static_cast<std::size_t>(c)].push_back({d2[static_cast<std::size_t>(j)], n2 + s, -a2 * (L / b2)});
        }
    }
    detail::LaurentSum perm;
    detail::laurent_permanent_dfs(cols, 0, 0, Rational(1), 0, perm);
    // multiply by Q^(n1 l2 + n2 l1): shift every exponent
    const long shift = n1 * a2 * (L / b2) + n2 * a1 * (L / b1);
    detail::LaurentSum lhs;
    for (const auto& [e, c] : perm) lhs[e + shift] = c;

    Integer fact(1);
    for (int i = 2; i <= n; ++i) fact *= i;
    Integer cn = fact * pow_int(Integer(n + 1) * pow_int(Integer(2), static_cast<unsigned long>(n)),
                                static_cast<unsigned long>(n - k));
    Rational target{Integer(1), cn};
    target.canonicalize();

    const bool holds = detail::laurent_at_least(lhs, target, Q, L);
    LemmaReport rep;
    rep.lemma_id = "permanent-bound";
    rep.trials = 1;
    rep.failures = holds ? 0 : 1;
    rep.parameters["Q"] = Q.get_str();
    rep.parameters["lambda1"] = to_string(lambda1);
    rep.parameters["lambda2"] = to_string(lambda2);
    rep.parameters["xi"] = to_string(xi);
    rep.parameters["k"] = std::to_string(k);
    rep.parameters["C(n)"] = cn.get_str();
    double approx_lhs = 0;
    for (const auto& [e, c] : lhs)
        approx_lhs += mpq_get_d(c.get_mpq_t()) * std::pow(mpz_get_d(Q.get_mpz_t()), double(e) / double(L));
    rep.witnesses.push_back({p1.to_human() + " ; " + p2.to_human(), detail::approx(approx_lhs), to_string(target)});
    return rep;
}

/// Lemma 6, Eq. (cols3interval): the three-column inequality on an interval,
/// with tau_i measured on a sample grid (an experiment, not a theorem check:
/// the paper needs Q > Q_0(n, delta)).
inline LemmaReport check_three_column_inequality(const IntPolynomial& p1, const IntPolynomial& p2, const Integer& Q,
                                                 const Enclosure& interval, const Rational& delta) {
    if (p1.is_zero() || p2.is_zero() || p1.degree() < 1 || p2.degree() < 1)
        throw validation_error("check_three_column_inequality: degrees must be >= 1");
    if (p1.degree() + p2.degree() < 3)
        throw validation_error("check_three_column_inequality: need n1 + n2 >= 3");
    if (!detail::coprime(p1, p2)) throw validation_error("check_three_column_inequality: common root");
    if (interval.width() == 0) throw validation_error("check_three_column_inequality: degenerate interval");
    if (sgn(delta) <= 0) throw validation_error("check_three_column_inequality: delta must be > 0");

    const double logQ = std::log(mpz_get_d(Q.get_mpz_t()));
    const auto log_q = [&](double x) { return std::log(x) / logQ; };
    // sup over 2^8 interior sample points plus both endpoints
    const int grid = 256;
    double sup1 = 0, sup2 = 0;
    for (int j = 0; j <= grid + 1; ++j) {
        Rational x = interval.lo + interval.width() * Rational(j, grid + 1);
        x.canonicalize();
        sup1 = std::max(sup1, std::abs(mpq_get_d(p1.evaluate(x).get_mpq_t())));
        sup2 = std::max(sup2, std::abs(mpq_get_d(p2.evaluate(x).get_mpq_t())));
    }
    const double tau1 = -log_q(sup1), tau2 = -log_q(sup2);
    const double l1 = log_q(mpz_get_d(p1.height().get_mpz_t()));
    const double l2 = log_q(mpz_get_d(p2.height().get_mpz_t()));
    const double eta = -log_q(mpq_get_d(interval.width().get_mpq_t()));
    const double lhs = 3.0 * std::min(tau1 + l1, tau2 + l2) - 2.0 * eta;
    const double rhs = p1.degree() * l2 + p2.degree() * l1 + mpq_get_d(delta.get_mpq_t());

    LemmaReport rep;
    rep.lemma_id = "three-column-interval";
    rep.trials = 1;
    rep.failures = lhs < rhs ? 0 : 1;
    rep.parameters["Q"] = Q.get_str();
    rep.parameters["tau1"] = detail::approx(tau1);
    rep.parameters["tau2"] = detail::approx(tau2);
    rep.parameters["lambda1"] = detail::approx(l1);
    rep.parameters["lambda2"] = detail::approx(l2);
    rep.parameters["eta"] = detail::approx(eta);
    rep.parameters["delta"] = to_string(delta);
    rep.parameters["margin"] = detail::approx(rhs - lhs);
    rep.witnesses.push_back({p1.to_human() + " ; " + p2.to_human(), detail::approx(lhs), detail::approx(rhs)});
    return rep;
}

/// Lemma 4 experiment with the explicit constant: random (p, xi) with
/// p(xi) != 0 must satisfy |p^(j)(xi)| <= binom(k,j) j! |p(xi)| L^-j.
inline LemmaReport check_derivative_bound(std::uint64_t trials, std::uint64_t seed) {
    LemmaReport rep;
    rep.lemma_id = "derivative-bound";
    rep.parameters["seed"] = std::to_string(seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng = derived_stream(seed, t);
        IntPolynomial p;
        Rational xi;
        while (true) {
            p = detail::random_poly_exact_degree(rng, static_cast<int>(rng.range(1, 6)), 20);
            xi = detail::random_xi_half(rng);
            if (p.evaluate(xi) != 0) break;
        }
        ++rep.trials;
        const auto L = certified_min_root_distance(p, xi);
        const unsigned long k = static_cast<unsigned long>(p.degree());
        const Rational value = abs(p.evaluate(xi));
        Integer fact(1);
        for (unsigned long j = 1; j <= k + 2; ++j) {
            fact *= static_cast<long>(j);
            Integer cj;
            mpz_bin_uiui(cj.get_mpz_t(), k, j);
            Rational lhs = abs(p.derivative(static_cast<unsigned>(j)).evaluate(xi));
            Rational rhs = Rational(cj * fact) * value * pow_rat(L.bound, -static_cast<long>(j));
            if (!(lhs <= rhs)) {
                ++rep.failures;
                rep.witnesses.push_back(
                    {p.to_human() + " ; xi=" + to_string(xi) + " ; j=" + std::to_string(j), to_string(lhs), to_string(rhs)});
            }
        }
    }
    return rep;
}

/// Gelfond divisor extraction: among the prime-power divisors of p the one
/// smallest at xi satisfies |t1(xi)| < Q^(-tau + m l - m1 l1 - (m-m1)(l-l1) + delta);
/// the right side rearranges to |p(xi)| * H(t1)^(m-2m1) * Q^(m1 l + delta),
/// which is compared exactly.
inline std::pair<IntPolynomial, LemmaReport> extract_small_divisor(const IntPolynomial& p, const Rational& xi,
                                                                   const Integer& Q, const Rational& lambda,
                                                                   const Rational& delta) {
    if (p.is_zero() || p.degree() < 1 || p.degree() > 8)
        throw validation_error("extract_small_divisor: degree must be in [1, 8]");
    if (p.content_and_primitive().first != 1) throw validation_error("extract_small_divisor: p must be primitive");
    if (p.evaluate(xi) == 0) throw validation_error("extract_small_divisor: p(xi) = 0");
    if (sgn(delta) <= 0) throw validation_error("extract_small_divisor: delta must be > 0");
    detail::require_height_bound(p, Q, lambda, "extract_small_divisor");

    auto divisors = prime_power_divisors(p);
    std::size_t best = 0;
    Rational best_val = abs(divisors[0].evaluate(xi));
    for (std::size_t i = 1; i < divisors.size(); ++i) {
        Rational v = abs(divisors[i].evaluate(xi));
        if (v < best_val) {
            best = i;
            best_val = v;
        }
    }
    const IntPolynomial& t1 = divisors[best];
    const long m = p.degree(), m1 = t1.degree();
    const Rational pval = abs(p.evaluate(xi));
    const Integer h1 = t1.height();

    // rhs = pval * h1^(m - 2 m1) * Q^(m1 lambda + delta)
    Rational rhs = pval * pow_rat(Rational(h1), m - 2 * m1);
    Rational e = Rational(m1) * lambda + delta;
    const bool holds = detail::less_than_power(best_val, rhs, Q, numerator(e), denominator(e));

    LemmaReport rep;
    rep.lemma_id = "divisor-extraction";
    rep.trials = 1;
    rep.failures = holds ? 0 : 1;
    rep.parameters["Q"] = Q.get_str();
    rep.parameters["lambda"] = to_string(lambda);
    rep.parameters["delta"] = to_string(delta);
    rep.parameters["m1"] = std::to_string(m1);
    rep.parameters["H(t1)"] = h1.get_str();
    rep.parameters["tau"] = detail::approx(-std::log(mpq_get_d(pval.get_mpq_t())) / std::log(mpz_get_d(Q.get_mpz_t())));
    double rhs_dbl = mpq_get_d(rhs.get_mpq_t()) *
                     std::pow(mpz_get_d(Q.get_mpz_t()), mpq_get_d(e.get_mpq_t()));
    rep.witnesses.push_back({p.to_human() + " ; t1=" + t1.to_human() + " ; xi=" + to_string(xi),
                             detail::approx(best_val), detail::approx(rhs_dbl)});
    return {t1, rep};
}

/// Union of intervals sigma(alpha) around real algebraic numbers of degree
/// <= n and height <= Hmax inside the base interval, radius
/// H(alpha)^(-deg-1) * Hmax^(-rho-2*delta); exact merged measure.
struct ExclusionSet {
    int n = 1;
    long hmax = 1;
    Rational rho, delta;
    Enclosure base;
    std::vector<Enclosure> intervals;  // per alpha, sorted by position
    Rational total_measure;
};

inline ExclusionSet build_exclusion_set(int n, long hmax, const Rational& rho, const Rational& delta,
                                        const Enclosure& base) {
    if (n < 1 || n > 4) throw validation_error("build_exclusion_set: n must be in [1, 4]");
    if (hmax < 1 || hmax > 50) throw validation_error("build_exclusion_set: Hmax must be in [1, 50]");
    if (sgn(rho) < 0 || sgn(delta) < 0) throw validation_error("build_exclusion_set: rho, delta must be >= 0");
    ExclusionSet out;
    out.n = n;
    out.hmax = hmax;
    out.rho = rho;
    out.delta = delta;
    out.base = base;
    out.total_measure = Rational(0);

    // R = Hmax^-(rho + 2 delta), rounded down on a fixed 2^-96 grid so the
    // per-alpha radii shrink monotonically as rho grows.
    Rational expo = rho + delta * 2;
    Rational scale;
    if (expo == 0) {
        scale = 1;
    } else {
        Integer a = numerator(expo), b = denominator(expo);
        Integer grid = pow_int(Integer(2), 96);
        // floor(grid / Hmax^(a/b)) = floor((grid^b / Hmax^a)^(1/b))
        Integer num = pow_int(grid, b.get_ui());
        Integer den = pow_int(Integer(hmax), a.get_ui());
        Integer q = num / den;
        Integer root;
        mpz_root(root.get_mpz_t(), q.get_mpz_t(), b.get_ui());
        scale = Rational{root, grid};
        scale.canonicalize();
    }

    const Rational atom{Integer(1), pow_int(Integer(2), 80)};
    std::vector<Enclosure> sigmas;
    for (int d = 1; d <= n; ++d) {
        std::vector<long> c(static_cast<std::size_t>(d) + 1, -hmax);
        c[static_cast<std::size_t>(d)] = 1;
        while (true) {
            long g = 0;
            for (long x : c) g = std::gcd(g, std::abs(x));
            if (g == 1) {
                std::vector<Integer> ic(c.size());
                for (std::size_t i = 0; i < c.size(); ++i) ic[i] = c[i];
                IntPolynomial p{std::move(ic)};
                if (p.degree() == d && is_irreducible(p)) {
                    for (const auto& root : isolate_roots_in(p, base)) {
                        Integer h = p.height();
                        Rational radius = scale / Rational(pow_int(h, static_cast<unsigned long>(d) + 1));
                        Enclosure center = root.interval;
                        if (root.poly.degree() == 1) {
                            Rational alpha{Integer(-root.poly.coeff(0)), root.poly.coeff(1)};
                            alpha.canonicalize();
                            center = Enclosure{alpha, alpha};
                        } else {
                            center = refine(root, atom);
                        }
                        sigmas.push_back(Enclosure{center.lo - radius, center.hi + radius});
                    }
                }
            }
            // odometer over c[0..d-1]; leading coefficient in [1, hmax]
            int i = 0;
            for (; i <= d; ++i) {
                long limit = hmax;
                long start = i == d ? 1 : -hmax;
                if (c[static_cast<std::size_t>(i)] < limit) {
                    ++c[static_cast<std::size_t>(i)];
                    break;
                }
                c[static_cast<std::size_t>(i)] = start;
            }
            if (i > d) break;
        }
    }
    std::sort(sigmas.begin(), sigmas.end(), [](const Enclosure& a, const Enclosure& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    out.intervals = sigmas;
    // merged measure
    std::size_t i = 0;
    while (i < sigmas.size()) {
        Rational lo = sigmas[i].lo, hi = sigmas[i].hi;
        std::size_t j = i + 1;
        while (j < sigmas.size() && sigmas[j].lo <= hi) {
            if (sigmas[j].hi > hi) hi = sigmas[j].hi;
            ++j;
        }
        out.total_measure += hi - lo;
        i = j;
    }
    return out;
}

/// Statement 4 experiment: bin census members by their upper coefficients,
/// emit primitive differences R = P2 - P1 for every pair sharing a box, and
/// check the size estimates sup |R| < Q^(1-2v+delta), sup |R'| < Q^(1-v+delta)
/// on a sample grid of K. Degenerate differences (deg <= 1) are flagged in
/// the witnesses but do not count as bound failures.
inline std::vector<std::pair<IntPolynomial, LemmaReport>> pigeonhole_difference(
    const std::vector<IntPolynomial>& members, const Enclosure& K, const Integer& Q, int m, const Rational& lambda,
    const Rational& v, const Rational& delta) {
    std::vector<std::pair<IntPolynomial, LemmaReport>> out;
    if (members.size() < 2) return out;
    const int n = members[0].degree();
    if (m < 2 || m > n) throw validation_error("pigeonhole_difference: need 2 <= m <= n");
    for (const auto& p : members)
        if (p.degree() != n) throw validation_error("pigeonhole_difference: members must share one degree");
    if (sgn(lambda) < 0) throw validation_error("pigeonhole_difference: lambda must be >= 0");

    // box side Q^lambda / n^2, rounded down on a 2^-48 grid (a smaller side
    // only refines the pigeonhole grid)
    Rational side;
    {
        Integer a = numerator(lambda), b = denominator(lambda);
        Integer grid = pow_int(Integer(2), 48);
        Integer num = pow_int(Integer(Q), a.get_ui()) * pow_int(grid, b.get_ui());
        Integer root;
        mpz_root(root.get_mpz_t(), num.get_mpz_t(), b.get_ui());
        side = Rational{root, grid * (n * n)};
        side.canonicalize();
        if (sgn(side) <= 0) throw validation_error("pigeonhole_difference: degenerate box side");
    }

    std::map<std::vector<long>, std::vector<std::size_t>> boxes;
    for (std::size_t idx = 0; idx < members.size(); ++idx) {
        const auto& p = members[idx];
        std::vector<long> key;
        for (int i = 2; i <= n; ++i) {
            Rational offset = Rational(p.coeff(static_cast<std::size_t>(i))) + Rational(Q);
            if (i <= m) {
                Rational q = offset / side;
                Integer fl;
                mpz_fdiv_q(fl.get_mpz_t(), numerator(q).get_mpz_t(), denominator(q).get_mpz_t());
                key.push_back(fl.get_si());
            } else {
                Integer fl;
                mpz_fdiv_q(fl.get_mpz_t(), numerator(offset).get_mpz_t(), denominator(offset).get_mpz_t());
                key.push_back(fl.get_si());
            }
        }
        boxes[key].push_back(idx);
    }

    const Rational two_v_exp = Rational(1) - v * 2 + delta;  // 1 - 2v + delta
    const Rational one_v_exp = Rational(1) - v + delta;      // 1 - v + delta
    for (const auto& [key, idxs] : boxes) {
        if (idxs.size() < 2) continue;
        for (std::size_t a = 0; a < idxs.size(); ++a)
            for (std::size_t b = a + 1; b < idxs.size(); ++b) {
                IntPolynomial r0 = members[idxs[b]] - members[idxs[a]];
                if (r0.is_zero()) throw internal_error("pigeonhole_difference: identical members");
                IntPolynomial r = r0.primitive_part();
                LemmaReport rep;
                rep.lemma_id = "pigeonhole-difference";
                rep.trials = 1;
                rep.parameters["m"] = std::to_string(m);
                rep.parameters["lambda"] = to_string(lambda);
                rep.parameters["v"] = to_string(v);
                rep.parameters["delta"] = to_string(delta);
                bool ok = true;
                if (r.degree() > m) {
                    ok = false;
                    rep.witnesses.push_back({"deg R", std::to_string(r.degree()), std::to_string(m)});
                }
                {
                    Integer hb = numerator(lambda), bb = denominator(lambda);
                    if (pow_int(r.height(), bb.get_ui()) > pow_int(Q, hb.get_ui())) {
                        ok = false;
                        rep.witnesses.push_back({"H(R)", r.height().get_str(), "Q^" + to_string(lambda)});
                    }
                }
                if (r.degree() <= 1)
                    rep.witnesses.push_back({"degenerate-degree R=" + r.to_human(), std::to_string(r.degree()), ">= 2"});
                IntPolynomial rd = r.derivative();
                const int grid = 256;
                for (int j = 0; j <= grid + 1 && ok; ++j) {
                    Rational x = K.lo + K.width() * Rational(j, grid + 1);
                    x.canonicalize();
                    Rational rv = abs(r.evaluate(x));
                    if (rv != 0 &&
                        !detail::less_than_power(rv, Rational(1), Q, numerator(two_v_exp), denominator(two_v_exp))) {
                        ok = false;
                        rep.witnesses.push_back({"sup|R| at x=" + to_string(x), detail::approx(rv),
                                                 "Q^(" + to_string(two_v_exp) + ")"});
                    }
                    Rational dv = rd.is_zero() ? Rational(0) : abs(rd.evaluate(x));
                    if (dv != 0 &&
                        !detail::less_than_power(dv, Rational(1), Q, numerator(one_v_exp), denominator(one_v_exp))) {
                        ok = false;
                        rep.witnesses.push_back({"sup|R'| at x=" + to_string(x), detail::approx(dv),
                                                 "Q^(" + to_string(one_v_exp) + ")"});
                    }
                }
                rep.failures = ok ? 0 : 1;
                out.emplace_back(std::move(r), std::move(rep));
            }
    }
    return out;
}

/// Merge by summing trials/failures and concatenating witnesses; parameters
/// keep the first report's entries (per-trial values stay in witnesses).
inline LemmaReport merge_reports(const std::string& lemma_id, const std::vector<LemmaReport>& parts) {
    LemmaReport out;
    out.lemma_id = lemma_id;
    for (const auto& p : parts) {
        out.trials += p.trials;
        out.failures += p.failures;
        for (const auto& w : p.witnesses) out.witnesses.push_back(w);
        if (out.parameters.empty()) out.parameters = p.parameters;
    }
    return out;
}

/// Randomized permanent-bound suite (theorem-backed: zero failures expected).
inline LemmaReport check_permanent_bound_random(std::uint64_t trials, std::uint64_t seed) {
    std::vector<LemmaReport> parts;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng = derived_stream(seed, t);
        IntPolynomial p1, p2;
        while (true) {
            p1 = detail::random_poly_exact_degree(rng, static_cast<int>(rng.range(1, 4)), 9);
            p2 = detail::random_poly_exact_degree(rng, static_cast<int>(rng.range(1, 4)), 9);
            if (resultant(p1, p2) != 0) break;
        }
        Integer Q = std::max(p1.height(), p2.height()) + rng.range(0, 5);
        if (Q < 2) Q = 2;
        int k = static_cast<int>(rng.range(1, p1.degree() + p2.degree()));
        parts.push_back(check_permanent_bound(p1, p2, Q, Rational(1), Rational(1), detail::random_xi_half(rng), k));
    }
    auto rep = merge_reports("permanent-bound", parts);
    rep.parameters["seed"] = std::to_string(seed);
    return rep;
}

/// Randomized three-column experiments (margins recorded, not asserted).
inline LemmaReport check_three_column_random(std::uint64_t trials, std::uint64_t seed) {
    std::vector<LemmaReport> parts;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng = derived_stream(seed, t);
        IntPolynomial p1, p2;
        while (true) {
            p1 = detail::random_poly_exact_degree(rng, static_cast<int>(rng.range(1, 3)), 12);
            p2 = detail::random_poly_exact_degree(rng, static_cast<int>(rng.range(1, 3)), 12);
            if (p1.degree() + p2.degree() >= 3 && resultant(p1, p2) != 0) break;
        }
        long den = 1L << rng.range(2, 6);
        long lo_num = rng.range(-den / 2, den / 2 - 1);
        Enclosure interval{Rational{Integer(lo_num), Integer(den)}, Rational{Integer(lo_num + 1), Integer(den)}};
        Integer Q(rng.range(16, 4096));
        parts.push_back(check_three_column_inequality(p1, p2, Q, interval, Rational(1, 10)));
    }
    auto rep = merge_reports("three-column-interval", parts);
    rep.parameters["seed"] = std::to_string(seed);
    return rep;
}

/// Engineered near-root products for the divisor-extraction lemma: t1 is a
/// primitive linear polynomial and xi sits within 2^-30 of its root, while
/// the cofactor stays bounded away from zero; with delta = 1/10 the bound
/// must hold (zero failures expected).
inline LemmaReport check_divisor_extraction_random(std::uint64_t trials, std::uint64_t seed) {
    std::vector<LemmaReport> parts;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng = derived_stream(seed, t);
        while (true) {
            long den = rng.range(2, 50);
            long num = rng.range(-(den - 1) / 2, (den - 1) / 2);
            if (num == 0) num = 1;
            if (std::gcd(std::abs(num), den) != 1) continue;
            IntPolynomial t1(std::vector<Integer>{Integer(-num), Integer(den)});
            Rational root{Integer(num), Integer(den)};
            root.canonicalize();
            Rational xi = root + Rational{Integer(rng.coin() ? 1 : -1), pow_int(Integer(2), 30) * den};
            IntPolynomial t2 = detail::random_poly_exact_degree(rng, static_cast<int>(rng.range(1, 3)), 10);
            if (sgn(t2.leading()) < 0) t2 = -t2;
            if (t2.content_and_primitive().first != 1) continue;
            if (t2 == t1) continue;
            if (abs(t2.evaluate(xi)) < Rational(1, 2)) continue;
            if (!is_irreducible(t2)) continue;
            IntPolynomial p = t1 * t2;
            auto [sel, rep] = extract_small_divisor(p, xi, pow_int(Integer(2), 26), Rational(1), Rational(1, 10));
            if (!(sel == t1)) {
                rep.failures += 1;
                rep.witnesses.push_back({"selected divisor", sel.to_human(), t1.to_human()});
            }
            parts.push_back(rep);
            break;
        }
    }
    auto rep = merge_reports("divisor-extraction", parts);
    rep.parameters["seed"] = std::to_string(seed);
    return rep;
}

/// Sprindzuk interval containment at one sample point: checks
/// |x - alpha_1| < 2^(n-1) |p(x)| / |p'(alpha_1)| exactly, alpha_1 the real
/// root closest to x. Equality (the linear boundary case) counts as a
/// recorded failure of the strict form.
inline LemmaReport check_sprindzuk(const IntPolynomial& p, const Rational& x) {
    if (p.is_zero() || p.degree() < 1) throw validation_error("check_sprindzuk: need degree >= 1");
    auto roots = isolate_all_real_roots(p);
    if (roots.empty()) throw validation_error("check_sprindzuk: p has no real root");

    // narrow down the closest root; exact ties keep both candidates
    std::vector<IsolatedRoot> cands = roots;
    for (int round = 0; round < 120 && cands.size() > 1; ++round) {
        Rational best_hi(-1);
        std::vector<Enclosure> dist(cands.size());
        for (std::size_t i = 0; i < cands.size(); ++i) {
            Enclosure d = abs(Enclosure{cands[i].interval.lo - x, cands[i].interval.hi - x});
            dist[i] = d;
            if (best_hi < 0 || d.hi < best_hi) best_hi = d.hi;
        }
        std::vector<IsolatedRoot> keep;
        for (std::size_t i = 0; i < cands.size(); ++i)
            if (dist[i].lo <= best_hi) keep.push_back(cands[i]);
        cands = std::move(keep);
        if (cands.size() > 1)
            for (auto& c : cands) detail::refine_step(c);
    }

    const int n = p.degree();
    const Rational px = p.evaluate(x);
    const Rational rhs_sq = pow_rat(Rational(2), 2 * (n - 1)) * px * px;  // (2^(n-1) p(x))^2
    IntPolynomial dp = p.derivative();
    LemmaReport rep;
    rep.lemma_id = "sprindzuk-containment";
    rep.parameters["x"] = to_string(x);
    for (const auto& root : cands) {
        ++rep.trials;
        if (sign_at_root(root, dp) == 0)
            throw validation_error("check_sprindzuk: derivative vanishes at the closest root");
        // g(t) = (x - t)^2 p'(t)^2 - rhs_sq; sign at alpha decides the strict form
        IntPolynomial xt(std::vector<Integer>{numerator(x), Integer(-denominator(x))});  // x*den - den*t .. scaled
        // build (num - den t); scaling cancels in the comparison after
        // multiplying rhs by den^2
        IntPolynomial g = xt * xt * dp * dp;
        Rational scaled_rhs = rhs_sq * Rational(denominator(x) * denominator(x));
        IntPolynomial gshift = g * denominator(scaled_rhs) - IntPolynomial::constant(numerator(scaled_rhs));
        int s = sign_at_root(root, gshift);
        const bool strict = s < 0;
        if (!strict) ++rep.failures;
        Enclosure d = abs(Enclosure{root.interval.lo - x, root.interval.hi - x});
        double dp_at_root = mpq_get_d(dp.evaluate(root.interval.midpoint()).get_mpq_t());
        rep.witnesses.push_back({p.to_human() + " ; x=" + to_string(x) + (s == 0 ? " (boundary)" : ""),
                                 detail::approx(d.midpoint()),
                                 detail::approx(std::sqrt(std::max(0.0, mpq_get_d(rhs_sq.get_mpq_t()))) /
                                                std::max(1e-300, std::abs(dp_at_root)))});
    }
    return rep;
}

/// Randomized Sprindzuk containment probes; counterexamples are recorded,
/// not asserted (the cited lemma carries side conditions).
inline LemmaReport check_sprindzuk_random(std::uint64_t trials, std::uint64_t seed) {
    std::vector<LemmaReport> parts;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng = derived_stream(seed, t);
        for (int attempt = 0; attempt < 64; ++attempt) {
            IntPolynomial p = detail::random_poly_exact_degree(rng, static_cast<int>(rng.range(1, 4)), 8);
            Rational x = detail::random_xi_half(rng);
            try {
                parts.push_back(check_sprindzuk(p, x));
                break;
            } catch (const validation_error&) {
                continue;  // no real root or vanishing derivative: resample
            }
        }
    }
    auto rep = merge_reports("sprindzuk-containment", parts);
    rep.parameters["seed"] = std::to_string(seed);
    return rep;
}

}  // namespace algcensus
