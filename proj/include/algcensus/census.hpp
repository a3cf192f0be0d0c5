#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "algcensus/rng.hpp"
#include "algcensus/threshold.hpp"

namespace algcensus {

/// Query for P_n(Q, v, D): degree-n primitive irreducible polynomials with
/// positive leading coefficient, height <= Q, having a real root alpha in D
/// with |P'(alpha)| < cd * Q^(1-v).
struct CensusQuery {
    int n = 2;
    Integer q{2};
    Rational v{0};
    Enclosure domain{Rational(-1, 2), Rational(1, 2)};
    Rational cd{1};
    bool allow_wide_domain = false;  // lifts the D subset-of-I0 guard
};

struct CensusRecord {
    CensusQuery query;
    std::uint64_t count = 0;
    std::uint64_t pair_count = 0;  // qualifying (polynomial, cell) pairs
    std::uint64_t enumerated = 0;  // total coefficient tuples visited
    std::uint64_t cells = 0;       // histogram cells (0 when histogram off)
    std::vector<std::uint64_t> histogram;
    double elapsed_sec = 0.0;
};

struct CensusOptions {
    unsigned jobs = 1;
    std::uint64_t budget = 1'000'000'000ULL;  // tuple-enumeration cap
    bool histogram = false;
    bool spot_check = true;   // re-verify a 100-member sample post-merge
    bool force_generic = false;  // disable the small-degree fast paths (testing)
};

namespace detail {

struct QueryContext {
    CensusQuery query;
    long vn = 0, vd = 1;  // v = vn / vd, canonical
    std::uint64_t cell_count = 0;
    bool histogram = false;

    explicit QueryContext(const CensusQuery& q, bool with_histogram) : query(q), histogram(with_histogram) {
        if (q.n < 2 || q.n > 8) throw validation_error("census: n must be in [2, 8]");
        if (q.q < 2) throw validation_error("census: Q must be >= 2");
        validate_threshold_query(q.q, q.v, q.cd);
        if (q.domain.lo > q.domain.hi) throw validation_error("census: empty interval order");
        if (!q.allow_wide_domain) {
            Enclosure i0{Rational(-1, 2), Rational(1, 2)};
            if (!i0.contains(q.domain))
                throw validation_error("census: D must lie inside [-1/2, 1/2] (use the wide-domain flag to lift)");
        }
        vn = static_cast<long>(numerator(q.v).get_si());
        vd = static_cast<long>(denominator(q.v).get_si());
        if (histogram) {
            cell_count = compute_cell_count();
            if (cell_count > 10'000'000ULL) throw validation_error("census: histogram would exceed 10^7 cells");
        }
    }

    /// ceil(|D| * Q^v), the number of half-open cells of length Q^-v.
    std::uint64_t compute_cell_count() const {
        Rational w = query.domain.width();
        if (w == 0) return 0;
        // i >= w * Q^(vn/vd)  <=>  i^vd >= w^vd * Q^vn
        Integer wn = numerator(w), wd = denominator(w);
        Integer lhs_base = pow_int(wn, static_cast<unsigned long>(vd)) * pow_int(query.q, static_cast<unsigned long>(vn));
        Integer rhs_base = pow_int(wd, static_cast<unsigned long>(vd));
        const auto at_least = [&](const Integer& i) {  // i >= w Q^v ?
            return pow_int(i, static_cast<unsigned long>(vd)) * rhs_base >= lhs_base;
        };
        double est = mpq_get_d(w.get_mpq_t()) * std::pow(mpz_get_d(query.q.get_mpz_t()), double(vn) / double(vd));
        Integer c(static_cast<unsigned long>(std::max(0.0, std::ceil(est))));
        while (!at_least(c)) c += 1;
        while (c > 0 && at_least(c - 1)) c -= 1;
        if (c == 0) c = 1;  // nonempty D needs at least one cell
        return c.get_ui();
    }

    /// floor((x - D.lo) * Q^v) clamped into [0, cells-1]; exact.
    std::uint64_t cell_floor(const Rational& x) const {
        Rational t = x - query.domain.lo;
        if (sgn(t) <= 0) return 0;
        Integer tn = numerator(t), td = denominator(t);
        Integer lhs_base = pow_int(tn, static_cast<unsigned long>(vd)) * pow_int(query.q, static_cast<unsigned long>(vn));
        const auto le_val = [&](const Integer& i) {  // i <= t Q^v ?
            return pow_int(i * td, static_cast<unsigned long>(vd)) <= lhs_base;
        };
        double est = mpq_get_d(t.get_mpq_t()) * std::pow(mpz_get_d(query.q.get_mpz_t()), double(vn) / double(vd));
        Integer c(static_cast<unsigned long>(std::max(0.0, std::floor(est))));
        while (!le_val(c)) c -= 1;
        while (le_val(c + 1)) c += 1;
        std::uint64_t idx = c.get_ui();
        return idx >= cell_count ? cell_count - 1 : idx;
    }

    /// Exact cell of the root (half-open cells, left edge included).
    std::uint64_t cell_of(const IsolatedRoot& root) const {
        IsolatedRoot r = root;
        while (true) {
            std::uint64_t il = cell_floor(r.interval.lo);
            std::uint64_t ih = cell_floor(r.interval.hi);
            if (il == ih) return il;
            if (ih == il + 1) {
                // boundary B = lo + ih * Q^-v sits inside the enclosure:
                // g(alpha) >= 0 iff alpha >= B
                Integer dn = numerator(query.domain.lo), dd = denominator(query.domain.lo);
                IntPolynomial shifted(std::vector<Integer>{Integer(-dn), dd});  // dd x - dn
                IntPolynomial g = IntPolynomial::constant(1);
                for (long i = 0; i < vd; ++i) g = g * shifted;
                g = g * pow_int(query.q, static_cast<unsigned long>(vn));
                Integer rhs = pow_int(Integer(static_cast<unsigned long>(ih)), static_cast<unsigned long>(vd)) *
                              pow_int(dd, static_cast<unsigned long>(vd));
                g = g - IntPolynomial::constant(rhs);
                return sign_at_root(r, g) >= 0 ? ih : il;
            }
            refine_step(r);
        }
    }
};

/// Membership test through the exact generic machinery; reference path for
/// every degree and the re-verification route for spot checks.
inline bool generic_qualifies(const QueryContext& ctx, const IntPolynomial& p) {
    const int n = ctx.query.n;
    {
        Integer g(0);
        for (const auto& a : p.coefficients()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        if (g != 1) return false;
    }
    if ((n == 2 || n == 3) && !is_irreducible(p)) return false;
    auto roots = isolate_roots_in(p, ctx.query.domain);
    if (roots.empty()) return false;
    if (n >= 4 && !is_irreducible(p)) return false;
    for (const auto& r : roots)
        if (decide_derivative_threshold_unchecked(p, r, ctx.query.q, ctx.query.v, ctx.query.cd) ==
            ThresholdDecision::Below)
            return true;
    return false;
}

/// Distinct histogram cells containing a qualifying root of p (sorted).
inline std::vector<std::uint64_t> generic_cells(const QueryContext& ctx, const IntPolynomial& p) {
    std::vector<std::uint64_t> cells;
    for (const auto& r : isolate_roots_in(p, ctx.query.domain)) {
        if (decide_derivative_threshold_unchecked(p, r, ctx.query.q, ctx.query.v, ctx.query.cd) !=
            ThresholdDecision::Below)
            continue;
        std::uint64_t c = ctx.cell_of(r);
        if (std::find(cells.begin(), cells.end(), c) == cells.end()) cells.push_back(c);
    }
    std::sort(cells.begin(), cells.end());
    return cells;
}

struct SampleEntry {
    std::uint64_t key;
    std::vector<long> coeffs;  // constant first
    bool operator<(const SampleEntry& o) const { return key < o.key; }
};

struct Partial {
    std::uint64_t count = 0;
    std::uint64_t pair_count = 0;
    std::vector<std::uint64_t> cells;
    std::vector<SampleEntry> sample;
};

constexpr std::size_t kSpotCheckSize = 100;

inline std::uint64_t sample_key(std::uint64_t seed, const std::vector<long>& coeffs) {
    SplitMix64 mix(seed);
    for (long c : coeffs) {
        mix.state ^= static_cast<std::uint64_t>(c) * 0x9ddfea08eb382d69ULL;
        mix.next();
    }
    return mix.next();
}

using i128 = __int128;

inline int sgn128(i128 x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

/// Small rational with int64 parts; dn > 0 always.
struct SmallRat {
    long nu;
    long dn;
};

/// Parameters shared by the int64/int128 fast paths. Only engaged when all
/// magnitudes provably fit; anything else takes the generic route.
struct FastParams {
    bool usable = false;
    long Q = 0;
    SmallRat lo{0, 1}, hi{0, 1};
    long cdn = 1, cdd = 1;
    long vn = 0, vd = 1;
    // threshold^2 = t2n / t2d (rational because vd <= 2)
    Integer t2n, t2d;
    bool t2_small = false;  // both parts below 2^40: int128 decide applies
    long t2n_ll = 0, t2d_ll = 0;

    static FastParams build(const QueryContext& ctx) {
        FastParams f;
        const auto& q = ctx.query;
        const long kCap = 1 << 20;
        if (q.n != 2 && q.n != 3) return f;
        if (q.q > 4096) return f;
        if (ctx.vd > 2) return f;
        const auto small = [&](const Rational& r, SmallRat& out) {
            if (abs(numerator(r)) > kCap || denominator(r) > kCap) return false;
            out.nu = static_cast<long>(numerator(r).get_si());
            out.dn = static_cast<long>(denominator(r).get_si());
            return true;
        };
        SmallRat cd;
        if (!small(q.domain.lo, f.lo) || !small(q.domain.hi, f.hi) || !small(q.cd, cd)) return f;
        f.cdn = cd.nu;
        f.cdd = cd.dn;
        if (f.cdn <= 0) return f;
        f.Q = static_cast<long>(q.q.get_si());
        f.vn = ctx.vn;
        f.vd = ctx.vd;
        // threshold^2 = cd^2 * Q^(2(vd-vn)/vd); rational since vd in {1,2}
        long e2 = 2 * (f.vd - f.vn) / f.vd;  // = 2(1-v) * ... exact: vd|2(vd-vn) as vd<=2
        if ((2 * (f.vd - f.vn)) % f.vd != 0) return f;
        f.t2n = Integer(f.cdn) * Integer(f.cdn);
        f.t2d = Integer(f.cdd) * Integer(f.cdd);
        if (e2 >= 0)
            f.t2n *= pow_int(Integer(f.Q), static_cast<unsigned long>(e2));
        else
            f.t2d *= pow_int(Integer(f.Q), static_cast<unsigned long>(-e2));
        if (f.t2n < pow_int(Integer(2), 40) && f.t2d < pow_int(Integer(2), 40)) {
            f.t2_small = true;
            f.t2n_ll = f.t2n.get_si();
            f.t2d_ll = f.t2d.get_si();
        }
        f.usable = true;
        return f;
    }
};

// ---------- degree 2 fast path ----------

/// sqrt(disc) <= num/den (den > 0)?
inline bool sqrt_le(long disc, i128 num, i128 den) {
    if (num < 0) return false;
    return i128(disc) * den * den <= num * num;
}

/// sqrt(disc) >= num/den?
inline bool sqrt_ge(long disc, i128 num, i128 den) {
    if (num <= 0) return true;
    return i128(disc) * den * den >= num * num;
}

inline bool fast_qualifies_n2(const FastParams& f, long a, long b, long c) {
    long g = std::gcd(std::gcd(a, std::abs(b)), std::abs(c));
    if (g != 1) return false;
    long disc = b * b - 4 * a * c;
    if (disc <= 0) return false;
    long s = static_cast<long>(std::sqrt(double(disc)));
    while (s * s > disc) --s;
    while ((s + 1) * (s + 1) <= disc) ++s;
    if (s * s == disc) return false;  // rational roots: reducible
    // roots (-b +- sqrt(disc)) / (2a); membership in [lo, hi]:
    //   plus root:  lo <= r <=>  sqrt >= 2a*lo + b;  r <= hi <=> sqrt <= 2a*hi + b
    //   minus root: lo <= r <=> sqrt <= -(2a*lo + b); r >= ... sqrt >= -(2a*hi + b)
    const i128 lo_n = i128(2) * a * f.lo.nu + i128(b) * f.lo.dn;
    const i128 hi_n = i128(2) * a * f.hi.nu + i128(b) * f.hi.dn;
    bool plus_in = sqrt_ge(disc, lo_n, f.lo.dn) && sqrt_le(disc, hi_n, f.hi.dn);
    bool minus_in = sqrt_le(disc, -lo_n, f.lo.dn) && sqrt_ge(disc, -hi_n, f.hi.dn);
    if (!plus_in && !minus_in) return false;
    // |P'(root)| = sqrt(disc) for both roots: Below iff disc < threshold^2
    return Integer(disc) * f.t2d < f.t2n;
}

// ---------- degree 3 fast path ----------

struct CubicChain {
    long a3, a2, a1, a0;
    i128 s2x, s20, s3;  // s2 = s2x x + s20 (deg<=1), s3 constant
    bool squarefree;

    void build(long A3, long A2, long A1, long A0) {
        a3 = A3;
        a2 = A2;
        a1 = A1;
        a0 = A0;
        s2x = i128(2) * (i128(a2) * a2 - i128(3) * a3 * a1);
        s20 = i128(a2) * a1 - i128(9) * a3 * a0;
        if (s2x == 0 && s20 == 0) {
            squarefree = false;
            return;
        }
        if (s2x == 0) {
            s3 = 0;  // chain ends at the constant s20
            squarefree = true;
            return;
        }
        // s3 = -(3 a3 s20^2 - 2 a2 s20 s2x + a1 s2x^2)
        s3 = -(i128(3) * a3 * s20 * s20 - i128(2) * a2 * s20 * s2x + i128(a1) * s2x * s2x);
        squarefree = s3 != 0;
    }

    // sign variations at x = nu/dn (dn > 0); values scaled by dn^deg > 0
    int variations(i128 nu, i128 dn) const {
        i128 e0 = ((i128(a3) * nu + i128(a2) * dn) * nu + i128(a1) * dn * dn) * nu + i128(a0) * dn * dn * dn;
        i128 e1 = (i128(3) * a3 * nu + i128(2) * a2 * dn) * nu + i128(a1) * dn * dn;
        int count = 0, prev = 0;
        const auto push = [&](int sg) {
            if (sg == 0) return;
            if (prev != 0 && sg != prev) ++count;
            prev = sg;
        };
        push(sgn128(e0));
        push(sgn128(e1));
        if (s2x == 0 && s20 == 0) return count;
        push(sgn128(s2x * nu + s20 * dn));
        if (s2x != 0) push(sgn128(s3));
        return count;
    }

    i128 eval_scaled(i128 nu, i128 dn) const {  // p(nu/dn) * dn^3
        return ((i128(a3) * nu + i128(a2) * dn) * nu + i128(a1) * dn * dn) * nu + i128(a0) * dn * dn * dn;
    }
};

/// sign of num^2/den^2 - t2n/t2d; 2 when int128 would overflow.
inline int cmp_sq_vs_t2(i128 num, i128 den, long t2n, long t2d) {
    i128 a, b;
    if (__builtin_mul_overflow(num, num, &a)) return 2;
    if (__builtin_mul_overflow(a, (i128)t2d, &a)) return 2;
    if (__builtin_mul_overflow(den, den, &b)) return 2;
    if (__builtin_mul_overflow(b, (i128)t2n, &b)) return 2;
    return a < b ? -1 : (a > b ? 1 : 0);
}

/// int128 decide on a dyadic interval; nullopt defers to the exact
/// rational path (overflow risk, depth exhausted, or a tie suspected).
inline std::optional<bool> cubic_root_below_i128(const FastParams& f, const CubicChain& ch, SmallRat lo,
                                                 SmallRat hi) {
    if (!f.t2_small) return std::nullopt;
    const auto dyadic_log = [](long d) -> int {
        if (d <= 0 || (d & (d - 1)) != 0) return -1;
        return __builtin_ctzl(static_cast<unsigned long>(d));
    };
    int ka = dyadic_log(lo.dn), kb = dyadic_log(hi.dn);
    if (ka < 0 || kb < 0) return std::nullopt;
    int k = std::max(ka, kb);
    if (k > 18) return std::nullopt;
    i128 c1 = i128(lo.nu) << (k - ka);
    i128 c2 = i128(hi.nu) << (k - kb);
    const i128 lim = i128(1) << 18;
    const i128 A3 = ch.a3, A2 = ch.a2, A1 = ch.a1;
    const i128 vtx_num = i128(3) * A3 * A1 - A2 * A2;  // p'(vertex) * 3 a3
    const i128 vtx_den = i128(3) * A3;
    int sa = sgn128(ch.eval_scaled(c1, i128(1) << k));
    if (sa == 0) return std::nullopt;
    while (k <= 18 && c1 >= -lim && c1 <= lim && c2 >= -lim && c2 <= lim) {
        const i128 twok = i128(1) << k, fourk = twok * twok;
        const i128 e1 = (i128(3) * A3 * c1 + i128(2) * A2 * twok) * c1 + A1 * fourk;
        const i128 e2 = (i128(3) * A3 * c2 + i128(2) * A2 * twok) * c2 + A1 * fourk;
        const bool vertex_in = vtx_den * c1 <= -A2 * twok && -A2 * twok <= vtx_den * c2;
        // p' is an upward parabola: max at an endpoint, min at the vertex
        // when it lies inside.
        const i128 emax = e1 > e2 ? e1 : e2;
        i128 min_num = e1 < e2 ? e1 : e2, min_den = fourk;
        if (vertex_in) {
            min_num = vtx_num;
            min_den = vtx_den;
        }
        int decided = 3;
        if (min_num >= 0) {
            int chi = cmp_sq_vs_t2(emax, fourk, f.t2n_ll, f.t2d_ll);
            int clo = cmp_sq_vs_t2(min_num, min_den, f.t2n_ll, f.t2d_ll);
            if (chi == 2 || clo == 2) return std::nullopt;
            if (chi < 0) decided = 1;
            else if (clo > 0) decided = 0;
        } else if (emax <= 0) {
            int chi = cmp_sq_vs_t2(min_num, min_den, f.t2n_ll, f.t2d_ll);
            int clo = cmp_sq_vs_t2(emax, fourk, f.t2n_ll, f.t2d_ll);
            if (chi == 2 || clo == 2) return std::nullopt;
            if (chi < 0) decided = 1;
            else if (clo > 0) decided = 0;
        } else {
            // p' changes sign: |p'(alpha)|^2 ranges over [0, max of squares]
            int c1s = cmp_sq_vs_t2(min_num, min_den, f.t2n_ll, f.t2d_ll);
            int c2s = cmp_sq_vs_t2(emax, fourk, f.t2n_ll, f.t2d_ll);
            if (c1s == 2 || c2s == 2) return std::nullopt;
            if (c1s < 0 && c2s < 0) decided = 1;
        }
        if (decided != 3) return decided == 1;
        // bisect, keeping the sign change around the root
        c1 <<= 1;
        c2 <<= 1;
        ++k;
        const i128 mid = (c1 + c2) >> 1;
        const int sm = sgn128(ch.eval_scaled(mid, i128(1) << k));
        if (sm == 0) return std::nullopt;
        if (sm != sa)
            c2 = mid;
        else
            c1 = mid;
    }
    return std::nullopt;
}

/// Exact threshold decision for one isolated cubic root via the quadratic
/// range of p' (small mpz arithmetic). Falls back to the generic machinery
/// when a tie keeps the range from separating.
inline bool cubic_root_below(const FastParams& f, const CubicChain& ch, SmallRat lo, SmallRat hi) {
    if (auto fast = cubic_root_below_i128(f, ch, lo, hi)) return *fast;
    // interval endpoints as exact rationals; bisection keeps p sign change
    Rational a{Integer(lo.nu), Integer(lo.dn)};
    Rational b{Integer(hi.nu), Integer(hi.dn)};
    a.canonicalize();
    b.canonicalize();
    IntPolynomial p(std::vector<Integer>{Integer(ch.a0), Integer(ch.a1), Integer(ch.a2), Integer(ch.a3)});
    IntPolynomial dp = p.derivative();
    Rational t2{f.t2n, f.t2d};
    t2.canonicalize();
    Rational vx_num{Integer(-ch.a2), Integer(3) * ch.a3};  // vertex of p'
    vx_num.canonicalize();
    int sa = sgn(p.evaluate(a));
    for (int depth = 0; depth < 80; ++depth) {
        // exact range of p' on [a, b]
        Rational e1 = dp.evaluate(a), e2 = dp.evaluate(b);
        Rational pmin = std::min(e1, e2), pmax = std::max(e1, e2);
        if (a <= vx_num && vx_num <= b) {
            Rational ev = dp.evaluate(vx_num);
            pmin = std::min(pmin, ev);
            pmax = std::max(pmax, ev);
        }
        Rational lo2, hi2;
        if (sgn(pmin) >= 0) {
            lo2 = pmin * pmin;
            hi2 = pmax * pmax;
        } else if (sgn(pmax) <= 0) {
            lo2 = pmax * pmax;
            hi2 = pmin * pmin;
        } else {
            lo2 = 0;
            Rational m1 = pmin * pmin, m2 = pmax * pmax;
            hi2 = std::max(m1, m2);
        }
        if (hi2 < t2) return true;
        if (lo2 > t2) return false;
        Rational mid = (a + b) / 2;
        int sm = sgn(p.evaluate(mid));
        if (sm == 0) {
            // rational root: reducible cubics never reach here
            break;
        }
        if (sm != sa)
            b = mid;
        else {
            a = mid;
            sa = sm;
        }
    }
    // tie or pathological narrowing: settle through the exact machinery
    IsolatedRoot root{p, Enclosure{a, b}};
    Rational v{Integer(f.vn), Integer(f.vd)};
    v.canonicalize();
    Rational cd{Integer(f.cdn), Integer(f.cdd)};
    cd.canonicalize();
    return decide_derivative_threshold_unchecked(p, root, Integer(f.Q), v, cd) == ThresholdDecision::Below;
}

inline bool fast_qualifies_n3(const FastParams& f, long a3, long a2, long a1, long a0,
                              CubicChain& ch) {
    long g = std::gcd(std::gcd(a3, std::abs(a2)), std::gcd(std::abs(a1), std::abs(a0)));
    if (g != 1) return false;
    if (a0 == 0) return false;  // x divides
    ch.build(a3, a2, a1, a0);
    if (!ch.squarefree) return false;  // repeated factor => reducible
    // endpoint roots are rational => reducible
    if (ch.eval_scaled(f.lo.nu, f.lo.dn) == 0 || ch.eval_scaled(f.hi.nu, f.hi.dn) == 0) return false;
    int nroots = ch.variations(f.lo.nu, f.lo.dn) - ch.variations(f.hi.nu, f.hi.dn);
    if (nroots <= 0) return false;

    // irreducibility: no rational root p/q, p | a0, q | a3
    {
        long A0 = std::abs(a0);
        for (long q = 1; q * q <= a3 || q <= 1; ++q) {
            if (a3 % q != 0) continue;
            for (long den : {q, a3 / q}) {
                for (long pdiv = 1; pdiv * pdiv <= A0; ++pdiv) {
                    if (A0 % pdiv != 0) continue;
                    for (long num : {pdiv, A0 / pdiv}) {
                        if (std::gcd(num, den) != 1) continue;
                        if (ch.eval_scaled(num, den) == 0 || ch.eval_scaled(-num, den) == 0) return false;
                    }
                }
                if (q * q == a3) break;
            }
        }
    }

    // threshold screens on sup/inf of |p'| over D (double with margin)
    const double dlo = double(f.lo.nu) / double(f.lo.dn), dhi = double(f.hi.nu) / double(f.hi.dn);
    const double M = std::max(std::abs(dlo), std::abs(dhi));
    const double sup = 3.0 * double(a3) * M * M + 2.0 * std::abs(double(a2)) * M + std::abs(double(a1));
    const double t = double(f.cdn) / double(f.cdd) *
                     std::pow(double(f.Q), double(f.vd - f.vn) / double(f.vd));
    if (sup * (1 + 1e-9) < t * (1 - 1e-9)) return true;  // all roots below threshold
    double inf;
    {
        const double e1 = 3.0 * a3 * dlo * dlo + 2.0 * a2 * dlo + a1;
        const double e2 = 3.0 * a3 * dhi * dhi + 2.0 * a2 * dhi + a1;
        const double vx = -double(a2) / (3.0 * a3);
        double mn = std::min(std::abs(e1), std::abs(e2));
        if (vx >= dlo && vx <= dhi) {
            const double ev = 3.0 * a3 * vx * vx + 2.0 * a2 * vx + a1;
            mn = std::min(mn, std::abs(ev));
            if ((e1 <= 0 && 0 <= e2) || (e2 <= 0 && 0 <= e1) || (ev <= 0) != (e1 <= 0)) mn = 0.0;
        } else if ((e1 <= 0) != (e2 <= 0)) {
            mn = 0.0;
        }
        inf = mn;
    }
    if (inf * (1 - 1e-9) > t * (1 + 1e-9)) return false;  // no root can qualify

    // isolate each root in D by Sturm bisection at dyadic points, then
    // decide per root exactly
    struct Seg {
        SmallRat a, b;
        int cnt;
        int depth;
    };
    std::vector<Seg> work;
    work.push_back({f.lo, f.hi, nroots, 0});
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        if (s.cnt == 1) {
            if (cubic_root_below(f, ch, s.a, s.b)) return true;
            continue;
        }
        if (s.depth > 40) {
            // give up on the specialised path for this polynomial
            IntPolynomial p(std::vector<Integer>{Integer(a0), Integer(a1), Integer(a2), Integer(a3)});
            CensusQuery q;
            q.n = 3;
            q.q = Integer(f.Q);
            q.v = Rational{Integer(f.vn), Integer(f.vd)};
            q.v.canonicalize();
            q.cd = Rational{Integer(f.cdn), Integer(f.cdd)};
            q.cd.canonicalize();
            q.domain = Enclosure{Rational{Integer(f.lo.nu), Integer(f.lo.dn)}, Rational{Integer(f.hi.nu), Integer(f.hi.dn)}};
            q.allow_wide_domain = true;
            QueryContext sub(q, false);
            return generic_qualifies(sub, p);
        }
        // midpoint (a + b) / 2 in lowest small terms
        i128 mn = i128(s.a.nu) * s.b.dn + i128(s.b.nu) * s.a.dn;
        i128 md = i128(2) * s.a.dn * s.b.dn;
        // reduce by gcd to keep magnitudes in range
        i128 gg = mn < 0 ? -mn : mn;
        i128 hh = md;
        while (hh) {
            i128 tt = gg % hh;
            gg = hh;
            hh = tt;
        }
        if (gg > 1) {
            mn /= gg;
            md /= gg;
        }
        if (md > (i128(1) << 35) || mn > (i128(1) << 35) || -mn > (i128(1) << 35)) {
            IntPolynomial p(std::vector<Integer>{Integer(a0), Integer(a1), Integer(a2), Integer(a3)});
            CensusQuery q;
            q.n = 3;
            q.q = Integer(f.Q);
            q.v = Rational{Integer(f.vn), Integer(f.vd)};
            q.v.canonicalize();
            q.cd = Rational{Integer(f.cdn), Integer(f.cdd)};
            q.cd.canonicalize();
            q.domain = Enclosure{Rational{Integer(f.lo.nu), Integer(f.lo.dn)}, Rational{Integer(f.hi.nu), Integer(f.hi.dn)}};
            q.allow_wide_domain = true;
            QueryContext sub(q, false);
            return generic_qualifies(sub, p);
        }
        SmallRat mid{static_cast<long>(mn), static_cast<long>(md)};
        if (ch.eval_scaled(mid.nu, mid.dn) == 0) return false;  // rational root: reducible
        int vm = ch.variations(mid.nu, mid.dn);
        int va = ch.variations(s.a.nu, s.a.dn);
        int vb = ch.variations(s.b.nu, s.b.dn);
        int left = va - vm, right = vm - vb;
        if (left > 0) work.push_back({s.a, mid, left, s.depth + 1});
        if (right > 0) work.push_back({mid, s.b, right, s.depth + 1});
    }
    return false;
}

}  // namespace detail

namespace detail {

struct RunState {
    const QueryContext& ctx;
    FastParams fast;
    bool use_fast;
    std::uint64_t seed;
};

inline void scan_slice(const RunState& rs, long an, Partial& out, std::size_t sample_cap) {
    const QueryContext& ctx = rs.ctx;
    const int n = ctx.query.n;
    const long Q = ctx.query.q.get_si();
    std::vector<long> c(static_cast<std::size_t>(n) + 1);
    c[static_cast<std::size_t>(n)] = static_cast<long>(an);

    const auto record = [&](const std::vector<long>& coeffs) {
        ++out.count;
        if (ctx.histogram) {
            std::vector<Integer> ic(coeffs.size());
            for (std::size_t i = 0; i < coeffs.size(); ++i) ic[i] = coeffs[i];
            IntPolynomial p{std::move(ic)};
            auto cells = generic_cells(ctx, p);
            if (cells.empty()) throw internal_error("census: counted polynomial has no qualifying cell");
            for (auto idx : cells) {
                ++out.cells[idx];
                ++out.pair_count;
            }
        }
        if (sample_cap > 0) {
            SampleEntry e{sample_key(rs.seed, coeffs), coeffs};
            out.sample.push_back(e);
            std::push_heap(out.sample.begin(), out.sample.end());
            if (out.sample.size() > sample_cap) {
                std::pop_heap(out.sample.begin(), out.sample.end());
                out.sample.pop_back();
            }
        }
    };

    if (rs.use_fast && n == 2) {
        for (long b = -Q; b <= Q; ++b) {
            for (long c0 = -Q; c0 <= Q; ++c0) {
                if (fast_qualifies_n2(rs.fast, an, b, c0)) {
                    c[1] = static_cast<long>(b);
                    c[0] = static_cast<long>(c0);
                    record(c);
                }
            }
        }
        return;
    }
    if (rs.use_fast && n == 3) {
        CubicChain ch;
        for (long a2 = -Q; a2 <= Q; ++a2)
            for (long a1 = -Q; a1 <= Q; ++a1)
                for (long a0 = -Q; a0 <= Q; ++a0) {
                    if (fast_qualifies_n3(rs.fast, an, a2, a1, a0, ch)) {
                        c[2] = static_cast<long>(a2);
                        c[1] = static_cast<long>(a1);
                        c[0] = static_cast<long>(a0);
                        record(c);
                    }
                }
        return;
    }

    // generic odometer over a_{n-1} ... a_0
    std::vector<long> lower(static_cast<std::size_t>(n), static_cast<long>(-Q));
    while (true) {
        for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = lower[static_cast<std::size_t>(i)];
        std::vector<Integer> ic(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) ic[i] = c[i];
        IntPolynomial p{std::move(ic)};
        if (generic_qualifies(ctx, p)) record(c);
        int i = n - 1;
        for (; i >= 0; --i) {
            if (lower[static_cast<std::size_t>(i)] < Q) {
                ++lower[static_cast<std::size_t>(i)];
                break;
            }
            lower[static_cast<std::size_t>(i)] = static_cast<long>(-Q);
        }
        if (i < 0) break;
    }
}

inline CensusRecord census_run(const CensusQuery& query, const CensusOptions& opts, bool with_histogram) {
    const auto t0 = std::chrono::steady_clock::now();
    QueryContext ctx(query, with_histogram);
    const long Q = query.q.get_si();

    Integer tuples = Integer(Q) * pow_int(Integer(2 * Q + 1), static_cast<unsigned long>(query.n));
    if (tuples > Integer(static_cast<unsigned long>(opts.budget)))
        throw budget_error("census: (2Q+1)^n * Q = " + tuples.get_str() + " exceeds the budget of " +
                           std::to_string(opts.budget) + " tuples");

    RunState rs{ctx, FastParams::build(ctx), false, 0x5eedC0de ^ static_cast<std::uint64_t>(query.n)};
    rs.use_fast = rs.fast.usable && !opts.force_generic;

    const std::size_t slices = static_cast<std::size_t>(Q);
    std::vector<Partial> partials(slices);
    if (ctx.histogram)
        for (auto& p : partials) p.cells.assign(ctx.cell_count, 0);
    const std::size_t sample_cap = opts.spot_check ? std::max<std::size_t>(4, kSpotCheckSize / slices + 2) : 0;

    const unsigned jobs = std::max(1u, opts.jobs);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mu;
    const auto worker = [&] {
        try {
            while (true) {
                std::size_t slice = next.fetch_add(1);
                if (slice >= slices) return;
                scan_slice(rs, static_cast<long>(slice) + 1, partials[slice], sample_cap);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(err_mu);
            if (!first_error) first_error = std::current_exception();
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    CensusRecord rec;
    rec.query = query;
    rec.enumerated = static_cast<std::uint64_t>(tuples.get_ui());
    rec.cells = ctx.cell_count;
    if (ctx.histogram) rec.histogram.assign(ctx.cell_count, 0);
    std::vector<SampleEntry> sample;
    for (const auto& p : partials) {
        rec.count += p.count;
        rec.pair_count += p.pair_count;
        if (ctx.histogram)
            for (std::size_t i = 0; i < ctx.cell_count; ++i) rec.histogram[i] += p.cells[i];
        sample.insert(sample.end(), p.sample.begin(), p.sample.end());
    }
    if (!ctx.histogram) rec.pair_count = rec.count;

    if (opts.spot_check && !sample.empty()) {
        std::sort(sample.begin(), sample.end());
        if (sample.size() > kSpotCheckSize) sample.resize(kSpotCheckSize);
        for (const auto& e : sample) {
            std::vector<Integer> ic(e.coeffs.size());
            for (std::size_t i = 0; i < e.coeffs.size(); ++i) ic[i] = e.coeffs[i];
            IntPolynomial p{std::move(ic)};
            if (!generic_qualifies(ctx, p))
                throw internal_error("census: spot-check re-verification failed for " + p.to_human());
        }
    }

    rec.elapsed_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

}  // namespace detail

/// Exact count of P_n(Q, v, D).
inline CensusRecord census_count(const CensusQuery& query, const CensusOptions& opts = {}) {
    return detail::census_run(query, opts, false);
}

/// The members themselves, in lexicographic enumeration order; feeds the
/// pigeonhole-difference experiment. Guarded by the same tuple budget.
inline std::vector<IntPolynomial> census_members(const CensusQuery& query, const CensusOptions& opts = {}) {
    detail::QueryContext ctx(query, false);
    const long Q = query.q.get_si();
    Integer tuples = Integer(Q) * pow_int(Integer(2 * Q + 1), static_cast<unsigned long>(query.n));
    if (tuples > Integer(static_cast<unsigned long>(opts.budget)))
        throw budget_error("census_members: enumeration exceeds the tuple budget");
    std::vector<IntPolynomial> out;
    std::vector<long> c(static_cast<std::size_t>(query.n) + 1);
    for (long an = 1; an <= Q; ++an) {
        c[static_cast<std::size_t>(query.n)] = an;
        std::vector<long> lower(static_cast<std::size_t>(query.n), -Q);
        while (true) {
            for (int i = 0; i < query.n; ++i) c[static_cast<std::size_t>(i)] = lower[static_cast<std::size_t>(i)];
            std::vector<Integer> ic(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) ic[i] = c[i];
            IntPolynomial p{std::move(ic)};
            if (detail::generic_qualifies(ctx, p)) out.push_back(p);
            int i = query.n - 1;
            for (; i >= 0; --i) {
                if (lower[static_cast<std::size_t>(i)] < Q) {
                    ++lower[static_cast<std::size_t>(i)];
                    break;
                }
                lower[static_cast<std::size_t>(i)] = -Q;
            }
            if (i < 0) break;
        }
    }
    return out;
}

/// Count plus the per-cell histogram over the Q^-v partition of D.
inline CensusRecord census_histogram(const CensusQuery& query, const CensusOptions& opts = {}) {
    return detail::census_run(query, opts, true);
}

/// Least-squares fit of log(count) against log(Q).
struct ExponentFit {
    std::vector<std::pair<double, double>> points;  // (Q, count)
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

inline ExponentFit exponent_fit(const std::vector<CensusRecord>& records) {
    if (records.size() < 3) throw validation_error("exponent_fit: need at least 3 records");
    for (const auto& r : records) {
        if (r.count == 0) throw validation_error("exponent_fit: zero count at Q = " + r.query.q.get_str());
        if (r.query.n != records[0].query.n || r.query.v != records[0].query.v ||
            !(r.query.domain == records[0].query.domain) || r.query.cd != records[0].query.cd)
            throw validation_error("exponent_fit: records disagree on (n, v, D, cd)");
        for (const auto& s : records)
            if (&s != &r && s.query.q == r.query.q)
                throw validation_error("exponent_fit: duplicate Q = " + r.query.q.get_str());
    }
    ExponentFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(records.size());
    for (const auto& r : records) {
        double x = std::log(mpz_get_d(r.query.q.get_mpz_t()));
        double y = std::log(static_cast<double>(r.count));
        fit.points.emplace_back(mpz_get_d(r.query.q.get_mpz_t()), static_cast<double>(r.count));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / m;
    double ss = 0;
    for (const auto& r : records) {
        double x = std::log(mpz_get_d(r.query.q.get_mpz_t()));
        double y = std::log(static_cast<double>(r.count));
        double e = y - (fit.slope * x + fit.intercept);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / m);
    return fit;
}

}  // namespace algcensus
