#pragma once

// Brute-force bounded-height factor search: an oracle independent of the
// library's root-recombination path. A divisor of degree 1..deg/2 is
// searched inside the Mignotte height bound, constrained only by exact
// divisibility of the leading/constant coefficients; found divisors are
// split off recursively.

#include <optional>
#include <vector>

#include "algcensus/factor.hpp"
#include "algcensus/int_polynomial.hpp"

namespace oracle {

using namespace algcensus;

inline std::vector<Integer> divisors_of(const Integer& v) {
    std::vector<Integer> out;
    Integer a = abs(v);
    for (Integer i(1); i * i <= a; ++i)
        if (a % i == 0) {
            out.push_back(i);
            if (i * i != a) out.push_back(a / i);
        }
    return out;
}

/// Smallest-degree nontrivial primitive divisor (positive leading
/// coefficient), or nullopt when u is irreducible. u must be primitive
/// square-free with positive leading coefficient and u(0) != 0.
inline std::optional<IntPolynomial> find_divisor(const IntPolynomial& u) {
    const int d = u.degree();
    Integer b2 = factor_height_bound_squared(u);
    Integer bound;
    mpz_sqrt(bound.get_mpz_t(), b2.get_mpz_t());
    const long B = static_cast<long>(bound.get_si());
    auto lead = divisors_of(u.leading());
    auto tail = divisors_of(u.coeff(0));
    for (int dg = 1; dg <= d / 2; ++dg) {
        for (const Integer& gl : lead)
            for (const Integer& gt : tail)
                for (int ts = -1; ts <= 1; ts += 2) {
                    std::vector<Integer> c(static_cast<std::size_t>(dg) + 1);
                    c[0] = ts < 0 ? Integer(-gt) : gt;
                    c[static_cast<std::size_t>(dg)] = gl;
                    std::vector<long> mid(static_cast<std::size_t>(dg > 0 ? dg - 1 : 0), -B);
                    while (true) {
                        for (int i = 0; i + 1 < dg; ++i) c[static_cast<std::size_t>(i + 1)] = Integer(mid[static_cast<std::size_t>(i)]);
                        IntPolynomial cand{std::vector<Integer>(c)};
                        if (cand.degree() == dg) {
                            auto pp = cand.primitive_part();
                            if (sgn(pp.leading()) < 0) pp = -pp;
                            if (divide_exact(u, pp)) return pp;
                        }
                        int i = 0;
                        for (; i + 1 < dg; ++i) {
                            if (mid[static_cast<std::size_t>(i)] < B) {
                                ++mid[static_cast<std::size_t>(i)];
                                break;
                            }
                            mid[static_cast<std::size_t>(i)] = -B;
                        }
                        if (i + 1 >= dg) break;
                    }
                }
    }
    return std::nullopt;
}

/// Full decomposition by repeated brute-force divisor search.
inline FactorDecomposition factorize(const IntPolynomial& p) {
    FactorDecomposition out;
    auto [content, pp] = p.content_and_primitive();
    out.content = content;
    out.sign = sgn(pp.leading()) < 0 ? -1 : 1;
    if (out.sign < 0) pp = -pp;
    std::vector<IntPolynomial> primes;
    // x factors first
    while (pp.degree() >= 1 && pp.coeff(0) == 0) {
        primes.push_back(IntPolynomial({0, 1}));
        pp = *divide_exact(pp, IntPolynomial({0, 1}));
    }
    std::vector<IntPolynomial> work;
    if (pp.degree() >= 1) work.push_back(pp);
    while (!work.empty()) {
        IntPolynomial u = work.back();
        work.pop_back();
        if (u.degree() == 1) {
            primes.push_back(u.primitive_part());
            continue;
        }
        auto div = find_divisor(u);
        if (!div) {
            primes.push_back(u.primitive_part());
            continue;
        }
        work.push_back(*div);
        work.push_back(*divide_exact(u, *div));
    }
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        out.factors.emplace_back(primes[i], static_cast<unsigned>(j - i));
        i = j;
    }
    return out;
}

}  // namespace oracle
