#pragma once

// Independent brute-force oracle for the degree-2 census on I0 = [-1/2, 1/2]
// with integer v: enumerates all leading-positive coefficient tuples,
// filters primitive/irreducible by gcd and discriminant, and locates roots
// through the quadratic formula in exact integer arithmetic. Kept free of
// the library's isolation/threshold machinery on purpose.

#include <cstdint>
#include <numeric>

namespace oracle {

// sqrt(disc) <= r and sqrt(disc) >= r for integer r, disc > 0 non-square
inline bool sqrt_le_int(long disc, long r) { return r >= 0 && disc <= r * r; }
inline bool sqrt_ge_int(long disc, long r) { return r <= 0 || disc >= r * r; }

/// #P_2(Q, v, I0) for v in {0, 1}.
inline std::uint64_t census_n2_i0(long Q, int v) {
    std::uint64_t count = 0;
    const long T = v == 0 ? Q : 1;  // threshold Q^(1-v)
    for (long a = 1; a <= Q; ++a)
        for (long b = -Q; b <= Q; ++b)
            for (long c = -Q; c <= Q; ++c) {
                if (std::gcd(std::gcd(a, std::abs(b)), std::abs(c)) != 1) continue;
                const long disc = b * b - 4 * a * c;
                if (disc <= 0) continue;
                long s = static_cast<long>(std::sqrt(double(disc)));
                while (s * s > disc) --s;
                while ((s + 1) * (s + 1) <= disc) ++s;
                if (s * s == disc) continue;  // rational roots
                if (disc >= T * T) continue;  // |P'(alpha)| = sqrt(disc) < T fails
                // roots (-b +- sqrt(disc)) / 2a inside [-1/2, 1/2]
                const bool plus_in = sqrt_ge_int(disc, b - a) && sqrt_le_int(disc, b + a);
                const bool minus_in = sqrt_le_int(disc, a - b) && sqrt_ge_int(disc, -(a + b));
                if (plus_in || minus_in) ++count;
            }
    return count;
}

}  // namespace oracle
