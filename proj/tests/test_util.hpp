#pragma once

#include <vector>

#include "algcensus/int_polynomial.hpp"
#include "algcensus/rng.hpp"

namespace testutil {

using namespace algcensus;

inline IntPolynomial random_poly(SplitMix64& rng, int degree, long height_max) {
    std::vector<Integer> c(static_cast<std::size_t>(degree) + 1);
    for (int i = 0; i < degree; ++i) c[static_cast<std::size_t>(i)] = Integer(rng.range(-height_max, height_max));
    long lead = rng.range(1, height_max);
    c[static_cast<std::size_t>(degree)] = Integer(rng.coin() ? lead : -lead);
    return IntPolynomial(std::move(c));
}

inline IntPolynomial random_nonzero_poly(SplitMix64& rng, int degree_max, long height_max) {
    int d = static_cast<int>(rng.range(0, degree_max));
    return random_poly(rng, d, height_max);
}

inline Rational random_rational_in_unit(SplitMix64& rng, long den_max) {
    long den = rng.range(1, den_max);
    long num = rng.range(-den / 2, den / 2);
    Rational r{Integer(num), Integer(den)};
    r.canonicalize();
    return r;
}

}  // namespace testutil
