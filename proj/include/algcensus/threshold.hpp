#pragma once

#include "algcensus/factor.hpp"
#include "algcensus/real_roots.hpp"

namespace algcensus {

/// Exact decision of |p'(alpha)| < cd * Q^(1-v) at the isolated root alpha
/// of the irreducible polynomial p. The enclosure of |p'(alpha)| is refined
/// until it excludes the threshold; below the 10^-40 width floor an exact
/// tie test settles equality, and a proven tie counts as NotBelow (the
/// census condition is a strict inequality).
inline ThresholdDecision decide_derivative_threshold(const IntPolynomial& p, const IsolatedRoot& root,
                                                     const Integer& Q, const Rational& v,
                                                     const Rational& cd = Rational(1)) {
    detail::validate_threshold_query(Q, v, cd);
    if (!is_irreducible(p))
        throw validation_error("decide_derivative_threshold: p must be irreducible (minimal polynomial)");
    return detail::decide_derivative_threshold_unchecked(p, root, Q, v, cd);
}

}  // namespace algcensus
