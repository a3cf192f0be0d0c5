#include <catch2/catch_amalgamated.hpp>

#include "algcensus/matrix.hpp"
#include "algcensus/rng.hpp"

using namespace algcensus;

namespace {

RationalMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    RationalMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c];
    return m;
}

// independent oracle: cofactor expansion along the first row
Rational det_cofactor(const RationalMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m.at(0, 0);
    Rational acc(0);
    for (std::size_t c = 0; c < n; ++c) {
        if (m.at(0, c) == 0) continue;
        RationalMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == c) continue;
                minor.at(r - 1, cc++) = m.at(r, k);
            }
        }
        Rational term = m.at(0, c) * det_cofactor(minor);
        if (c % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

RationalMatrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols) {
    RationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            Rational v{Integer(rng.range(-9, 9)), Integer(rng.range(1, 4))};
            v.canonicalize();
            m.at(r, c) = v;
        }
    return m;
}

}  // namespace

TEST_CASE("determinant basics") {
    CHECK(determinant(from_rows({{1, 2}, {3, 4}})) == -2);
    CHECK(determinant(RationalMatrix::identity(3)) == 1);
    CHECK(determinant(from_rows({{1, 2}, {2, 4}})) == 0);
    CHECK_THROWS_AS(determinant(RationalMatrix(2, 3)), validation_error);
}

TEST_CASE("determinant agrees with cofactor expansion up to 4x4") {
    SplitMix64 rng(123);
    for (std::size_t n = 1; n <= 4; ++n)
        for (int trial = 0; trial < 60; ++trial) {
            auto m = random_matrix(rng, n, n);
            CHECK(determinant(m) == det_cofactor(m));
        }
}

TEST_CASE("permanent basics") {
    CHECK(permanent(from_rows({{1, 2}, {3, 4}})) == 10);
    CHECK(permanent(from_rows({{2, 3}})) == 5);
    CHECK(permanent(RationalMatrix::identity(3)) == 1);
}

TEST_CASE("permanent is transpose-invariant") {
    SplitMix64 rng(321);
    for (int trial = 0; trial < 60; ++trial) {
        auto m = random_matrix(rng, static_cast<std::size_t>(rng.range(1, 4)), static_cast<std::size_t>(rng.range(1, 4)));
        CHECK(permanent(m) == permanent(transpose(m)));
    }
}

TEST_CASE("Ryser equals the naive permutation sum through size 5") {
    SplitMix64 rng(777);
    for (std::size_t n = 1; n <= 5; ++n)
        for (int trial = 0; trial < 25; ++trial) {
            auto m = random_matrix(rng, n, n);
            CHECK(permanent(m) == permanent_naive(m));
        }
}

TEST_CASE("nonnegative permanent dominates the diagonal product") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = static_cast<std::size_t>(rng.range(1, 5));
        RationalMatrix m(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) m.at(r, c) = Rational(Integer(rng.range(0, 6)));
        Rational diag(1);
        for (std::size_t i = 0; i < n; ++i) diag *= m.at(i, i);
        CHECK(permanent(m) >= diag);
    }
}
