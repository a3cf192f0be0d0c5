#include <catch2/catch_amalgamated.hpp>

#include "algcensus/resultant.hpp"
#include "test_util.hpp"

using namespace algcensus;

namespace {
IntPolynomial P(const std::string& s) { return IntPolynomial::parse(s); }

RationalMatrix rows_of(const std::vector<std::vector<long>>& rows) {
    RationalMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c];
    return m;
}

std::pair<IntPolynomial, IntPolynomial> random_coprime_pair(SplitMix64& rng, int deg_max, long h_max) {
    while (true) {
        auto p1 = testutil::random_poly(rng, static_cast<int>(rng.range(1, deg_max)), h_max);
        auto p2 = testutil::random_poly(rng, static_cast<int>(rng.range(1, deg_max)), h_max);
        if (resultant(p1, p2) != 0) return {p1, p2};
    }
}
}  // namespace

TEST_CASE("classic Sylvester layout (golden)") {
    CHECK(sylvester_classic(P("x-1"), P("x+1")) == rows_of({{1, -1}, {1, 1}}));
    CHECK(sylvester_classic(P("x-1"), P("x^2-2")) == rows_of({{1, -1, 0}, {0, 1, -1}, {1, 0, -2}}));
    CHECK(determinant(sylvester_classic(P("x"), P("x"))) == 0);
    CHECK_THROWS_AS(sylvester_classic(P("3"), P("x")), validation_error);
}

TEST_CASE("resultant values") {
    CHECK(resultant(P("x-1"), P("x+1")) == 2);
    CHECK(resultant(P("x-1"), P("x^2-2")) == -1);
    CHECK(resultant(P("x^2-1"), P("x-1")) == 0);
}

TEST_CASE("shifted Sylvester layout (golden)") {
    {
        auto m = sylvester_shifted(P("x-1"), P("x+1"), Rational(0));
        CHECK(m == rows_of({{-1, 1}, {1, 1}}));
    }
    {
        auto m = sylvester_shifted(P("x-1"), P("x+1"), parse_rational("1/2"));
        RationalMatrix want(2, 2);
        want.at(0, 0) = parse_rational("-1/2");
        want.at(0, 1) = 1;
        want.at(1, 0) = parse_rational("3/2");
        want.at(1, 1) = 1;
        CHECK(m == want);
    }
    CHECK(sylvester_shifted(P("x-1"), P("x^2-2"), Rational(0)) ==
          rows_of({{-1, 1, 0}, {0, -1, 1}, {-2, 0, 1}}));
}

TEST_CASE("shifted resultant values") {
    CHECK(resultant_shifted(P("x-1"), P("x+1"), parse_rational("1/2")) == -2);
    CHECK(resultant_shifted(P("x-1"), P("x^2-2"), Rational(0)) == -1);
    CHECK(resultant_shifted(P("x^2-1"), P("x-1"), parse_rational("1/3")) == 0);
}

TEST_CASE("xi-invariance: |shifted determinant| equals |resultant|") {
    SplitMix64 rng(1001);
    for (int trial = 0; trial < 120; ++trial) {
        auto [p1, p2] = random_coprime_pair(rng, 5, 12);
        Integer res = resultant(p1, p2);
        for (int k = 0; k < 4; ++k) {
            Rational xi = testutil::random_rational_in_unit(rng, 16);
            Rational det = resultant_shifted(p1, p2, xi);
            CHECK(abs(det) == Rational(abs(res)));
        }
    }
}

TEST_CASE("sign ratio depends only on the degrees: -1 iff both odd") {
    SplitMix64 rng(2002);
    for (int trial = 0; trial < 150; ++trial) {
        auto [p1, p2] = random_coprime_pair(rng, 4, 9);
        Rational xi = testutil::random_rational_in_unit(rng, 10);
        Rational det = resultant_shifted(p1, p2, xi);
        Integer res = resultant(p1, p2);
        int eps = resultant_sign_ratio(p1.degree(), p2.degree());
        CHECK(det == Rational(res) * eps);
    }
}

TEST_CASE("resultant vanishes exactly when the gcd is non-constant") {
    SplitMix64 rng(3003);
    for (int trial = 0; trial < 120; ++trial) {
        auto p1 = testutil::random_poly(rng, static_cast<int>(rng.range(1, 4)), 6);
        auto p2 = testutil::random_poly(rng, static_cast<int>(rng.range(1, 4)), 6);
        bool zero = resultant(p1, p2) == 0;
        bool common = gcd(p1, p2).degree() >= 1;
        CHECK(zero == common);
    }
    // injected common factor
    auto f = P("x^2+x+1");
    CHECK(resultant(f * P("x-2"), f * P("x+5")) == 0);
}

TEST_CASE("PRS resultant equals the determinant route") {
    SplitMix64 rng(4004);
    for (int trial = 0; trial < 200; ++trial) {
        auto p1 = testutil::random_poly(rng, static_cast<int>(rng.range(1, 5)), 15);
        auto p2 = testutil::random_poly(rng, static_cast<int>(rng.range(1, 5)), 15);
        CHECK(resultant(p1, p2) == resultant_prs(p1, p2));
    }
}

TEST_CASE("coprime integer polynomials have |Res| >= 1") {
    SplitMix64 rng(5005);
    for (int trial = 0; trial < 100; ++trial) {
        auto [p1, p2] = random_coprime_pair(rng, 4, 8);
        CHECK(abs(resultant(p1, p2)) >= 1);
    }
}
