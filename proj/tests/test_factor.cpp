#include <catch2/catch_amalgamated.hpp>

#include "algcensus/factor.hpp"
#include "oracle_factor.hpp"
#include "test_util.hpp"

using namespace algcensus;

namespace {
IntPolynomial P(const std::string& s) { return IntPolynomial::parse(s); }

bool same_decomposition(const FactorDecomposition& a, const FactorDecomposition& b) {
    return a.sign == b.sign && a.content == b.content && a.factors == b.factors;
}
}  // namespace

TEST_CASE("irreducibility shortcuts") {
    CHECK(is_irreducible(P("x^2+x+1")));
    CHECK(!is_irreducible(P("x^2-1")));
    CHECK(is_irreducible(P("x^3-2")));
    CHECK(is_irreducible(P("x-7")));
    CHECK(!is_irreducible(P("x^2-4x+4")));
    CHECK(!is_irreducible(P("x^3+x")));
    CHECK_THROWS_AS(is_irreducible(P("2x^2+2")), validation_error);
    CHECK_THROWS_AS(is_irreducible(IntPolynomial()), validation_error);
}

TEST_CASE("factorize the spec examples") {
    {
        auto f = factorize(P("x^3-x^2+x-1"));
        REQUIRE(f.factors.size() == 2);
        CHECK(f.sign == 1);
        CHECK(f.content == 1);
        CHECK(f.factors[0] == std::make_pair(P("x-1"), 1u));
        CHECK(f.factors[1] == std::make_pair(P("x^2+1"), 1u));
    }
    {
        auto f = factorize(P("x^4+2x^2+1"));
        REQUIRE(f.factors.size() == 1);
        CHECK(f.factors[0] == std::make_pair(P("x^2+1"), 2u));
    }
    {
        auto f = factorize(P("6x^2-6"));
        CHECK(f.sign == 1);
        CHECK(f.content == 6);
        REQUIRE(f.factors.size() == 2);
        CHECK(f.factors[0] == std::make_pair(P("x-1"), 1u));
        CHECK(f.factors[1] == std::make_pair(P("x+1"), 1u));
    }
    CHECK_THROWS_AS(factorize(IntPolynomial()), validation_error);
    CHECK_THROWS_AS(factorize(IntPolynomial::monomial(Integer(1), 17)), validation_error);
}

TEST_CASE("quartics that need complex-root recombination") {
    {
        auto f = factorize(P("x^4-5x^2+6"));  // (x^2-2)(x^2-3)
        REQUIRE(f.factors.size() == 2);
        CHECK(f.factors[0] == std::make_pair(P("x^2-3"), 1u));
        CHECK(f.factors[1] == std::make_pair(P("x^2-2"), 1u));
    }
    CHECK(is_irreducible(P("x^4+1")));
    CHECK(is_irreducible(P("x^4+x+1")));
    CHECK(is_irreducible(P("x^4-10x^2+1")));  // reducible mod every prime
    {
        auto f = factorize(P("x^4-1"));
        REQUIRE(f.factors.size() == 3);
    }
    {
        // negative leading coefficient and content
        auto f = factorize(P("-4x^4+4"));
        CHECK(f.sign == -1);
        CHECK(f.content == 4);
        CHECK(f.expand() == P("-4x^4+4"));
    }
}

TEST_CASE("higher-degree factorizations verify by expansion") {
    auto p = P("x^2+x+1") * P("x^3-2") * P("x-1") * P("x-1");
    auto f = factorize(p);
    CHECK(f.expand() == p);
    REQUIRE(f.factors.size() == 3);
    bool saw_sq = false;
    for (const auto& [base, e] : f.factors)
        if (base == P("x-1")) {
            CHECK(e == 2);
            saw_sq = true;
        }
    CHECK(saw_sq);
}

TEST_CASE("prime power divisors") {
    {
        auto p = P("x-1") * P("x-1") * P("x+2");
        auto t = prime_power_divisors(p);
        REQUIRE(t.size() == 2);
        CHECK(t[0] == P("x^2-2x+1"));
        CHECK(t[1] == P("x+2"));
    }
    {
        auto t = prime_power_divisors(P("x^3-2"));
        REQUIRE(t.size() == 1);
        CHECK(t[0] == P("x^3-2"));
    }
    {
        auto t = prime_power_divisors(P("x^2-1"));
        REQUIRE(t.size() == 2);
        CHECK(t[0] == P("x-1"));
        CHECK(t[1] == P("x+1"));
    }
    CHECK_THROWS_AS(prime_power_divisors(P("2x^2+2")), validation_error);
}

TEST_CASE("factorization round-trips on random products") {
    SplitMix64 rng(1212);
    for (int trial = 0; trial < 60; ++trial) {
        IntPolynomial p = IntPolynomial::constant(Integer(rng.range(-4, 4)));
        if (p.is_zero()) p = IntPolynomial::constant(1);
        int parts = static_cast<int>(rng.range(1, 3));
        for (int i = 0; i < parts; ++i) p = p * testutil::random_poly(rng, static_cast<int>(rng.range(1, 3)), 5);
        if (p.is_zero() || p.degree() > 16) continue;
        auto f = factorize(p);
        CHECK(f.expand() == p);
        for (const auto& [base, e] : f.factors) {
            CHECK(sgn(base.leading()) > 0);
            CHECK(base.content_and_primitive().first == 1);
            CHECK(is_irreducible(base));
            CHECK(e >= 1);
        }
        for (std::size_t i = 0; i + 1 < f.factors.size(); ++i)
            CHECK(!(f.factors[i].first == f.factors[i + 1].first));
    }
}

TEST_CASE("is_irreducible matches factor count") {
    SplitMix64 rng(1313);
    for (int trial = 0; trial < 80; ++trial) {
        auto p = testutil::random_poly(rng, static_cast<int>(rng.range(1, 4)), 6);
        auto [c, pp] = p.content_and_primitive();
        if (pp.is_zero() || pp.degree() < 1) continue;
        auto f = factorize(pp);
        bool irr = f.factors.size() == 1 && f.factors[0].second == 1;
        CHECK(is_irreducible(pp) == irr);
    }
}

TEST_CASE("agreement with the brute-force oracle (sample)") {
    SplitMix64 rng(1414);
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        auto p = testutil::random_poly(rng, static_cast<int>(rng.range(1, 4)), 3);
        if (p.content_and_primitive().first != 1) continue;
        ++checked;
        CHECK(same_decomposition(factorize(p), oracle::factorize(p)));
    }
    CHECK(checked > 40);
}
