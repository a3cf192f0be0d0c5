#include <catch2/catch_amalgamated.hpp>

#include "algcensus/int_polynomial.hpp"
#include "test_util.hpp"

using namespace algcensus;

namespace {
IntPolynomial P(const std::string& s) { return IntPolynomial::parse(s); }
}  // namespace

TEST_CASE("height is the max absolute coefficient") {
    CHECK(P("3x^2-5x+1").height() == 5);
    CHECK(IntPolynomial().height() == 0);
    CHECK(P("x^5").height() == 1);
}

TEST_CASE("content and primitive part") {
    {
        auto [c, q] = P("2x^2+4").content_and_primitive();
        CHECK(c == 2);
        CHECK(q == P("x^2+2"));
    }
    {
        auto [c, q] = P("x-1").content_and_primitive();
        CHECK(c == 1);
        CHECK(q == P("x-1"));
    }
    {
        // sign convention: the primitive part keeps the leading sign
        auto [c, q] = P("-6x+9").content_and_primitive();
        CHECK(c == 3);
        CHECK(q == P("-2x+3"));
    }
    CHECK_THROWS_AS(IntPolynomial().content_and_primitive(), validation_error);
}

TEST_CASE("evaluation at rational points") {
    CHECK(P("x^2-2").evaluate(parse_rational("3/2")) == parse_rational("1/4"));
    CHECK(P("7x^3-4x+9").evaluate(Rational(0)) == 9);
    CHECK(P("x-1").evaluate(Rational(1)) == 0);
}

TEST_CASE("derivatives of any order") {
    CHECK(P("x^3").derivative() == P("3x^2"));
    CHECK(P("x^3").derivative(4).is_zero());
    CHECK(P("5x^2-x").derivative(2) == P("10"));
}

TEST_CASE("multiplication") {
    CHECK(P("x-1") * P("x+1") == P("x^2-1"));
    CHECK(P("4x^3-x+2") * P("1") == P("4x^3-x+2"));
    CHECK(P("x^2+1") * P("x^2+1") == P("x^4+2x^2+1"));
}

TEST_CASE("taylor shift examples") {
    {
        auto t = P("x^2").taylor_shift(Rational(1));
        REQUIRE(t.size() == 3);
        CHECK(t[0] == 1);
        CHECK(t[1] == 2);
        CHECK(t[2] == 1);
    }
    {
        auto p = P("4x^3-x+2");
        auto t = p.taylor_shift(Rational(0));
        REQUIRE(t.size() == p.size());
        for (std::size_t i = 0; i < t.size(); ++i) CHECK(t[i] == Rational(p.coeff(i)));
    }
    {
        auto t = P("x^2-2").taylor_shift(parse_rational("1/2"));
        REQUIRE(t.size() == 3);
        CHECK(t[0] == parse_rational("-7/4"));
        CHECK(t[1] == 1);
        CHECK(t[2] == 1);
    }
}

namespace {
std::vector<Rational> shift_rational(const std::vector<Rational>& c, const Rational& xi) {
    std::vector<Rational> t = c;
    if (t.empty()) return t;
    const std::size_t n = t.size() - 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = n - 1; j + 1 > i; --j) t[j] += xi * t[j + 1];
    return t;
}
}  // namespace

TEST_CASE("taylor shift composes additively") {
    SplitMix64 rng(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = testutil::random_nonzero_poly(rng, 6, 9);
        Rational a = testutil::random_rational_in_unit(rng, 8);
        Rational b = testutil::random_rational_in_unit(rng, 8);
        auto once = p.taylor_shift(a + b);
        auto twice = shift_rational(p.taylor_shift(a), b);
        CHECK(once == twice);
    }
}

TEST_CASE("taylor entries are derivatives over factorials") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = testutil::random_nonzero_poly(rng, 6, 9);
        Rational xi = testutil::random_rational_in_unit(rng, 10);
        auto t = p.taylor_shift(xi);
        Integer fact(1);
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (j > 0) fact *= static_cast<long>(j);
            CHECK(t[j] * Rational(fact) == p.derivative(static_cast<unsigned>(j)).evaluate(xi));
        }
    }
}

TEST_CASE("evaluation is multiplicative") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = testutil::random_nonzero_poly(rng, 5, 7);
        auto q = testutil::random_nonzero_poly(rng, 5, 7);
        Rational xi = testutil::random_rational_in_unit(rng, 12);
        CHECK((p * q).evaluate(xi) == p.evaluate(xi) * q.evaluate(xi));
    }
}

TEST_CASE("height multiplicativity band with explicit constants") {
    // For P = P_1 * ... * P_k of degree n:
    //   H(P) * (n+1)^-(k-1) <= H(P_1)...H(P_k) <= 2^n * sqrt(n+1) * H(P).
    SplitMix64 rng(4242);
    for (int trial = 0; trial < 300; ++trial) {
        int k = static_cast<int>(rng.range(1, 4));
        IntPolynomial prod = IntPolynomial::constant(1);
        Integer hs(1);
        for (int i = 0; i < k; ++i) {
            auto f = testutil::random_poly(rng, static_cast<int>(rng.range(0, 3)), 8);
            prod = prod * f;
            hs *= f.height();
        }
        REQUIRE(!prod.is_zero());
        const unsigned long n = static_cast<unsigned long>(prod.degree());
        Integer hp = prod.height();
        CHECK(hs * pow_int(Integer(n + 1), static_cast<unsigned long>(k - 1)) >= hp);
        // squared self-comparison avoids the irrational sqrt(n+1)
        CHECK(hs * hs <= pow_int(Integer(4), n) * Integer(n + 1) * hp * hp);
    }
}

TEST_CASE("parsing both formats and printing human form") {
    CHECK(P("-1,1") == P("x-1"));
    CHECK(P("-2,0,1") == P("x^2-2"));
    CHECK(P("0") == IntPolynomial());
    CHECK(P("2*x^3-x") == P("2x^3-x"));
    CHECK(P("x^2-2").to_human() == "x^2-2");
    CHECK(P("-1,1").to_human() == "x-1");
    CHECK((-P("x")).to_human() == "-x");
    CHECK(IntPolynomial().to_human() == "0");
    CHECK(P("x^3-x^2+x-1").to_dense() == "-1,1,-1,1");
    CHECK_THROWS_AS(P("x^2 + cow"), validation_error);
    SplitMix64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        auto p = testutil::random_nonzero_poly(rng, 7, 30);
        CHECK(IntPolynomial::parse(p.to_human()) == p);
        CHECK(IntPolynomial::parse(p.to_dense()) == p);
    }
}

TEST_CASE("zero polynomial edge cases") {
    CHECK(IntPolynomial().is_zero());
    CHECK_THROWS_AS(IntPolynomial().degree(), validation_error);
    CHECK(IntPolynomial(std::vector<Integer>{Integer(0), Integer(0)}).is_zero());
}

TEST_CASE("polynomial gcd and exact division") {
    auto p = P("x^2-1");
    CHECK(gcd(p, P("x-1")) == P("x-1"));
    CHECK(gcd(P("x^2+1"), P("x-3")).degree() == 0);
    auto q = divide_exact(P("x^3-1"), P("x-1"));
    REQUIRE(q.has_value());
    CHECK(*q == P("x^2+x+1"));
    CHECK(!divide_exact(P("x^3-1"), P("x-2")).has_value());
    CHECK(square_free_part(P("x^4+2x^2+1")) == P("x^2+1"));
}
