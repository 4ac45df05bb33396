#include "doctest.h"

#include "authkit/distribution.hpp"
#include "authkit/oracle.hpp"
#include "authkit/rational.hpp"

using namespace authkit;

TEST_CASE("rationals are canonical on construction") {
    CHECK(rat(2, 4).str() == "1/2");
    CHECK(rat(3, -6).str() == "-1/2");
    CHECK(rat(0, 5).str() == "0/1");
    CHECK(rat(-4, -6).str() == "2/3");
    CHECK(rat(7, 1).str() == "7/1");
    CHECK_THROWS_AS(rat(1, 0), std::domain_error);
}

TEST_CASE("rational parsing accepts non-canonical input and round-trips canonical text") {
    CHECK(Rational::parse("2/4") == rat(1, 2));
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(Rational::parse("3/-6") == rat(-1, 2));
    CHECK(Rational::parse("-1/2").str() == "-1/2");
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("x/2"));
    CHECK_THROWS(Rational::parse("1.5"));
    CHECK_THROWS(Rational::parse(""));
}

TEST_CASE("arithmetic is exact, with no width limit") {
    // (a+b)-b == a over a grid of small fractions
    for (long long an = -6; an <= 6; ++an)
        for (long long ad = 1; ad <= 5; ++ad)
            for (long long bn = -6; bn <= 6; ++bn)
                for (long long bd = 1; bd <= 5; ++bd) {
                    Rational a(an, ad), b(bn, bd);
                    CHECK((a + b) - b == a);
                    if (bn != 0) CHECK((a / b) * b == a);
                }
    // denominator 3^50 does not fit any machine word
    Rational third(1, 3), power(1);
    for (int i = 0; i < 50; ++i) power *= third;
    CHECK(Rational::parse(power.str()) == power);
    Rational back(1);
    for (int i = 0; i < 50; ++i) back = back * Rational(3);
    CHECK(power * back == Rational(1));
}

TEST_CASE("ordering agrees with cross-multiplication") {
    SplitMix64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        long long an = static_cast<long long>(rng.below(41)) - 20;
        long long bn = static_cast<long long>(rng.below(41)) - 20;
        long long ad = 1 + static_cast<long long>(rng.below(20));
        long long bd = 1 + static_cast<long long>(rng.below(20));
        bool lt = Rational(an, ad) < Rational(bn, bd);
        CHECK(lt == (an * bd < bn * ad));
    }
}

TEST_CASE("uniform distributions") {
    Distribution d = Distribution::uniform(7);
    CHECK(d.size() == 7);
    Rational total;
    for (int i = 0; i < 7; ++i) {
        CHECK(d[i] == rat(1, 7));
        total += d[i];
    }
    CHECK(total == Rational(1));
    CHECK(Distribution::uniform(1)[0] == Rational(1));
    CHECK(Distribution::uniform(3).is_uniform());
    CHECK_THROWS_AS(Distribution::uniform(0), std::invalid_argument);
}

TEST_CASE("distribution validation") {
    CHECK(!distribution_error({rat(1, 2), rat(1, 2)}));
    auto bad_total = distribution_error({rat(1, 2), rat(1, 3)});
    REQUIRE(bad_total);
    CHECK(bad_total->find("5/6") != std::string::npos);
    auto negative = distribution_error({rat(-1, 2), rat(3, 2)});
    REQUIRE(negative);
    CHECK(negative->find("negative") != std::string::npos);
    CHECK_THROWS_AS(Distribution::from_weights({rat(1, 2), rat(1, 3)}), std::invalid_argument);
}
