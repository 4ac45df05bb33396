#include "doctest.h"

#include "authkit/threshold.hpp"
#include "fixtures.hpp"

using namespace authkit;

namespace {

// the 21-rule scheme of the fano code, written out independently:
// (i, i; 0), (i, i+1; 1), (i, i+3; 2) for i mod 7, each with weight 1/7
ThresholdScheme fano_scheme() {
    std::vector<DistributionRule> rules;
    for (int i = 0; i < 7; ++i) {
        rules.push_back({i, i, 0, rat(1, 7)});
        rules.push_back({i, (i + 1) % 7, 1, rat(1, 7)});
        rules.push_back({i, (i + 3) % 7, 2, rat(1, 7)});
    }
    return make_scheme(3, 7, 7, std::move(rules));
}

}  // namespace

TEST_CASE("reconstruction is the rule table") {
    ThresholdScheme scheme = fano_scheme();
    CHECK(rec(scheme, 0, 1) == 1);
    CHECK(rec(scheme, 0, 3) == 2);
    CHECK(rec(scheme, 0, 0) == 0);
    CHECK(!rec(scheme, 0, 2));
    for (const DistributionRule& r : scheme.rules) CHECK(rec(scheme, r.share1, r.share2) == r.secret);
    CHECK_THROWS_AS(rec(scheme, 7, 0), std::out_of_range);
}

TEST_CASE("scheme invariants are enforced") {
    // per-secret mass must be exactly one
    CHECK_THROWS_AS(make_scheme(1, 2, 2, {{0, 0, 0, rat(1, 2)}, {1, 1, 0, rat(1, 3)}}), std::invalid_argument);
    // a share pair cannot name two secrets
    CHECK_THROWS_AS(make_scheme(2, 1, 1, {{0, 0, 0, rat(1, 1)}, {0, 0, 1, rat(1, 1)}}), std::invalid_argument);
    // weights must be positive
    CHECK_THROWS_AS(make_scheme(1, 1, 2, {{0, 0, 0, rat(3, 2)}, {0, 1, 0, rat(-1, 2)}}), std::invalid_argument);
    // out of range ids
    CHECK_THROWS_AS(make_scheme(1, 1, 1, {{0, 1, 0, rat(1, 1)}}), std::invalid_argument);
}

TEST_CASE("one-share secrecy of the fano scheme") {
    CHECK(share_secrecy(fano_scheme()).ok);
}

TEST_CASE("one-share secrecy witness on a two-rule scheme") {
    // share 1 fully determines the secret, share 2 says nothing
    ThresholdScheme scheme = make_scheme(2, 2, 1, {{0, 0, 0, rat(1, 1)}, {1, 0, 1, rat(1, 1)}});
    ShareSecrecyCheck check = share_secrecy(scheme);
    REQUIRE(!check.ok);
    CHECK(check.share_index == 1);
    CHECK(check.share_value == 0);
    CHECK(check.secret == 0);
    CHECK(check.conditional == Rational(1));
    CHECK(check.marginal == rat(1, 2));
}

TEST_CASE("degenerate schemes") {
    ThresholdScheme one = make_scheme(1, 1, 1, {{0, 0, 0, rat(1, 1)}});
    CHECK(share_secrecy(one).ok);
    RobustnessReport rob = robustness(one);
    CHECK(rob.epsilon == Rational(0));
    CHECK(rob.player1 == Rational(0));
    CHECK(rob.player2 == Rational(0));
}

TEST_CASE("deception values of the fano scheme") {
    RobustnessReport rob = robustness(fano_scheme());
    CHECK(rob.epsilon == rat(1, 3));
    CHECK(rob.player1 == rat(1, 3));
    CHECK(rob.player2 == rat(1, 3));
    CHECK(rob.player1_conditional_max == rat(1, 3));
    CHECK(rob.player2_conditional_max == rat(1, 3));
}

TEST_CASE("deception values of the scheme from the (13,3,1) code") {
    ThresholdScheme scheme = authcode_to_threshold(fixtures::bibd13());
    RobustnessReport rob = robustness(scheme);
    CHECK(rob.player1 == rat(1, 3));  // key side
    CHECK(rob.player2 == rat(1, 6));  // message side
    CHECK(rob.epsilon == rat(1, 3));
}

TEST_CASE("skewed secret distributions shift the deception value") {
    // two secrets, secret 1 drawn three times as often; cheating player 2
    // flips the pair and wins exactly when the secret was the other one
    std::vector<DistributionRule> rules = {{0, 0, 0, rat(1, 1)}, {0, 1, 1, rat(1, 1)}};
    ThresholdScheme scheme =
        make_scheme(2, 1, 2, Distribution::from_weights({rat(1, 4), rat(3, 4)}), std::move(rules));
    RobustnessReport rob = robustness(scheme);
    CHECK(rob.player1 == Rational(0));  // no second share-1 value exists
    // observing v2 = 0 (mass 1/4), swap to 1: rec(0,1) = 1 != 0, win mass 1/4; similarly 3/4
    CHECK(rob.player2 == Rational(1));
    CHECK(rob.epsilon == Rational(1));
}
