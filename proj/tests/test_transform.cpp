#include "doctest.h"

#include "authkit/oracle.hpp"
#include "authkit/transform.hpp"
#include "fixtures.hpp"

using namespace authkit;

TEST_CASE("fano code converts to the 21-rule scheme") {
    ThresholdScheme scheme = authcode_to_threshold(fixtures::fano());
    REQUIRE(scheme.rules.size() == 21);
    CHECK(scheme.share1_count == 7);
    CHECK(scheme.share2_count == 7);
    CHECK(scheme.secret_count == 3);
    // written out independently from the key rows: (i, i+0/1/3; s) at weight 1/7
    std::vector<DistributionRule> expected;
    for (int i = 0; i < 7; ++i) {
        expected.push_back({i, i, 0, rat(1, 7)});
        expected.push_back({i, (i + 1) % 7, 1, rat(1, 7)});
        expected.push_back({i, (i + 3) % 7, 2, rat(1, 7)});
    }
    ThresholdScheme direct = make_scheme(3, 7, 7, std::move(expected));
    CHECK(scheme == direct);
}

TEST_CASE("conversion counts rules as valid encodings") {
    CHECK(authcode_to_threshold(fixtures::bibd13()).rules.size() == 78);  // 26 keys x 3 singleton cells
    CHECK(authcode_to_threshold(fixtures::edf19()).rules.size() == 19 * 9);

    AuthCode tiny = make_authcode(OrderedDesign{1, 1, {Row{{0}}}});
    ThresholdScheme converted = authcode_to_threshold(tiny);
    REQUIRE(converted.rules.size() == 1);
    CHECK(converted.rules[0] == DistributionRule{0, 0, 0, Rational(1)});
}

TEST_CASE("threshold to authcode inverts the conversion") {
    CHECK(threshold_to_authcode(authcode_to_threshold(fixtures::fano())) == fixtures::fano());
    CHECK(threshold_to_authcode(authcode_to_threshold(fixtures::edf19())) == fixtures::edf19());
    CHECK(threshold_to_authcode(authcode_to_threshold(fixtures::split25())) == fixtures::split25());

    // non-uniform sources ride along unchanged
    AuthCode skewed = make_authcode(fixtures::fano().matrix,
                                    Distribution::from_weights({rat(1, 2), rat(1, 4), rat(1, 4)}));
    CHECK(threshold_to_authcode(authcode_to_threshold(skewed)) == skewed);
}

TEST_CASE("threshold to authcode rejects schemes outside the uniform-key model") {
    // missing (share1, secret) combination: share 1 value 1 never deals secret 0
    ThresholdScheme sparse = make_scheme(2, 2, 2, {{0, 0, 0, rat(1, 1)}, {0, 1, 1, rat(1, 1)}});
    CHECK_THROWS_WITH_AS(threshold_to_authcode(sparse), doctest::Contains("no rule"), std::invalid_argument);

    // weights within one (share1, secret) cell differ: encoding is not uniform
    ThresholdScheme lopsided = make_scheme(
        1, 2, 2, {{0, 0, 0, rat(1, 3)}, {0, 1, 0, rat(1, 6)}, {1, 0, 0, rat(1, 4)}, {1, 1, 0, rat(1, 4)}});
    CHECK_THROWS_WITH_AS(threshold_to_authcode(lopsided), doctest::Contains("uniform"), std::invalid_argument);
}

TEST_CASE("dual of the fano code develops the negated base") {
    AuthCode f = dual(fixtures::fano());
    CHECK(f == make_authcode(develop(Row{{0}, {6}, {4}}, 7)));
    // row for message 1 reads keys 1, 0, 5
    CHECK(f.matrix.rows[1] == Row{{1}, {0}, {5}});
}

TEST_CASE("dual of the difference-family code develops the negated sets") {
    AuthCode f = dual(fixtures::edf19());
    CHECK(f == make_authcode(develop(Row{{8, 12, 18}, {10, 13, 15}, {2, 3, 14}}, 19)));
}

TEST_CASE("dual of the (13,3,1) code is 2-splitting with the same p_d0") {
    const AuthCode code = fixtures::bibd13();
    AuthCode f = dual(code);
    CHECK(f.v() == 26);
    CHECK(f.b() == 13);
    CHECK(splitting_number(f) == 2);
    CHECK(perfect_secrecy(f).ok);
    CHECK(p_d0(f) == rat(3, 13));
    CHECK(message_substitution_value(f).average == key_substitution_value(code).average);
    CHECK(key_substitution_value(f).average == message_substitution_value(code).average);
}

TEST_CASE("dual rejects codes whose messages are not equiprobable") {
    AuthCode leaky = make_authcode(OrderedDesign{3, 2, {Row{{0}, {1}}, Row{{0}, {2}}}});
    CHECK_THROWS_WITH_AS(dual(leaky), doctest::Contains("column-regular"), std::invalid_argument);
}

TEST_CASE("dual of dual is the original") {
    for (const AuthCode& code : {fixtures::fano(), fixtures::bibd13(), fixtures::edf19(), fixtures::split25()})
        CHECK(dual(dual(code)) == code);
}

TEST_CASE("equivalence verification on the reference codes") {
    VerificationReport fano = verify_equivalence(fixtures::fano());
    CHECK(fano.all_pass);
    VerificationReport bibd = verify_equivalence(fixtures::bibd13());
    CHECK(bibd.all_pass);
    VerificationReport split = verify_equivalence(fixtures::split25());
    CHECK(split.all_pass);
    CHECK(split.to_text().find("fail") == std::string::npos);
}

TEST_CASE("duality verification on the reference codes") {
    for (const AuthCode& code : {fixtures::fano(), fixtures::bibd13(), fixtures::edf19(), fixtures::split25()}) {
        VerificationReport report = verify_duality(code);
        CHECK(report.all_pass);
    }
}

TEST_CASE("verification reports carry both sides of a failed assertion") {
    VerificationReport report;
    report.add("probe", "1/3", "1/4");
    CHECK(!report.all_pass);
    CHECK(report.to_text() == "probe = fail (1/3, 1/4)\n");
}
