#include "doctest.h"

#include "authkit/authcode.hpp"
#include "authkit/oracle.hpp"
#include "fixtures.hpp"

using namespace authkit;

namespace {

// small seeded generator for property checks (uniform-splitting codes)
AuthCode random_splitting_code(SplitMix64& rng) {
    const int v = 2 + static_cast<int>(rng.below(9));
    const int u = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(3, v))));
    const int c = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, v / u))));
    const int b = 2 + static_cast<int>(rng.below(7));
    std::vector<Row> rows;
    for (int key = 0; key < b; ++key) {
        std::vector<int> pool(static_cast<size_t>(v));
        for (int i = 0; i < v; ++i) pool[static_cast<size_t>(i)] = i;
        for (int i = 0; i < u * c; ++i) {
            int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(v - i)));
            std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
        }
        Row row;
        for (int s = 0; s < u; ++s) {
            Cell cell(pool.begin() + s * c, pool.begin() + (s + 1) * c);
            std::sort(cell.begin(), cell.end());
            row.push_back(std::move(cell));
        }
        rows.push_back(std::move(row));
    }
    return make_authcode(OrderedDesign{v, u, std::move(rows)});
}

}  // namespace

TEST_CASE("decode finds the unique source of a message") {
    const AuthCode fano = fixtures::fano();
    CHECK(decode(fano, 0, 3) == 2);  // third column of key 0
    CHECK(decode(fano, 0, 0) == 0);
    CHECK(!decode(fano, 0, 2));
    CHECK_THROWS_AS(decode(fano, 9, 0), std::out_of_range);
    CHECK_THROWS_AS(decode(fano, 0, 7), std::out_of_range);
}

TEST_CASE("mu and kappa read the matrix by row and by message") {
    const AuthCode fano = fixtures::fano();
    CHECK(mu(fano, 0) == std::vector<int>{0, 1, 3});
    CHECK(kappa(fano, 0) == std::vector<int>{0, 4, 6});
    CHECK(kappa_s(fano, 0, 0) == std::vector<int>{0});
    CHECK(kappa_s(fano, 0, 1) == std::vector<int>{6});

    const AuthCode edf = fixtures::edf19();
    CHECK(mu(edf, 0) == std::vector<int>{1, 4, 5, 6, 7, 9, 11, 16, 17});

    // kappa splits as the disjoint union of kappa_s over the sources
    SplitMix64 rng(21);
    for (int i = 0; i < 25; ++i) {
        AuthCode code = random_splitting_code(rng);
        for (int m = 0; m < code.v(); ++m) {
            std::vector<int> merged;
            for (int s = 0; s < code.u(); ++s) {
                auto part = kappa_s(code, m, s);
                merged.insert(merged.end(), part.begin(), part.end());
            }
            std::sort(merged.begin(), merged.end());
            CHECK(std::adjacent_find(merged.begin(), merged.end()) == merged.end());
            CHECK(merged == kappa(code, m));
        }
    }
}

TEST_CASE("impersonation values of the reference codes") {
    CHECK(p_d0(fixtures::fano()) == rat(3, 7));
    CHECK(p_d0(fixtures::edf19()) == rat(9, 19));
    CHECK(p_d0(fixtures::split25()) == rat(6, 25));
    CHECK(p_d0(fixtures::bibd13()) == rat(3, 13));
}

TEST_CASE("message-substitution values of the reference codes") {
    CHECK(message_substitution_value(fixtures::fano()).average == rat(1, 3));
    CHECK(message_substitution_value(fixtures::bibd13()).average == rat(1, 6));
    CHECK(message_substitution_value(fixtures::split25()).average == rat(1, 6));

    // one source: no other source to land on
    AuthCode lonely = make_authcode(OrderedDesign{3, 1, {Row{{0}}, Row{{1}}}});
    CHECK(message_substitution_value(lonely).average == Rational(0));
    CHECK(key_substitution_value(lonely).average == Rational(0));
}

TEST_CASE("key-substitution values of the reference codes") {
    CHECK(key_substitution_value(fixtures::fano()).average == rat(1, 3));
    CHECK(key_substitution_value(fixtures::bibd13()).average == rat(1, 3));
    CHECK(key_substitution_value(fixtures::split25()).average == rat(1, 6));

    AuthCode single = make_authcode(OrderedDesign{2, 2, {Row{{0}, {1}}}});
    CHECK_THROWS_AS(key_substitution_value(single), std::invalid_argument);
}

TEST_CASE("perfect secrecy verdicts") {
    CHECK(perfect_secrecy(fixtures::fano()).ok);
    CHECK(perfect_secrecy(fixtures::edf19()).ok);
    CHECK(perfect_secrecy(fixtures::split25()).ok);

    // two keys, rows ({0},{1}) and ({0},{2}): message 0 pins source 1 away
    AuthCode leaky = make_authcode(OrderedDesign{3, 2, {Row{{0}, {1}}, Row{{0}, {2}}}});
    SecrecyCheck check = perfect_secrecy(leaky);
    REQUIRE(!check.ok);
    // independent recomputation at the witness: Prob[m|s] vs Prob[m]
    Rational cond;
    for (int key = 0; key < leaky.b(); ++key) {
        const Cell& cell = leaky.matrix.rows[static_cast<size_t>(key)][static_cast<size_t>(check.source)];
        if (std::binary_search(cell.begin(), cell.end(), check.message))
            cond += rat(1, leaky.b()) * rat(1, static_cast<long long>(cell.size()));
    }
    CHECK(cond == check.conditional);
    CHECK(check.conditional != check.marginal);
    // first violation in (message, source) scan order: message 0 under source 0
    CHECK(check.message == 0);
    CHECK(check.source == 0);
    CHECK(check.conditional == Rational(1));
    CHECK(check.marginal == rat(1, 2));
}

TEST_CASE("column regularity") {
    RegularityCheck fano = column_regular(fixtures::fano());
    REQUIRE(fano.ok);
    CHECK(fano.multiplicity == 1);

    RegularityCheck bibd = column_regular(fixtures::bibd13());
    REQUIRE(bibd.ok);
    CHECK(bibd.multiplicity == 2);

    AuthCode leaky = make_authcode(OrderedDesign{3, 2, {Row{{0}, {1}}, Row{{0}, {2}}}});
    CHECK(!column_regular(leaky).ok);
}

TEST_CASE("splitting number") {
    CHECK(splitting_number(fixtures::fano()) == 1);
    CHECK(splitting_number(fixtures::edf19()) == 3);
    CHECK(splitting_number(fixtures::split25()) == 2);
    AuthCode mixed = make_authcode(OrderedDesign{4, 2, {Row{{0, 1}, {2}}, Row{{0}, {1}}}});
    CHECK(!splitting_number(mixed));
}

TEST_CASE("lower bounds") {
    Bounds fano = bounds(3, 7, 1);
    CHECK(fano.impersonation == rat(3, 7));
    CHECK(fano.substitution == rat(1, 3));
    Bounds edf = bounds(3, 19, 3);
    CHECK(edf.impersonation == rat(9, 19));
    CHECK(edf.substitution == rat(1, 3));
    Bounds one = bounds(1, 5, 2);
    CHECK(one.impersonation == rat(2, 5));
    CHECK(one.substitution == Rational(0));
    CHECK_THROWS_AS(bounds(3, 1, 1), std::invalid_argument);
}

TEST_CASE("analysis report for the fano code") {
    AnalysisReport report = analyze(fixtures::fano());
    CHECK(report.p_d0 == rat(3, 7));
    CHECK(report.p_d1 == rat(1, 3));
    CHECK(report.p_ks == rat(1, 3));
    CHECK(report.secrecy.ok);
    CHECK(report.column.ok);
    CHECK(report.column.multiplicity == 1);
    CHECK(report.splitting == 1);
    CHECK(report.p_d0_meets_bound);
    CHECK(report.p_d1_meets_bound);
    CHECK(report.to_text() ==
          "p_d0 = 3/7\n"
          "p_d1 = 1/3\n"
          "p_ks = 1/3\n"
          "p_d1_conditional_max = 1/3\n"
          "p_ks_conditional_max = 1/3\n"
          "secrecy = ok\n"
          "column_regular = 1\n"
          "splitting = 1\n"
          "bound_p_d0 = 3/7 (met)\n"
          "bound_p_d1 = 1/3 (met)\n");
}

TEST_CASE("analysis on a one-key code propagates the missing-substitute error") {
    AuthCode single = make_authcode(OrderedDesign{2, 2, {Row{{0}, {1}}}});
    CHECK_THROWS_AS(analyze(single), std::invalid_argument);
}

TEST_CASE("counting identity and impersonation bound over random codes") {
    SplitMix64 rng(22);
    for (int i = 0; i < 60; ++i) {
        AuthCode code = random_splitting_code(rng);
        long long kappa_total = 0, mu_total = 0;
        for (int m = 0; m < code.v(); ++m) kappa_total += static_cast<long long>(kappa(code, m).size());
        for (int key = 0; key < code.b(); ++key) mu_total += static_cast<long long>(mu(code, key).size());
        CHECK(kappa_total == mu_total);

        auto c = splitting_number(code);
        REQUIRE(c);
        CHECK(p_d0(code) >= bounds(code.u(), code.v(), *c).impersonation);

        // tight impersonation with secrecy is the same thing as column regularity
        bool tight = p_d0(code) == bounds(code.u(), code.v(), *c).impersonation;
        bool secret = perfect_secrecy(code).ok;
        CHECK((tight && secret) == column_regular(code).ok);
    }
}

TEST_CASE("tight impersonation means every message is valid under the same number of keys") {
    SplitMix64 rng(23);
    for (int i = 0; i < 40; ++i) {
        AuthCode code = random_splitting_code(rng);
        auto c = splitting_number(code);
        REQUIRE(c);
        const long long flat = static_cast<long long>(code.b()) * *c * code.u() / code.v();
        bool tight = p_d0(code) == bounds(code.u(), code.v(), *c).impersonation;
        bool all_flat = static_cast<long long>(code.b()) * *c * code.u() % code.v() == 0;
        if (all_flat)
            for (int m = 0; m < code.v(); ++m)
                all_flat = all_flat && static_cast<long long>(kappa(code, m).size()) == flat;
        CHECK(tight == all_flat);
    }
}

TEST_CASE("a biplane code attains the symmetric-design values") {
    // quadratic residues mod 11 are a difference set; the development is an
    // (11,11,5,5,2) symmetric design and a Youden square
    AuthCode code = make_authcode(develop(Row{{1}, {3}, {4}, {5}, {9}}, 11));
    BibdCheck check = validate_bibd(code.matrix);
    REQUIRE(check.ok);
    CHECK(check.params == DesignParams{11, 11, 5, 5, 2, 5, 1});
    REQUIRE(check_equitable(code.matrix).ok);
    CHECK(p_d0(code) == rat(5, 11));
    CHECK(message_substitution_value(code).average == rat(2, 5));  // lambda/k = (k-1)/(v-1)
    CHECK(key_substitution_value(code).average == rat(2, 5));
    CHECK(perfect_secrecy(code).ok);
    CHECK(exhaustive_value(code, Attack::message_substitution) == rat(2, 5));
    CHECK(exhaustive_value(code, Attack::key_substitution) == rat(2, 5));
}

TEST_CASE("the (9,2x2) code built from a lambda-1 difference family") {
    // base ({0,1},{2,4}) mod 9: both a (9,2,2,1)-EDF and a (9,2x2,1)-splitting design
    AuthCode code = make_authcode(develop(Row{{0, 1}, {2, 4}}, 9));
    CHECK(p_d0(code) == rat(4, 9));  // every message valid under 4 of the 9 keys
    CHECK(message_substitution_value(code).average == rat(1, 4));
    CHECK(key_substitution_value(code).average == rat(1, 4));
    CHECK(perfect_secrecy(code).ok);
    RegularityCheck reg = column_regular(code);
    REQUIRE(reg.ok);
    CHECK(reg.multiplicity == 2);
}

TEST_CASE("optimal strategies point at maximal wins") {
    const AuthCode fano = fixtures::fano();
    auto imp = optimal_strategy(fano, Attack::impersonation);
    REQUIRE(imp.size() == 1);
    CHECK(kappa(fano, imp[0]).size() == 3);

    auto ks = optimal_strategy(fano, Attack::key_substitution);
    REQUIRE(ks.size() == 7);
    for (int key = 0; key < 7; ++key) CHECK(ks[static_cast<size_t>(key)] != key);

    auto ms = optimal_strategy(fano, Attack::message_substitution);
    REQUIRE(ms.size() == 7);
    for (int m = 0; m < 7; ++m) CHECK(ms[static_cast<size_t>(m)] != m);
}
