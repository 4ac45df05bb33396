#include "authkit/verify.hpp"

#include <algorithm>

#include "authkit/formats.hpp"
#include "authkit/oracle.hpp"
#include "authkit/transform.hpp"

namespace authkit {

namespace {

struct Checks {
    bool pass = true;
    std::string detail;

    void expect(bool ok, const std::string& what) {
        if (ok) return;
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += what;
    }

    void expect_eq(const Rational& got, const Rational& want, const std::string& what) {
        expect(got == want, what + ": got " + got.str() + ", want " + want.str());
    }

    void note(const std::string& text) {
        if (!detail.empty()) detail += "; ";
        detail += text;
    }
};

AuthCode fano_code() { return make_authcode(develop(Row{{0}, {1}, {3}}, 7)); }

AuthCode edf_code() { return make_authcode(develop(Row{{1, 7, 11}, {4, 6, 9}, {5, 16, 17}}, 19)); }

AuthCode splitting_code() { return make_authcode(develop(Row{{0, 1}, {2, 4}, {12, 20}}, 25)); }

std::vector<Cell> bibd13_blocks() {
    OrderedDesign both = develop(std::vector<Row>{Row{{0}, {1}, {4}}, Row{{0}, {2}, {8}}}, 13);
    std::vector<Cell> blocks;
    for (const Row& row : both.rows) {
        Cell blk;
        for (const Cell& cell : row) blk.push_back(cell[0]);
        std::sort(blk.begin(), blk.end());
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

AuthCode bibd13_code() { return make_authcode(equitable_order(bibd13_blocks(), 13, 3)); }

// --- seeded random instances for the property and cross-check suites ---

constexpr std::uint64_t kPropertySeed = 0x5eed0001;
constexpr std::uint64_t kOracleSeed = 0x5eed0002;

std::vector<int> sample_distinct(SplitMix64& rng, int population, int count) {
    std::vector<int> pool(static_cast<size_t>(population));
    for (int i = 0; i < population; ++i) pool[static_cast<size_t>(i)] = i;
    for (int i = 0; i < count; ++i) {
        int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(population - i)));
        std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
    }
    pool.resize(static_cast<size_t>(count));
    return pool;
}

Row chunk_into_cells(const std::vector<int>& points, const std::vector<int>& sizes) {
    Row row;
    size_t at = 0;
    for (int size : sizes) {
        Cell cell(points.begin() + static_cast<long>(at), points.begin() + static_cast<long>(at) + size);
        std::sort(cell.begin(), cell.end());
        row.push_back(std::move(cell));
        at += static_cast<size_t>(size);
    }
    return row;
}

Distribution random_distribution(SplitMix64& rng, int n) {
    if (rng.below(2) == 0) return Distribution::uniform(n);
    std::vector<long long> raw(static_cast<size_t>(n));
    long long total = 0;
    for (auto& x : raw) {
        x = 1 + static_cast<long long>(rng.below(5));
        total += x;
    }
    std::vector<Rational> weights;
    weights.reserve(raw.size());
    for (long long x : raw) weights.push_back(Rational(x, total));
    return Distribution::from_weights(std::move(weights));
}

// kind 0: developed uniform-splitting (column-regular by construction)
// kind 1: per-key random uniform-splitting
// kind 2: per-key random with ragged cell sizes
AuthCode random_code(SplitMix64& rng, int kind) {
    const int v = 2 + static_cast<int>(rng.below(11));  // 2..12
    const int u = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(4, v))));
    if (kind == 2) {
        const int b = 2 + static_cast<int>(rng.below(11));
        std::vector<Row> rows;
        for (int key = 0; key < b; ++key) {
            std::vector<int> sizes(static_cast<size_t>(u), 1);
            int spare = v - u;
            for (int i = 0; i < u; ++i) {
                int extra = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(spare, 2) + 1)));
                sizes[static_cast<size_t>(i)] += extra;
                spare -= extra;
            }
            int total = v - spare;
            rows.push_back(chunk_into_cells(sample_distinct(rng, v, total), sizes));
        }
        return make_authcode(OrderedDesign{v, u, std::move(rows)}, random_distribution(rng, u));
    }
    const int c = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, v / u))));
    const std::vector<int> sizes(static_cast<size_t>(u), c);
    if (kind == 0) {
        Row base = chunk_into_cells(sample_distinct(rng, v, u * c), sizes);
        return make_authcode(develop(base, v), random_distribution(rng, u));
    }
    const int b = 2 + static_cast<int>(rng.below(11));
    std::vector<Row> rows;
    for (int key = 0; key < b; ++key) rows.push_back(chunk_into_cells(sample_distinct(rng, v, u * c), sizes));
    return make_authcode(OrderedDesign{v, u, std::move(rows)}, random_distribution(rng, u));
}

long long kappa_total(const AuthCode& code) {
    long long total = 0;
    for (int m = 0; m < code.v(); ++m) total += static_cast<long long>(kappa(code, m).size());
    return total;
}

long long mu_total(const AuthCode& code) {
    long long total = 0;
    for (int key = 0; key < code.b(); ++key) total += static_cast<long long>(mu(code, key).size());
    return total;
}

// --- the criteria ---

CriterionResult criterion_fano_code() {
    Checks ch;
    const AuthCode code = fano_code();
    ch.expect_eq(p_d0(code), Rational(3, 7), "p_d0");
    ch.expect_eq(message_substitution_value(code).average, Rational(1, 3), "p_d1");
    ch.expect_eq(key_substitution_value(code).average, Rational(1, 3), "p_ks");
    ch.expect(perfect_secrecy(code).ok, "perfect secrecy");
    RegularityCheck reg = column_regular(code);
    ch.expect(reg.ok && reg.multiplicity == 1, "column-regular with multiplicity 1");
    return {"fano code values", ch.pass, ch.detail};
}

CriterionResult criterion_fano_threshold() {
    Checks ch;
    const ThresholdScheme scheme = authcode_to_threshold(fano_code());
    ch.expect(scheme.rules.size() == 21, "expected 21 rules, got " + std::to_string(scheme.rules.size()));
    RobustnessReport rob = robustness(scheme);
    ch.expect_eq(rob.epsilon, Rational(1, 3), "epsilon");
    ch.expect_eq(rob.player1, Rational(1, 3), "player 1 value");
    ch.expect_eq(rob.player2, Rational(1, 3), "player 2 value");
    ch.expect(share_secrecy(scheme).ok, "one-share secrecy");
    return {"fano threshold scheme", ch.pass, ch.detail};
}

CriterionResult criterion_bibd13() {
    Checks ch;
    BibdCheck bibd = validate_bibd(bibd13_blocks(), 13);
    ch.expect(bibd.ok, "block validation: " + bibd.error);
    ch.expect(bibd.params == DesignParams{13, 26, 6, 3, 1, 3, 1}, "params (13,26,6,3,1)");
    const AuthCode code = bibd13_code();
    ch.expect(check_equitable(code.matrix).ok, "ordering is equitable");
    ch.expect_eq(p_d0(code), Rational(3, 13), "p_d0");
    ch.expect_eq(message_substitution_value(code).average, Rational(1, 6), "p_d1");
    ch.expect_eq(key_substitution_value(code).average, Rational(1, 3), "p_ks");
    const AuthCode f = dual(code);
    auto split = splitting_number(f);
    ch.expect(split && *split == 2, "dual is 2-splitting");
    ch.expect(perfect_secrecy(f).ok, "dual perfect secrecy");
    ch.expect_eq(p_d0(f), Rational(3, 13), "dual p_d0");
    ch.expect_eq(message_substitution_value(f).average, Rational(1, 3), "p_d1(dual) = p_ks(code)");
    ch.expect_eq(key_substitution_value(f).average, Rational(1, 6), "p_ks(dual) = p_d1(code)");
    return {"(13,3,1) code and dual", ch.pass, ch.detail};
}

CriterionResult criterion_edf() {
    Checks ch;
    EdfCheck edf = validate_edf(EdfSpec{19, {{1, 7, 11}, {4, 6, 9}, {5, 16, 17}}});
    ch.expect(edf.ok, "difference tally: " + edf.error);
    ch.expect(edf.lambda == 3, "lambda 3, got " + std::to_string(edf.lambda));
    const AuthCode code = edf_code();
    ch.expect_eq(p_d0(code), Rational(9, 19), "p_d0");
    ch.expect(perfect_secrecy(code).ok, "perfect secrecy");
    const Rational ms = message_substitution_value(code).average;
    const Rational ks = key_substitution_value(code).average;
    const Rational oracle_ms = exhaustive_value(code, Attack::message_substitution);
    const Rational oracle_ks = exhaustive_value(code, Attack::key_substitution);
    ch.expect_eq(ms, ks, "substitution values agree with each other");
    ch.expect_eq(ms, oracle_ms, "message substitution matches oracle");
    ch.expect_eq(ks, oracle_ks, "key substitution matches oracle");
    ch.expect(oracle_ms == Rational(1, 3) || oracle_ms == Rational(1, 6),
              "oracle value " + oracle_ms.str() + " is neither candidate");
    ch.note("oracle adjudicates the substitution value as " + oracle_ms.str() + " (candidates were 1/3 and 1/6)");
    return {"(19,3,3,3) difference-family code", ch.pass, ch.detail};
}

CriterionResult criterion_splitting() {
    Checks ch;
    const OrderedDesign design = develop(Row{{0, 1}, {2, 4}, {12, 20}}, 25);
    SplittingCheck split = validate_splitting_bibd(design, 3, 2);
    ch.expect(split.ok, "splitting validation: " + split.error);
    ch.expect(split.params == DesignParams{25, 25, 6, 6, 1, 3, 2}, "params (25, 3x2, 1) with r=6");
    EquitableCheck eq = check_equitable(design);
    ch.expect(eq.ok && eq.multiplicity == 2, "equitable with multiplicity 2");
    const AuthCode code = make_authcode(design);
    ch.expect_eq(p_d0(code), Rational(6, 25), "p_d0");
    ch.expect_eq(message_substitution_value(code).average, Rational(1, 6), "p_d1");
    ch.expect_eq(key_substitution_value(code).average, Rational(1, 6), "p_ks");
    ch.expect_eq(robustness(authcode_to_threshold(code)).epsilon, Rational(1, 6), "converted scheme epsilon");
    return {"(25,3x2,1) splitting code", ch.pass, ch.detail};
}

CriterionResult criterion_properties() {
    Checks ch;
    SplitMix64 rng(kPropertySeed);
    const int total = 520;
    int regular_seen = 0, irregular_seen = 0;
    for (int i = 0; i < total; ++i) {
        const AuthCode code = random_code(rng, i % 3);
        const std::string tag = "instance " + std::to_string(i);
        ch.expect(kappa_total(code) == mu_total(code), tag + ": counting identity");
        auto c = splitting_number(code);
        if (!c) continue;
        const Rational lower = bounds(code.u(), code.v(), *c).impersonation;
        const Rational d0 = p_d0(code);
        ch.expect(d0 >= lower, tag + ": p_d0 " + d0.str() + " under the bound " + lower.str());
        const bool tight_and_secret = d0 == lower && perfect_secrecy(code).ok;
        const bool regular = column_regular(code).ok;
        ch.expect(tight_and_secret == regular,
                  tag + ": biconditional " + (tight_and_secret ? "holds" : "fails") + " left, " +
                      (regular ? "holds" : "fails") + " right");
        (regular ? regular_seen : irregular_seen)++;
    }
    ch.expect(regular_seen >= 100 && irregular_seen >= 100,
              "both biconditional directions exercised (regular " + std::to_string(regular_seen) + ", irregular " +
                  std::to_string(irregular_seen) + ")");
    ch.note(std::to_string(total) + " random codes, " + std::to_string(regular_seen) + " column-regular");
    return {"counting and secrecy properties", ch.pass, ch.detail};
}

CriterionResult criterion_oracle() {
    Checks ch;
    auto check_code = [&](const AuthCode& code, const std::string& tag) {
        ch.expect_eq(message_substitution_value(code).average, exhaustive_value(code, Attack::message_substitution),
                     tag + ": p_d1 vs oracle");
        ch.expect_eq(key_substitution_value(code).average, exhaustive_value(code, Attack::key_substitution),
                     tag + ": p_ks vs oracle");
        ch.expect_eq(p_d0(code), exhaustive_value(code, Attack::impersonation), tag + ": p_d0 vs oracle");
    };
    auto check_scheme = [&](const ThresholdScheme& scheme, const std::string& tag) {
        RobustnessReport rob = robustness(scheme);
        Rational o1 = exhaustive_value(scheme, Attack::deception_p1);
        Rational o2 = exhaustive_value(scheme, Attack::deception_p2);
        ch.expect_eq(rob.player1, o1, tag + ": player 1 vs oracle");
        ch.expect_eq(rob.player2, o2, tag + ": player 2 vs oracle");
        ch.expect_eq(rob.epsilon, std::max(o1, o2), tag + ": epsilon vs oracle");
    };
    const AuthCode fano = fano_code(), bibd = bibd13_code(), edf = edf_code(), split = splitting_code();
    check_code(fano, "fano");
    check_code(bibd, "(13,3,1)");
    check_code(dual(bibd), "(13,3,1) dual");
    check_code(edf, "edf");
    check_code(split, "splitting");
    check_scheme(authcode_to_threshold(fano), "fano scheme");
    check_scheme(authcode_to_threshold(bibd), "(13,3,1) scheme");
    check_scheme(authcode_to_threshold(split), "splitting scheme");

    SplitMix64 rng(kOracleSeed);
    for (int i = 0; i < 100; ++i) {
        const AuthCode code = random_code(rng, i % 3);
        if (static_cast<long long>(code.b()) * code.v() > 200) continue;  // never happens for these ranges
        const std::string tag = "random " + std::to_string(i);
        check_code(code, tag);
        check_scheme(authcode_to_threshold(code), tag + " scheme");
    }
    return {"analytic values equal exhaustive oracle", ch.pass, ch.detail};
}

CriterionResult criterion_round_trips() {
    Checks ch;
    const AuthCode fano = fano_code(), bibd = bibd13_code(), edf = edf_code(), split = splitting_code();
    auto check_scheme_trip = [&](const AuthCode& code, const std::string& tag) {
        ch.expect(threshold_to_authcode(authcode_to_threshold(code)) == code, tag + ": code->scheme->code identity");
    };
    auto check_dual_trip = [&](const AuthCode& code, const std::string& tag) {
        ch.expect(dual(dual(code)) == code, tag + ": dual of dual identity");
    };
    for (auto [code, tag] : {std::pair<const AuthCode&, const char*>{fano, "fano"},
                             {bibd, "(13,3,1)"},
                             {edf, "edf"},
                             {split, "splitting"}}) {
        check_scheme_trip(code, tag);
        check_dual_trip(code, tag);
        check_scheme_trip(dual(code), std::string(tag) + " dual");
    }
    SplitMix64 rng(kPropertySeed + 7);
    int duals_checked = 0;
    for (int i = 0; i < 120; ++i) {
        const AuthCode code = random_code(rng, i % 3);
        check_scheme_trip(code, "random " + std::to_string(i));
        // dual(dual) needs the dual itself to be column-regular, which asks
        // for uniform splitting on top of column regularity
        if (column_regular(code).ok && splitting_number(code)) {
            check_dual_trip(code, "random " + std::to_string(i));
            ++duals_checked;
        }
    }
    ch.expect(duals_checked >= 20, "enough column-regular instances for the dual round trip (got " +
                                       std::to_string(duals_checked) + ")");

    auto byte_trip = [&](const std::string& text, const std::string& tag) {
        std::string again;
        switch (sniff_kind(text)) {
            case FileKind::design: again = emit_design(parse_design(text)); break;
            case FileKind::baseblocks: again = emit_baseblocks(parse_baseblocks(text)); break;
            case FileKind::authcode: again = emit_authcode(parse_authcode(text)); break;
            case FileKind::threshold: again = emit_threshold(parse_threshold(text)); break;
        }
        ch.expect(again == text, tag + ": emit(parse(emit(x))) differs from emit(x)");
    };
    byte_trip(emit_design(split.matrix), "design file");
    byte_trip(emit_baseblocks(BaseBlocks{19, 3, 3, {Row{{1, 7, 11}, {4, 6, 9}, {5, 16, 17}}}}), "baseblocks file");
    byte_trip(emit_baseblocks(BaseBlocks{13, 3, 1, {Row{{0}, {1}, {4}}, Row{{0}, {2}, {8}}}}), "baseblocks file 2");
    byte_trip(emit_authcode(fano), "authcode file");
    byte_trip(emit_authcode(make_authcode(fano.matrix, Distribution::from_weights({Rational(1, 2), Rational(1, 4),
                                                                                   Rational(1, 4)}))),
              "authcode file with sourcedist");
    byte_trip(emit_threshold(authcode_to_threshold(fano)), "threshold file");
    byte_trip(emit_threshold(authcode_to_threshold(make_authcode(
                  edf.matrix, Distribution::from_weights({Rational(3, 5), Rational(1, 5), Rational(1, 5)})))),
              "threshold file with secretdist");
    return {"round trips", ch.pass, ch.detail};
}

CriterionResult criterion_monte_carlo() {
    Checks ch;
    const AuthCode code = fano_code();
    const std::vector<int> strategy = optimal_strategy(code, Attack::key_substitution);
    const Rational exact(1, 3);
    int within = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SimResult sim = monte_carlo(code, Attack::key_substitution, strategy, 100000, seed);
        Rational err = sim.estimate - exact;
        if (err.sign() < 0) err = -err;
        if (err <= Rational(3) * sim.stderr_bound) ++within;
    }
    ch.expect(within >= 19, "only " + std::to_string(within) + " of 20 seeds landed within 3 stderr of 1/3");
    ch.note(std::to_string(within) + "/20 seeds within 3 stderr of 1/3 at 100000 trials");
    return {"seeded simulation of the fano key attack", ch.pass, ch.detail};
}

}  // namespace

std::vector<CriterionResult> run_reference_suite() {
    return {
        criterion_fano_code(),   criterion_fano_threshold(), criterion_bibd13(),
        criterion_edf(),         criterion_splitting(),      criterion_properties(),
        criterion_oracle(),      criterion_round_trips(),    criterion_monte_carlo(),
    };
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace authkit
