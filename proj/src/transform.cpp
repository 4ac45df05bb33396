#include "authkit/transform.hpp"

#include <algorithm>
#include <stdexcept>

namespace authkit {

ThresholdScheme authcode_to_threshold(const AuthCode& code) {
    std::vector<DistributionRule> rules;
    const Rational key_weight(1, code.b());
    for (int key = 0; key < code.b(); ++key)
        for (int s = 0; s < code.u(); ++s) {
            const Cell& cell = code.matrix.rows[static_cast<size_t>(key)][static_cast<size_t>(s)];
            const Rational w = key_weight * Rational(1, static_cast<long long>(cell.size()));
            for (int m : cell) rules.push_back({key, m, s, w});
        }
    return make_scheme(code.u(), code.b(), code.v(), code.sources, std::move(rules));
}

AuthCode threshold_to_authcode(const ThresholdScheme& scheme) {
    const Rational key_marginal(1, scheme.share1_count);
    OrderedDesign matrix;
    matrix.v = scheme.share2_count;
    matrix.u = scheme.secret_count;
    matrix.rows.assign(static_cast<size_t>(scheme.share1_count), Row(static_cast<size_t>(scheme.secret_count)));

    // group rules by (share1, secret); rules are sorted by (share1, share2)
    std::vector<std::vector<std::vector<Rational>>> weights(
        static_cast<size_t>(scheme.share1_count),
        std::vector<std::vector<Rational>>(static_cast<size_t>(scheme.secret_count)));
    for (const DistributionRule& r : scheme.rules) {
        matrix.rows[static_cast<size_t>(r.share1)][static_cast<size_t>(r.secret)].push_back(r.share2);
        weights[static_cast<size_t>(r.share1)][static_cast<size_t>(r.secret)].push_back(r.weight);
    }
    for (int v1 = 0; v1 < scheme.share1_count; ++v1)
        for (int s = 0; s < scheme.secret_count; ++s)
            if (weights[static_cast<size_t>(v1)][static_cast<size_t>(s)].empty())
                throw std::invalid_argument("threshold_to_authcode: no rule for share1 " + std::to_string(v1) +
                                            " and secret " + std::to_string(s) +
                                            " (one-share secrecy fails, cell would be empty)");
    for (int v1 = 0; v1 < scheme.share1_count; ++v1)
        for (int s = 0; s < scheme.secret_count; ++s) {
            const auto& ws = weights[static_cast<size_t>(v1)][static_cast<size_t>(s)];
            const Rational uniform = key_marginal / Rational(static_cast<long long>(ws.size()));
            for (const Rational& w : ws)
                if (w != uniform)
                    throw std::invalid_argument(
                        "threshold_to_authcode: share1 " + std::to_string(v1) + ", secret " + std::to_string(s) +
                        ": weight " + w.str() + " is not the uniform " + uniform.str() +
                        " required for equiprobable keys with uniform encoding");
        }
    return make_authcode(std::move(matrix), scheme.secrets);
}

AuthCode dual(const AuthCode& code) {
    RegularityCheck reg = column_regular(code);
    if (!reg.ok)
        throw std::invalid_argument("dual: code is not column-regular (column " + std::to_string(reg.source) +
                                    ", message " + std::to_string(reg.message) + " occurs " +
                                    std::to_string(reg.count) + " times, elsewhere " +
                                    std::to_string(reg.multiplicity) + "); dual keys would not be equiprobable");
    OrderedDesign matrix;
    matrix.v = code.b();  // dual messages are the original keys
    matrix.u = code.u();
    matrix.rows.reserve(static_cast<size_t>(code.v()));
    for (int m = 0; m < code.v(); ++m) {
        Row row(static_cast<size_t>(code.u()));
        for (int s = 0; s < code.u(); ++s) row[static_cast<size_t>(s)] = kappa_s(code, m, s);
        matrix.rows.push_back(std::move(row));
    }
    return make_authcode(std::move(matrix), code.sources);
}

void VerificationReport::add(std::string name, std::string lhs, std::string rhs) {
    Assertion a{std::move(name), lhs == rhs, std::move(lhs), std::move(rhs)};
    all_pass = all_pass && a.pass;
    assertions.push_back(std::move(a));
}

std::string VerificationReport::to_text() const {
    std::string out;
    for (const Assertion& a : assertions)
        out += a.name + " = " + (a.pass ? "pass" : "fail") + " (" + a.lhs + ", " + a.rhs + ")\n";
    return out;
}

VerificationReport verify_equivalence(const AuthCode& code) {
    VerificationReport report;
    const ThresholdScheme scheme = authcode_to_threshold(code);
    const RobustnessReport rob = robustness(scheme);
    const AttackValue ms = message_substitution_value(code);
    const AttackValue ks = key_substitution_value(code);
    report.add("player1 = p_ks", rob.player1.str(), ks.average.str());
    report.add("player2 = p_d1", rob.player2.str(), ms.average.str());
    report.add("epsilon = max(p_d1, p_ks)", rob.epsilon.str(), std::max(ms.average, ks.average).str());
    return report;
}

VerificationReport verify_duality(const AuthCode& code) {
    VerificationReport report;
    const AuthCode f = dual(code);
    const AttackValue ms = message_substitution_value(code);
    const AttackValue ks = key_substitution_value(code);
    const AttackValue dual_ms = message_substitution_value(f);
    const AttackValue dual_ks = key_substitution_value(f);
    report.add("p_d1 = p_ks(dual)", ms.average.str(), dual_ks.average.str());
    report.add("p_ks = p_d1(dual)", ks.average.str(), dual_ms.average.str());

    auto split = splitting_number(code);
    auto dual_split = splitting_number(f);
    if (split) {
        long long expected = static_cast<long long>(code.b()) * *split / code.v();
        report.add("splitting(dual) = bc/v", dual_split ? std::to_string(*dual_split) : "nonuniform",
                   std::to_string(expected));
    } else {
        report.add("splitting(dual) = bc/v", "undefined: nonuniform splitting", "bc/v");
    }
    SecrecyCheck secrecy = perfect_secrecy(f);
    report.add("secrecy(dual)", secrecy.ok ? "ok" : "fail at (m=" + std::to_string(secrecy.message) +
                                                        ", s=" + std::to_string(secrecy.source) + ")",
               "ok");
    report.add("p_d0(dual) = p_d0", p_d0(f).str(), p_d0(code).str());
    report.add("dual(dual) = original", dual(f) == code ? "equal" : "different", "equal");
    return report;
}

}  // namespace authkit
