#include "authkit/threshold.hpp"

#include <algorithm>
#include <stdexcept>

namespace authkit {

namespace {

std::string rule_label(const DistributionRule& r) {
    return "rule (" + std::to_string(r.share1) + "," + std::to_string(r.share2) + ";" + std::to_string(r.secret) +
           ")";
}

// share1_count x share2_count table of secrets, -1 for reject.
std::vector<std::vector<int>> rec_table(const ThresholdScheme& scheme) {
    std::vector<std::vector<int>> table(static_cast<size_t>(scheme.share1_count),
                                        std::vector<int>(static_cast<size_t>(scheme.share2_count), -1));
    for (const DistributionRule& r : scheme.rules)
        table[static_cast<size_t>(r.share1)][static_cast<size_t>(r.share2)] = r.secret;
    return table;
}

}  // namespace

ThresholdScheme make_scheme(int secret_count, int share1_count, int share2_count,
                            std::vector<DistributionRule> rules) {
    return make_scheme(secret_count, share1_count, share2_count, Distribution::uniform(secret_count),
                       std::move(rules));
}

ThresholdScheme make_scheme(int secret_count, int share1_count, int share2_count, Distribution secrets,
                            std::vector<DistributionRule> rules) {
    if (secret_count < 1) throw std::invalid_argument("scheme: needs at least one secret");
    if (share1_count < 1 || share2_count < 1) throw std::invalid_argument("scheme: empty share alphabet");
    if (secrets.size() != secret_count)
        throw std::invalid_argument("scheme: secret distribution has " + std::to_string(secrets.size()) +
                                    " weights for " + std::to_string(secret_count) + " secrets");
    std::sort(rules.begin(), rules.end(), [](const DistributionRule& a, const DistributionRule& b) {
        if (a.share1 != b.share1) return a.share1 < b.share1;
        if (a.share2 != b.share2) return a.share2 < b.share2;
        return a.secret < b.secret;
    });
    std::vector<Rational> per_secret(static_cast<size_t>(secret_count));
    for (size_t i = 0; i < rules.size(); ++i) {
        const DistributionRule& r = rules[i];
        if (r.share1 < 0 || r.share1 >= share1_count || r.share2 < 0 || r.share2 >= share2_count ||
            r.secret < 0 || r.secret >= secret_count)
            throw std::invalid_argument("scheme: " + rule_label(r) + " out of range");
        if (!(r.weight > Rational(0))) throw std::invalid_argument("scheme: " + rule_label(r) + " has weight <= 0");
        if (i > 0 && rules[i - 1].share1 == r.share1 && rules[i - 1].share2 == r.share2)
            throw std::invalid_argument("scheme: share pair (" + std::to_string(r.share1) + "," +
                                        std::to_string(r.share2) + ") appears with two secrets");
        per_secret[static_cast<size_t>(r.secret)] += r.weight;
    }
    for (int s = 0; s < secret_count; ++s)
        if (per_secret[static_cast<size_t>(s)] != Rational(1))
            throw std::invalid_argument("scheme: rules of secret " + std::to_string(s) + " sum to " +
                                        per_secret[static_cast<size_t>(s)].str() + ", expected 1/1");
    return ThresholdScheme{secret_count, share1_count, share2_count, std::move(secrets), std::move(rules)};
}

std::optional<int> rec(const ThresholdScheme& scheme, int share1, int share2) {
    if (share1 < 0 || share1 >= scheme.share1_count || share2 < 0 || share2 >= scheme.share2_count)
        throw std::out_of_range("rec: share out of range");
    for (const DistributionRule& r : scheme.rules)
        if (r.share1 == share1 && r.share2 == share2) return r.secret;
    return std::nullopt;
}

ShareSecrecyCheck share_secrecy(const ThresholdScheme& scheme) {
    ShareSecrecyCheck out;
    for (int side = 1; side <= 2; ++side) {
        const int alphabet = side == 1 ? scheme.share1_count : scheme.share2_count;
        std::vector<Rational> share_mass(static_cast<size_t>(alphabet));
        std::vector<std::vector<Rational>> joint(static_cast<size_t>(alphabet),
                                                 std::vector<Rational>(static_cast<size_t>(scheme.secret_count)));
        for (const DistributionRule& r : scheme.rules) {
            int value = side == 1 ? r.share1 : r.share2;
            Rational mass = scheme.secrets[r.secret] * r.weight;
            share_mass[static_cast<size_t>(value)] += mass;
            joint[static_cast<size_t>(value)][static_cast<size_t>(r.secret)] += mass;
        }
        for (int value = 0; value < alphabet; ++value) {
            if (share_mass[static_cast<size_t>(value)].is_zero()) continue;  // unseen share value
            for (int s = 0; s < scheme.secret_count; ++s) {
                Rational conditional =
                    joint[static_cast<size_t>(value)][static_cast<size_t>(s)] / share_mass[static_cast<size_t>(value)];
                if (conditional != scheme.secrets[s]) {
                    out.share_index = side;
                    out.share_value = value;
                    out.secret = s;
                    out.conditional = conditional;
                    out.marginal = scheme.secrets[s];
                    return out;
                }
            }
        }
    }
    out.ok = true;
    return out;
}

RobustnessReport robustness(const ThresholdScheme& scheme) {
    const auto table = rec_table(scheme);
    RobustnessReport report;
    for (int side = 1; side <= 2; ++side) {
        const int alphabet = side == 1 ? scheme.share1_count : scheme.share2_count;
        Rational average, conditional_max;
        for (int value = 0; value < alphabet; ++value) {
            Rational observed_mass;
            Rational best;
            for (int substitute = 0; substitute < alphabet; ++substitute) {
                if (substitute == value) continue;
                Rational win;
                for (const DistributionRule& r : scheme.rules) {
                    if ((side == 1 ? r.share1 : r.share2) != value) continue;
                    int result = side == 1 ? table[static_cast<size_t>(substitute)][static_cast<size_t>(r.share2)]
                                           : table[static_cast<size_t>(r.share1)][static_cast<size_t>(substitute)];
                    if (result >= 0 && result != r.secret) win += scheme.secrets[r.secret] * r.weight;
                }
                if (win > best) best = win;  // ties toward the smaller substituted share
            }
            for (const DistributionRule& r : scheme.rules)
                if ((side == 1 ? r.share1 : r.share2) == value) observed_mass += scheme.secrets[r.secret] * r.weight;
            average += best;
            if (!observed_mass.is_zero()) {
                Rational conditional = best / observed_mass;
                if (conditional > conditional_max) conditional_max = conditional;
            }
        }
        if (side == 1) {
            report.player1 = average;
            report.player1_conditional_max = conditional_max;
        } else {
            report.player2 = average;
            report.player2_conditional_max = conditional_max;
        }
    }
    report.epsilon = std::max(report.player1, report.player2);
    return report;
}

}  // namespace authkit
