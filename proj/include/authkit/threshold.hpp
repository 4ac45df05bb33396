#pragma once

#include <optional>
#include <string>
#include <vector>

#include "authkit/distribution.hpp"
#include "authkit/rational.hpp"

namespace authkit {

/// One dealable pair of shares for a secret, with its conditional probability
/// Prob[(v1,v2) | s]. Weights are conditional so the secret distribution can
/// be swapped without rewriting the table.
struct DistributionRule {
    int share1 = 0, share2 = 0, secret = 0;
    Rational weight;

    bool operator==(const DistributionRule&) const = default;
};

/// Robust (2,2)-threshold scheme as a weighted rule table.
/// Invariants: rules of each secret sum to 1, every (share1, share2) pair
/// names at most one secret, all weights are positive.
struct ThresholdScheme {
    int secret_count = 0;
    int share1_count = 0, share2_count = 0;  // alphabet sizes
    Distribution secrets;
    std::vector<DistributionRule> rules;  // sorted by (share1, share2, secret)

    bool operator==(const ThresholdScheme&) const = default;
};

/// Validates the invariants, sorts the rules, and builds the scheme; the
/// three-argument form takes the secrets as uniform.
ThresholdScheme make_scheme(int secret_count, int share1_count, int share2_count,
                            std::vector<DistributionRule> rules);
ThresholdScheme make_scheme(int secret_count, int share1_count, int share2_count, Distribution secrets,
                            std::vector<DistributionRule> rules);

/// The unique secret of a matching rule, or nullopt for "no secret" (reject).
std::optional<int> rec(const ThresholdScheme& scheme, int share1, int share2);

struct ShareSecrecyCheck {
    bool ok = false;
    int share_index = 0;  // 1 or 2
    int share_value = -1, secret = -1;
    Rational conditional, marginal;
};

/// ok iff Prob[s | v1] = Prob[s] and Prob[s | v2] = Prob[s] hold exactly for
/// every share value of positive probability.
ShareSecrecyCheck share_secrecy(const ThresholdScheme& scheme);

struct RobustnessReport {
    Rational epsilon;  // max(player1, player2)
    Rational player1, player2;
    Rational player1_conditional_max, player2_conditional_max;
};

/// Exact deception-game values. Each player substitutes their own observed
/// share with the per-observation best alternative and wins when Rec yields a
/// different secret (not reject); only deterministic substitutions matter for
/// this objective. The headline value averages over observations; the
/// conditional maxima are reported alongside.
RobustnessReport robustness(const ThresholdScheme& scheme);

}  // namespace authkit
