#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "authkit/attack.hpp"
#include "authkit/authcode.hpp"
#include "authkit/threshold.hpp"

namespace authkit {

/// Elementary-outcome cap for exhaustive evaluation; exceeding it raises
/// BudgetExceeded, never silent sampling.
inline constexpr long long kEnumerationBudget = 10'000'000;

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GameSpec {
    std::variant<AuthCode, ThresholdScheme> target;
    Attack attack = Attack::impersonation;
};

/// Exact optimal adversary value by plain enumeration of every outcome and
/// every per-observation substitution, working directly off the raw matrix or
/// rule table. This path shares no helper with the analytic formulas; the two
/// must agree exactly on every instance, which is the library's central
/// cross-check.
Rational exhaustive_value(const AuthCode& code, Attack attack, long long budget = kEnumerationBudget);
Rational exhaustive_value(const ThresholdScheme& scheme, Attack attack, long long budget = kEnumerationBudget);
Rational exhaustive_value(const GameSpec& spec, long long budget = kEnumerationBudget);

/// The simulation PRNG: SplitMix64 (Steele, Lea, Vigna). Fixed for the life
/// of the project; golden simulation outputs depend on it.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Unbiased uniform draw from 0..n-1 (rejection on the top remainder).
    std::uint64_t below(std::uint64_t n);
};

struct SimResult {
    std::uint64_t trials = 0, wins = 0;
    Rational estimate;
    Rational stderr_bound;  // 1 / (2 floor(sqrt(trials))), an upper bound on the standard error
    std::uint64_t seed = 0;

    bool operator==(const SimResult&) const = default;
};

/// Reproducible simulation of a fixed substitution strategy. Trials run in
/// shards of 4096; shard i draws from SplitMix64 seeded with seed + i, so the
/// tally is independent of any sharding across workers. For the substitution
/// attacks, strategy[o] is the answer to observation o and must differ from
/// o; for impersonation, strategy[0] is the injected message.
SimResult monte_carlo(const AuthCode& code, Attack attack, const std::vector<int>& strategy,
                      std::uint64_t trials, std::uint64_t seed);

/// Deception-game simulation: strategy maps the cheating player's observed
/// share to the substituted one.
SimResult monte_carlo(const ThresholdScheme& scheme, Attack attack, const std::vector<int>& strategy,
                      std::uint64_t trials, std::uint64_t seed);

SimResult monte_carlo(const GameSpec& spec, const std::vector<int>& strategy, std::uint64_t trials,
                      std::uint64_t seed);

}  // namespace authkit
