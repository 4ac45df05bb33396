#include "authkit/oracle.hpp"

#include <algorithm>
#include <string>

// Everything in this file recomputes membership and decoding by raw scans of
// the matrix or rule table on purpose. Do not "simplify" it to call the
// analytic helpers: the point is an independent route to the same numbers.

namespace authkit {

namespace {

void check_budget(long long need, long long budget, const std::string& what) {
    if (need > budget)
        throw BudgetExceeded("exhaustive " + what + " needs " + std::to_string(need) +
                             " elementary outcomes, budget is " + std::to_string(budget));
}

bool scan_contains(const Cell& cell, int m) {
    for (int x : cell)
        if (x == m) return true;
    return false;
}

// index of the cell of the row containing m, or -1
int scan_position(const Row& row, int m) {
    for (size_t i = 0; i < row.size(); ++i)
        if (scan_contains(row[i], m)) return static_cast<int>(i);
    return -1;
}

long long matrix_entries(const AuthCode& code) {
    long long total = 0;
    for (const Row& row : code.matrix.rows)
        for (const Cell& cell : row) total += static_cast<long long>(cell.size());
    return total;
}

Rational exhaustive_impersonation(const AuthCode& code, long long budget) {
    check_budget(static_cast<long long>(code.v()) * code.b(), budget, "impersonation");
    Rational best;
    for (int m = 0; m < code.v(); ++m) {
        long long hits = 0;
        for (const Row& row : code.matrix.rows)
            if (scan_position(row, m) >= 0) ++hits;
        Rational value(hits, code.b());
        if (value > best) best = value;
    }
    return best;
}

Rational exhaustive_message_substitution(const AuthCode& code, long long budget) {
    check_budget(static_cast<long long>(code.v()) * std::max(0, code.v() - 1) * matrix_entries(code), budget,
                 "message substitution");
    Rational total;
    for (int m = 0; m < code.v(); ++m) {
        Rational best;
        for (int sub = 0; sub < code.v(); ++sub) {
            if (sub == m) continue;
            Rational win;
            for (int key = 0; key < code.b(); ++key) {
                const Row& row = code.matrix.rows[static_cast<size_t>(key)];
                for (int s = 0; s < static_cast<int>(row.size()); ++s)
                    for (int encoded : row[static_cast<size_t>(s)]) {
                        if (encoded != m) continue;
                        int target = scan_position(row, sub);
                        if (target >= 0 && target != s)
                            win += Rational(1, code.b()) * code.sources[s] *
                                   Rational(1, static_cast<long long>(row[static_cast<size_t>(s)].size()));
                    }
            }
            if (win > best) best = win;
        }
        total += best;
    }
    return total;
}

Rational exhaustive_key_substitution(const AuthCode& code, long long budget) {
    if (code.b() < 2) throw std::invalid_argument("key substitution needs at least two keys");
    check_budget(static_cast<long long>(code.b() - 1) * matrix_entries(code), budget, "key substitution");
    Rational total;
    for (int key = 0; key < code.b(); ++key) {
        const Row& row = code.matrix.rows[static_cast<size_t>(key)];
        Rational best;
        for (int sub = 0; sub < code.b(); ++sub) {
            if (sub == key) continue;
            const Row& sub_row = code.matrix.rows[static_cast<size_t>(sub)];
            Rational win;
            for (int s = 0; s < static_cast<int>(row.size()); ++s)
                for (int encoded : row[static_cast<size_t>(s)]) {
                    int target = scan_position(sub_row, encoded);
                    if (target >= 0 && target != s)
                        win += code.sources[s] * Rational(1, static_cast<long long>(row[static_cast<size_t>(s)].size()));
                }
            if (win > best) best = win;
        }
        total += Rational(1, code.b()) * best;
    }
    return total;
}

Rational exhaustive_deception(const ThresholdScheme& scheme, int side, long long budget) {
    const int alphabet = side == 1 ? scheme.share1_count : scheme.share2_count;
    check_budget(static_cast<long long>(std::max(0, alphabet - 1)) * static_cast<long long>(scheme.rules.size()),
                 budget, "deception");
    // local reconstruction table straight from the raw rule list
    std::vector<std::vector<int>> secret_of(static_cast<size_t>(scheme.share1_count),
                                            std::vector<int>(static_cast<size_t>(scheme.share2_count), -1));
    for (const DistributionRule& r : scheme.rules)
        secret_of[static_cast<size_t>(r.share1)][static_cast<size_t>(r.share2)] = r.secret;
    Rational total;
    for (int value = 0; value < alphabet; ++value) {
        Rational best;
        for (int substitute = 0; substitute < alphabet; ++substitute) {
            if (substitute == value) continue;
            Rational win;
            for (const DistributionRule& r : scheme.rules) {
                if ((side == 1 ? r.share1 : r.share2) != value) continue;
                int result = side == 1 ? secret_of[static_cast<size_t>(substitute)][static_cast<size_t>(r.share2)]
                                       : secret_of[static_cast<size_t>(r.share1)][static_cast<size_t>(substitute)];
                if (result >= 0 && result != r.secret) win += scheme.secrets[r.secret] * r.weight;
            }
            if (win > best) best = win;
        }
        total += best;
    }
    return total;
}

}  // namespace

Rational exhaustive_value(const AuthCode& code, Attack attack, long long budget) {
    switch (attack) {
        case Attack::impersonation:
            return exhaustive_impersonation(code, budget);
        case Attack::message_substitution:
            return exhaustive_message_substitution(code, budget);
        case Attack::key_substitution:
            return exhaustive_key_substitution(code, budget);
        default:
            throw std::invalid_argument("deception games act on threshold schemes");
    }
}

Rational exhaustive_value(const ThresholdScheme& scheme, Attack attack, long long budget) {
    switch (attack) {
        case Attack::deception_p1:
            return exhaustive_deception(scheme, 1, budget);
        case Attack::deception_p2:
            return exhaustive_deception(scheme, 2, budget);
        default:
            throw std::invalid_argument("code attacks act on authentication codes");
    }
}

Rational exhaustive_value(const GameSpec& spec, long long budget) {
    if (std::holds_alternative<AuthCode>(spec.target))
        return exhaustive_value(std::get<AuthCode>(spec.target), spec.attack, budget);
    return exhaustive_value(std::get<ThresholdScheme>(spec.target), spec.attack, budget);
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("below(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % n;
}

namespace {

constexpr std::uint64_t kShardSize = 4096;

std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t x = n, y = (x + 1) / 2;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

// exact categorical sampling: cumulative numerators over the lcm denominator
struct WeightSampler {
    std::uint64_t total = 1;
    std::vector<std::uint64_t> cumulative;

    explicit WeightSampler(const std::vector<Rational>& weights) {
        mpz_class common(1);
        for (const Rational& w : weights) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), w.den().get_mpz_t());
        if (!common.fits_ulong_p())
            throw std::invalid_argument("monte_carlo: distribution too fine-grained to sample in 64 bits");
        total = common.get_ui();
        mpz_class acc(0);
        for (const Rational& w : weights) {
            acc += w.num() * (common / w.den());
            if (!acc.fits_ulong_p()) throw std::invalid_argument("monte_carlo: cumulative weight overflow");
            cumulative.push_back(acc.get_ui());
        }
    }

    int draw(SplitMix64& rng) const {
        std::uint64_t x = rng.below(total);
        for (size_t i = 0; i < cumulative.size(); ++i)
            if (x < cumulative[i]) return static_cast<int>(i);
        return static_cast<int>(cumulative.size()) - 1;  // unreachable for a valid distribution
    }
};

SimResult pack_result(std::uint64_t trials, std::uint64_t wins, std::uint64_t seed) {
    SimResult result;
    result.trials = trials;
    result.wins = wins;
    result.seed = seed;
    result.estimate = Rational(mpz_class(std::to_string(wins)), mpz_class(std::to_string(trials)));
    result.stderr_bound = Rational(mpz_class(1), mpz_class(2) * mpz_class(std::to_string(isqrt_u64(trials))));
    return result;
}

}  // namespace

SimResult monte_carlo(const AuthCode& code, Attack attack, const std::vector<int>& strategy,
                      std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("monte_carlo: need at least one trial");
    switch (attack) {
        case Attack::impersonation:
            if (strategy.size() != 1 || strategy[0] < 0 || strategy[0] >= code.v())
                throw std::invalid_argument("monte_carlo: impersonation strategy is one message id");
            break;
        case Attack::message_substitution:
            if (static_cast<int>(strategy.size()) != code.v())
                throw std::invalid_argument("monte_carlo: strategy must cover every observable message");
            for (int m = 0; m < code.v(); ++m)
                if (strategy[static_cast<size_t>(m)] == m || strategy[static_cast<size_t>(m)] < 0 ||
                    strategy[static_cast<size_t>(m)] >= code.v())
                    throw std::invalid_argument("monte_carlo: strategy maps message " + std::to_string(m) +
                                                " to an invalid substitute");
            break;
        case Attack::key_substitution:
            if (static_cast<int>(strategy.size()) != code.b())
                throw std::invalid_argument("monte_carlo: strategy must cover every observable key");
            for (int k = 0; k < code.b(); ++k)
                if (strategy[static_cast<size_t>(k)] == k || strategy[static_cast<size_t>(k)] < 0 ||
                    strategy[static_cast<size_t>(k)] >= code.b())
                    throw std::invalid_argument("monte_carlo: strategy maps key " + std::to_string(k) +
                                                " to an invalid substitute");
            break;
        default:
            throw std::invalid_argument("monte_carlo: deception games are simulated on the converted code");
    }

    const WeightSampler sampler(code.sources.weights());
    std::uint64_t wins = 0;
    const std::uint64_t shards = (trials + kShardSize - 1) / kShardSize;
    for (std::uint64_t shard = 0; shard < shards; ++shard) {
        SplitMix64 rng(seed + shard);
        const std::uint64_t upto = std::min(trials, (shard + 1) * kShardSize);
        for (std::uint64_t t = shard * kShardSize; t < upto; ++t) {
            const int key = static_cast<int>(rng.below(static_cast<std::uint64_t>(code.b())));
            const int s = sampler.draw(rng);
            const Row& row = code.matrix.rows[static_cast<size_t>(key)];
            const Cell& cell = row[static_cast<size_t>(s)];
            const int m = cell[static_cast<size_t>(rng.below(cell.size()))];
            bool win = false;
            switch (attack) {
                case Attack::impersonation: {
                    win = scan_position(row, strategy[0]) >= 0;
                    break;
                }
                case Attack::message_substitution: {
                    int target = scan_position(row, strategy[static_cast<size_t>(m)]);
                    win = target >= 0 && target != s;
                    break;
                }
                case Attack::key_substitution: {
                    const Row& sub_row = code.matrix.rows[static_cast<size_t>(strategy[static_cast<size_t>(key)])];
                    int target = scan_position(sub_row, m);
                    win = target >= 0 && target != s;
                    break;
                }
                default:
                    break;
            }
            if (win) ++wins;
        }
    }
    return pack_result(trials, wins, seed);
}

SimResult monte_carlo(const ThresholdScheme& scheme, Attack attack, const std::vector<int>& strategy,
                      std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("monte_carlo: need at least one trial");
    if (attack != Attack::deception_p1 && attack != Attack::deception_p2)
        throw std::invalid_argument("monte_carlo: schemes play deception games");
    const int side = attack == Attack::deception_p1 ? 1 : 2;
    const int alphabet = side == 1 ? scheme.share1_count : scheme.share2_count;
    if (static_cast<int>(strategy.size()) != alphabet)
        throw std::invalid_argument("monte_carlo: strategy must cover every observable share");
    for (int v = 0; v < alphabet; ++v)
        if (strategy[static_cast<size_t>(v)] == v || strategy[static_cast<size_t>(v)] < 0 ||
            strategy[static_cast<size_t>(v)] >= alphabet)
            throw std::invalid_argument("monte_carlo: strategy maps share " + std::to_string(v) +
                                        " to an invalid substitute");

    const WeightSampler secret_sampler(scheme.secrets.weights());
    // per-secret rule samplers
    std::vector<std::vector<size_t>> rules_of(static_cast<size_t>(scheme.secret_count));
    for (size_t i = 0; i < scheme.rules.size(); ++i)
        rules_of[static_cast<size_t>(scheme.rules[i].secret)].push_back(i);
    std::vector<WeightSampler> rule_samplers;
    for (int s = 0; s < scheme.secret_count; ++s) {
        std::vector<Rational> ws;
        for (size_t i : rules_of[static_cast<size_t>(s)]) ws.push_back(scheme.rules[i].weight);
        rule_samplers.push_back(WeightSampler(ws));
    }
    std::vector<std::vector<int>> secret_of(static_cast<size_t>(scheme.share1_count),
                                            std::vector<int>(static_cast<size_t>(scheme.share2_count), -1));
    for (const DistributionRule& r : scheme.rules)
        secret_of[static_cast<size_t>(r.share1)][static_cast<size_t>(r.share2)] = r.secret;

    std::uint64_t wins = 0;
    const std::uint64_t shards = (trials + kShardSize - 1) / kShardSize;
    for (std::uint64_t shard = 0; shard < shards; ++shard) {
        SplitMix64 rng(seed + shard);
        const std::uint64_t upto = std::min(trials, (shard + 1) * kShardSize);
        for (std::uint64_t t = shard * kShardSize; t < upto; ++t) {
            const int s = secret_sampler.draw(rng);
            const DistributionRule& r =
                scheme.rules[rules_of[static_cast<size_t>(s)][static_cast<size_t>(
                    rule_samplers[static_cast<size_t>(s)].draw(rng))]];
            const int v1 = side == 1 ? strategy[static_cast<size_t>(r.share1)] : r.share1;
            const int v2 = side == 2 ? strategy[static_cast<size_t>(r.share2)] : r.share2;
            const int result = secret_of[static_cast<size_t>(v1)][static_cast<size_t>(v2)];
            if (result >= 0 && result != s) ++wins;
        }
    }
    return pack_result(trials, wins, seed);
}

SimResult monte_carlo(const GameSpec& spec, const std::vector<int>& strategy, std::uint64_t trials,
                      std::uint64_t seed) {
    if (std::holds_alternative<AuthCode>(spec.target))
        return monte_carlo(std::get<AuthCode>(spec.target), spec.attack, strategy, trials, seed);
    return monte_carlo(std::get<ThresholdScheme>(spec.target), spec.attack, strategy, trials, seed);
}

}  // namespace authkit
