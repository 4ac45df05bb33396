#include "authkit/authcode.hpp"

#include <algorithm>
#include <stdexcept>

namespace authkit {

namespace {

void require_ids(const AuthCode& code, int key, int message) {
    if (key < 0 || key >= code.b())
        throw std::out_of_range("key id " + std::to_string(key) + " out of range 0.." + std::to_string(code.b() - 1));
    if (message < 0 || message >= code.v())
        throw std::out_of_range("message id " + std::to_string(message) + " out of range 0.." +
                                std::to_string(code.v() - 1));
}

bool cell_contains(const Cell& cell, int message) {
    return std::binary_search(cell.begin(), cell.end(), message);
}

// dec[K][m] = source of m under key K, or -1.
std::vector<std::vector<int>> decode_table(const AuthCode& code) {
    std::vector<std::vector<int>> dec(static_cast<size_t>(code.b()),
                                      std::vector<int>(static_cast<size_t>(code.v()), -1));
    for (int key = 0; key < code.b(); ++key)
        for (int s = 0; s < code.u(); ++s)
            for (int m : code.matrix.rows[static_cast<size_t>(key)][static_cast<size_t>(s)])
                dec[static_cast<size_t>(key)][static_cast<size_t>(m)] = s;
    return dec;
}

}  // namespace

AuthCode make_authcode(OrderedDesign matrix) {
    int u = matrix.u;
    return make_authcode(std::move(matrix), Distribution::uniform(u));
}

AuthCode make_authcode(OrderedDesign matrix, Distribution sources) {
    require_well_formed(matrix);
    if (matrix.rows.empty()) throw std::invalid_argument("authcode: needs at least one key");
    if (matrix.u < 1) throw std::invalid_argument("authcode: needs at least one source");
    if (sources.size() != matrix.u)
        throw std::invalid_argument("authcode: source distribution has " + std::to_string(sources.size()) +
                                    " weights for " + std::to_string(matrix.u) + " sources");
    return AuthCode{std::move(matrix), std::move(sources)};
}

const Cell& encoding_cell(const AuthCode& code, int key, int source) {
    require_ids(code, key, 0);
    if (source < 0 || source >= code.u()) throw std::out_of_range("source id out of range");
    return code.matrix.rows[static_cast<size_t>(key)][static_cast<size_t>(source)];
}

std::optional<int> decode(const AuthCode& code, int key, int message) {
    require_ids(code, key, message);
    const Row& row = code.matrix.rows[static_cast<size_t>(key)];
    for (int s = 0; s < code.u(); ++s)
        if (cell_contains(row[static_cast<size_t>(s)], message)) return s;
    return std::nullopt;
}

std::vector<int> mu(const AuthCode& code, int key) {
    require_ids(code, key, 0);
    std::vector<int> out;
    for (const Cell& cell : code.matrix.rows[static_cast<size_t>(key)])
        out.insert(out.end(), cell.begin(), cell.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> kappa(const AuthCode& code, int message) {
    require_ids(code, 0, message);
    std::vector<int> out;
    for (int key = 0; key < code.b(); ++key)
        for (const Cell& cell : code.matrix.rows[static_cast<size_t>(key)])
            if (cell_contains(cell, message)) {
                out.push_back(key);
                break;
            }
    return out;
}

std::vector<int> kappa_s(const AuthCode& code, int message, int source) {
    require_ids(code, 0, message);
    if (source < 0 || source >= code.u()) throw std::out_of_range("source id out of range");
    std::vector<int> out;
    for (int key = 0; key < code.b(); ++key)
        if (cell_contains(code.matrix.rows[static_cast<size_t>(key)][static_cast<size_t>(source)], message))
            out.push_back(key);
    return out;
}

Rational p_d0(const AuthCode& code) {
    long long best = 0;
    for (int m = 0; m < code.v(); ++m)
        best = std::max(best, static_cast<long long>(kappa(code, m).size()));
    return Rational(best, code.b());
}

AttackValue message_substitution_value(const AuthCode& code) {
    const auto dec = decode_table(code);
    const Rational key_weight(1, code.b());
    AttackValue out;
    for (int m = 0; m < code.v(); ++m) {
        // joint weight of (K, s, m) for every key where m is valid
        std::vector<std::pair<int, Rational>> mass;  // (source of m under K, weight), indexed by key
        mass.reserve(static_cast<size_t>(code.b()));
        Rational prob_m;
        std::vector<int> keys;
        for (int key = 0; key < code.b(); ++key) {
            int s = dec[static_cast<size_t>(key)][static_cast<size_t>(m)];
            if (s < 0) continue;
            const Cell& cell = code.matrix.rows[static_cast<size_t>(key)][static_cast<size_t>(s)];
            Rational w = key_weight * code.sources[s] * Rational(1, static_cast<long long>(cell.size()));
            prob_m += w;
            mass.push_back({s, w});
            keys.push_back(key);
        }
        Rational best;
        for (int sub = 0; sub < code.v(); ++sub) {
            if (sub == m) continue;
            Rational win;
            for (size_t i = 0; i < keys.size(); ++i) {
                int target = dec[static_cast<size_t>(keys[i])][static_cast<size_t>(sub)];
                if (target >= 0 && target != mass[i].first) win += mass[i].second;
            }
            if (win > best) best = win;  // first maximum wins: smaller substituted id
        }
        out.average += best;
        if (!prob_m.is_zero()) {
            Rational conditional = best / prob_m;
            if (conditional > out.conditional_max) out.conditional_max = conditional;
        }
    }
    return out;
}

AttackValue key_substitution_value(const AuthCode& code) {
    if (code.b() < 2) throw std::invalid_argument("key substitution needs at least two keys");
    const auto dec = decode_table(code);
    AttackValue out;
    for (int key = 0; key < code.b(); ++key) {
        // Prob[m | K] over the observed key's row
        const Row& row = code.matrix.rows[static_cast<size_t>(key)];
        Rational best;
        for (int sub = 0; sub < code.b(); ++sub) {
            if (sub == key) continue;
            Rational win;
            for (int s = 0; s < code.u(); ++s) {
                const Cell& cell = row[static_cast<size_t>(s)];
                const Rational w = code.sources[s] * Rational(1, static_cast<long long>(cell.size()));
                for (int m : cell) {
                    int target = dec[static_cast<size_t>(sub)][static_cast<size_t>(m)];
                    if (target >= 0 && target != s) win += w;
                }
            }
            if (win > best) best = win;
        }
        out.average += Rational(1, code.b()) * best;
        if (best > out.conditional_max) out.conditional_max = best;
    }
    return out;
}

SecrecyCheck perfect_secrecy(const AuthCode& code) {
    // Prob[m | s] from the matrix alone; Prob[m] mixes in the source weights.
    std::vector<std::vector<Rational>> conditional(static_cast<size_t>(code.v()),
                                                   std::vector<Rational>(static_cast<size_t>(code.u())));
    const Rational key_weight(1, code.b());
    for (int key = 0; key < code.b(); ++key)
        for (int s = 0; s < code.u(); ++s) {
            const Cell& cell = code.matrix.rows[static_cast<size_t>(key)][static_cast<size_t>(s)];
            const Rational w = key_weight * Rational(1, static_cast<long long>(cell.size()));
            for (int m : cell) conditional[static_cast<size_t>(m)][static_cast<size_t>(s)] += w;
        }
    SecrecyCheck out;
    for (int m = 0; m < code.v(); ++m) {
        Rational marginal;
        for (int s = 0; s < code.u(); ++s)
            marginal += code.sources[s] * conditional[static_cast<size_t>(m)][static_cast<size_t>(s)];
        for (int s = 0; s < code.u(); ++s)
            if (conditional[static_cast<size_t>(m)][static_cast<size_t>(s)] != marginal) {
                out.message = m;
                out.source = s;
                out.conditional = conditional[static_cast<size_t>(m)][static_cast<size_t>(s)];
                out.marginal = marginal;
                return out;
            }
    }
    out.ok = true;
    return out;
}

RegularityCheck column_regular(const AuthCode& code) {
    std::vector<std::vector<long long>> count(static_cast<size_t>(code.u()),
                                              std::vector<long long>(static_cast<size_t>(code.v()), 0));
    for (const Row& row : code.matrix.rows)
        for (int s = 0; s < code.u(); ++s)
            for (int m : row[static_cast<size_t>(s)]) ++count[static_cast<size_t>(s)][static_cast<size_t>(m)];
    RegularityCheck out;
    const long long expected = count[0][0];
    for (int s = 0; s < code.u(); ++s)
        for (int m = 0; m < code.v(); ++m)
            if (count[static_cast<size_t>(s)][static_cast<size_t>(m)] != expected) {
                out.source = s;
                out.message = m;
                out.count = count[static_cast<size_t>(s)][static_cast<size_t>(m)];
                out.multiplicity = expected;
                return out;
            }
    out.ok = true;
    out.multiplicity = expected;
    return out;
}

std::optional<int> splitting_number(const AuthCode& code) {
    int c = static_cast<int>(code.matrix.rows[0][0].size());
    for (const Row& row : code.matrix.rows)
        for (const Cell& cell : row)
            if (static_cast<int>(cell.size()) != c) return std::nullopt;
    return c;
}

Bounds bounds(int sources, int messages, int c) {
    if (messages < 2) throw std::invalid_argument("bounds: need at least two messages");
    return Bounds{Rational(static_cast<long long>(c) * sources, messages),
                  Rational(static_cast<long long>(c) * (sources - 1), messages - 1)};
}

std::string AnalysisReport::to_text() const {
    auto bound_line = [&](const char* name, const Rational& bound, bool met) {
        return std::string(name) + " = " + bound.str() + (met ? " (met)" : " (not met)") + "\n";
    };
    std::string out;
    out += "p_d0 = " + p_d0.str() + "\n";
    out += "p_d1 = " + p_d1.str() + "\n";
    out += "p_ks = " + p_ks.str() + "\n";
    out += "p_d1_conditional_max = " + p_d1_conditional_max.str() + "\n";
    out += "p_ks_conditional_max = " + p_ks_conditional_max.str() + "\n";
    if (secrecy.ok)
        out += "secrecy = ok\n";
    else
        out += "secrecy = fail (m=" + std::to_string(secrecy.message) + ", s=" + std::to_string(secrecy.source) +
               ": Prob[m|s] = " + secrecy.conditional.str() + ", Prob[m] = " + secrecy.marginal.str() + ")\n";
    if (column.ok)
        out += "column_regular = " + std::to_string(column.multiplicity) + "\n";
    else
        out += "column_regular = fail (column " + std::to_string(column.source) + ", message " +
               std::to_string(column.message) + " occurs " + std::to_string(column.count) + " times, expected " +
               std::to_string(column.multiplicity) + ")\n";
    out += "splitting = " + (splitting ? std::to_string(*splitting) : std::string("nonuniform")) + "\n";
    if (limits) {
        out += bound_line("bound_p_d0", limits->impersonation, p_d0_meets_bound);
        out += bound_line("bound_p_d1", limits->substitution, p_d1_meets_bound);
    } else {
        const char* why = splitting ? "needs at least two messages" : "nonuniform splitting";
        out += "bound_p_d0 = undefined (" + std::string(why) + ")\n";
        out += "bound_p_d1 = undefined (" + std::string(why) + ")\n";
    }
    return out;
}

AnalysisReport analyze(const AuthCode& code) {
    AnalysisReport report;
    report.p_d0 = p_d0(code);
    AttackValue ms = message_substitution_value(code);
    AttackValue ks = key_substitution_value(code);
    report.p_d1 = ms.average;
    report.p_d1_conditional_max = ms.conditional_max;
    report.p_ks = ks.average;
    report.p_ks_conditional_max = ks.conditional_max;
    report.secrecy = perfect_secrecy(code);
    report.column = column_regular(code);
    report.splitting = splitting_number(code);
    if (report.splitting && code.v() >= 2) {
        report.limits = bounds(code.u(), code.v(), *report.splitting);
        report.p_d0_meets_bound = report.p_d0 == report.limits->impersonation;
        report.p_d1_meets_bound = report.p_d1 == report.limits->substitution;
    }
    return report;
}

std::vector<int> optimal_strategy(const AuthCode& code, Attack attack) {
    const auto dec = decode_table(code);
    switch (attack) {
        case Attack::impersonation: {
            int best_m = 0;
            size_t best = kappa(code, 0).size();
            for (int m = 1; m < code.v(); ++m) {
                size_t count = kappa(code, m).size();
                if (count > best) {
                    best = count;
                    best_m = m;
                }
            }
            return {best_m};
        }
        case Attack::message_substitution: {
            if (code.v() < 2) throw std::invalid_argument("no substitute message exists");
            std::vector<int> strategy(static_cast<size_t>(code.v()));
            for (int m = 0; m < code.v(); ++m) {
                Rational best(-1);
                int pick = -1;
                for (int sub = 0; sub < code.v(); ++sub) {
                    if (sub == m) continue;
                    Rational win;
                    for (int key = 0; key < code.b(); ++key) {
                        int s = dec[static_cast<size_t>(key)][static_cast<size_t>(m)];
                        int target = s < 0 ? -1 : dec[static_cast<size_t>(key)][static_cast<size_t>(sub)];
                        if (s >= 0 && target >= 0 && target != s) {
                            const Cell& cell = code.matrix.rows[static_cast<size_t>(key)][static_cast<size_t>(s)];
                            win += Rational(1, code.b()) * code.sources[s] *
                                   Rational(1, static_cast<long long>(cell.size()));
                        }
                    }
                    if (win > best) {
                        best = win;
                        pick = sub;
                    }
                }
                strategy[static_cast<size_t>(m)] = pick;
            }
            return strategy;
        }
        case Attack::key_substitution: {
            if (code.b() < 2) throw std::invalid_argument("no substitute key exists");
            std::vector<int> strategy(static_cast<size_t>(code.b()));
            for (int key = 0; key < code.b(); ++key) {
                const Row& row = code.matrix.rows[static_cast<size_t>(key)];
                Rational best(-1);
                int pick = -1;
                for (int sub = 0; sub < code.b(); ++sub) {
                    if (sub == key) continue;
                    Rational win;
                    for (int s = 0; s < code.u(); ++s)
                        for (int m : row[static_cast<size_t>(s)]) {
                            int target = dec[static_cast<size_t>(sub)][static_cast<size_t>(m)];
                            if (target >= 0 && target != s)
                                win += code.sources[s] *
                                       Rational(1, static_cast<long long>(row[static_cast<size_t>(s)].size()));
                        }
                    if (win > best) {
                        best = win;
                        pick = sub;
                    }
                }
                strategy[static_cast<size_t>(key)] = pick;
            }
            return strategy;
        }
        default:
            throw std::invalid_argument("optimal_strategy: deception attacks act on threshold schemes");
    }
}

}  // namespace authkit
