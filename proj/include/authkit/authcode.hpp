#pragma once

#include <optional>
#include <string>
#include <vector>

#include "authkit/attack.hpp"
#include "authkit/design.hpp"
#include "authkit/distribution.hpp"
#include "authkit/rational.hpp"

namespace authkit {

/// Splitting authentication code: rows of the matrix are keys (equiprobable),
/// columns are sources, and cell (K,s) is the set of valid encodings of s
/// under K, one of which is chosen uniformly. Cells of one row are disjoint,
/// so a received message determines its source.
struct AuthCode {
    OrderedDesign matrix;
    Distribution sources;  // one weight per column

    int v() const { return matrix.v; }                              // messages
    int b() const { return static_cast<int>(matrix.rows.size()); }  // keys
    int u() const { return matrix.u; }                              // sources

    bool operator==(const AuthCode&) const = default;
};

/// Validates the matrix invariants (and the distribution size) and builds the
/// code; the one-argument form takes sources as uniform.
AuthCode make_authcode(OrderedDesign matrix);
AuthCode make_authcode(OrderedDesign matrix, Distribution sources);

const Cell& encoding_cell(const AuthCode& code, int key, int source);

/// The unique source with message in e_K(s), if any.
std::optional<int> decode(const AuthCode& code, int key, int message);

/// All messages valid under the key (union of the row's cells), sorted.
std::vector<int> mu(const AuthCode& code, int key);

/// All keys under which the message is valid, sorted.
std::vector<int> kappa(const AuthCode& code, int message);

/// All keys for which the message is a valid encoding of this source.
std::vector<int> kappa_s(const AuthCode& code, int message, int source);

/// Optimal impersonation value: max over messages of |kappa(m)| / b.
Rational p_d0(const AuthCode& code);

struct AttackValue {
    Rational average;          // observation answered optimally, averaged over observations
    Rational conditional_max;  // best conditional success over observations of positive weight
};

/// Optimal message-substitution value (exact).
AttackValue message_substitution_value(const AuthCode& code);

/// Optimal key-substitution value (exact). Throws std::invalid_argument when
/// b < 2: there is no substitute key.
AttackValue key_substitution_value(const AuthCode& code);

struct SecrecyCheck {
    bool ok = false;
    int message = -1, source = -1;  // first violating pair in (message, source) order
    Rational conditional, marginal;
};

/// Perfect secrecy: Prob[m | s] = Prob[m] for every message and source, where
/// Prob[m | s] is computed from the matrix alone (uniform keys, uniform choice
/// within a cell), so the verdict does not depend on zero-weight sources.
SecrecyCheck perfect_secrecy(const AuthCode& code);

struct RegularityCheck {
    bool ok = false;
    long long multiplicity = 0;     // the common count when ok
    int source = -1, message = -1;  // witness when not ok
    long long count = 0;
};

/// ok iff every message occurs the same number of times in every column.
RegularityCheck column_regular(const AuthCode& code);

/// Common cell size, or nullopt when cells vary.
std::optional<int> splitting_number(const AuthCode& code);

struct Bounds {
    Rational impersonation;  // cu/v
    Rational substitution;   // c(u-1)/(v-1)
};

/// Lower bounds on p_d0 and p_d1 for a c-splitting code with u sources and
/// v messages. Throws std::invalid_argument when v < 2.
Bounds bounds(int sources, int messages, int c);

struct AnalysisReport {
    Rational p_d0, p_d1, p_ks;
    Rational p_d1_conditional_max, p_ks_conditional_max;
    SecrecyCheck secrecy;
    RegularityCheck column;
    std::optional<int> splitting;
    std::optional<Bounds> limits;  // absent when splitting is nonuniform
    bool p_d0_meets_bound = false;  // equality with the bound, i.e. optimal
    bool p_d1_meets_bound = false;

    /// `key = value` lines in stable order with exact rationals.
    std::string to_text() const;
};

AnalysisReport analyze(const AuthCode& code);

/// Per-observation argmax substitution (ties to the smaller id) for the three
/// code attacks; for impersonation the result is the single best message.
std::vector<int> optimal_strategy(const AuthCode& code, Attack attack);

}  // namespace authkit
