#pragma once

#include <string>
#include <vector>

#include "authkit/authcode.hpp"
#include "authkit/threshold.hpp"

namespace authkit {

/// Key becomes share 1, message becomes share 2, source becomes secret: one
/// rule (K, m; s) of weight (1/b)(1/|e_K(s)|) per valid encoding. Secrets
/// inherit the source distribution.
ThresholdScheme authcode_to_threshold(const AuthCode& code);

/// Inverse direction: e_{v1}(s) = { v2 : Rec(v1, v2) = s }. Requires the
/// rule weights to describe uniform keys with uniform in-cell encoding, i.e.
/// for every (v1, s) the weights are equal and sum to 1/a1; every (v1, s)
/// must have at least one rule. Throws std::invalid_argument otherwise.
AuthCode threshold_to_authcode(const ThresholdScheme& scheme);

/// Dual code: roles of keys and messages interchanged, F(m, s) = kappa(m, s).
/// Requires a column-regular input (otherwise the dual's keys would not be
/// equiprobable); throws std::invalid_argument with the witness.
AuthCode dual(const AuthCode& code);

struct Assertion {
    std::string name;
    bool pass = false;
    std::string lhs, rhs;
};

struct VerificationReport {
    bool all_pass = true;
    std::vector<Assertion> assertions;

    void add(std::string name, std::string lhs, std::string rhs);
    /// `name = pass|fail (lhs, rhs)` lines.
    std::string to_text() const;
};

/// Checks the code <-> scheme correspondence on this instance: the converted
/// scheme's deception values per player equal p_ks and p_d1, and epsilon is
/// their maximum.
VerificationReport verify_equivalence(const AuthCode& code);

/// Checks the dual-code identities on this instance: message- and
/// key-substitution values swap under the dual, p_d0 and perfect secrecy
/// carry over, the dual splits bc/v-fold, and dual(dual) is the original.
VerificationReport verify_duality(const AuthCode& code);

}  // namespace authkit
