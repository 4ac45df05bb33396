#pragma once

#include <optional>
#include <string>
#include <vector>

#include "authkit/rational.hpp"

namespace authkit {

/// Returns an error message if the weights do not form a probability
/// distribution (a negative entry, or a total different from 1).
std::optional<std::string> distribution_error(const std::vector<Rational>& weights);

/// Finite probability distribution over outcomes 0..size()-1.
/// Invariant: all weights >= 0 and they sum to exactly 1.
class Distribution {
public:
    static Distribution uniform(int n);
    static Distribution from_weights(std::vector<Rational> weights);

    int size() const { return static_cast<int>(weights_.size()); }
    const Rational& operator[](int i) const { return weights_.at(static_cast<size_t>(i)); }
    const std::vector<Rational>& weights() const { return weights_; }
    bool is_uniform() const;

    bool operator==(const Distribution&) const = default;

private:
    explicit Distribution(std::vector<Rational> w) : weights_(std::move(w)) {}
    std::vector<Rational> weights_;
};

}  // namespace authkit
