#include "authkit/distribution.hpp"

#include <stdexcept>

namespace authkit {

std::optional<std::string> distribution_error(const std::vector<Rational>& weights) {
    Rational total;
    for (size_t i = 0; i < weights.size(); ++i) {
        if (weights[i].sign() < 0)
            return "negative weight " + weights[i].str() + " at outcome " + std::to_string(i);
        total += weights[i];
    }
    if (total != Rational(1))
        return "total " + total.str() + ", expected 1/1";
    return std::nullopt;
}

Distribution Distribution::uniform(int n) {
    if (n < 1) throw std::invalid_argument("Distribution::uniform: need at least one outcome");
    return Distribution(std::vector<Rational>(static_cast<size_t>(n), Rational(1, n)));
}

Distribution Distribution::from_weights(std::vector<Rational> weights) {
    if (auto err = distribution_error(weights))
        throw std::invalid_argument("Distribution: " + *err);
    return Distribution(std::move(weights));
}

bool Distribution::is_uniform() const {
    const Rational w(1, size());
    for (const Rational& x : weights_)
        if (x != w) return false;
    return true;
}

}  // namespace authkit
