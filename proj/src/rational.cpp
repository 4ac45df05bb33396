#include "authkit/rational.hpp"

namespace authkit {

mpq_class Rational::make(mpz_class n, mpz_class d) {
    if (sgn(d) == 0) throw std::domain_error("Rational: zero denominator");
    if (sgn(d) < 0) {  // sign lives in the numerator
        n = -n;
        d = -d;
    }
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

Rational Rational::parse(std::string_view text) {
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char ch : s)
            if (ch < '0' || ch > '9') return false;
        return true;
    };
    std::string_view num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    if (!is_int(num) || !is_int(den))
        throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
    return Rational(mpz_class(std::string(num)), mpz_class(std::string(den)));
}

}  // namespace authkit
