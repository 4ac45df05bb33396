#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace authkit {

/// Exact fraction in canonical form: denominator > 0 and gcd(|num|, den) = 1.
/// Canonical form is enforced on construction, so equality is structural and
/// the ordering agrees with cross-multiplication. Every probability in this
/// library is a Rational; nothing is ever rounded.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long long n) { q_ = make(to_mpz(n), mpz_class(1)); }
    Rational(long long n, long long d) { q_ = make(to_mpz(n), to_mpz(d)); }
    Rational(const mpz_class& n, const mpz_class& d) { q_ = make(n, d); }

    /// Accepts "n", "n/d" and non-canonical fractions ("2/4", "3/-6").
    static Rational parse(std::string_view text);

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }

    /// Always "num/den", e.g. "3/7", "-1/2", "0/1".
    std::string str() const { return num().get_str() + "/" + den().get_str(); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.q_ + b.q_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.q_ - b.q_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.q_ * b.q_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(a.q_ / b.q_);
    }
    Rational operator-() const { return Rational(mpq_class(-q_)); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t()) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t()) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) {}  // already canonical (gmp arithmetic keeps it so)

    static mpz_class to_mpz(long long x) {
        // mpz_class has no long long constructor on LLP64-safe paths; go via string for big values.
        if (x >= -2147483648LL && x <= 2147483647LL) return mpz_class(static_cast<int>(x));
        return mpz_class(std::to_string(x));
    }
    static mpq_class make(mpz_class n, mpz_class d);

    mpq_class q_;
};

/// Canonical fraction n/d; throws std::domain_error when d = 0.
inline Rational rat(long long n, long long d) { return Rational(n, d); }

}  // namespace authkit
