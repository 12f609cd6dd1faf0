#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>

namespace denseset {

using Integer = mpz_class;

// Exact arbitrary-precision fraction, always in canonical form:
// denominator > 0 and gcd(|num|, den) = 1.  The substrate of every
// certificate in this library; no floating point enters through here.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}                        // NOLINT(google-explicit-constructor)
    Rational(const Integer& n) : v_(n) {}              // NOLINT(google-explicit-constructor)
    Rational(const Integer& num, const Integer& den);
    Rational(long num, long den);

    // Accepts "a/b", "a", optional leading sign.  Throws std::invalid_argument.
    static Rational parse(const std::string& text);

    const Integer& num() const { return v_.get_num(); }
    const Integer& den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Integer floor() const;
    Integer ceil() const;
    Rational reciprocal() const;
    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational operator-() const;
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t());
        return c <=> 0;
    }

    // Canonical decimal string: "17/24", "-3/8", "5", "0".
    std::string str() const { return v_.get_str(); }
    double to_double() const { return v_.get_d(); }

private:
    mpq_class v_;  // kept canonical by construction
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational abs(const Rational& r) { return r.abs(); }

// r^k for any integer k (k < 0 requires r != 0).
Rational pow(const Rational& r, long k);

// 2^k as an exact rational, k of either sign.
Rational pow2(long k);

// n! as an exact integer.
Integer factorial(unsigned long n);

}  // namespace denseset
