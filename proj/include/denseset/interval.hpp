#pragma once

#include <iosfwd>

#include "denseset/rational.hpp"

namespace denseset {

// Pair of exact rationals enclosing a real value.  Endpoints are exact, so
// arithmetic here is exact set arithmetic: the result interval contains
// every pointwise result with no rounding anywhere.
class Interval {
public:
    Interval() : lo_(0), hi_(0) {}
    explicit Interval(const Rational& point) : lo_(point), hi_(point) {}
    Interval(Rational lo, Rational hi);

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }

    Rational width() const { return hi_ - lo_; }
    Rational mid() const { return (lo_ + hi_) / Rational(2); }

    bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& other) const {
        return lo_ <= other.lo_ && other.hi_ <= hi_;
    }
    bool is_point() const { return lo_ == hi_; }

    bool strictly_positive() const { return lo_.sign() > 0; }
    bool strictly_negative() const { return hi_.sign() < 0; }
    bool excludes_zero() const { return strictly_positive() || strictly_negative(); }

    // Certified strict containment in the open interval (a, b).
    bool strictly_inside(const Rational& a, const Rational& b) const {
        return a < lo_ && hi_ < b;
    }

    bool intersects(const Interval& other) const {
        return !(hi_ < other.lo_ || other.hi_ < lo_);
    }

    Interval operator-() const { return Interval(-hi_, -lo_); }
    friend Interval operator+(const Interval& a, const Interval& b) {
        return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_);
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        return Interval(a.lo_ - b.hi_, a.hi_ - b.lo_);
    }
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);

    friend Interval operator+(const Interval& a, const Rational& c) {
        return Interval(a.lo_ + c, a.hi_ + c);
    }
    friend Interval operator-(const Interval& a, const Rational& c) {
        return Interval(a.lo_ - c, a.hi_ - c);
    }
    friend Interval operator*(const Interval& a, const Rational& c) {
        return c.sign() >= 0 ? Interval(a.lo_ * c, a.hi_ * c)
                             : Interval(a.hi_ * c, a.lo_ * c);
    }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

    // 1/I; requires the interval to exclude zero.
    Interval reciprocal() const;

    // I^k for k >= 0; requires lo >= 0 (all uses here are on certified
    // nonnegative enclosures, where [lo^k, hi^k] is tight).
    Interval pow_nonneg(unsigned long k) const;

private:
    Rational lo_, hi_;
};

std::ostream& operator<<(std::ostream& os, const Interval& iv);

}  // namespace denseset
