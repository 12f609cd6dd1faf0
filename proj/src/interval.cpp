#include "denseset/interval.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace denseset {

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw std::invalid_argument("Interval: lo > hi");
}

Interval operator*(const Interval& a, const Interval& b) {
    const Rational p1 = a.lo_ * b.lo_;
    const Rational p2 = a.lo_ * b.hi_;
    const Rational p3 = a.hi_ * b.lo_;
    const Rational p4 = a.hi_ * b.hi_;
    return Interval(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

Interval operator/(const Interval& a, const Interval& b) {
    return a * b.reciprocal();
}

Interval Interval::reciprocal() const {
    if (!excludes_zero())
        throw std::domain_error("Interval::reciprocal: interval contains zero");
    return Interval(hi_.reciprocal(), lo_.reciprocal());
}

Interval Interval::pow_nonneg(unsigned long k) const {
    if (lo_.sign() < 0)
        throw std::domain_error("Interval::pow_nonneg: negative lower endpoint");
    return Interval(pow(lo_, static_cast<long>(k)), pow(hi_, static_cast<long>(k)));
}

std::ostream& operator<<(std::ostream& os, const Interval& iv) {
    return os << "[" << iv.lo() << ", " << iv.hi() << "]";
}

}  // namespace denseset
