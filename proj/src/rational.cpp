#include "denseset/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace denseset {

Rational::Rational(const Integer& num, const Integer& den) : v_(num, den) {
    if (sgn(den) == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Rational::parse: empty string");
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("Rational::parse: not a rational: '" + text + "'");
    if (sgn(q.get_den()) == 0)
        throw std::invalid_argument("Rational::parse: zero denominator: '" + text + "'");
    q.canonicalize();
    Rational r;
    r.v_ = q;
    return r;
}

Integer Rational::floor() const {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return q;
}

Integer Rational::ceil() const {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return q;
}

Rational Rational::reciprocal() const {
    if (is_zero()) throw std::domain_error("Rational::reciprocal of zero");
    return Rational(den(), num());
}

Rational Rational::operator-() const {
    Rational r;
    r.v_ = -v_;
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& r, long k) {
    if (k == 0) return Rational(1);
    bool invert = k < 0;
    unsigned long e = invert ? -static_cast<unsigned long>(k) : static_cast<unsigned long>(k);
    if (invert && r.is_zero()) throw std::domain_error("pow: 0 to negative exponent");
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), r.num().get_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), r.den().get_mpz_t(), e);
    return invert ? Rational(d, n) : Rational(n, d);
}

Rational pow2(long k) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? Rational(Integer(1), p) : Rational(p);
}

Integer factorial(unsigned long n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

}  // namespace denseset
