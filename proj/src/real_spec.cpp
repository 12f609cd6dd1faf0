#include "denseset/real_spec.hpp"

#include <stdexcept>

#include "denseset/errors.hpp"

namespace denseset {

namespace {

// Enclosure of 2*atanh(u) = ln((1+u)/(1-u)) for rational u in [0, 1/3],
// with width <= max_width.  Exact rational partial sums of the series
// 2 * sum_{j>=0} u^(2j+1)/(2j+1).  The truncation after j = J is bounded by
//   sum_{j>J} u^(2j+1)/(2j+1) <= u^(2J+3)/(2J+3) * sum_{i>=0} u^(2i)
//                              = u^(2J+3) / ((2J+3) (1-u^2)),
// a true tail bound since every dropped term is <= the first dropped term
// times a power of u^2 < 1.
Interval atanh2_enclosure(const Rational& u, const Rational& max_width) {
    if (u.is_zero()) return Interval(Rational(0));
    if (u.sign() < 0 || Rational(1, 3) < u)
        throw std::invalid_argument("atanh2_enclosure: u outside [0, 1/3]");

    const Rational u2 = u * u;
    const Rational geom = (Rational(1) - u2).reciprocal();
    Rational sum(0);
    Rational upow = u;  // u^(2j+1)
    unsigned long j = 0;
    while (true) {
        sum += upow / Rational(2 * static_cast<long>(j) + 1);
        Rational tail = upow * u2 / Rational(2 * static_cast<long>(j) + 3) * geom;
        if (Rational(2) * tail <= max_width) {
            Rational lo = Rational(2) * sum;
            return Interval(lo, lo + Rational(2) * tail);
        }
        upow *= u2;
        ++j;
    }
}

// Largest e with 2^e <= x, for rational x >= 1.
long floor_log2(const Rational& x) {
    long e = static_cast<long>(mpz_sizeinbase(x.num().get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(x.den().get_mpz_t(), 2));
    while (pow2(e) > x) --e;
    while (pow2(e + 1) <= x) ++e;
    return e;
}

// Enclosure of ln(x) for rational x > 0 with width <= max_width.
// Reduction: x = 2^e * m with m in [1, 2), so ln x = e*ln2 + 2*atanh(u)
// with u = (m-1)/(m+1) in [0, 1/3); ln2 itself is 2*atanh(1/3).
Interval log_enclosure(const Rational& x, const Rational& max_width) {
    if (x.sign() <= 0) throw std::invalid_argument("log_enclosure: argument <= 0");
    if (x == Rational(1)) return Interval(Rational(0));
    if (x < Rational(1)) return -log_enclosure(x.reciprocal(), max_width);

    const long e = floor_log2(x);
    const Rational m = x / pow2(e);
    const Rational u = (m - Rational(1)) / (m + Rational(1));

    const Rational half = max_width / Rational(2);
    Interval result = atanh2_enclosure(u, half);
    if (e != 0) {
        Rational ln2_width = half / Rational(e);  // e >= 1 here
        Interval ln2 = atanh2_enclosure(Rational(1, 3), ln2_width);
        result = result + ln2 * Rational(e);
    }
    return result;
}

// Enclosure of e from the factorial series: S_n < e < S_n + 1/(n*n!) with
// the sharper lower bound S_n + 1/(n+1)!; the upper tail uses the geometric
// comparison sum_{i>n} 1/i! < (1/n!) sum_{j>=1} (n+1)^-j = 1/(n*n!).
Interval euler_enclosure(const Rational& max_width) {
    Rational sum = Rational(2);   // 1/0! + 1/1!
    Integer fact = 1;             // n!
    unsigned long n = 1;
    while (true) {
        ++n;
        fact *= static_cast<long>(n);
        sum += Rational(Integer(1), fact);
        Rational lo_tail(Integer(1), fact * static_cast<long>(n + 1));  // 1/(n+1)!
        Rational hi_tail(Integer(1), fact * static_cast<long>(n));      // 1/(n*n!)
        if (hi_tail - lo_tail <= max_width)
            return Interval(sum + lo_tail, sum + hi_tail);
    }
}

Interval nth_root_enclosure(const Integer& base, unsigned long degree, long bits) {
    Integer scaled = base;
    const long shift = (bits + 1) * static_cast<long>(degree);
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    Integer root;
    int exact = mpz_root(root.get_mpz_t(), scaled.get_mpz_t(), degree);
    const Rational denom = pow2(bits + 1);
    Rational lo = Rational(root) / denom;
    if (exact) return Interval(lo);
    return Interval(lo, Rational(root + 1) / denom);
}

}  // namespace

RealSpec RealSpec::rational(Rational value) { return RealSpec(RationalLit{std::move(value)}); }

RealSpec RealSpec::nth_root(Integer base, unsigned long degree) {
    if (base < 2) throw std::invalid_argument("RealSpec::nth_root: base must be >= 2");
    if (degree < 2) throw std::invalid_argument("RealSpec::nth_root: degree must be >= 2");
    return RealSpec(NthRoot{std::move(base), degree});
}

RealSpec RealSpec::euler_e() { return RealSpec(EulerE{}); }

RealSpec RealSpec::natural_log(Rational arg) {
    if (arg.sign() <= 0) throw std::invalid_argument("RealSpec::natural_log: argument must be > 0");
    return RealSpec(NaturalLog{std::move(arg)});
}

RealSpec RealSpec::shifted(RealSpec inner, Rational offset) {
    return RealSpec(Shifted{std::make_shared<const RealSpec>(std::move(inner)), std::move(offset)});
}

RealSpec RealSpec::quotient(RealSpec num, RealSpec den, long check_budget_bits) {
    refine_until(approximator(den),
                 [](const Interval& iv) { return iv.excludes_zero(); },
                 8, check_budget_bits, "quotient denominator separation from zero");
    return RealSpec(Quotient{std::make_shared<const RealSpec>(std::move(num)),
                             std::make_shared<const RealSpec>(std::move(den))});
}

Interval approximate(const RealSpec& spec, long bits) {
    if (bits < 1) throw std::invalid_argument("approximate: bits must be >= 1");
    const Rational width = pow2(-bits);

    struct Visitor {
        long bits;
        const Rational& width;

        Interval operator()(const RealSpec::RationalLit& lit) const {
            return Interval(lit.value);
        }
        Interval operator()(const RealSpec::NthRoot& r) const {
            return nth_root_enclosure(r.base, r.degree, bits);
        }
        Interval operator()(const RealSpec::EulerE&) const { return euler_enclosure(width); }
        Interval operator()(const RealSpec::NaturalLog& l) const {
            return log_enclosure(l.arg, width);
        }
        Interval operator()(const RealSpec::Shifted& s) const {
            return approximate(*s.inner, bits) + s.offset;
        }
        Interval operator()(const RealSpec::Quotient& q) const {
            // Grow the inner precision until the quotient interval is narrow
            // enough; terminates because the denominator is bounded away
            // from zero and widths shrink as 2^-k.
            for (long k = bits + 4;; k *= 2) {
                Interval num = approximate(*q.num, k);
                Interval den = approximate(*q.den, k);
                if (!den.excludes_zero()) continue;
                Interval quot = num / den;
                if (quot.width() <= width) return quot;
            }
        }
    };
    return std::visit(Visitor{bits, width}, spec.node());
}

Interval refine_until(const Approximator& apx,
                      const std::function<bool(const Interval&)>& pred,
                      long start_bits, long budget_bits, const char* what) {
    long k = std::max(start_bits, 4L);
    while (true) {
        Interval iv = apx(k);
        if (pred(iv)) return iv;
        if (k >= budget_bits)
            throw RefinementError(std::string("refinement budget exhausted: ") + what);
        k = std::min(k * 2, budget_bits);
    }
}

FloorOutcome try_certified_floor(const Approximator& apx, long hint_bits, long budget_bits) {
    long k = std::max(hint_bits, 4L);
    Interval iv = apx(k);
    while (true) {
        if (iv.lo().floor() == iv.hi().floor()) return {iv.lo().floor(), iv};
        if (k >= budget_bits) return {std::nullopt, iv};
        k = std::min(k * 2, budget_bits);
        iv = apx(k);
    }
}

Integer certified_floor(const RealSpec& spec, long hint_bits, long budget_bits) {
    if (const Rational* lit = spec.as_rational_lit()) return lit->floor();
    FloorOutcome out = try_certified_floor(approximator(spec), hint_bits, budget_bits);
    if (!out.value)
        throw RefinementError("certified_floor: enclosure straddles an integer at max precision");
    return *out.value;
}

std::pair<Integer, bool> integer_nth_root(const Integer& a, unsigned long n) {
    if (a < 1) throw std::invalid_argument("integer_nth_root: a must be >= 1");
    if (n < 1) throw std::invalid_argument("integer_nth_root: n must be >= 1");
    Integer root;
    int exact = mpz_root(root.get_mpz_t(), a.get_mpz_t(), n);
    return {root, exact != 0};
}

}  // namespace denseset
