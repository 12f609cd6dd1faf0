#include "denseset/engel.hpp"

#include <stdexcept>

#include "denseset/errors.hpp"

namespace denseset {

namespace {

// Bits needed so that scale * (width 2^-k enclosure) has width <= 2^-bits.
long scaled_bits(const Integer& scale, long bits) {
    return bits + static_cast<long>(mpz_sizeinbase(scale.get_mpz_t(), 2)) + 1;
}

void check_digit_chain_exact(const Integer& p, const Rational& alpha) {
    // Eq-style chain (p-1)*alpha < 1 <= p*alpha < 2, with equality on the
    // middle comparison exactly at the terminating boundary 1/alpha = p.
    const Rational pa = Rational(p) * alpha;
    if (!(Rational(p - 1) * alpha < Rational(1) && Rational(1) <= pa && pa < Rational(2)))
        throw std::logic_error("engel_step: digit chain violated on exact path");
}

}  // namespace

EngelState EngelState::start(const RealSpec& x, const GlobalConfig& cfg) {
    if (const Rational* lit = x.as_rational_lit()) {
        if (!(Rational(0) < *lit && *lit < Rational(1)))
            throw HypothesisError("out_of_range", "engel: rational input not in (0,1)");
        return EngelState(x, true, *lit, Integer(1), Integer(0), 0);
    }
    Interval iv = refine_until(
        approximator(x),
        [](const Interval& v) {
            return (v.strictly_inside(Rational(0), Rational(1))) || v.hi() <= Rational(0) ||
                   v.lo() >= Rational(1);
        },
        16, cfg.precision_budget_bits, "engel start: certifying 0 < x < 1");
    if (!iv.strictly_inside(Rational(0), Rational(1)))
        throw HypothesisError("out_of_range", "engel: input certified outside (0,1)");
    return EngelState(x, false, Rational(0), Integer(1), Integer(0), 0);
}

Interval EngelState::alpha_enclosure(long bits) const {
    Interval src = approximate(source_, scaled_bits(scale_, bits));
    return src * Rational(scale_) - Rational(shift_);
}

std::optional<EngelStep> engel_step(const EngelState& state, const GlobalConfig& cfg) {
    if (state.exact()) {
        const Rational& alpha = state.alpha_exact();
        if (alpha.is_zero()) return std::nullopt;
        Integer digit = alpha.reciprocal().ceil();
        check_digit_chain_exact(digit, alpha);
        Rational next_alpha = Rational(digit) * alpha - Rational(1);
        return EngelStep{digit,
                         EngelState(state.source(), true, std::move(next_alpha), Integer(1),
                                    Integer(0), state.index() + 1)};
    }

    // alpha = scale*x - shift.  Refine until the reciprocal's floor is
    // certified and the strict chain (p-1)a < 1 < pa < 2 holds at interval
    // level.  For irrational x all four comparisons are strict in truth, so
    // this terminates; a rational value smuggled in through an oracle spec
    // surfaces as RefinementError instead of a wrong digit.
    long k = 32;
    while (true) {
        Interval a = state.alpha_enclosure(k);
        if (a.strictly_positive() && a.hi() < Rational(1)) {
            Interval recip = a.reciprocal();
            if (recip.lo().floor() == recip.hi().floor()) {
                Integer digit = recip.lo().floor() + 1;
                Rational d(digit);
                if (Rational(digit - 1) * a.hi() < Rational(1) && Rational(1) < d * a.lo() &&
                    d * a.hi() < Rational(2)) {
                    Integer scale = state.scale() * digit;
                    Integer shift = state.shift() * digit + 1;
                    return EngelStep{digit,
                                     EngelState(state.source(), false, Rational(0),
                                                std::move(scale), std::move(shift),
                                                state.index() + 1)};
                }
            }
        }
        if (k >= cfg.precision_budget_bits)
            throw RefinementError("engel_step: digit undecidable within precision budget");
        k = std::min(k * 2, cfg.precision_budget_bits);
    }
}

EngelExpansion engel_digits(const RealSpec& x, long count, const GlobalConfig& cfg) {
    if (count < 1) throw std::invalid_argument("engel_digits: count must be >= 1");

    EngelExpansion out;
    out.source = x;
    EngelState state = EngelState::start(x, cfg);

    for (long i = 0; i < count; ++i) {
        if (state.exact() && state.finished()) {
            out.terminated = true;
            break;
        }
        std::optional<EngelStep> step;
        try {
            step = engel_step(state, cfg);
        } catch (const RefinementError&) {
            break;  // partial result with achieved length
        }
        if (!step) {
            out.terminated = true;
            break;
        }
        if (!out.digits.empty() && step->digit < out.digits.back())
            throw std::logic_error("engel_digits: digit monotonicity violated");
        if (step->digit < 2) throw std::logic_error("engel_digits: digit < 2");
        out.digits.push_back(step->digit);
        state = step->next;
    }
    if (state.exact() && state.finished()) out.terminated = true;
    return out;
}

Rational partial_sum(const EngelExpansion& e, std::size_t n) {
    if (n > e.digits.size()) throw std::invalid_argument("partial_sum: n exceeds digit count");
    Rational sum(0);
    Integer prod(1);
    for (std::size_t i = 0; i < n; ++i) {
        prod *= e.digits[i];
        sum += Rational(Integer(1), prod);
    }
    return sum;
}

Rational truncation_bound(const EngelExpansion& e, std::size_t n) {
    if (n > e.digits.size())
        throw std::invalid_argument("truncation_bound: n exceeds digit count");
    Integer prod(1);
    for (std::size_t i = 0; i < n; ++i) prod *= e.digits[i];
    return Rational(Integer(1), prod);
}

PatternReport rational_pattern_scan(const EngelExpansion& e) {
    PatternReport report;
    const auto& d = e.digits;
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        if (d[i] < d[i + 1]) ++report.strict_increases;

    if (d.size() >= 2) {
        std::size_t start = d.size() - 1;
        while (start > 0 && d[start - 1] == d.back()) --start;
        if (d.size() - start >= 2) report.tail_constant_from = start + 1;  // 1-based
    }
    return report;
}

}  // namespace denseset
