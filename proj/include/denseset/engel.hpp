#pragma once

#include <optional>
#include <vector>

#include "denseset/config.hpp"
#include "denseset/real_spec.hpp"

namespace denseset {

// Digit sequence p_1 <= p_2 <= ... of an Engel expansion
//   x = sum_i 1/(p_1 p_2 ... p_i),    p_i >= 2.
// `terminated` means the expansion is exact and finite (rational input);
// a truncated oracle expansion never claims exactness.
struct EngelExpansion {
    std::vector<Integer> digits;
    bool terminated = false;
    RealSpec source = RealSpec::rational(Rational(0));
};

// Remainder state of the digit recurrence alpha_n = p_n * alpha_{n-1} - 1.
// Rational inputs take an exact code path; everything else tracks the
// remainder symbolically as alpha_n = scale * x - shift with exact integer
// scale and shift, so each step only rescales one enclosure of the source.
class EngelState {
public:
    static EngelState start(const RealSpec& x, const GlobalConfig& cfg = {});

    bool exact() const { return exact_; }
    long index() const { return index_; }
    bool finished() const { return exact_ && alpha_.is_zero(); }

    const Rational& alpha_exact() const { return alpha_; }
    const Integer& scale() const { return scale_; }
    const Integer& shift() const { return shift_; }
    const RealSpec& source() const { return source_; }

    // Enclosure of the current remainder with width <= 2^-bits (oracle path).
    Interval alpha_enclosure(long bits) const;

private:
    EngelState(RealSpec source, bool exact, Rational alpha, Integer scale, Integer shift,
               long index)
        : source_(std::move(source)), exact_(exact), alpha_(std::move(alpha)),
          scale_(std::move(scale)), shift_(std::move(shift)), index_(index) {}

    RealSpec source_;
    bool exact_;
    Rational alpha_;   // exact path only
    Integer scale_;    // oracle path: alpha = scale * source - shift
    Integer shift_;
    long index_;

    friend struct EngelStepImpl;
};

struct EngelStep {
    Integer digit;
    EngelState next;
};

// One digit of the expansion: the unique p with (p-1)*alpha < 1 < p*alpha
// (boundary case 1/alpha integral takes p = 1/alpha and terminates; rational
// inputs only).  Returns nullopt when alpha = 0.  Oracle path throws
// RefinementError if certification exceeds the precision budget.
std::optional<EngelStep> engel_step(const EngelState& state, const GlobalConfig& cfg = {});

// First `count` digits of x in (0,1), or fewer when the expansion
// terminates (rational x) or an oracle runs out of refinement budget
// mid-stream (partial result, terminated = false).
EngelExpansion engel_digits(const RealSpec& x, long count, const GlobalConfig& cfg = {});

// Exact S_n = sum_{i=1}^n 1/(p_1...p_i); n <= digits.size().
Rational partial_sum(const EngelExpansion& e, std::size_t n);

// 1/(p_1...p_n); the expansion's source satisfies |source - S_n| < this.
Rational truncation_bound(const EngelExpansion& e, std::size_t n);

struct PatternReport {
    std::size_t strict_increases = 0;
    // 1-based digit position where a trailing constant run (length >= 2)
    // starts; a heuristic signal on a finite prefix, never a proof.
    std::optional<std::size_t> tail_constant_from;
};

PatternReport rational_pattern_scan(const EngelExpansion& e);

}  // namespace denseset
