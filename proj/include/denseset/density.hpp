#pragma once

#include <optional>

#include "denseset/engel.hpp"

namespace denseset {

// Element z = q*r + s of {m + nq} certified to lie in (0, bound) with
// bound = 2/p_{depth+1}; r = p_1...p_depth and s = -S_depth * r exactly.
struct DensityWitness {
    Integer r;
    Integer s;
    Interval z_enclosure;
    Rational bound;
    long depth = 0;
};

class WitnessBudgetError : public BudgetError {
public:
    WitnessBudgetError(const std::string& what, std::optional<DensityWitness> best)
        : BudgetError(what), best_(std::move(best)) {}
    const std::optional<DensityWitness>& best() const { return best_; }

private:
    std::optional<DensityWitness> best_;
};

// Witness at a fixed depth for q certified in (0,1).  Throws
// HypothesisError("degenerate_termination") when the expansion of q ends
// before depth+1 digits (q was rational), RefinementError on budget.
DensityWitness make_witness(const RealSpec& q, long depth, const GlobalConfig& cfg = {});

// Smallest-depth witness whose enclosure upper bound drops below eps.
// Throws WitnessBudgetError carrying the deepest witness found so far when
// the depth cap or precision budget runs out first.
DensityWitness witness_below(const RealSpec& q, const Rational& eps,
                             const GlobalConfig& cfg = {});

struct AdditiveSolution {
    Integer m;
    Integer n;
    Interval err;  // encloses m + n*q - t, certified inside (-eps, eps)
};

// Integers m, n with certified |m + n*q - t| < eps, built from k copies of a
// density witness below eps/2 with k = floor(t/z).  q need not lie in (0,1);
// it is reduced by its certified floor, which preserves membership in
// {m + nq}.  Negative targets go through the sign symmetry of the set.
AdditiveSolution approx_additive(const RealSpec& q, const RealSpec& t, const Rational& eps,
                                 const GlobalConfig& cfg = {});
AdditiveSolution approx_additive(const RealSpec& q, const Rational& t, const Rational& eps,
                                 const GlobalConfig& cfg = {});

// For q = a/b in lowest terms: every nonzero element of {m + n*(a/b)} has
// absolute value >= 1/b, and 1/b is attained (extended gcd witness).
Rational rational_min_gap(const Rational& q);

}  // namespace denseset
