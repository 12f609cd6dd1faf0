#pragma once

#include "denseset/density.hpp"

namespace denseset {

// Approximation target over B = {±p^m q^n}: find |p^m q^n - y| < eps.
struct MulProblem {
    Integer p;     // >= 2
    Integer q;     // >= 2, multiplicatively independent of p
    Rational y;    // > 0
    Rational eps;  // > 0
};

struct MulSolution {
    Integer m;
    Integer n;
    Rational value;  // exact p^m q^n (sign applied by sign_extend)
    Rational err;    // exact |value - y|
    bool certified = true;
};

// True iff no positive integers a, b give p^b = q^a; equivalently
// ln p / ln q is irrational.  Decided exactly by writing p = u^g, q = v^h
// with u, v not proper powers and comparing u with v.
bool mul_independence(const Integer& p, const Integer& q);

// Same question for rational dilations > 1 (used by the dilation audit):
// p and q are multiplicatively dependent iff they are integer powers of a
// common rational.
bool mul_independence_rational(const Rational& p, const Rational& q);

// theta = ln p / ln q as a refinable spec; rejects dependent pairs.
RealSpec log_ratio_spec(const Integer& p, const Integer& q);

// Exact-verified solution: p^m q^n is evaluated as an exact rational and the
// contract err < eps is an exact comparison, independent of any interval
// machinery used during the search.  When every certified route exceeds the
// exponent cap, returns the best candidate found flagged certified = false.
MulSolution approx_multiplicative(const MulProblem& prob, const GlobalConfig& cfg = {});

// Attaches a sign for negative targets; |(-value) - (-y)| = err unchanged.
MulSolution sign_extend(MulSolution sol, int target_sign);

// Exact p^m q^n for integer exponents of either sign.
Rational exact_power_product(const Integer& p, const Integer& q, const Integer& m,
                             const Integer& n);

}  // namespace denseset
