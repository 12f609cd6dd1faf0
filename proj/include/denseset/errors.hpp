#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace denseset {

// Certified comparison could not be decided within the precision budget.
// Equality of a computable real to a rational is only semi-decidable; the
// budget turns "loops forever" into an explicit, catchable failure.
class RefinementError : public std::runtime_error {
public:
    explicit RefinementError(std::string what)
        : std::runtime_error(std::move(what)) {}
};

// A structural cap was hit: expansion depth, exponent size, iteration count.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(std::string what)
        : std::runtime_error(std::move(what)) {}
};

// Mathematical hypotheses of an operation do not hold: rational input where
// an irrational is required, dependent dilations, composite base, an exact
// integer root, an integration interval touching the excluded neighbourhood
// of zero.  `code` is machine-readable and stable across releases.
class HypothesisError : public std::runtime_error {
public:
    HypothesisError(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace denseset
