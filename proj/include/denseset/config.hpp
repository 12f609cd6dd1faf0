#pragma once

namespace denseset {

// Resource limits shared by every search in the library.  All certified
// results are independent of these values; the limits only decide when a
// search gives up with RefinementError/BudgetError instead of running on.
struct GlobalConfig {
    // Max enclosure precision requested from any RealSpec before a
    // straddling comparison is surfaced as RefinementError.
    long precision_budget_bits = 4096;

    // Max number of Engel digits extracted in one expansion.
    long engel_depth_cap = 10000;

    // Max |exponent| materialized as an exact power in the multiplicative
    // solver; an exact p^m has about |m|*log2(p) bits.
    long exponent_cap = 1000000;

    enum class Output { json, plain };
    Output output = Output::json;
};

}  // namespace denseset
