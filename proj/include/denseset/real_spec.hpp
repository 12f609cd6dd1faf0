#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <variant>

#include "denseset/config.hpp"
#include "denseset/interval.hpp"
#include "denseset/rational.hpp"

namespace denseset {

// Symbolic description of a computable real with on-demand enclosure
// refinement.  Immutable and cheaply copyable (shared handle), so specs can
// be passed around and refined from several threads at once.
class RealSpec {
public:
    struct RationalLit {
        Rational value;
    };
    struct NthRoot {
        Integer base;           // >= 2
        unsigned long degree;   // >= 2
    };
    struct EulerE {};
    struct NaturalLog {
        Rational arg;           // > 0
    };
    struct Shifted {
        std::shared_ptr<const RealSpec> inner;
        Rational offset;
    };
    struct Quotient {
        std::shared_ptr<const RealSpec> num;
        std::shared_ptr<const RealSpec> den;  // enclosure excludes 0 (certified at construction)
    };

    using Node = std::variant<RationalLit, NthRoot, EulerE, NaturalLog, Shifted, Quotient>;

    static RealSpec rational(Rational value);
    static RealSpec nth_root(Integer base, unsigned long degree);
    static RealSpec euler_e();
    static RealSpec natural_log(Rational arg);
    static RealSpec shifted(RealSpec inner, Rational offset);

    // Certifies that `den` is bounded away from zero at some precision up to
    // `check_budget_bits`; throws RefinementError otherwise.
    static RealSpec quotient(RealSpec num, RealSpec den, long check_budget_bits = 4096);

    const Node& node() const { return *node_; }

    const Rational* as_rational_lit() const {
        auto* lit = std::get_if<RationalLit>(node_.get());
        return lit ? &lit->value : nullptr;
    }

private:
    explicit RealSpec(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

    std::shared_ptr<const Node> node_;
};

// Enclosure of the exact value of `spec` with width <= 2^-bits.  Always
// terminates for the supported variants; `bits` must be >= 1.
Interval approximate(const RealSpec& spec, long bits);

// A refinable enclosure: bits -> interval of width <= 2^-bits containing a
// fixed real value.  RealSpecs provide one; derived quantities (affine
// images, quotients used by the solvers) compose their own.
using Approximator = std::function<Interval(long)>;

inline Approximator approximator(const RealSpec& spec) {
    return [spec](long bits) { return approximate(spec, bits); };
}

// Refines from `start_bits`, doubling, until `pred` holds; throws
// RefinementError mentioning `what` once `budget_bits` is exceeded.
Interval refine_until(const Approximator& apx,
                      const std::function<bool(const Interval&)>& pred,
                      long start_bits, long budget_bits, const char* what);

struct FloorOutcome {
    std::optional<Integer> value;  // set iff the floor was certified
    Interval enclosure;            // the last enclosure examined
};

// Floor of the value behind `apx`, certified by an enclosure that excludes
// every integer boundary.  On a straddle at full budget, `value` is empty
// and `enclosure` pins the two candidate integers.
FloorOutcome try_certified_floor(const Approximator& apx, long hint_bits, long budget_bits);

// Exact for rational literals; otherwise as above but throwing
// RefinementError when the enclosure straddles an integer at max precision.
Integer certified_floor(const RealSpec& spec, long hint_bits = 32, long budget_bits = 4096);

// floor(a^(1/n)) and whether a is an exact n-th power; a >= 1, n >= 1.
std::pair<Integer, bool> integer_nth_root(const Integer& a, unsigned long n);

}  // namespace denseset
