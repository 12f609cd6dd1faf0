#include "denseset/density.hpp"

#include <stdexcept>

#include "denseset/errors.hpp"

namespace denseset {

namespace {

// r = p_1...p_n and m with S_n = m/r, accumulated exactly over the prefix.
struct PrefixInts {
    Integer r{1};
    Integer m{0};
    void push(const Integer& digit) {
        r *= digit;
        m = m * digit + 1;
    }
};

Interval witness_enclosure(const RealSpec& q, const Integer& r, const Integer& m, long bits) {
    long k = bits + static_cast<long>(mpz_sizeinbase(r.get_mpz_t(), 2)) + 1;
    return approximate(q, k) * Rational(r) - Rational(m);
}

}  // namespace

DensityWitness make_witness(const RealSpec& q, long depth, const GlobalConfig& cfg) {
    if (depth < 1) throw std::invalid_argument("make_witness: depth must be >= 1");

    EngelExpansion e = engel_digits(q, depth + 1, cfg);
    if (static_cast<long>(e.digits.size()) < depth + 1) {
        if (e.terminated)
            throw HypothesisError("degenerate_termination",
                                  "make_witness: expansion terminated before depth " +
                                      std::to_string(depth) + " (input is rational)");
        throw RefinementError("make_witness: expansion ran out of precision budget");
    }

    PrefixInts acc;
    for (long i = 0; i < depth; ++i) acc.push(e.digits[static_cast<std::size_t>(i)]);
    const Rational bound(Integer(2), e.digits[static_cast<std::size_t>(depth)]);

    const Integer r = acc.r;
    const Integer m = acc.m;
    Interval z = refine_until(
        [&](long bits) { return witness_enclosure(q, r, m, bits); },
        [&](const Interval& iv) { return iv.strictly_inside(Rational(0), bound); },
        16, cfg.precision_budget_bits, "witness containment in (0, 2/p_{n+1})");

    return DensityWitness{r, -m, std::move(z), bound, depth};
}

DensityWitness witness_below(const RealSpec& q, const Rational& eps, const GlobalConfig& cfg) {
    if (eps.sign() <= 0) throw std::invalid_argument("witness_below: eps must be > 0");

    std::optional<DensityWitness> best;
    for (long depth = 1; depth <= cfg.engel_depth_cap; ++depth) {
        DensityWitness w;
        try {
            w = make_witness(q, depth, cfg);
        } catch (const RefinementError& e) {
            throw WitnessBudgetError(std::string("witness_below: ") + e.what(), std::move(best));
        }
        if (w.z_enclosure.hi() < eps) return w;
        best = std::move(w);
    }
    throw WitnessBudgetError("witness_below: depth cap reached before eps", std::move(best));
}

namespace {

AdditiveSolution solve_reduced(const RealSpec& q, const Integer& q_floor,
                               const Approximator& target, int target_sign, const Rational& eps,
                               const GlobalConfig& cfg) {
    // Witness strictly below eps/2 keeps both floor candidates within eps.
    RealSpec q_frac = RealSpec::shifted(q, Rational(-q_floor));
    DensityWitness w = witness_below(q_frac, eps / Rational(2), cfg);

    Approximator ratio = [&](long bits) {
        Interval t = target(bits);
        Interval z = witness_enclosure(q_frac, w.r, -w.s, bits);
        for (long k = bits; !z.strictly_positive(); k *= 2)
            z = witness_enclosure(q_frac, w.r, -w.s, k);
        return t / z;
    };

    FloorOutcome fl = try_certified_floor(ratio, 64, cfg.precision_budget_bits);
    std::vector<Integer> candidates;
    if (fl.value) {
        candidates.push_back(*fl.value);
    } else {
        // Straddle at full budget: the lower integer first, then its
        // neighbour; both give |t - kz| <= z < eps/2 up to enclosure slack.
        candidates.push_back(fl.enclosure.lo().floor());
        candidates.push_back(fl.enclosure.lo().floor() + 1);
    }

    for (const Integer& k : candidates) {
        Integer n = k * w.r;
        Integer m = k * w.s - n * q_floor;
        if (target_sign < 0) {
            n = -n;
            m = -m;
        }
        Approximator err = [&](long bits) {
            long kq = bits + static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) + 2;
            Interval val = approximate(q, kq) * Rational(n) + Rational(m);
            Interval t = target(bits + 1);
            if (target_sign < 0) t = -t;
            return val - t;
        };
        try {
            Interval certified = refine_until(
                err, [&](const Interval& iv) { return iv.strictly_inside(-eps, eps); }, 64,
                cfg.precision_budget_bits, "additive solution error below eps");
            return AdditiveSolution{std::move(m), std::move(n), std::move(certified)};
        } catch (const RefinementError&) {
            continue;
        }
    }
    throw RefinementError("approx_additive: no floor candidate certified within budget");
}

}  // namespace

AdditiveSolution approx_additive(const RealSpec& q, const RealSpec& t, const Rational& eps,
                                 const GlobalConfig& cfg) {
    if (eps.sign() <= 0) throw std::invalid_argument("approx_additive: eps must be > 0");

    const Integer q_floor = certified_floor(q, 32, cfg.precision_budget_bits);

    // Settle the target's sign first; a target certified inside
    // (-eps/2, eps/2) is answered by 0 = 0 + 0*q directly.
    const Rational half = eps / Rational(2);
    Interval t_iv = refine_until(
        approximator(t),
        [&](const Interval& iv) {
            return iv.excludes_zero() || iv.strictly_inside(-half, half);
        },
        16, cfg.precision_budget_bits, "target sign");
    if (t_iv.strictly_inside(-half, half))
        return AdditiveSolution{Integer(0), Integer(0), -t_iv};

    const int sign = t_iv.strictly_positive() ? 1 : -1;
    Approximator target_abs = [&, sign](long bits) {
        Interval iv = approximate(t, bits);
        return sign < 0 ? -iv : iv;
    };
    return solve_reduced(q, q_floor, target_abs, sign, eps, cfg);
}

AdditiveSolution approx_additive(const RealSpec& q, const Rational& t, const Rational& eps,
                                 const GlobalConfig& cfg) {
    return approx_additive(q, RealSpec::rational(t), eps, cfg);
}

Rational rational_min_gap(const Rational& q) { return Rational(Integer(1), q.den()); }

}  // namespace denseset
