#include "denseset/muldensity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "denseset/errors.hpp"
#include "denseset/primality.hpp"

namespace denseset {

namespace {

// Writes v >= 2 as u^g with u not a proper power.
std::pair<Integer, unsigned long> minimal_power_base(const Integer& v) {
    unsigned long max_e = mpz_sizeinbase(v.get_mpz_t(), 2);  // v = u^e needs e <= log2(v)
    for (unsigned long e = 2; e <= max_e; ++e) {
        auto [root, exact] = integer_nth_root(v, e);
        if (exact && root >= 2) {
            auto [base, g] = minimal_power_base(root);
            return {base, g * e};
        }
    }
    return {v, 1};
}

// Same for rational r > 1: r = w^g needs num and den to be simultaneous
// e-th powers.
std::pair<Rational, unsigned long> minimal_power_base_rational(const Rational& r) {
    unsigned long max_e = mpz_sizeinbase(r.num().get_mpz_t(), 2);
    for (unsigned long e = 2; e <= max_e; ++e) {
        auto [rn, exact_n] = integer_nth_root(r.num(), e);
        if (!exact_n) continue;
        Integer rd(1);
        if (r.den() != 1) {
            auto [root_d, exact_d] = integer_nth_root(r.den(), e);
            if (!exact_d) continue;
            rd = root_d;
        }
        if (Rational(rn, rd) <= Rational(1)) continue;
        auto [base, g] = minimal_power_base_rational(Rational(rn, rd));
        return {base, g * e};
    }
    return {r, 1};
}

double log_integer(const Integer& v) {
    long exp2 = 0;
    double d = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(d) + static_cast<double>(exp2) * std::log(2.0);
}

double log_rational(const Rational& r) { return log_integer(r.num()) - log_integer(r.den()); }

// Exact m, n with p^m q^n = y, if y lies in the group generated by p and q.
// Solved over the prime support of p and q; gives up (nullopt) when that
// support cannot be recovered by trial division plus a primality check.
std::optional<std::pair<Integer, Integer>> exact_hit(const Integer& p, const Integer& q,
                                                     const Rational& y) {
    Integer rem_p, rem_q;
    auto fp = trial_factor(p, 100000, &rem_p);
    auto fq = trial_factor(q, 100000, &rem_q);
    auto absorb = [](std::vector<std::pair<Integer, unsigned long>>& f, const Integer& rem) {
        if (rem == 1) return true;
        try {
            if (!deterministic_prime(rem)) return false;
        } catch (const std::invalid_argument&) {
            return false;
        }
        f.emplace_back(rem, 1);
        return true;
    };
    if (!absorb(fp, rem_p) || !absorb(fq, rem_q)) return std::nullopt;

    // Rows (e_i, f_i, g_i): exponent of prime i in p, q, y.
    std::vector<Integer> primes;
    for (const auto& [pr, _] : fp) primes.push_back(pr);
    for (const auto& [pr, _] : fq)
        if (std::find(primes.begin(), primes.end(), pr) == primes.end()) primes.push_back(pr);

    auto exponent_of = [](const std::vector<std::pair<Integer, unsigned long>>& f,
                          const Integer& pr) -> long {
        for (const auto& [fp_, e] : f)
            if (fp_ == pr) return static_cast<long>(e);
        return 0;
    };
    auto strip_all = [](Integer v, const Integer& pr) -> std::pair<long, Integer> {
        long count = 0;
        while (mpz_divisible_p(v.get_mpz_t(), pr.get_mpz_t())) {
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), pr.get_mpz_t());
            ++count;
        }
        return {count, v};
    };

    Integer num = y.num(), den = y.den();
    std::vector<std::array<Integer, 3>> rows;
    for (const Integer& pr : primes) {
        auto [cn, num2] = strip_all(num, pr);
        auto [cd, den2] = strip_all(den, pr);
        num = num2;
        den = den2;
        rows.push_back({Integer(exponent_of(fp, pr)), Integer(exponent_of(fq, pr)),
                        Integer(cn - cd)});
    }
    if (num != 1 || den != 1) return std::nullopt;  // y has primes outside the group

    // Two independent rows exist because p and q are independent.
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            Integer det = rows[i][0] * rows[j][1] - rows[j][0] * rows[i][1];
            if (det == 0) continue;
            Integer mn = rows[i][2] * rows[j][1] - rows[j][2] * rows[i][1];
            Integer nn = rows[i][0] * rows[j][2] - rows[j][0] * rows[i][2];
            if (!mpz_divisible_p(mn.get_mpz_t(), det.get_mpz_t()) ||
                !mpz_divisible_p(nn.get_mpz_t(), det.get_mpz_t()))
                return std::nullopt;
            Integer m = mn / det, n = nn / det;
            for (const auto& row : rows)
                if (row[0] * m + row[1] * n != row[2]) return std::nullopt;
            return std::make_pair(m, n);
        }
    }
    return std::nullopt;
}

bool fits_cap(const Integer& v, long cap) {
    Integer a = abs(v);
    return a <= cap;
}

}  // namespace

bool mul_independence(const Integer& p, const Integer& q) {
    if (p < 2 || q < 2) throw std::invalid_argument("mul_independence: p, q must be >= 2");
    return minimal_power_base(p).first != minimal_power_base(q).first;
}

bool mul_independence_rational(const Rational& p, const Rational& q) {
    if (p <= Rational(1) || q <= Rational(1))
        throw std::invalid_argument("mul_independence_rational: dilations must be > 1");
    return minimal_power_base_rational(p).first != minimal_power_base_rational(q).first;
}

RealSpec log_ratio_spec(const Integer& p, const Integer& q) {
    if (!mul_independence(p, q))
        throw HypothesisError("dependent_dilations",
                              "log_ratio_spec: ln p / ln q is rational for dependent p, q");
    return RealSpec::quotient(RealSpec::natural_log(Rational(p)),
                              RealSpec::natural_log(Rational(q)));
}

Rational exact_power_product(const Integer& p, const Integer& q, const Integer& m,
                             const Integer& n) {
    auto pow_abs = [](const Integer& base, const Integer& e) {
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), mpz_get_ui(Integer(abs(e)).get_mpz_t()));
        return r;
    };
    Integer num(1), den(1);
    (m >= 0 ? num : den) *= pow_abs(p, m);
    (n >= 0 ? num : den) *= pow_abs(q, n);
    return Rational(num, den);
}

MulSolution sign_extend(MulSolution sol, int target_sign) {
    if (target_sign < 0) sol.value = -sol.value;
    return sol;
}

MulSolution approx_multiplicative(const MulProblem& prob, const GlobalConfig& cfg) {
    const Integer& p = prob.p;
    const Integer& q = prob.q;
    if (p < 2 || q < 2) throw std::invalid_argument("approx_multiplicative: p, q must be >= 2");
    if (prob.y.sign() <= 0) throw std::invalid_argument("approx_multiplicative: y must be > 0");
    if (prob.eps.sign() <= 0)
        throw std::invalid_argument("approx_multiplicative: eps must be > 0");
    if (!mul_independence(p, q))
        throw HypothesisError("dependent_dilations",
                              "approx_multiplicative: p and q are multiplicatively dependent");

    if (auto hit = exact_hit(p, q, prob.y)) {
        auto [m, n] = *hit;
        return MulSolution{m, n, prob.y, Rational(0), true};
    }

    // Log-space tolerance: any Delta with |Delta| <= delta = ln(1 + eps/y)
    // gives |e^{ln y + Delta} - y| = y|e^Delta - 1| <= y(e^delta - 1) = eps,
    // using |e^Delta - 1| <= e^|Delta| - 1 for either sign of Delta.
    RealSpec log_slack = RealSpec::natural_log(Rational(1) + prob.eps / prob.y);
    Interval slack_iv = refine_until(
        approximator(log_slack), [](const Interval& iv) { return iv.strictly_positive(); }, 16,
        cfg.precision_budget_bits, "log tolerance separation from zero");
    const Rational delta = slack_iv.lo();

    Interval lnq_iv = refine_until(
        approximator(RealSpec::natural_log(Rational(q))),
        [](const Interval& iv) { return iv.strictly_positive(); }, 16,
        cfg.precision_budget_bits, "ln q separation from zero");
    const Rational delta_scaled = delta / lnq_iv.hi();

    // Paper route: approximate tau = ln y / ln q over {m*theta + n} with
    // theta = ln p / ln q, then map the coefficient of theta to the exponent
    // of p.  The witness construction makes the exponents astronomically
    // large for small tolerances, so materialization is gated by the cap.
    try {
        RealSpec theta = log_ratio_spec(p, q);
        RealSpec tau = RealSpec::quotient(RealSpec::natural_log(prob.y),
                                          RealSpec::natural_log(Rational(q)),
                                          cfg.precision_budget_bits);
        AdditiveSolution add = approx_additive(theta, tau, delta_scaled, cfg);
        if (fits_cap(add.n, cfg.exponent_cap) && fits_cap(add.m, cfg.exponent_cap)) {
            Rational value = exact_power_product(p, q, add.n, add.m);
            Rational err = (value - prob.y).abs();
            if (err < prob.eps) return MulSolution{add.n, add.m, value, err, true};
        }
    } catch (const RefinementError&) {
    } catch (const BudgetError&) {
    }

    // Bounded enumeration over the exponent of q: for each n the best
    // exponent of p is the nearest integer to (ln y - n ln q)/ln p.  The
    // double-precision filter only selects candidates; acceptance is always
    // the exact rational comparison below.
    const double lp = log_integer(p);
    const double lq = log_integer(q);
    const double ly = log_rational(prob.y);
    const double delta_d = delta.to_double();

    std::optional<MulSolution> best;
    auto consider = [&](long a, long b) -> std::optional<MulSolution> {
        Rational value = exact_power_product(p, q, Integer(a), Integer(b));
        Rational err = (value - prob.y).abs();
        if (err < prob.eps) return MulSolution{Integer(a), Integer(b), value, err, true};
        if (!best || err < best->err)
            best = MulSolution{Integer(a), Integer(b), value, err, false};
        return std::nullopt;
    };

    for (long step = 0; step <= 2 * cfg.exponent_cap; ++step) {
        long b = (step % 2 == 0) ? step / 2 : -(step / 2 + 1);
        double a_real = (ly - static_cast<double>(b) * lq) / lp;
        if (std::abs(a_real) > static_cast<double>(cfg.exponent_cap) + 1) continue;
        long a = std::lround(a_real);
        double lambda = static_cast<double>(a) * lp + static_cast<double>(b) * lq - ly;
        double noise = 1e-12 * (std::abs(static_cast<double>(a)) +
                                std::abs(static_cast<double>(b)) + 1.0);
        if (std::abs(lambda) > 2.0 * delta_d + noise) continue;
        if (std::abs(a) > cfg.exponent_cap) continue;
        if (auto sol = consider(a, b)) return *sol;
    }

    if (best) return *best;  // flagged certified = false
    throw BudgetError("approx_multiplicative: no candidate found within exponent cap");
}

}  // namespace denseset
