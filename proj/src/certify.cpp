#include "denseset/certify.hpp"

#include <stdexcept>

#include "denseset/errors.hpp"
#include "denseset/primality.hpp"

namespace denseset {

namespace {

// Coefficient vectors over Z[y]/(y^n - q), low degree first, length n.
using Poly = std::vector<Integer>;

Poly poly_mul_mod(const Poly& a, const Poly& b, const Integer& q) {
    const std::size_t n = a.size();
    std::vector<Integer> full(2 * n - 1, Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) full[i + j] += a[i] * b[j];
    }
    Poly out(full.begin(), full.begin() + static_cast<long>(n));
    for (std::size_t d = n; d < full.size(); ++d) out[d - n] += q * full[d];  // y^n -> q
    return out;
}

enum class Containment { contained, disjoint, undecided };

// Does the true value behind `fresh` lie inside `stored`?  Decidable when
// the value is irrational and the stored endpoints are rational.
Containment check_containment(const Approximator& fresh, const Interval& stored,
                              long budget_bits) {
    long k = 16;
    while (true) {
        Interval f = fresh(k);
        if (stored.contains(f)) return Containment::contained;
        if (!stored.intersects(f)) return Containment::disjoint;
        if (k >= budget_bits) return Containment::undecided;
        k = std::min(k * 2, budget_bits);
    }
}

Interval eval_coeffs(const std::vector<Integer>& coeffs, const Interval& rho) {
    // Horner over intervals; rho is certified nonnegative here.
    Interval acc(Rational(0));
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = acc * rho + Rational(coeffs[i]);
    return acc;
}

// Base enclosure of q^(1/n) - m certified inside (0, 1).
Interval root_base_interval(const RealSpec& root, const Integer& m, long bits) {
    return approximate(root, bits) - Rational(m);
}

}  // namespace

std::vector<Integer> reduce_root_power(const Integer& q, unsigned long n, const Integer& m,
                                       unsigned long k) {
    if (n < 2) throw std::invalid_argument("reduce_root_power: n must be >= 2");
    if (k < 1) throw std::invalid_argument("reduce_root_power: k must be >= 1");

    Poly base(n, Integer(0));
    base[0] = -m;
    base[1] = 1;

    Poly acc(n, Integer(0));
    acc[0] = 1;
    Poly sq = base;
    unsigned long e = k;
    while (e > 0) {
        if (e & 1) acc = poly_mul_mod(acc, sq, q);
        e >>= 1;
        if (e > 0) sq = poly_mul_mod(sq, sq, q);
    }
    return acc;
}

RootCertificate certify_nth_root(const Integer& q, unsigned long n, const Integer& B,
                                 const GlobalConfig& cfg) {
    if (n < 2) throw std::invalid_argument("certify_nth_root: n must be >= 2");
    if (B < 1) throw std::invalid_argument("certify_nth_root: B must be >= 1");
    if (!deterministic_prime(q))
        throw HypothesisError("not_prime", "certify_nth_root: q is not prime");
    auto [m, exact] = integer_nth_root(q, n);
    if (exact)
        throw HypothesisError("exact_root", "certify_nth_root: q is a perfect n-th power");

    Integer Bn;
    mpz_pow_ui(Bn.get_mpz_t(), B.get_mpz_t(), n);
    const Rational bound(Integer(1), Bn);

    const RealSpec root = RealSpec::nth_root(q, n);

    // Certified strict comparison of z^k against the bound; z^k is an
    // algebraic integer in (0,1), hence never equal to a rational bound.
    auto power_below_bound = [&](unsigned long k) {
        long bits = 32;
        while (true) {
            Interval base = root_base_interval(root, m, bits);
            if (base.strictly_positive() && base.hi() < Rational(1)) {
                Interval zk = base.pow_nonneg(k);
                if (zk.hi() < bound) return true;
                if (zk.lo() > bound) return false;
            }
            if (bits >= cfg.precision_budget_bits)
                throw RefinementError("certify_nth_root: z^k vs bound undecidable");
            bits = std::min(bits * 2, cfg.precision_budget_bits);
        }
    };

    unsigned long hi_k = 1;
    unsigned long lo_k = 0;  // largest exponent known to miss the bound
    const unsigned long k_cap = 1u << 24;
    while (!power_below_bound(hi_k)) {
        lo_k = hi_k;
        hi_k *= 2;
        if (hi_k > k_cap) throw BudgetError("certify_nth_root: exponent search cap reached");
    }
    while (hi_k - lo_k > 1) {
        unsigned long mid = lo_k + (hi_k - lo_k) / 2;
        (power_below_bound(mid) ? hi_k : lo_k) = mid;
    }
    const unsigned long k = hi_k;

    RootCertificate cert;
    cert.q = q;
    cert.n = n;
    cert.m = m;
    cert.B = B;
    cert.k = k;
    cert.coeffs = reduce_root_power(q, n, m, k);
    cert.z_enclosure = refine_until(
        [&](long bits) { return eval_coeffs(cert.coeffs, approximate(root, bits)); },
        [&](const Interval& iv) { return iv.strictly_inside(Rational(0), bound); }, 32,
        cfg.precision_budget_bits, "root certificate enclosure in (0, 1/B^n)");
    return cert;
}

VerifyResult verify_root_certificate(const RootCertificate& cert, const GlobalConfig& cfg) {
    if (cert.n < 2 || cert.k < 1 || cert.B < 1 || cert.coeffs.size() != cert.n ||
        cert.q < 2)
        return {false, "bad_shape"};

    bool prime = false;
    try {
        prime = deterministic_prime(cert.q);
    } catch (const std::invalid_argument&) {
        return {false, "primality_out_of_range"};
    }
    if (!prime) return {false, "not_prime"};

    auto [m, exact] = integer_nth_root(cert.q, cert.n);
    if (exact) return {false, "exact_root"};
    if (m != cert.m) return {false, "wrong_floor"};

    if (reduce_root_power(cert.q, cert.n, cert.m, cert.k) != cert.coeffs)
        return {false, "coeff_mismatch"};

    Integer Bn;
    mpz_pow_ui(Bn.get_mpz_t(), cert.B.get_mpz_t(), cert.n);
    const Rational bound(Integer(1), Bn);
    if (!(Rational(0) < cert.z_enclosure.lo() && cert.z_enclosure.hi() < bound))
        return {false, "enclosure_out_of_band"};

    const RealSpec root = RealSpec::nth_root(cert.q, cert.n);
    switch (check_containment(
        [&](long bits) { return eval_coeffs(cert.coeffs, approximate(root, bits)); },
        cert.z_enclosure, cfg.precision_budget_bits)) {
        case Containment::contained: return {true, "ok"};
        case Containment::disjoint: return {false, "enclosure_excludes_value"};
        case Containment::undecided: return {false, "undecided_within_budget"};
    }
    return {false, "unreachable"};
}

EulerCertificate certify_e(const Integer& B) {
    if (B < 1) throw std::invalid_argument("certify_e: B must be >= 1");
    if (B > 1000000) throw BudgetError("certify_e: B too large for exact factorial sums");
    const unsigned long n = std::max(mpz_get_ui(B.get_mpz_t()), 2ul);

    Rational S(2);  // 1/0! + 1/1!
    Integer fact(1);
    for (unsigned long i = 2; i <= n; ++i) {
        fact *= static_cast<long>(i);
        S += Rational(Integer(1), fact);
    }
    EulerCertificate cert;
    cert.B = B;
    cert.n = n;
    cert.S = S;
    cert.lower = Rational(Integer(1), Integer(static_cast<long>(n) + 1));
    cert.upper = Rational(Integer(1), Integer(static_cast<long>(n)));
    return cert;
}

VerifyResult verify_euler_certificate(const EulerCertificate& cert, const GlobalConfig& cfg) {
    if (cert.B < 1 || cert.n < 2 || cert.B > Integer(static_cast<long>(cert.n)) ||
        cert.n > 1000000)
        return {false, "bad_shape"};

    Rational S(2);
    Integer fact(1);
    for (unsigned long i = 2; i <= cert.n; ++i) {
        fact *= static_cast<long>(i);
        S += Rational(Integer(1), fact);
    }
    if (S != cert.S) return {false, "sum_mismatch"};

    const long n = static_cast<long>(cert.n);
    if (cert.lower != Rational(Integer(1), Integer(n + 1)) ||
        cert.upper != Rational(Integer(1), Integer(n)))
        return {false, "bracket_mismatch"};

    // upper = 1/n <= 1/B < 1 holds by shape; confirm the unscaled bracket
    // S + 1/(n+1)! < e < S + 1/(n n!) at interval level.
    const Rational lo_bracket = S + Rational(Integer(1), fact * (n + 1));
    const Rational hi_bracket = S + Rational(Integer(1), fact * n);
    const RealSpec e = RealSpec::euler_e();
    long bits = 16;
    while (true) {
        Interval iv = approximate(e, bits);
        if (iv.strictly_inside(lo_bracket, hi_bracket)) return {true, "ok"};
        if (iv.hi() <= lo_bracket || iv.lo() >= hi_bracket) return {false, "bracket_violated"};
        if (bits >= cfg.precision_budget_bits) return {false, "undecided_within_budget"};
        bits = std::min(bits * 2, cfg.precision_budget_bits);
    }
}

EngelNumberCertificate certify_engel_number(const EngelExpansion& e, const Integer& B,
                                            const GlobalConfig& cfg) {
    if (B < 1) throw std::invalid_argument("certify_engel_number: B must be >= 1");
    const Integer twoB = 2 * B;

    long depth = 0;
    for (std::size_t t = 1; t < e.digits.size(); ++t) {
        if (e.digits[t] > twoB) {
            depth = static_cast<long>(t);
            break;
        }
    }
    if (depth == 0)
        throw HypothesisError("prefix_too_short",
                              "certify_engel_number: no digit above 2B in the available prefix");

    Integer r(1), msum(0);
    for (long i = 0; i < depth; ++i) {
        r *= e.digits[static_cast<std::size_t>(i)];
        msum = msum * e.digits[static_cast<std::size_t>(i)] + 1;
    }
    const Rational bound(Integer(2), e.digits[static_cast<std::size_t>(depth)]);

    EngelNumberCertificate cert;
    cert.B = B;
    cert.depth = depth;
    cert.r = r;
    cert.s = -msum;
    cert.bound = bound;
    cert.digits.assign(e.digits.begin(), e.digits.begin() + depth + 1);
    cert.source = e.source;

    Approximator z = [&](long bits) {
        long k = bits + static_cast<long>(mpz_sizeinbase(r.get_mpz_t(), 2)) + 1;
        return approximate(e.source, k) * Rational(r) - Rational(msum);
    };
    cert.z_enclosure = refine_until(
        z, [&](const Interval& iv) { return iv.strictly_inside(Rational(0), bound); }, 16,
        cfg.precision_budget_bits, "engel certificate enclosure in (0, 2/p_{n+1})");
    return cert;
}

EngelNumberCertificate certify_engel_number(const RealSpec& source, const Integer& B,
                                            const GlobalConfig& cfg) {
    const Integer twoB = 2 * B;
    long count = 16;
    while (true) {
        EngelExpansion e = engel_digits(source, count, cfg);
        for (std::size_t t = 1; t < e.digits.size(); ++t)
            if (e.digits[t] > twoB) return certify_engel_number(e, B, cfg);
        const bool exhausted = static_cast<long>(e.digits.size()) < count || e.terminated;
        if (exhausted || count >= cfg.engel_depth_cap)
            throw HypothesisError("prefix_too_short",
                                  "certify_engel_number: digits never exceed 2B");
        count = std::min(count * 2, cfg.engel_depth_cap);
    }
}

VerifyResult verify_engel_certificate(const EngelNumberCertificate& cert,
                                      const GlobalConfig& cfg) {
    if (cert.B < 1 || cert.depth < 1 ||
        cert.digits.size() != static_cast<std::size_t>(cert.depth) + 1)
        return {false, "bad_shape"};

    EngelExpansion fresh;
    try {
        fresh = engel_digits(cert.source, cert.depth + 1, cfg);
    } catch (const HypothesisError&) {
        return {false, "source_not_expandable"};
    } catch (const RefinementError&) {
        return {false, "undecided_within_budget"};
    }
    if (fresh.digits.size() < cert.digits.size()) return {false, "digit_mismatch"};
    for (std::size_t i = 0; i < cert.digits.size(); ++i)
        if (fresh.digits[i] != cert.digits[i]) return {false, "digit_mismatch"};

    if (!(cert.digits.back() > 2 * cert.B)) return {false, "bound_digit_too_small"};

    Integer r(1), msum(0);
    for (long i = 0; i < cert.depth; ++i) {
        r *= cert.digits[static_cast<std::size_t>(i)];
        msum = msum * cert.digits[static_cast<std::size_t>(i)] + 1;
    }
    if (r != cert.r || -msum != cert.s) return {false, "coefficient_mismatch"};
    if (cert.bound != Rational(Integer(2), cert.digits.back())) return {false, "bound_mismatch"};

    if (!(Rational(0) < cert.z_enclosure.lo() && cert.z_enclosure.hi() < cert.bound))
        return {false, "enclosure_out_of_band"};

    switch (check_containment(
        [&](long bits) {
            long k = bits + static_cast<long>(mpz_sizeinbase(r.get_mpz_t(), 2)) + 1;
            return approximate(cert.source, k) * Rational(r) - Rational(msum);
        },
        cert.z_enclosure, cfg.precision_budget_bits)) {
        case Containment::contained: return {true, "ok"};
        case Containment::disjoint: return {false, "enclosure_excludes_value"};
        case Containment::undecided: return {false, "undecided_within_budget"};
    }
    return {false, "unreachable"};
}

}  // namespace denseset
