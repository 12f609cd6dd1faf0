#pragma once

#include <string>
#include <vector>

#include "denseset/engel.hpp"

namespace denseset {

// Denominator-bound irrationality certificate for q^(1/n), q prime:
// the element z_k = (q^(1/n) - m)^k of Z[q^(1/n)] reduces to the stored
// integer coefficient vector modulo y^n - q and is certified to lie in
// (0, 1/B^n).  If q^(1/n) = r/s with s <= B, then s^n z_k would be a
// positive integer below s^n/B^n <= 1 — impossible.
struct RootCertificate {
    Integer q;                    // prime
    unsigned long n = 2;          // degree >= 2
    Integer m;                    // floor(q^(1/n))
    Integer B;                    // denominator bound >= 1
    unsigned long k = 1;          // exponent, minimal for the bound
    std::vector<Integer> coeffs;  // (y - m)^k mod (y^n - q), length n
    Interval z_enclosure;
};

// Certificate that e is not a/b for any b <= B: with n >= max(B, 2) and
// S = sum_{i=0}^n 1/i!, the scaled remainder n!(e - S) lies strictly
// between lower = 1/(n+1) and upper = 1/n <= 1/B < 1, so it cannot be an
// integer — but it would be one if e had denominator <= B <= n.
struct EulerCertificate {
    Integer B;
    unsigned long n = 2;
    Rational S;
    Rational lower;  // 1/(n+1), from the tail term 1/(n+1)!
    Rational upper;  // 1/n, from the geometric tail comparison
};

// Certificate from an Engel prefix whose digits pass 2B: with
// r = p_1...p_n, s = -S_n r and z = q r + s certified in (0, 2/p_{n+1}),
// any q = a/b with b <= B makes b z a positive integer below
// 2B/p_{n+1} < 1 — impossible.
struct EngelNumberCertificate {
    Integer B;
    long depth = 1;               // n
    Integer r;
    Integer s;
    Rational bound;               // 2/p_{n+1}
    Interval z_enclosure;
    std::vector<Integer> digits;  // p_1 ... p_{n+1}
    RealSpec source = RealSpec::rational(Rational(0));
};

struct VerifyResult {
    bool ok = false;
    std::string reason;  // "ok" or a stable rejection code
    explicit operator bool() const { return ok; }
};

// Exact reduction of (y - m)^k modulo y^n - q; the coefficient vector of
// z_k in the basis 1, q^(1/n), ..., q^((n-1)/n).
std::vector<Integer> reduce_root_power(const Integer& q, unsigned long n, const Integer& m,
                                       unsigned long k);

RootCertificate certify_nth_root(const Integer& q, unsigned long n, const Integer& B,
                                 const GlobalConfig& cfg = {});

// Adversarial: re-derives m and the coefficient vector, re-checks primality,
// and recomputes a fresh enclosure; trusts nothing in the input.
VerifyResult verify_root_certificate(const RootCertificate& cert, const GlobalConfig& cfg = {});

EulerCertificate certify_e(const Integer& B);
VerifyResult verify_euler_certificate(const EulerCertificate& cert, const GlobalConfig& cfg = {});

// Requires the available prefix to reach a digit above 2B; throws
// HypothesisError("prefix_too_short") otherwise.
EngelNumberCertificate certify_engel_number(const EngelExpansion& e, const Integer& B,
                                            const GlobalConfig& cfg = {});

// Convenience: expands `source` adaptively until a digit above 2B appears
// (or the depth cap is reached).
EngelNumberCertificate certify_engel_number(const RealSpec& source, const Integer& B,
                                            const GlobalConfig& cfg = {});

VerifyResult verify_engel_certificate(const EngelNumberCertificate& cert,
                                      const GlobalConfig& cfg = {});

}  // namespace denseset
