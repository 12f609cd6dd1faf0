#include "denseset/primality.hpp"

#include <stdexcept>

namespace denseset {

namespace {

bool miller_rabin_witness(const Integer& n, const Integer& a) {
    // n odd, n > 3.  Returns true iff a proves n composite.
    Integer d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    Integer x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace

bool deterministic_prime(const Integer& n) {
    if (n < 2) return false;
    static const long small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                        41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    for (long p : small_primes) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) return false;
    }
    static const Integer det_bound("3317044064679887385961981");
    if (n >= det_bound)
        throw std::invalid_argument(
            "deterministic_prime: input above the proven deterministic range");

    static const long witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (long a : witnesses)
        if (miller_rabin_witness(n, Integer(a))) return false;
    return true;
}

std::vector<std::pair<Integer, unsigned long>> trial_factor(Integer v, unsigned long limit,
                                                            Integer* remainder) {
    std::vector<std::pair<Integer, unsigned long>> factors;
    if (v < 1) throw std::invalid_argument("trial_factor: v must be >= 1");

    auto strip = [&](unsigned long d) {
        unsigned long count = 0;
        while (mpz_divisible_ui_p(v.get_mpz_t(), d)) {
            mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), d);
            ++count;
        }
        if (count > 0) factors.emplace_back(Integer(static_cast<long>(d)), count);
    };

    strip(2);
    for (unsigned long d = 3; d <= limit && Integer(d) * Integer(d) <= v; d += 2) strip(d);

    if (v > 1 && Integer(limit) * Integer(limit) > v) {
        // v has no divisor <= sqrt(v), so it is prime.
        factors.emplace_back(v, 1);
        v = 1;
    }
    if (remainder) *remainder = v;
    return factors;
}

}  // namespace denseset
