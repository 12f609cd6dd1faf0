#pragma once

#include <utility>
#include <vector>

#include "denseset/rational.hpp"

namespace denseset {

// Deterministic primality for n < 3317044064679887385961981 (~2^81): trial
// division by small primes, then Miller-Rabin with the witness set
// {2,3,5,7,11,13,17,19,23,29,31,37}, which is proven deterministic below
// that bound (Sorenson-Webster).  Larger inputs are rejected rather than
// answered probabilistically.
bool deterministic_prime(const Integer& n);

// Factors v by trial division up to `limit`; `remainder` receives the
// unfactored cofactor (1 when the factorization is complete).
std::vector<std::pair<Integer, unsigned long>> trial_factor(Integer v, unsigned long limit,
                                                            Integer* remainder);

}  // namespace denseset
