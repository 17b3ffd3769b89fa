#pragma once

#include "rgk/bigint.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace rgk {

// All primes <= bound, ascending (sieve of Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

bool is_prime(std::uint64_t n);
bool is_prime(const BigInt& n);

// Complete factorisation into prime -> exponent. Trial division for small
// factors, Brent's variant of Pollard rho for the rest. Intended for group
// orders of moderate size; cost grows with the second-largest prime factor.
std::map<BigInt, int> factorize(const BigInt& n);

// Distinct prime divisors of a positive machine integer.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

} // namespace rgk
