#pragma once

#include <cstdint>
#include <vector>

namespace heis {

/// All primes <= limit, ascending (segmented sieve of Eratosthenes).
std::vector<std::uint32_t> sieve_primes(std::uint64_t limit);

/// Primes p <= limit with p = 1 mod ell.
std::vector<std::uint32_t> primes_one_mod(std::uint64_t limit, std::uint32_t ell);

}  // namespace heis
