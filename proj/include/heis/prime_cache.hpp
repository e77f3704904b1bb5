#pragma once

// On-disk table of standard primes: one record per line, "p\ta\tb\tr",
// sorted by p, no header.

#include <filesystem>
#include <optional>
#include <vector>

#include "heis/eisenstein.hpp"

namespace heis {

inline constexpr const char* kPrimeCacheFile = "standard_primes.tsv";

/// Reads and revalidates every record. Throws std::runtime_error naming the
/// first bad line.
std::vector<StandardPrime> load_prime_cache(const std::filesystem::path& file);

void save_prime_cache(const std::filesystem::path& file, const std::vector<StandardPrime>& primes);

/// Standard primes for every p = 1 mod 3 up to limit. When cache_dir is set the
/// table is read from there, extended if it is too short, and written back.
/// The memo used by standard_prime() is seeded either way.
std::vector<StandardPrime> standard_primes_up_to(std::uint64_t limit,
                                                 const std::optional<std::filesystem::path>& cache_dir);

}  // namespace heis
