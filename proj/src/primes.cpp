#include "heis/primes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heis {

std::vector<std::uint32_t> sieve_primes(std::uint64_t limit) {
  if (limit > 0xFFFFFFFFull) throw std::invalid_argument("sieve_primes: limit exceeds 32 bits");
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  primes.push_back(2);

  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;

  // Odd base primes up to sqrt(limit).
  std::vector<std::uint32_t> base;
  {
    std::vector<bool> composite(root + 1, false);
    for (std::uint64_t i = 3; i <= root; i += 2) {
      if (composite[i]) continue;
      base.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t k = i * i; k <= root; k += 2 * i) composite[k] = true;
    }
  }

  // Segments cover odd numbers only; slot k stands for lo + 2k.
  constexpr std::uint64_t kSlots = 1 << 18;
  std::vector<std::uint8_t> seg(kSlots);
  for (std::uint64_t lo = 3; lo <= limit; lo += 2 * kSlots) {
    std::uint64_t hi = std::min(limit, lo + 2 * kSlots - 1);
    std::uint64_t slots = (hi - lo) / 2 + 1;
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(slots), 0);
    for (std::uint32_t p : base) {
      std::uint64_t pp = std::uint64_t{p} * p;
      if (pp > hi) break;
      std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
      if ((start & 1) == 0) start += p;
      for (std::uint64_t k = (start - lo) / 2; k < slots; k += p) seg[k] = 1;
    }
    for (std::uint64_t k = 0; k < slots; ++k) {
      if (!seg[k]) primes.push_back(static_cast<std::uint32_t>(lo + 2 * k));
    }
  }
  return primes;
}

std::vector<std::uint32_t> primes_one_mod(std::uint64_t limit, std::uint32_t ell) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p : sieve_primes(limit)) {
    if (p % ell == 1) out.push_back(p);
  }
  return out;
}

}  // namespace heis
