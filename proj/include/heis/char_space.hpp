#pragma once

// Finitely supported functions f : P3 -> F3 indexing the product characters
// chi(f) = prod chi_p^f(p), with P3 = {3} U {p = 1 mod 3}.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "heis/eisenstein.hpp"

namespace heis {

struct SupportEntry {
  std::uint64_t prime;
  std::uint8_t value;  // 1 or 2

  bool operator==(const SupportEntry&) const = default;
  auto operator<=>(const SupportEntry&) const = default;
};

class SupportFunction {
 public:
  SupportFunction() = default;
  /// Values are taken mod 3, zeros dropped, entries sorted. Primes must lie in
  /// P3 and appear at most once.
  SupportFunction(std::initializer_list<std::pair<std::uint64_t, int>> entries);
  static SupportFunction from_pairs(const std::vector<std::pair<std::uint64_t, int>>& entries);
  /// Caller guarantees sorted distinct primes from P3 and values in {1, 2}.
  static SupportFunction from_sorted_unchecked(std::vector<SupportEntry> entries);

  const std::vector<SupportEntry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  /// f(p) in {0, 1, 2}.
  int at(std::uint64_t p) const;
  int at3() const { return !entries_.empty() && entries_.front().prime == 3 ? entries_.front().value : 0; }
  SupportFunction scaled(int z) const;

  bool operator==(const SupportFunction&) const = default;
  auto operator<=>(const SupportFunction&) const = default;

 private:
  std::vector<SupportEntry> entries_;
};

/// Squarefree product of primes = 1 mod 3, together with its factors.
struct DeltaIndex {
  std::uint64_t delta = 1;
  std::vector<std::uint64_t> factors;

  bool operator==(const DeltaIndex&) const = default;
};

DeltaIndex delta(const SupportFunction& f);

/// Pointwise z*f + z2*g over F3.
SupportFunction linear_combination(int z, const SupportFunction& f, int z2, const SupportFunction& g);

bool is_linearly_independent(const SupportFunction& f, const SupportFunction& g);

/// chi(f)(m); ZERO iff some support prime divides m, ROOT(0) for f = 0.
CharValue chi_eval(const SupportFunction& f, i128 m);

std::vector<SupportFunction> enumerate_V(const DeltaIndex& d, bool star);

/// Every squarefree product of primes = 1 mod 3 up to limit, ascending.
std::vector<DeltaIndex> enumerate_deltas(std::uint64_t limit);

/// Like enumerate_deltas but restricted to products coprime to `avoid`.
std::vector<DeltaIndex> enumerate_deltas_coprime(std::uint64_t limit, std::uint64_t avoid);

std::string to_string(const SupportFunction& f);

}  // namespace heis
