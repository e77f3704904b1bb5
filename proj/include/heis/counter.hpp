#pragma once

// Exact census of nonic Heisenberg fields: indicator, mu exponents,
// discriminant datum D, inner sums S and the fourteen-class decomposition.
// Everything here is integer arithmetic.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "heis/char_space.hpp"
#include "heis/numeric.hpp"

namespace heis {

/// Weight of d = 3m in the inner sum: 2^omega(m) (OmegaStar, prime 3 not
/// counted) or 2^omega(d) (OmegaFull).
enum class WeightMode { OmegaStar, OmegaFull };

const char* to_string(WeightMode m);
WeightMode parse_weight_mode(const std::string& s);

inline constexpr int kNumClasses = 14;
/// Class id 1..14; ids 8..14 repeat 1..7 with 3 | d.
std::string class_name(int cls);

inline constexpr u128 kMaxCensusX = static_cast<u128>(1'000'000'000'000'000'000ull);
inline constexpr unsigned kNormalization = 108;  // 2^2 * 3^3

/// Largest prime the census at X can touch.
std::uint64_t census_prime_bound(u128 x);

struct PairContext {
  SupportFunction f, g;
  DeltaIndex delta_f, delta_g;
  std::vector<std::uint64_t> union_supp3;
  std::vector<std::uint64_t> d0;      // primes in both supports
  std::vector<std::uint64_t> d1;      // only in f
  std::vector<std::uint64_t> d1_g;    // only in g
};

/// Throws std::invalid_argument for a dependent pair.
PairContext make_pair_context(const SupportFunction& f, const SupportFunction& g);

/// d / gcd(d, a) for squarefree d.
std::uint64_t free_part(std::uint64_t d, std::uint64_t a);

/// 1 iff every prime r != 3 in the union of supports has all kernel
/// combinations of (f, g) trivial at r.
int indicator(const SupportFunction& f, const SupportFunction& g);

/// Exponent of 3 in mu(f, g): 0, 8, 12 or 16.
int mu(const SupportFunction& f, const SupportFunction& g);
int mu_d(const SupportFunction& f, const SupportFunction& g, bool three_divides_d);

/// Delta(f)^6 * free(Delta(g), Delta(f))^4 * 3^mu_d.
u128 big_d(const SupportFunction& f, const SupportFunction& g, bool three_divides_d);

/// S(X, f, g) = K2(M1) + w3 * K2(M3) with M_c = isixth_root(X / D_c).
u128 s_sum(u128 x, const SupportFunction& f, const SupportFunction& g, WeightMode mode);

int classify(const SupportFunction& f, const SupportFunction& g, bool three_divides_d);

struct CountReport {
  u128 x = 0;
  WeightMode mode = WeightMode::OmegaFull;
  u128 raw_total = 0;
  std::array<u128, kNumClasses> subsums{};

  bool divisible() const { return raw_total % kNormalization == 0; }
  /// raw_total / 108 as an integer when exact, otherwise a reduced "p/q".
  std::string count_string() const;
};

/// One nonzero contribution to the census.
struct TermRecord {
  SupportFunction f, g;
  bool three_divides_d = false;
  u128 big_d = 0;
  int cls = 0;
  u128 union_weight = 0;  // 3^|supp3 f U supp3 g|
  u128 d_weight = 0;      // 1, or w3 when 3 | d
  u128 k_sum = 0;         // K2(M)
  u128 contribution = 0;  // union_weight * d_weight * k_sum
};

/// Nonzero terms ordered by (Delta(f), Delta(g), f, g, d-class). threads = 0
/// uses every available core; the result does not depend on it.
std::vector<TermRecord> enumerate_terms(u128 x, WeightMode mode, unsigned threads = 0);

CountReport heis_total(u128 x, WeightMode mode, unsigned threads = 0);
u128 heis_subsum(u128 x, int cls, WeightMode mode, unsigned threads = 0);

}  // namespace heis
