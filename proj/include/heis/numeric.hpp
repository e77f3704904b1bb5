#pragma once

// Exact integer helpers shared by every module: checked 128-bit arithmetic,
// modular exponentiation, integer roots and a deterministic primality test.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace heis {

using i128 = __int128;
using u128 = unsigned __int128;

/// Raised when an exact computation would leave the supported integer range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("i128 addition overflow");
  return r;
}

inline i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("i128 subtraction overflow");
  return r;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("i128 multiplication overflow");
  return r;
}

inline u128 checked_mul(u128 a, u128 b) {
  u128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("u128 multiplication overflow");
  return r;
}

inline u128 checked_add(u128 a, u128 b) {
  u128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("u128 addition overflow");
  return r;
}

/// Least non-negative residue of a modulo m (m > 0).
inline i128 mod_floor(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// Checked power base^exp; throws OverflowError when the result exceeds u128.
u128 checked_pow(u128 base, unsigned exp);

/// Largest m with m^k <= y. Integer Newton iteration with an exact
/// correction loop; no floating point anywhere in the comparison path.
u128 iroot(u128 y, unsigned k);

inline u128 isixth_root(u128 y) { return iroot(y, 6); }

/// Number of distinct prime factors (trial division; intended for small inputs).
unsigned omega(std::uint64_t n);

bool is_squarefree(std::uint64_t n);

std::string to_string(i128 v);
std::string to_string(u128 v);

/// Parses a non-negative integer given in plain decimal or scientific notation
/// ("6e12", "1.5e3"). The value must be an exact integer; anything else throws
/// std::invalid_argument.
u128 parse_exact_integer(std::string_view text);

}  // namespace heis
