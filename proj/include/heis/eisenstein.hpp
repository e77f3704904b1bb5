#pragma once

// Arithmetic in Z[j] (j^2 + j + 1 = 0), standard prime decomposition of
// rational primes p = 1 mod 3, and cubic residue symbols.

#include <cstdint>
#include <vector>

#include "heis/numeric.hpp"

namespace heis {

struct EisensteinInt {
  i128 a = 0;  // coefficient of 1
  i128 b = 0;  // coefficient of j

  constexpr EisensteinInt() = default;
  constexpr EisensteinInt(i128 a_, i128 b_) : a(a_), b(b_) {}

  bool operator==(const EisensteinInt&) const = default;
  bool is_zero() const { return a == 0 && b == 0; }
};

i128 norm(const EisensteinInt& z);
EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y);
EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y);
EisensteinInt operator-(const EisensteinInt& x);
EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y);
EisensteinInt conj(const EisensteinInt& z);
/// Multiplication by j.
EisensteinInt times_j(const EisensteinInt& z);

struct DivRem {
  EisensteinInt q;
  EisensteinInt rem;
};

/// n = q*d + rem with norm(rem) < norm(d). Each coordinate of n*conj(d)/norm(d)
/// is rounded to the nearest integer, ties toward zero.
DivRem divrem(const EisensteinInt& n, const EisensteinInt& d);
bool divides(const EisensteinInt& d, const EisensteinInt& n);
EisensteinInt gcd(EisensteinInt x, EisensteinInt y);

/// a = 2 mod 3 and b = 0 mod 3.
bool is_primary(const EisensteinInt& z);
EisensteinInt primary_associate(const EisensteinInt& z);

struct StandardPrime {
  std::uint64_t p = 0;
  EisensteinInt pi;
  std::uint64_t r = 0;  // image of j in Z[j]/(pi) = F_p

  bool operator==(const StandardPrime&) const = default;
};

/// Throws std::invalid_argument unless p is a prime = 1 mod 3.
StandardPrime standard_decompose(std::uint64_t p);

/// True when every defining property holds (used to vet external records).
bool is_valid_standard_prime(const StandardPrime& sp);

/// Memoized standard_decompose; safe to call from many threads.
const StandardPrime& standard_prime(std::uint64_t p);

/// Seeds the memo with already validated records (e.g. from the on-disk cache).
void preload_standard_primes(const std::vector<StandardPrime>& primes);

/// Zero or a cube root of unity j^e.
class CharValue {
 public:
  static constexpr CharValue zero() { return CharValue(-1); }
  static constexpr CharValue root(int e) { return CharValue(static_cast<std::int8_t>(((e % 3) + 3) % 3)); }

  constexpr bool is_zero() const { return e_ < 0; }
  constexpr bool is_one() const { return e_ == 0; }
  /// Exponent e of j^e; only meaningful when !is_zero().
  constexpr int exponent() const { return e_; }

  constexpr CharValue operator*(CharValue o) const {
    if (is_zero() || o.is_zero()) return zero();
    return root(e_ + o.e_);
  }
  /// x^0 is ROOT(0) for every x, including zero.
  constexpr CharValue pow(unsigned k) const {
    if (k == 0) return root(0);
    if (is_zero()) return zero();
    return root(static_cast<int>((e_ * (k % 3)) % 3));
  }
  constexpr CharValue conj() const { return is_zero() ? zero() : root(3 - e_); }

  /// 1 + v + v^2, which is 3 for v = 1 and 0 for v = j, j^2.
  int one_plus_v_plus_v2() const;

  constexpr bool operator==(const CharValue&) const = default;

 private:
  constexpr explicit CharValue(std::int8_t e) : e_(e) {}
  std::int8_t e_;
};

/// Cubic residue symbol (alpha/pi)_3, evaluated through the image of alpha in F_p.
CharValue cubic_symbol(const EisensteinInt& alpha, const StandardPrime& sp);
/// Euler criterion alpha^((p-1)/3) mod pi computed entirely inside Z[j].
CharValue cubic_symbol_euler(const EisensteinInt& alpha, const StandardPrime& sp);
/// Euler criterion alpha^((N(pi)-1)/3) mod pi for any prime pi of Z[j] whose
/// norm is not 3 (split or inert).
CharValue cubic_symbol_general(const EisensteinInt& alpha, const EisensteinInt& pi);
/// Same symbol via j -> r and a power in F_p.
CharValue cubic_symbol_image(const EisensteinInt& alpha, const StandardPrime& sp);

/// Residue of n^((p-1)/3) mod p classified against {1, r, r^2}, n already reduced mod p.
CharValue classify_power_residue(std::uint64_t n_mod_p, const StandardPrime& sp);

/// chi_p(n) = (n/pi)_3 for the standard prime over p.
CharValue chi_p(std::uint64_t p, i128 n);

/// The character of conductor 9 with chi_nine(2) = j.
CharValue chi_nine(i128 n);

}  // namespace heis
