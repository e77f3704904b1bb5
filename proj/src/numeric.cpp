#include "heis/numeric.hpp"

#include <algorithm>
#include <bit>

namespace heis {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic below 3.3e24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u128 checked_pow(u128 base, unsigned exp) {
  u128 result = 1;
  for (unsigned i = 0; i < exp; ++i) result = checked_mul(result, base);
  return result;
}

namespace {

// m^k <= y without overflowing.
bool pow_leq(u128 m, unsigned k, u128 y) {
  u128 acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    u128 next;
    if (__builtin_mul_overflow(acc, m, &next)) return false;
    acc = next;
    if (acc > y) return false;
  }
  return true;
}

unsigned bit_length(u128 y) {
  auto hi = static_cast<std::uint64_t>(y >> 64);
  if (hi) return 128 - std::countl_zero(hi);
  return 64 - std::countl_zero(static_cast<std::uint64_t>(y));
}

}  // namespace

u128 iroot(u128 y, unsigned k) {
  if (k == 0) throw std::invalid_argument("iroot: k must be positive");
  if (k == 1 || y < 2) return y;
  unsigned shift = (bit_length(y) + k - 1) / k;
  u128 x = u128{1} << shift;  // x^k >= y
  for (;;) {
    u128 xk1 = checked_pow(x, k - 1);
    u128 next = ((k - 1) * x + y / xk1) / k;
    if (next >= x) break;
    x = next;
  }
  while (!pow_leq(x, k, y)) --x;
  while (pow_leq(x + 1, k, y)) ++x;
  return x;
}

unsigned omega(std::uint64_t n) {
  unsigned count = 0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ++count;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ++count;
  return count;
}

bool is_squarefree(std::uint64_t n) {
  if (n == 0) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  return true;
}

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string to_string(i128 v) {
  if (v < 0) return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
  return to_string(static_cast<u128>(v));
}

u128 parse_exact_integer(std::string_view text) {
  auto fail = [&](const char* why) -> u128 {
    throw std::invalid_argument(std::string("not an exact integer (") + why + "): " +
                                std::string(text));
  };
  std::size_t i = 0;
  if (i < text.size() && text[i] == '+') ++i;
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (digits.empty()) return fail("no digits");
  long exp10 = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
    if (i == text.size()) return fail("empty exponent");
    for (; i < text.size(); ++i) {
      char c = text[i];
      if (c < '0' || c > '9') return fail("bad exponent");
      exp10 = exp10 * 10 + (c - '0');
      if (exp10 > 100) return fail("exponent too large");
    }
    if (neg) exp10 = -exp10;
  }
  if (i != text.size()) return fail("trailing characters");

  long shift = exp10 - frac_digits;
  if (shift < 0) {
    // Dropped digits must all be zero.
    auto drop = static_cast<std::size_t>(-shift);
    if (drop > digits.size()) drop = digits.size();
    for (std::size_t k = digits.size() - drop; k < digits.size(); ++k) {
      if (digits[k] != '0') return fail("fractional part");
    }
    digits.resize(digits.size() - drop);
    shift = 0;
  }
  u128 value = 0;
  try {
    for (char c : digits) value = checked_add(checked_mul(value, u128{10}), u128(c - '0'));
    for (long k = 0; k < shift; ++k) value = checked_mul(value, u128{10});
  } catch (const OverflowError&) {
    return fail("out of range");
  }
  return value;
}

}  // namespace heis
