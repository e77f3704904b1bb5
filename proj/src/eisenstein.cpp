#include "heis/eisenstein.hpp"

#include <cassert>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace heis {

i128 norm(const EisensteinInt& z) {
  return checked_add(checked_sub(checked_mul(z.a, z.a), checked_mul(z.a, z.b)),
                     checked_mul(z.b, z.b));
}

EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y) {
  return {checked_add(x.a, y.a), checked_add(x.b, y.b)};
}

EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y) {
  return {checked_sub(x.a, y.a), checked_sub(x.b, y.b)};
}

EisensteinInt operator-(const EisensteinInt& x) { return EisensteinInt{} - x; }

EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y) {
  // (a + bj)(c + dj) = ac + (ad + bc) j + bd j^2, with j^2 = -1 - j.
  i128 ac = checked_mul(x.a, y.a);
  i128 bd = checked_mul(x.b, y.b);
  i128 ad = checked_mul(x.a, y.b);
  i128 bc = checked_mul(x.b, y.a);
  return {checked_sub(ac, bd), checked_sub(checked_add(ad, bc), bd)};
}

EisensteinInt conj(const EisensteinInt& z) { return {checked_sub(z.a, z.b), checked_mul(z.b, i128{-1})}; }

EisensteinInt times_j(const EisensteinInt& z) { return {-z.b, checked_sub(z.a, z.b)}; }

namespace {

// Nearest integer to num/den (den > 0), ties toward zero.
i128 round_div(i128 num, i128 den) {
  i128 q = num / den;
  i128 r = num % den;
  if (r < 0) {
    q -= 1;
    r += den;
  }
  // num/den = q + r/den with 0 <= r < den.
  i128 twice = 2 * r;
  if (twice > den) return q + 1;
  if (twice == den) return q >= 0 ? q : q + 1;
  return q;
}

}  // namespace

DivRem divrem(const EisensteinInt& n, const EisensteinInt& d) {
  if (d.is_zero()) throw std::domain_error("divrem: division by zero");
  i128 nd = norm(d);
  EisensteinInt t = n * conj(d);
  EisensteinInt q{round_div(t.a, nd), round_div(t.b, nd)};
  EisensteinInt rem = n - q * d;
  assert(norm(rem) < nd);
  return {q, rem};
}

bool divides(const EisensteinInt& d, const EisensteinInt& n) { return divrem(n, d).rem.is_zero(); }

EisensteinInt gcd(EisensteinInt x, EisensteinInt y) {
  while (!y.is_zero()) {
    EisensteinInt r = divrem(x, y).rem;
    x = y;
    y = r;
  }
  return x;
}

bool is_primary(const EisensteinInt& z) { return mod_floor(z.a, 3) == 2 && mod_floor(z.b, 3) == 0; }

EisensteinInt primary_associate(const EisensteinInt& z) {
  if (mod_floor(norm(z), 3) == 0) throw std::invalid_argument("primary_associate: norm divisible by 3");
  EisensteinInt found;
  int hits = 0;
  EisensteinInt u = z;
  for (int k = 0; k < 3; ++k) {
    for (const EisensteinInt& c : {u, -u}) {
      if (is_primary(c)) {
        if (hits == 0) found = c;
        ++hits;
      }
    }
    u = times_j(u);
  }
  assert(hits == 1);
  (void)hits;
  return found;
}

StandardPrime standard_decompose(std::uint64_t p) {
  if (p % 3 != 1 || !is_prime_u64(p)) {
    throw std::invalid_argument("standard_decompose: " + std::to_string(p) + " is not a prime = 1 mod 3");
  }
  const std::uint64_t e = (p - 1) / 3;
  std::uint64_t w = 0;
  for (std::uint64_t g = 2;; ++g) {
    w = pow_mod(g, e, p);
    if (w != 1) break;
  }
  EisensteinInt pi = gcd(EisensteinInt{static_cast<i128>(p), 0}, EisensteinInt{static_cast<i128>(w), -1});
  pi = primary_associate(pi);
  if (pi.b < 0) pi = conj(pi);
  if (norm(pi) != static_cast<i128>(p)) throw std::logic_error("standard_decompose: gcd is not a prime over p");

  std::uint64_t w2 = mul_mod(w, w, p);
  std::uint64_t r = 0;
  for (std::uint64_t cand : {w, w2}) {
    if (divides(pi, EisensteinInt{-static_cast<i128>(cand), 1})) {
      r = cand;
      break;
    }
  }
  if (r == 0) throw std::logic_error("standard_decompose: no root of unity matches pi");
  return {p, pi, r};
}

bool is_valid_standard_prime(const StandardPrime& sp) {
  if (sp.p % 3 != 1 || !is_prime_u64(sp.p)) return false;
  if (sp.r < 2 || sp.r > sp.p - 2) return false;
  if (norm(sp.pi) != static_cast<i128>(sp.p)) return false;
  if (!is_primary(sp.pi) || sp.pi.b <= 0) return false;
  std::uint64_t r = sp.r;
  if ((mul_mod(r, r, sp.p) + r + 1) % sp.p != 0) return false;
  return divides(sp.pi, EisensteinInt{-static_cast<i128>(r), 1});
}

namespace {

std::shared_mutex memo_mutex;
std::unordered_map<std::uint64_t, StandardPrime>& memo() {
  static std::unordered_map<std::uint64_t, StandardPrime> m;
  return m;
}

}  // namespace

const StandardPrime& standard_prime(std::uint64_t p) {
  {
    std::shared_lock lock(memo_mutex);
    auto it = memo().find(p);
    if (it != memo().end()) return it->second;
  }
  StandardPrime sp = standard_decompose(p);
  std::unique_lock lock(memo_mutex);
  return memo().emplace(p, sp).first->second;
}

void preload_standard_primes(const std::vector<StandardPrime>& primes) {
  std::unique_lock lock(memo_mutex);
  for (const auto& sp : primes) memo().emplace(sp.p, sp);
}

int CharValue::one_plus_v_plus_v2() const {
  if (is_zero()) throw std::logic_error("one_plus_v_plus_v2: zero value");
  return is_one() ? 3 : 0;
}

CharValue classify_power_residue(std::uint64_t n_mod_p, const StandardPrime& sp) {
  if (n_mod_p == 0) return CharValue::zero();
  std::uint64_t t = pow_mod(n_mod_p, (sp.p - 1) / 3, sp.p);
  if (t == 1) return CharValue::root(0);
  if (t == sp.r) return CharValue::root(1);
  if (t == mul_mod(sp.r, sp.r, sp.p)) return CharValue::root(2);
  throw std::logic_error("classify_power_residue: power is not a cube root of unity");
}

CharValue cubic_symbol_image(const EisensteinInt& alpha, const StandardPrime& sp) {
  const auto p = static_cast<i128>(sp.p);
  i128 n = mod_floor(mod_floor(alpha.a, p) + mod_floor(alpha.b, p) * static_cast<i128>(sp.r), p);
  return classify_power_residue(static_cast<std::uint64_t>(n), sp);
}

CharValue cubic_symbol_general(const EisensteinInt& alpha, const EisensteinInt& pi) {
  const i128 n = norm(pi);
  if (n % 3 != 1) throw std::invalid_argument("cubic_symbol_general: norm of pi must be 1 mod 3");
  auto reduce = [&](const EisensteinInt& z) { return divrem(z, pi).rem; };
  EisensteinInt base = reduce(alpha);
  if (base.is_zero()) return CharValue::zero();
  EisensteinInt acc{1, 0};
  auto e = static_cast<u128>((n - 1) / 3);
  while (e) {
    if (e & 1) acc = reduce(acc * base);
    base = reduce(base * base);
    e >>= 1;
  }
  const EisensteinInt units[3] = {{1, 0}, {0, 1}, {-1, -1}};
  for (int k = 0; k < 3; ++k) {
    if (divides(pi, acc - units[k])) return CharValue::root(k);
  }
  throw std::logic_error("cubic_symbol_general: power is not a cube root of unity");
}

CharValue cubic_symbol_euler(const EisensteinInt& alpha, const StandardPrime& sp) {
  return cubic_symbol_general(alpha, sp.pi);
}

CharValue cubic_symbol(const EisensteinInt& alpha, const StandardPrime& sp) { return cubic_symbol_image(alpha, sp); }

CharValue chi_p(std::uint64_t p, i128 n) {
  const StandardPrime& sp = standard_prime(p);
  return classify_power_residue(static_cast<std::uint64_t>(mod_floor(n, static_cast<i128>(p))), sp);
}

CharValue chi_nine(i128 n) {
  // Exponent k with n = 2^k mod 9, reduced mod 3; -1 marks multiples of 3.
  static constexpr int table[9] = {-1, 0, 1, -1, 2, 2, -1, 1, 0};
  int e = table[static_cast<int>(mod_floor(n, 9))];
  return e < 0 ? CharValue::zero() : CharValue::root(e);
}

}  // namespace heis
