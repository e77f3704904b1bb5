#include "heis/char_space.hpp"

#include <algorithm>
#include <stdexcept>

#include "heis/primes.hpp"

namespace heis {

namespace {

bool in_p3(std::uint64_t p) { return p == 3 || (p % 3 == 1 && is_prime_u64(p)); }

}  // namespace

SupportFunction::SupportFunction(std::initializer_list<std::pair<std::uint64_t, int>> entries)
    : SupportFunction(from_pairs(std::vector<std::pair<std::uint64_t, int>>(entries))) {}

SupportFunction SupportFunction::from_pairs(const std::vector<std::pair<std::uint64_t, int>>& entries) {
  std::vector<SupportEntry> out;
  std::vector<std::uint64_t> seen;
  for (auto [p, v] : entries) {
    if (!in_p3(p)) throw std::invalid_argument("support prime " + std::to_string(p) + " is not in P3");
    if (std::find(seen.begin(), seen.end(), p) != seen.end()) {
      throw std::invalid_argument("support prime " + std::to_string(p) + " listed twice");
    }
    seen.push_back(p);
    int r = ((v % 3) + 3) % 3;
    if (r != 0) out.push_back({p, static_cast<std::uint8_t>(r)});
  }
  std::sort(out.begin(), out.end());
  SupportFunction f;
  f.entries_ = std::move(out);
  return f;
}

SupportFunction SupportFunction::from_sorted_unchecked(std::vector<SupportEntry> entries) {
  SupportFunction f;
  f.entries_ = std::move(entries);
  return f;
}

int SupportFunction::at(std::uint64_t p) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                             [](const SupportEntry& e, std::uint64_t q) { return e.prime < q; });
  return it != entries_.end() && it->prime == p ? it->value : 0;
}

SupportFunction SupportFunction::scaled(int z) const {
  z = ((z % 3) + 3) % 3;
  if (z == 0) return {};
  SupportFunction f = *this;
  if (z == 2) {
    for (auto& e : f.entries_) e.value = static_cast<std::uint8_t>(3 - e.value);
  }
  return f;
}

DeltaIndex delta(const SupportFunction& f) {
  DeltaIndex d;
  for (const auto& e : f.entries()) {
    if (e.prime == 3) continue;
    d.delta *= e.prime;
    d.factors.push_back(e.prime);
  }
  return d;
}

SupportFunction linear_combination(int z, const SupportFunction& f, int z2, const SupportFunction& g) {
  z = ((z % 3) + 3) % 3;
  z2 = ((z2 % 3) + 3) % 3;
  const auto& a = f.entries();
  const auto& b = g.entries();
  std::vector<SupportEntry> out;
  std::size_t i = 0, k = 0;
  while (i < a.size() || k < b.size()) {
    std::uint64_t p;
    int v;
    if (k == b.size() || (i < a.size() && a[i].prime < b[k].prime)) {
      p = a[i].prime;
      v = z * a[i++].value;
    } else if (i == a.size() || b[k].prime < a[i].prime) {
      p = b[k].prime;
      v = z2 * b[k++].value;
    } else {
      p = a[i].prime;
      v = z * a[i++].value + z2 * b[k++].value;
    }
    v %= 3;
    if (v) out.push_back({p, static_cast<std::uint8_t>(v)});
  }
  return SupportFunction::from_sorted_unchecked(std::move(out));
}

bool is_linearly_independent(const SupportFunction& f, const SupportFunction& g) {
  if (f.is_zero() || g.is_zero()) return false;
  return g != f && g != f.scaled(2);
}

CharValue chi_eval(const SupportFunction& f, i128 m) {
  CharValue acc = CharValue::root(0);
  for (const auto& e : f.entries()) {
    CharValue v = e.prime == 3 ? chi_nine(m) : chi_p(e.prime, m);
    if (v.is_zero()) return CharValue::zero();
    acc = acc * v.pow(e.value);
  }
  return acc;
}

std::vector<SupportFunction> enumerate_V(const DeltaIndex& d, bool star) {
  std::vector<SupportFunction> out;
  const std::size_t w = d.factors.size();
  for (int v3 = 0; v3 < (star ? 1 : 3); ++v3) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << w); ++mask) {
      std::vector<SupportEntry> e;
      e.reserve(w + 1);
      if (v3) e.push_back({3, static_cast<std::uint8_t>(v3)});
      for (std::size_t i = 0; i < w; ++i) {
        e.push_back({d.factors[i], static_cast<std::uint8_t>((mask >> i) & 1 ? 2 : 1)});
      }
      out.push_back(SupportFunction::from_sorted_unchecked(std::move(e)));
    }
  }
  return out;
}

namespace {

void extend_deltas(const std::vector<std::uint32_t>& primes, std::size_t from, std::uint64_t limit,
                   DeltaIndex& cur, std::vector<DeltaIndex>& out) {
  for (std::size_t i = from; i < primes.size(); ++i) {
    std::uint64_t p = primes[i];
    if (cur.delta > limit / p) break;
    cur.delta *= p;
    cur.factors.push_back(p);
    out.push_back(cur);
    extend_deltas(primes, i + 1, limit, cur, out);
    cur.factors.pop_back();
    cur.delta /= p;
  }
}

}  // namespace

std::vector<DeltaIndex> enumerate_deltas_coprime(std::uint64_t limit, std::uint64_t avoid) {
  if (limit < 1) throw std::invalid_argument("enumerate_deltas: limit must be >= 1");
  std::vector<std::uint32_t> primes;
  for (std::uint32_t p : primes_one_mod(limit, 3)) {
    if (avoid % p != 0) primes.push_back(p);
  }
  std::vector<DeltaIndex> out{DeltaIndex{}};
  DeltaIndex cur;
  extend_deltas(primes, 0, limit, cur, out);
  std::sort(out.begin(), out.end(), [](const DeltaIndex& x, const DeltaIndex& y) { return x.delta < y.delta; });
  return out;
}

std::vector<DeltaIndex> enumerate_deltas(std::uint64_t limit) { return enumerate_deltas_coprime(limit, 1); }

std::string to_string(const SupportFunction& f) {
  std::string s = "{";
  for (std::size_t i = 0; i < f.entries().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(f.entries()[i].prime) + ":" + std::to_string(f.entries()[i].value);
  }
  return s + "}";
}

}  // namespace heis
