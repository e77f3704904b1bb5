#include "heis/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "heis/analytic.hpp"
#include "heis/char_space.hpp"
#include "heis/counter.hpp"
#include "heis/eisenstein.hpp"
#include "heis/primes.hpp"

namespace heis {

namespace {

constexpr std::size_t kMaxNotes = 12;

std::string show(const EisensteinInt& z) { return to_string(z.a) + (z.b < 0 ? "" : "+") + to_string(z.b) + "j"; }

// Runs body(i, local) for i in [0, n) on a small pool; local results are merged
// in thread order.
template <class Body>
void parallel_for(SuiteResult& out, std::size_t n, unsigned threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, n)));
  std::vector<SuiteResult> parts(threads);
  std::vector<std::exception_ptr> errors(threads);
  std::atomic<std::size_t> next{0};
  auto worker = [&](unsigned t) {
    try {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) body(i, parts[t]);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto& p : parts) {
    out.checks += p.checks;
    out.failures += p.failures;
    for (auto& line : p.notes) {
      if (out.notes.size() < kMaxNotes) out.notes.push_back(std::move(line));
    }
  }
}

std::vector<std::uint64_t> split_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint32_t p : primes_one_mod(limit, 3)) out.push_back(p);
  return out;
}

}  // namespace

void SuiteResult::expect(bool cond, const std::function<std::string()>& describe) {
  ++checks;
  if (cond) return;
  ++failures;
  if (notes.size() < kMaxNotes) notes.push_back("FAIL " + describe());
}

// ---------------------------------------------------------------------------

SuiteResult verify_reciprocity(std::uint64_t bound) {
  SuiteResult res{"reciprocity"};
  struct Prime {
    EisensteinInt pi;
    i128 n;
  };
  std::vector<Prime> primes;
  for (std::uint64_t p : split_primes(bound)) {
    const EisensteinInt pi = standard_prime(p).pi;
    primes.push_back({pi, static_cast<i128>(p)});
    primes.push_back({conj(pi), static_cast<i128>(p)});
  }
  for (std::uint32_t q : sieve_primes(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(bound))) + 1)) {
    const std::uint64_t qq = static_cast<std::uint64_t>(q) * q;
    if (q % 3 == 2 && qq <= bound) primes.push_back({EisensteinInt{static_cast<i128>(q), 0}, static_cast<i128>(qq)});
  }
  for (const auto& pr : primes) {
    res.expect(is_primary(pr.pi) && norm(pr.pi) == pr.n, [&] { return "not a primary prime: " + show(pr.pi); });
  }

  SuiteResult pairs;
  parallel_for(pairs, primes.size(), 0, [&](std::size_t i, SuiteResult& local) {
    const Prime& a = primes[i];
    for (std::size_t k = i + 1; k < primes.size(); ++k) {
      const Prime& b = primes[k];
      if (a.n == b.n) continue;
      const CharValue ab = cubic_symbol_general(a.pi, b.pi);
      const CharValue ba = cubic_symbol_general(b.pi, a.pi);
      local.expect(ab == ba, [&] { return "(" + show(a.pi) + "/" + show(b.pi) + ") != reverse"; });
      if (k == i + 1) {
        const CharValue cc = cubic_symbol_general(conj(a.pi), conj(b.pi));
        local.expect(cc == ab.conj(), [&] { return "conjugation fails for " + show(a.pi) + ", " + show(b.pi); });
      }
    }
  });
  res.checks += pairs.checks;
  res.failures += pairs.failures;
  res.notes.insert(res.notes.end(), pairs.notes.begin(), pairs.notes.end());
  res.note(std::to_string(primes.size()) + " primary primes with norm <= " + std::to_string(bound));
  return res;
}

// ---------------------------------------------------------------------------

SuiteResult verify_symbols(std::uint64_t bound, std::uint64_t random_cases) {
  SuiteResult res{"symbols"};
  const std::vector<std::uint64_t> primes = split_primes(bound);
  if (primes.empty()) throw std::invalid_argument("verify_symbols: bound must be at least 7");

  parallel_for(res, primes.size(), 0, [&](std::size_t i, SuiteResult& local) {
    const std::uint64_t p = primes[i];
    const StandardPrime sp = standard_decompose(p);
    local.expect(norm(sp.pi) == static_cast<i128>(p) && is_primary(sp.pi) && sp.pi.b > 0,
                 [&] { return "decomposition of " + std::to_string(p); });
    local.expect((mul_mod(sp.r, sp.r, p) + sp.r + 1) % p == 0 && divides(sp.pi, EisensteinInt{-static_cast<i128>(sp.r), 1}),
                 [&] { return "root of unity for " + std::to_string(p); });
    if (p > 10'000) return;
    // Exhaustive lattice search for the unique primary point of norm p with b > 0.
    const auto lim = static_cast<i128>(std::ceil(2 * std::sqrt(static_cast<double>(p))));
    int hits = 0;
    EisensteinInt found;
    for (i128 a = -lim; a <= lim; ++a) {
      for (i128 b = 1; b <= lim; ++b) {
        const EisensteinInt z{a, b};
        if (norm(z) == static_cast<i128>(p) && is_primary(z)) {
          ++hits;
          found = z;
        }
      }
    }
    local.expect(hits == 1 && found == sp.pi, [&] { return "lattice search disagrees at " + std::to_string(p); });
  });

  std::mt19937_64 rng(0x5eed'c0be);
  std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
  std::uniform_int_distribution<std::int64_t> coord(-1'000'000'000, 1'000'000'000);
  for (std::uint64_t k = 0; k < random_cases; ++k) {
    const StandardPrime& sp = standard_prime(primes[pick(rng)]);
    const EisensteinInt alpha{coord(rng), coord(rng)};
    const CharValue img = cubic_symbol_image(alpha, sp);
    const CharValue eul = cubic_symbol_euler(alpha, sp);
    res.expect(img == eul, [&] { return "dual paths differ for " + show(alpha) + " mod " + show(sp.pi); });

    const i128 m = coord(rng), n = coord(rng);
    res.expect(chi_p(sp.p, m * n) == chi_p(sp.p, m) * chi_p(sp.p, n),
               [&] { return "multiplicativity at p=" + std::to_string(sp.p); });
  }

  for (std::uint64_t q : primes) {
    if (q > 10'000) break;
    for (std::uint64_t r = 1; r <= 100; ++r) {
      if (r % q == 0) continue;
      const bool cube = pow_mod(r, (q - 1) / 3, q) == 1;
      res.expect(chi_p(q, static_cast<i128>(r)).is_one() == cube,
                 [&] { return "rational cube test q=" + std::to_string(q) + " r=" + std::to_string(r); });
    }
  }
  res.note(std::to_string(primes.size()) + " split primes <= " + std::to_string(bound) + ", " +
           std::to_string(random_cases) + " random cases");
  return res;
}

// ---------------------------------------------------------------------------

namespace {

// Exponent of chi_q(r) computed straight from the rational power residue.
int rational_exponent(std::uint64_t q, std::uint64_t r) {
  if (q == 3) {
    if (r % 3 == 0) return -1;
    std::uint64_t t = 1;
    for (int k = 0; k < 6; ++k, t = t * 2 % 9) {
      if (t == r % 9) return k % 3;
    }
    throw std::logic_error("rational_exponent: unreachable");
  }
  if (r % q == 0) return -1;
  const std::uint64_t t = pow_mod(r % q, (q - 1) / 3, q);
  const std::uint64_t w = standard_prime(q).r;
  if (t == 1) return 0;
  if (t == w) return 1;
  if (t == mul_mod(w, w, q)) return 2;
  throw std::logic_error("rational_exponent: not a cube root of unity");
}

// Every nonzero (z1, z2) with z1 f(r) + z2 g(r) = 0 must give chi(z1 f + z2 g)(r) = 1.
int splitting_oracle(const SupportFunction& f, const SupportFunction& g) {
  std::vector<std::uint64_t> primes;
  for (const auto& e : f.entries()) primes.push_back(e.prime);
  for (const auto& e : g.entries()) primes.push_back(e.prime);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (std::uint64_t r : primes) {
    if (r == 3) continue;
    for (int z1 = 0; z1 < 3; ++z1) {
      for (int z2 = 0; z2 < 3; ++z2) {
        if ((z1 == 0 && z2 == 0) || (z1 * f.at(r) + z2 * g.at(r)) % 3 != 0) continue;
        int e = 0;
        for (std::uint64_t q : primes) {
          const int v = (z1 * f.at(q) + z2 * g.at(q)) % 3;
          if (v == 0) continue;
          const int x = rational_exponent(q, r);
          if (x < 0) return 0;
          e += v * x;
        }
        if (e % 3 != 0) return 0;
      }
    }
  }
  return 1;
}

}  // namespace

SuiteResult verify_indicator(std::uint64_t bound, unsigned threads) {
  SuiteResult res{"indicator"};
  std::vector<std::uint64_t> base{3};
  for (std::uint64_t q : split_primes(bound)) base.push_back(q);

  std::vector<SupportFunction> singles, doubles;
  for (std::uint64_t p : base) {
    for (int v = 1; v <= 2; ++v) singles.push_back(SupportFunction{{p, v}});
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t k = i + 1; k < base.size(); ++k) {
      for (int v = 1; v <= 2; ++v) {
        for (int w = 1; w <= 2; ++w) doubles.push_back(SupportFunction{{base[i], v}, {base[k], w}});
      }
    }
  }

  std::vector<std::array<int, 4>> gl2;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          if ((a * d - b * c + 9) % 3 != 0) gl2.push_back({a, b, c, d});

  auto check_pair = [&](const SupportFunction& f, const SupportFunction& g, SuiteResult& local) {
    if (!is_linearly_independent(f, g)) return;
    const int ind = indicator(f, g);
    auto label = [&] { return to_string(f) + " x " + to_string(g); };
    local.expect(ind == 0 || ind == 1, [&] { return "indicator outside {0,1}: " + label(); });
    local.expect(indicator(g, f) == ind, [&] { return "asymmetric indicator: " + label(); });
    local.expect(splitting_oracle(f, g) == ind, [&] { return "splitting oracle disagrees: " + label(); });
    for (const auto& m : gl2) {
      const SupportFunction f2 = linear_combination(m[0], f, m[1], g);
      const SupportFunction g2 = linear_combination(m[2], f, m[3], g);
      local.expect(indicator(f2, g2) == ind, [&] { return "span invariance fails: " + label(); });
    }
  };

  SuiteResult a;
  parallel_for(a, singles.size(), threads, [&](std::size_t i, SuiteResult& local) {
    for (const auto& g : singles) check_pair(singles[i], g, local);
    for (const auto& g : doubles) check_pair(singles[i], g, local);
  });
  SuiteResult b;
  parallel_for(b, doubles.size(), threads, [&](std::size_t i, SuiteResult& local) {
    for (const auto& g : doubles) check_pair(doubles[i], g, local);
  });
  for (SuiteResult* part : {&a, &b}) {
    res.checks += part->checks;
    res.failures += part->failures;
    for (auto& line : part->notes) {
      if (res.notes.size() < kMaxNotes) res.notes.push_back(line);
    }
  }
  res.note(std::to_string(base.size()) + " primes, " + std::to_string(singles.size()) + " single and " +
           std::to_string(doubles.size()) + " two-prime support functions");
  return res;
}

// ---------------------------------------------------------------------------

SuiteResult verify_integrality(u128 x_max, unsigned points, unsigned threads) {
  SuiteResult res{"integrality"};
  const u128 lo = 1'000'000'000;
  res.expect(heis_total(lo, WeightMode::OmegaFull, threads).raw_total == 0, [] { return "census at 10^9 is not empty"; });
  u128 prev = 0;
  for (u128 x : log_grid(lo, x_max, points)) {
    const CountReport r = heis_total(x, WeightMode::OmegaFull, threads);
    res.expect(r.divisible(), [&] { return "108 does not divide raw_total at X=" + to_string(x); });
    res.expect(r.raw_total >= prev, [&] { return "count decreases at X=" + to_string(x); });
    prev = r.raw_total;
    res.note("X=" + to_string(x) + " raw_total=" + to_string(r.raw_total) + " count=" + r.count_string());
  }
  const u128 x6 = 6'000'000'000'000;
  if (x_max >= x6) {
    const CountReport star = heis_total(x6, WeightMode::OmegaStar, threads);
    const CountReport full = heis_total(x6, WeightMode::OmegaFull, threads);
    res.expect(!star.divisible() && star.raw_total == 72,
               [&] { return "omega-star raw_total at 6e12 is " + to_string(star.raw_total); });
    res.expect(full.raw_total == 108, [&] { return "omega-full raw_total at 6e12 is " + to_string(full.raw_total); });
  }
  return res;
}

SuiteResult verify_subsum_identities(u128 x_max, unsigned points, unsigned threads) {
  SuiteResult res{"subsum-identities"};
  const u128 shift = 531'441;  // 3^12
  const u128 lo = std::min<u128>(x_max, 10'000'000'000'000);
  for (WeightMode mode : {WeightMode::OmegaStar, WeightMode::OmegaFull}) {
    const u128 factor = mode == WeightMode::OmegaStar ? 1 : 2;
    for (u128 x : log_grid(lo, x_max, points)) {
      const CountReport r = heis_total(x, mode, threads);
      const std::string at = std::string(to_string(mode)) + " X=" + to_string(x);
      u128 sum = 0;
      for (u128 s : r.subsums) sum += s;
      res.expect(sum == r.raw_total, [&] { return "class sums miss the total, " + at; });
      for (int c = 2; c <= 7; ++c) {
        res.expect(r.subsums[c - 1 + 7] == factor * r.subsums[c - 1],
                   [&] { return class_name(c + 7) + " != " + std::to_string(static_cast<int>(factor)) + "*" + class_name(c) + ", " + at; });
      }
      const u128 c1 = x / shift >= 1 ? heis_total(x / shift, mode, threads).subsums[0] : 0;
      res.expect(r.subsums[7] == factor * c1, [&] { return "C8(X) vs C1(X/3^12), " + at; });
      res.note(at + " raw_total=" + to_string(r.raw_total) + " C1(X/3^12)=" + to_string(c1) +
               " C8=" + to_string(r.subsums[7]));
    }
  }
  return res;
}

SuiteResult verify_ksum(std::uint64_t x) {
  SuiteResult res{"ksum"};
  res.expect(k_direct(10, 3, 1) == 3, [] { return "K(10; 3, 1) != 3"; });
  res.expect(k_direct(100, 3, 1) == 27, [] { return "K(100; 3, 1) != 27"; });
  res.expect(k_direct(100, 3, 7) == 21, [] { return "K(100; 3, 7) != 21"; });
  const double alpha3 = alpha_ell(3, TruncationParams{});
  const std::uint64_t x_small = std::min<std::uint64_t>(100'000, x);
  for (std::uint64_t d : {1ull, 7ull, 91ull}) {
    const double psi = psi_ell(d, 3).to_double();
    auto deviation = [&](std::uint64_t at) {
      return std::abs(static_cast<double>(k_direct(at, 3, d)) / (alpha3 * psi * static_cast<double>(at)) - 1);
    };
    const double dev = deviation(x), dev_small = deviation(x_small);
    std::ostringstream line;
    line << "d=" << d << " deviation " << dev_small << " at " << x_small << ", " << dev << " at " << x;
    res.note(line.str());
    res.expect(dev <= 0.02, [&] { return "K deviates by more than 2% for d=" + std::to_string(d); });
    if (x > x_small) {
      res.expect(dev < dev_small, [&] { return "deviation does not shrink for d=" + std::to_string(d); });
    }
  }
  return res;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"reciprocity", "symbols",           "indicator",
                                              "integrality", "subsum-identities", "ksum"};
  return names;
}

SuiteResult run_suite(const std::string& name, u128 bound, unsigned threads) {
  auto small = [&](u128 fallback) -> std::uint64_t {
    const u128 b = bound ? bound : fallback;
    if (b > UINT64_MAX) throw std::invalid_argument("bound too large for suite " + name);
    return static_cast<std::uint64_t>(b);
  };
  if (name == "reciprocity") return verify_reciprocity(small(10'000));
  if (name == "symbols") return verify_symbols(small(1'000'000));
  if (name == "indicator") return verify_indicator(small(200), threads);
  if (name == "integrality") return verify_integrality(bound ? bound : u128{10'000'000'000'000'000}, 20, threads);
  if (name == "subsum-identities") {
    return verify_subsum_identities(bound ? bound : u128{10'000'000'000'000'000}, 5, threads);
  }
  if (name == "ksum") return verify_ksum(small(10'000'000));
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace heis
