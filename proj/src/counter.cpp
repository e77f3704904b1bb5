#include "heis/counter.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "heis/analytic.hpp"
#include "heis/primes.hpp"
#include "heis/simd/kernels.hpp"

namespace heis {

const char* to_string(WeightMode m) { return m == WeightMode::OmegaStar ? "omega-star" : "omega-full"; }

WeightMode parse_weight_mode(const std::string& s) {
  if (s == "omega-star") return WeightMode::OmegaStar;
  if (s == "omega-full") return WeightMode::OmegaFull;
  throw std::invalid_argument("unknown weight mode: " + s);
}

std::string class_name(int cls) { return "C" + std::to_string(cls); }

std::string CountReport::count_string() const {
  if (divisible()) return to_string(raw_total / kNormalization);
  u128 a = raw_total, b = kNormalization;
  while (b) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return to_string(raw_total / a) + "/" + to_string(u128{kNormalization} / a);
}

PairContext make_pair_context(const SupportFunction& f, const SupportFunction& g) {
  if (!is_linearly_independent(f, g)) throw std::invalid_argument("pair is linearly dependent");
  PairContext c{f, g, delta(f), delta(g), {}, {}, {}, {}};
  const auto& a = c.delta_f.factors;
  const auto& b = c.delta_g.factors;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c.union_supp3));
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c.d0));
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c.d1));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(c.d1_g));
  return c;
}

std::uint64_t free_part(std::uint64_t d, std::uint64_t a) {
  if (!is_squarefree(d)) throw std::invalid_argument("free: " + std::to_string(d) + " is not squarefree");
  return d / gcd_u64(d, a);
}

namespace {

// The indicator and mu only need chi(h)(r) for primes r; `chi` supplies it so
// the census can plug in a precomputed symbol table.
template <typename Chi>
int indicator_with(const SupportFunction& f, const SupportFunction& g, Chi&& chi) {
  std::vector<std::uint64_t> primes;
  for (const auto* h : {&f, &g}) {
    for (const auto& e : h->entries()) {
      if (e.prime != 3) primes.push_back(e.prime);
    }
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (std::uint64_t r : primes) {
    int a = f.at(r), b = g.at(r);
    int z, z2;
    if (a == 0) {
      z = 1, z2 = 0;
    } else if (b == 0) {
      z = 0, z2 = 1;
    } else {
      z = b, z2 = 2 * a;
    }
    CharValue v = chi(linear_combination(z, f, z2, g), r);
    if (v.is_zero()) throw std::logic_error("indicator: kernel combination vanishes at r");
    if (!v.is_one()) return 0;
  }
  return 1;
}

template <typename Chi>
int mu_with(const SupportFunction& f, const SupportFunction& g, Chi&& chi) {
  int f3 = f.at3(), g3 = g.at3();
  if (f3 == 0 && g3 == 0) return 0;
  if (f3 == 0) return chi(f, 3).is_one() ? 8 : 12;
  if (g3 == 0) return chi(g, 3).is_one() ? 12 : 16;
  return chi(linear_combination(g3, f, 2 * f3, g), 3).is_one() ? 12 : 16;
}

template <typename Chi>
int classify_with(const SupportFunction& f, const SupportFunction& g, bool three_divides_d, Chi&& chi) {
  int f3 = f.at3(), g3 = g.at3();
  int row;
  if (f3 == 0 && g3 == 0) {
    row = 1;
  } else if (f3 == 0) {
    row = chi(f, 3).is_one() ? 2 : 3;
  } else if (g3 == 0) {
    row = chi(g, 3).is_one() ? 4 : 5;
  } else {
    row = chi(linear_combination(g3, f, 2 * f3, g), 3).is_one() ? 6 : 7;
  }
  return three_divides_d ? row + 7 : row;
}

const auto direct_chi = [](const SupportFunction& h, std::uint64_t r) { return chi_eval(h, static_cast<i128>(r)); };

u128 big_d_from(std::uint64_t delta_f, std::uint64_t delta_g, int mu_exp) {
  return checked_mul(checked_mul(checked_pow(delta_f, 6), checked_pow(free_part(delta_g, delta_f), 4)),
                     checked_pow(3, static_cast<unsigned>(mu_exp)));
}

int mu_d_from(int mu_exp, const SupportFunction& f, const SupportFunction& g, bool three_divides_d) {
  return three_divides_d && f.at3() == 0 && g.at3() == 0 ? 12 : mu_exp;
}

void check_x(u128 x) {
  if (x < 1) throw std::invalid_argument("X must be >= 1");
  if (x > kMaxCensusX) throw OverflowError("X beyond 10^18 is outside the supported census range");
}

}  // namespace

int indicator(const SupportFunction& f, const SupportFunction& g) {
  if (!is_linearly_independent(f, g)) throw std::invalid_argument("indicator: pair is linearly dependent");
  return indicator_with(f, g, direct_chi);
}

int mu(const SupportFunction& f, const SupportFunction& g) { return mu_with(f, g, direct_chi); }

int mu_d(const SupportFunction& f, const SupportFunction& g, bool three_divides_d) {
  return mu_d_from(mu(f, g), f, g, three_divides_d);
}

u128 big_d(const SupportFunction& f, const SupportFunction& g, bool three_divides_d) {
  return big_d_from(delta(f).delta, delta(g).delta, mu_d(f, g, three_divides_d));
}

int classify(const SupportFunction& f, const SupportFunction& g, bool three_divides_d) {
  return classify_with(f, g, three_divides_d, direct_chi);
}

u128 s_sum(u128 x, const SupportFunction& f, const SupportFunction& g, WeightMode mode) {
  const std::uint64_t avoid = delta(f).delta * delta(g).delta;
  u128 total = 0;
  for (bool three : {false, true}) {
    u128 d = big_d(f, g, three);
    if (d > x) continue;
    auto m = static_cast<std::uint64_t>(isixth_root(x / d));
    u128 k = k_direct(m, 3, avoid);
    total += three && mode == WeightMode::OmegaFull ? 2 * k : k;
  }
  return total;
}

std::uint64_t census_prime_bound(u128 x) {
  const u128 outside = std::max(x / 117649, x / 531441);
  return std::max<std::uint64_t>({static_cast<std::uint64_t>(isixth_root(x)),
                                  static_cast<std::uint64_t>(iroot(outside, 4)), 7});
}

namespace {

struct SquarefreeEntry {
  std::uint64_t n;
  std::vector<std::uint64_t> factors;
};

// Precomputed cubic symbols chi_q(r) among the primes the census can touch.
class CensusEngine {
 public:
  CensusEngine(u128 x, WeightMode mode) : x_(x), mode_(mode) {
    sixth_ = static_cast<std::uint64_t>(isixth_root(x));
    // Delta(g) primes outside supp f satisfy free^4 <= X / Delta(f)^6 with
    // Delta(f) >= 7 (f(3) = 0) or free^4 <= X / 3^12 (Delta(f) = 1).
    const u128 outside = std::max(x / 117649, x / 531441);
    outer_ = static_cast<std::uint64_t>(iroot(outside, 4));
    const std::uint64_t bound = census_prime_bound(x);
    primes_ = primes_one_mod(bound, 3);
    index_.assign(bound + 1, -1);
    for (std::size_t i = 0; i < primes_.size(); ++i) index_[primes_[i]] = static_cast<int>(i);
    build_symbols();
    for (const auto& d : enumerate_deltas(std::max<std::uint64_t>(outer_, 1))) {
      outer_list_.push_back({d.delta, d.factors});
    }
    for (const auto& d : enumerate_deltas(std::max<std::uint64_t>(sixth_, 1))) {
      k_list_.push_back({d.delta, d.factors});
      deltas_.push_back(d);
    }
  }

  std::vector<TermRecord> run(unsigned threads) const {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(deltas_.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::vector<TermRecord>> parts(threads);
    std::vector<std::exception_ptr> errors(threads);
    auto worker = [&](unsigned id) {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < deltas_.size();) process_delta(deltas_[i], parts[id]);
      } catch (...) {
        errors[id] = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    std::vector<TermRecord> all;
    for (auto& p : parts) all.insert(all.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    std::sort(all.begin(), all.end(), [](const TermRecord& a, const TermRecord& b) {
      auto ka = std::make_tuple(delta(a.f).delta, delta(a.g).delta);
      auto kb = std::make_tuple(delta(b.f).delta, delta(b.g).delta);
      if (ka != kb) return ka < kb;
      if (a.f != b.f) return a.f < b.f;
      if (a.g != b.g) return a.g < b.g;
      return a.three_divides_d < b.three_divides_d;
    });
    return all;
  }

 private:
  void build_symbols() {
    const std::size_t n = primes_.size();
    sym_.assign(n * n, 0);
    nine_.resize(n);
    three_.resize(n);
    std::vector<std::uint32_t> base(n + 1), mod(n + 1), out(n + 1);
    for (std::size_t qi = 0; qi < n; ++qi) {
      const std::uint32_t q = primes_[qi];
      const StandardPrime& sp = standard_prime(q);
      for (std::size_t ri = 0; ri < n; ++ri) base[ri] = primes_[ri] % q;
      base[n] = 3;
      std::fill(mod.begin(), mod.end(), q);
      simd::cube_power_batch(base.data(), mod.data(), out.data(), n + 1);
      const std::uint64_t r2 = mul_mod(sp.r, sp.r, q);
      auto classify_root = [&](std::uint32_t t, std::uint32_t b) -> std::int8_t {
        if (b == 0) return -1;
        if (t == 1) return 0;
        if (t == sp.r) return 1;
        if (t == r2) return 2;
        throw std::logic_error("symbol table: power is not a cube root of unity");
      };
      for (std::size_t ri = 0; ri < n; ++ri) sym_[qi * n + ri] = classify_root(out[ri], base[ri]);
      three_[qi] = classify_root(out[n], base[n]);
      nine_[qi] = static_cast<std::int8_t>(chi_nine(q).exponent());
    }
  }

  CharValue chi_table(const SupportFunction& h, std::uint64_t r) const {
    const std::size_t n = primes_.size();
    int e = 0;
    for (const auto& en : h.entries()) {
      std::int8_t s;
      if (r == 3) {
        if (en.prime == 3) return CharValue::zero();
        s = three_[static_cast<std::size_t>(index_[en.prime])];
      } else if (en.prime == 3) {
        s = nine_[static_cast<std::size_t>(index_[r])];
      } else {
        if (en.prime == r) return CharValue::zero();
        s = sym_[static_cast<std::size_t>(index_[en.prime]) * n + static_cast<std::size_t>(index_[r])];
      }
      e += s * en.value;
    }
    return CharValue::root(e);
  }

  u128 k2(std::uint64_t m_bound, std::uint64_t avoid) const {
    u128 total = 0;
    for (const auto& e : k_list_) {
      if (e.n > m_bound) break;
      if (gcd_u64(e.n, avoid) == 1) total += u128{1} << e.factors.size();
    }
    return total;
  }

  void process_delta(const DeltaIndex& df, std::vector<TermRecord>& out) const {
    auto chi = [this](const SupportFunction& h, std::uint64_t r) { return chi_table(h, r); };
    const u128 df6 = checked_pow(df.delta, 6);
    const std::size_t wf = df.factors.size();
    for (const SupportFunction& f : enumerate_V(df, false)) {
      if (f.is_zero()) continue;
      const int mu_min = f.at3() == 0 ? 0 : 12;
      const u128 base = checked_mul(df6, checked_pow(3, static_cast<unsigned>(mu_min)));
      if (base > x_) continue;
      const std::uint64_t outside_bound = static_cast<std::uint64_t>(iroot(x_ / base, 4));
      for (const auto& d1 : outer_list_) {
        if (d1.n > outside_bound) break;
        if (gcd_u64(d1.n, df.delta) != 1) continue;
        const std::uint64_t union_delta = df.delta * d1.n;
        const u128 union_weight = checked_pow(3, static_cast<unsigned>(wf + d1.factors.size()));
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << wf); ++mask) {
          DeltaIndex dg;
          for (std::size_t i = 0; i < wf; ++i) {
            if ((mask >> i) & 1) dg.factors.push_back(df.factors[i]);
          }
          dg.factors.insert(dg.factors.end(), d1.factors.begin(), d1.factors.end());
          std::sort(dg.factors.begin(), dg.factors.end());
          dg.delta = 1;
          for (auto p : dg.factors) dg.delta *= p;
          for (const SupportFunction& g : enumerate_V(dg, false)) {
            if (!is_linearly_independent(f, g)) continue;
            const int m = mu_with(f, g, chi);
            const u128 d_plain = big_d_from(df.delta, dg.delta, m);
            if (d_plain > x_) continue;
            if (!indicator_with(f, g, chi)) continue;
            for (bool three : {false, true}) {
              const u128 dd = big_d_from(df.delta, dg.delta, mu_d_from(m, f, g, three));
              if (dd > x_) continue;
              const auto m_bound = static_cast<std::uint64_t>(isixth_root(x_ / dd));
              const u128 k = k2(m_bound, union_delta);
              if (k == 0) continue;
              TermRecord t;
              t.f = f;
              t.g = g;
              t.three_divides_d = three;
              t.big_d = dd;
              t.cls = classify_with(f, g, three, chi);
              t.union_weight = union_weight;
              t.d_weight = three && mode_ == WeightMode::OmegaFull ? 2 : 1;
              t.k_sum = k;
              t.contribution = union_weight * t.d_weight * k;
              out.push_back(std::move(t));
            }
          }
        }
      }
    }
  }

  u128 x_;
  WeightMode mode_;
  std::uint64_t sixth_ = 0, outer_ = 0;
  std::vector<std::uint32_t> primes_;
  std::vector<int> index_;
  std::vector<std::int8_t> sym_, nine_, three_;
  std::vector<SquarefreeEntry> outer_list_, k_list_;
  std::vector<DeltaIndex> deltas_;
};

}  // namespace

std::vector<TermRecord> enumerate_terms(u128 x, WeightMode mode, unsigned threads) {
  check_x(x);
  return CensusEngine(x, mode).run(threads);
}

CountReport heis_total(u128 x, WeightMode mode, unsigned threads) {
  CountReport rep;
  rep.x = x;
  rep.mode = mode;
  for (const auto& t : enumerate_terms(x, mode, threads)) {
    rep.subsums[static_cast<std::size_t>(t.cls - 1)] += t.contribution;
    rep.raw_total += t.contribution;
  }
  return rep;
}

u128 heis_subsum(u128 x, int cls, WeightMode mode, unsigned threads) {
  if (cls < 1 || cls > kNumClasses) throw std::invalid_argument("class id must be in 1..14");
  return heis_total(x, mode, threads).subsums[static_cast<std::size_t>(cls - 1)];
}

}  // namespace heis
