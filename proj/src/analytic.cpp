#include "heis/analytic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "heis/primes.hpp"
#include "heis/simd/kernels.hpp"

namespace heis {

using cplx = std::complex<double>;
using cplxl = std::complex<long double>;

void TruncationParams::validate() const {
  if (delta_max < 2 || p_max < 2 || series_terms < 2) throw std::invalid_argument("truncation parameters must be >= 2");
  if (p_max > 2'000'000'000ull) throw std::invalid_argument("p_max is limited to 2e9");
}

// ---------------------------------------------------------------------------
// K(x; l, d)

namespace {

u128 k_dfs(const std::vector<std::uint32_t>& primes, std::uint64_t x, std::uint64_t n, std::size_t from, u128 w,
           u128 factor) {
  u128 total = 0;
  const std::uint64_t limit = x / n;
  for (std::size_t j = from; j < primes.size(); ++j) {
    const std::uint64_t q = primes[j];
    if (q > limit) break;
    const u128 wq = w * factor;
    const std::uint64_t nq = n * q;
    if (j + 1 < primes.size() && primes[j + 1] <= x / nq) {
      total += wq + k_dfs(primes, x, nq, j + 1, wq, factor);
    } else {
      // No q' >= q admits a further prime, so the rest are leaves.
      auto end = std::upper_bound(primes.begin() + static_cast<std::ptrdiff_t>(j), primes.end(),
                                  static_cast<std::uint32_t>(limit));
      total += wq * static_cast<u128>(end - (primes.begin() + static_cast<std::ptrdiff_t>(j)));
      break;
    }
  }
  return total;
}

}  // namespace

u128 k_direct(std::uint64_t x, std::uint32_t ell, std::uint64_t d) {
  if (x > 1'000'000'000ull) throw std::invalid_argument("k_direct: x beyond the 10^9 sieve budget");
  if (!is_prime_u64(ell)) throw std::invalid_argument("k_direct: ell must be prime");
  if (d == 0) throw std::invalid_argument("k_direct: d must be positive");
  if (x == 0) return 0;
  std::vector<std::uint32_t> primes;
  for (std::uint32_t p : primes_one_mod(x, ell)) {
    if (d % p != 0) primes.push_back(p);
  }
  return 1 + k_dfs(primes, x, 1, 0, 1, ell - 1);
}

Rational psi_ell(std::uint64_t d, std::uint32_t ell) {
  if (d == 0) throw std::invalid_argument("psi_ell: d must be positive");
  Rational r{1, 1};
  auto mul = [&](u128 a, u128 b) {
    r.num *= a;
    r.den *= b;
    u128 x = r.num, y = r.den;
    while (y) {
      u128 t = x % y;
      x = y;
      y = t;
    }
    r.num /= x;
    r.den /= x;
  };
  for (std::uint64_t p = 2; p * p <= d; ++p) {
    if (d % p) continue;
    mul(p, p + ell - 1);
    while (d % p == 0) d /= p;
  }
  if (d > 1) mul(d, d + ell - 1);
  return r;
}

// ---------------------------------------------------------------------------
// L(1, chi)

std::complex<double> l_one_closed_form(const DirichletCharacter& chi) {
  const std::uint64_t q = chi.modulus;
  if (q < 3 || chi.values.size() != q) throw std::invalid_argument("l_one_closed_form: bad character table");
  const long double pi = std::numbers::pi_v<long double>;
  cplxl tau = 0;
  cplxl inner = 0;
  for (std::uint64_t a = 1; a < q; ++a) {
    cplxl v(chi.values[a].real(), chi.values[a].imag());
    if (v == cplxl(0)) continue;
    long double ang = 2 * pi * static_cast<long double>(a) / static_cast<long double>(q);
    tau += v * cplxl(std::cos(ang), std::sin(ang));
    if (chi.even) {
      inner += std::conj(v) * std::log(2 * std::sin(pi * static_cast<long double>(a) / static_cast<long double>(q)));
    } else {
      inner += std::conj(v) * static_cast<long double>(a);
    }
  }
  cplxl l;
  const auto ql = static_cast<long double>(q);
  if (chi.even) {
    l = -(tau / ql) * inner;
  } else {
    l = cplxl(0, pi) * tau / (ql * ql) * inner;
  }
  return {static_cast<double>(l.real()), static_cast<double>(l.imag())};
}

std::complex<double> l_one_series(const DirichletCharacter& chi, std::uint64_t terms) {
  const std::uint64_t q = chi.modulus;
  if (chi.values.size() != q) throw std::invalid_argument("l_one_series: bad character table");
  cplxl partial = 0;
  cplxl avg = 0;
  for (std::uint64_t n = 1; n < terms + q; ++n) {
    const cplx& v = chi.values[n % q];
    partial += cplxl(v.real(), v.imag()) / static_cast<long double>(n);
    if (n >= terms) avg += partial;
  }
  avg /= static_cast<long double>(q);
  return {static_cast<double>(avg.real()), static_cast<double>(avg.imag())};
}

DirichletCharacter legendre_three() { return {3, {0.0, 1.0, -1.0}, false}; }

// ---------------------------------------------------------------------------
// Tabulated cubic symbols

ResidueSymbols::ResidueSymbols(std::uint64_t bound) : bound_(bound), offset_(bound + 1, -1) {
  std::vector<std::uint32_t> base, mod, out;
  for (std::uint32_t q : primes_one_mod(bound, 3)) {
    const StandardPrime& sp = standard_prime(q);
    offset_[q] = static_cast<std::int32_t>(table_.size());
    base.resize(q);
    mod.assign(q, q);
    out.resize(q);
    for (std::uint32_t a = 0; a < q; ++a) base[a] = a;
    simd::cube_power_batch(base.data(), mod.data(), out.data(), q);
    const std::uint64_t r2 = mul_mod(sp.r, sp.r, q);
    for (std::uint32_t a = 0; a < q; ++a) {
      std::int8_t e;
      if (a == 0) {
        e = -1;
      } else if (out[a] == 1) {
        e = 0;
      } else if (out[a] == sp.r) {
        e = 1;
      } else if (out[a] == r2) {
        e = 2;
      } else {
        throw std::logic_error("ResidueSymbols: power is not a cube root of unity");
      }
      table_.push_back(e);
    }
  }
}

int ResidueSymbols::exponent(std::uint64_t q, std::uint64_t n) const {
  if (q > bound_ || offset_[q] < 0) throw std::out_of_range("ResidueSymbols: prime " + std::to_string(q) + " not tabulated");
  return table_[static_cast<std::size_t>(offset_[q]) + n % q];
}

int ResidueSymbols::chi_exponent(const SupportFunction& f, std::uint64_t n) const {
  int e = 0;
  for (const auto& en : f.entries()) {
    int s;
    if (en.prime == 3) {
      CharValue v = chi_nine(static_cast<i128>(n));
      s = v.is_zero() ? -1 : v.exponent();
    } else {
      s = exponent(en.prime, n);
    }
    if (s < 0) return -1;
    e += s * en.value;
  }
  return e % 3;
}

namespace {

const cplx kRoots[3] = {{1.0, 0.0}, {-0.5, std::numbers::sqrt3 / 2}, {-0.5, -std::numbers::sqrt3 / 2}};

std::uint64_t cubic_conductor(const SupportFunction& f) { return delta(f).delta * (f.at3() ? 9 : 1); }

}  // namespace

DirichletCharacter cubic_character(const SupportFunction& f, const ResidueSymbols& rs) {
  if (f.is_zero()) throw std::invalid_argument("cubic_character: zero function");
  DirichletCharacter chi;
  chi.modulus = cubic_conductor(f);
  chi.even = true;
  chi.values.resize(chi.modulus);
  for (std::uint64_t a = 0; a < chi.modulus; ++a) {
    int e = rs.chi_exponent(f, a);
    chi.values[a] = e < 0 ? cplx(0) : kRoots[e];
  }
  return chi;
}

DirichletCharacter twisted_cubic_character(const SupportFunction& f, const ResidueSymbols& rs) {
  if (f.is_zero()) throw std::invalid_argument("twisted_cubic_character: zero function");
  DirichletCharacter chi;
  const std::uint64_t d = delta(f).delta;
  chi.modulus = f.at3() ? 9 * d : 3 * d;
  chi.even = false;
  chi.values.resize(chi.modulus);
  for (std::uint64_t a = 0; a < chi.modulus; ++a) {
    int leg = a % 3 == 0 ? 0 : a % 3 == 1 ? 1 : -1;
    int e = rs.chi_exponent(f, a);
    chi.values[a] = (e < 0 || leg == 0) ? cplx(0) : kRoots[e] * static_cast<double>(leg);
  }
  return chi;
}

namespace {

std::uint64_t largest_prime(const SupportFunction& f) {
  std::uint64_t m = 7;
  for (const auto& e : f.entries()) m = std::max(m, e.prime);
  return m;
}

}  // namespace

std::complex<double> l_one_cubic(const SupportFunction& f) {
  ResidueSymbols rs(largest_prime(f));
  return l_one_closed_form(cubic_character(f, rs));
}

// ---------------------------------------------------------------------------
// alpha_l

namespace {

std::uint64_t primitive_root(std::uint64_t ell) {
  std::vector<std::uint64_t> factors;
  std::uint64_t m = ell - 1;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    factors.push_back(p);
    while (m % p == 0) m /= p;
  }
  if (m > 1) factors.push_back(m);
  for (std::uint64_t g = 2;; ++g) {
    bool ok = true;
    for (auto p : factors) ok = ok && pow_mod(g, (ell - 1) / p, ell) != 1;
    if (ok) return g;
  }
}

std::uint64_t multiplicative_order(std::uint64_t p, std::uint64_t ell) {
  std::uint64_t x = p % ell, k = 1;
  while (x != 1) {
    x = x * (p % ell) % ell;
    ++k;
  }
  return k;
}

}  // namespace

double alpha_ell(std::uint32_t ell, const TruncationParams& params) {
  params.validate();
  if (ell < 3 || !is_prime_u64(ell)) throw std::invalid_argument("alpha_ell: ell must be an odd prime");
  // prod over non-principal characters mod l of L(1, chi).
  const std::uint64_t g = primitive_root(ell);
  std::vector<std::uint64_t> dlog(ell, 0);
  for (std::uint64_t k = 0, x = 1; k < ell - 1; ++k, x = x * g % ell) dlog[x] = k;
  cplx lprod = 1;
  for (std::uint64_t k = 1; k + 1 < ell; ++k) {
    DirichletCharacter chi;
    chi.modulus = ell;
    chi.even = k % 2 == 0;
    chi.values.assign(ell, 0.0);
    for (std::uint64_t a = 1; a < ell; ++a) {
      chi.values[a] = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k * dlog[a] % (ell - 1)) /
                                          static_cast<double>(ell - 1));
    }
    lprod *= l_one_closed_form(chi);
  }
  // Residual factor G(p) = 1 + O(p^-2), see alpha_ell's declaration.
  simd::detail::Neumaier acc;
  for (std::uint32_t p : sieve_primes(params.p_max)) {
    const double pd = p;
    double lg;
    if (p == ell) {
      lg = std::log1p(-1.0 / (pd * pd));
    } else if (p % ell == 1) {
      lg = std::log1p((ell - 1) / pd) + (ell - 1) * std::log1p(-1.0 / pd);
    } else {
      const std::uint64_t f = multiplicative_order(p, ell);
      lg = static_cast<double>((ell - 1) / f) * std::log1p(-std::pow(pd, -static_cast<double>(f)));
    }
    acc.add(lg);
  }
  return static_cast<double>(ell) / (ell + 1) * lprod.real() * std::exp(acc.s + acc.c);
}

// ---------------------------------------------------------------------------
// Euler products

EulerTables::EulerTables(std::uint64_t p_max, EulerForm form) : p_max_(p_max), form_(form) {
  for (std::uint32_t p : sieve_primes(p_max)) {
    if (p == 3) continue;
    primes_.push_back(p);
    const double pd = p;
    const double s = 2.0 / (std::sqrt(pd) * (pd + 2));
    double a = 0, b = 0, c = 0;
    if (p % 3 == 1) {
      switch (form) {
        case EulerForm::Heis:
          a = std::log1p(4 / (pd + 2) + s) + 4 * std::log1p(-1 / pd);
          b = std::log1p(-2 / (pd + 2) + s) + 2 * std::log1p(1 / pd + 1 / (pd * pd));
          c = std::log1p(s);
          break;
        case EulerForm::Plain:
          a = std::log1p(4 / (pd + 2)) + 4 * std::log1p(-1 / pd);
          b = std::log1p(-2 / (pd + 2)) + 2 * std::log1p(1 / pd + 1 / (pd * pd));
          break;
        case EulerForm::Secondary:
          a = std::log1p(2 / (std::sqrt(pd) * (pd + 6)));
          b = std::log1p(2 / (std::sqrt(pd) * pd));
          break;
      }
    } else if (form != EulerForm::Secondary) {
      a = 2 * std::log1p(-1 / (pd * pd));
      b = std::log1p(1 / (pd * pd) + 1 / (pd * pd * pd * pd));
    }
    t0_.push_back(a);
    t1_.push_back(b);
    t2_.push_back(c);
  }
}

double EulerTables::log_product(const std::vector<std::uint8_t>& cls) const {
  if (cls.size() != primes_.size()) throw std::invalid_argument("log_product: class vector size mismatch");
  return simd::select_sum(cls.data(), t0_.data(), t1_.data(), t2_.data(), cls.size());
}

namespace {

std::vector<std::uint8_t> prime_classes(const SupportFunction& f, const EulerTables& tables, const ResidueSymbols& rs) {
  const auto& primes = tables.primes();
  std::vector<std::uint8_t> cls(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    int e = rs.chi_exponent(f, primes[i]);
    cls[i] = e < 0 ? 2 : e == 0 ? 0 : 1;
  }
  return cls;
}

}  // namespace

double euler_product_P(const SupportFunction& f, const EulerTables& tables, const ResidueSymbols& rs) {
  if (f.is_zero()) throw std::invalid_argument("euler_product_P: zero function");
  double lg = tables.log_product(prime_classes(f, tables, rs));
  if (tables.form() != EulerForm::Secondary) {
    lg += 2 * std::log(std::abs(l_one_closed_form(cubic_character(f, rs))));
    lg += 2 * std::log(std::abs(l_one_closed_form(twisted_cubic_character(f, rs))));
    // Linear factor |1 - chi(3)/3|^2 at p = 3 (the twisted character vanishes there).
    int e3 = rs.chi_exponent(f, 3);
    if (e3 == 0) lg += std::log(4.0 / 9.0);
    if (e3 > 0) lg += std::log(13.0 / 9.0);
  }
  return std::exp(lg);
}

double euler_product_P(const SupportFunction& f, EulerForm form, const TruncationParams& params) {
  params.validate();
  ResidueSymbols rs(largest_prime(f));
  EulerTables tables(params.p_max, form);
  return euler_product_P(f, tables, rs);
}

double euler_product_naive(const SupportFunction& f, EulerForm form, std::uint64_t p_max) {
  ResidueSymbols rs(largest_prime(f));
  simd::detail::Neumaier acc;
  for (std::uint32_t p : primes_one_mod(p_max, 3)) {
    const double pd = p;
    int e = rs.chi_exponent(f, p);
    double trace = e < 0 ? 0.0 : e == 0 ? 2.0 : -1.0;  // chi + chi^2
    double s = 2.0 / (std::sqrt(pd) * (pd + 2));
    double factor = 1;
    switch (form) {
      case EulerForm::Heis:
        factor = 1 + 2 * trace / (pd + 2) + s;
        break;
      case EulerForm::Plain:
        factor = 1 + 2 * trace / (pd + 2);
        break;
      case EulerForm::Secondary:
        factor = e < 0 ? 1.0 : 1 + 2 / (std::sqrt(pd) * (pd + 2 * (1 + trace)));
        break;
    }
    acc.add(std::log(factor));
  }
  return std::exp(acc.s + acc.c);
}

// ---------------------------------------------------------------------------
// H constants

namespace {

struct DeltaTerms {
  double h0 = 0, h1 = 0, h1p = 0, h2 = 0, cstar = 0;
  std::uint64_t characters = 0;
};

}  // namespace

ConstantReport h_constants(const TruncationParams& params, unsigned threads) {
  params.validate();
  ConstantReport rep;
  rep.params = params;
  rep.l_one_chi3 = l_one_closed_form(legendre_three()).real();
  rep.alpha3 = alpha_ell(3, params);

  const ResidueSymbols rs(std::max<std::uint64_t>(params.delta_max, 7));
  const EulerTables heis_tab(params.p_max, EulerForm::Heis);
  const EulerTables plain_tab(params.p_max, EulerForm::Plain);
  const EulerTables second_tab(params.p_max, EulerForm::Secondary);
  const std::vector<DeltaIndex> deltas = enumerate_deltas(params.delta_max);
  std::vector<DeltaTerms> terms(deltas.size());

  auto work = [&](const DeltaIndex& d, DeltaTerms& t) {
    double lambda = 1, psi = 1;
    for (auto p : d.factors) {
      const double pd = static_cast<double>(p);
      lambda /= 1 + 2 / (std::sqrt(pd) * (pd + 2));
      psi *= pd / (pd + 2);
    }
    const double shape = psi * std::pow(3.0, static_cast<double>(d.factors.size())) /
                         std::pow(static_cast<double>(d.delta), 1.5);
    const double w = lambda * shape;
    for (const SupportFunction& f : enumerate_V(d, true)) {
      if (d.delta > 1) {
        const double p = euler_product_P(f, heis_tab, rs);
        t.h0 += w * p;
        if (rs.chi_exponent(f, 3) == 0) {
          t.h1 += w * p;
        } else {
          t.h1p += w * p;
        }
        t.cstar += shape * euler_product_P(f, plain_tab, rs) * euler_product_P(f, second_tab, rs);
        ++t.characters;
      }
      for (int eta = 1; eta <= 2; ++eta) {
        SupportFunction g = linear_combination(1, f, 1, SupportFunction{{3, eta}});
        t.h2 += w * euler_product_P(g, heis_tab, rs);
        ++t.characters;
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned id) {
    try {
      for (std::size_t i; (i = next.fetch_add(1)) < deltas.size();) work(deltas[i], terms[i]);
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

  simd::detail::Neumaier h0, h1, h1p, h2, cstar, b0, b1, b2;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const auto& t = terms[i];
    h0.add(t.h0);
    h1.add(t.h1);
    h1p.add(t.h1p);
    h2.add(t.h2);
    cstar.add(t.cstar);
    rep.characters += t.characters;
    if (2 * deltas[i].delta > params.delta_max) {
      b0.add(t.h0);
      b1.add(t.h1);
      b2.add(t.h2);
    }
  }
  rep.h0 = h0.s + h0.c;
  rep.h1 = h1.s + h1.c;
  rep.h1_prime = h1p.s + h1p.c;
  rep.h2 = h2.s + h2.c;
  // Terms decay like Delta^{-1/2} per dyadic block up to logarithms, so the
  // tail is about (1 + 1/sqrt2 + 1/2 + ...) times the last block.
  const double geometric = 1 / (std::numbers::sqrt2 - 1);
  rep.tail_h0 = geometric * (b0.s + b0.c);
  rep.tail_h1 = geometric * (b1.s + b1.c);
  rep.tail_h2 = geometric * (b2.s + b2.c);
  const double pm = static_cast<double>(params.p_max);
  rep.tail_euler_relative = 2 / (std::sqrt(pm) * std::log(pm));
  rep.tail_alpha3_relative = 2 / (pm * std::log(pm));

  const double a = rep.alpha3;
  rep.c_heis3 = 0.25 * (32.0 / 729 * rep.h0 + 8.0 / 729 * rep.h1 + 10.0 / 2187 * rep.h2) * a;
  rep.c_heis_star = a / 108 * (cstar.s + cstar.c);
  rep.c_heis_star_h0_form = a / 108 * rep.h0;

  const double H0 = rep.h0, H1 = rep.h1, H2 = rep.h2;
  const std::array<double, 7> lower = {H0, 2.0 / 9 * H1, 2.0 / 27 * (H0 - H1), H2 / 81, 2.0 / 243 * H2, 2.0 / 81 * H2,
                                       4.0 / 243 * H2};
  const std::array<double, 7> upper = {H0 / 27, 2.0 / 9 * H1, 2.0 / 27 * (H0 - H1), H2 / 81, 2.0 / 243 * H2,
                                       2.0 / 81 * H2, 4.0 / 243 * H2};
  double total_full = 0;
  for (int k = 0; k < 7; ++k) {
    rep.class_constants[k] = lower[k];
    rep.class_constants[k + 7] = upper[k];
    rep.class_constants_full_omega[k] = lower[k];
    rep.class_constants_full_omega[k + 7] = 2 * upper[k];
    total_full += lower[k] + 2 * upper[k];
  }
  rep.c_heis3_full_omega = a / 108 * total_full;
  return rep;
}

// ---------------------------------------------------------------------------
// Cancellation probe

void CancellationPattern::validate() const {
  if (f.is_zero() || f.at3() != 0) throw std::invalid_argument("cancellation pattern: f must be nonzero with f(3) = 0");
  if (eps1 < 0 || eps2 < 0 || eps1 + eps2 > 1) throw std::invalid_argument("cancellation pattern: need eps1 + eps2 <= 1");
  if (e.size() != f.entries().size()) throw std::invalid_argument("cancellation pattern: one (e1, e2) per support prime");
  int total = 0;
  for (const auto& pr : e) {
    if (pr[0] < 0 || pr[1] < 0 || pr[0] + pr[1] > 1) {
      throw std::invalid_argument("cancellation pattern: need e1r + e2r <= 1");
    }
    total += pr[0] + pr[1];
  }
  if (total < 1) throw std::invalid_argument("cancellation pattern: trivial exponent pattern");
}

CancellationResult char_cancellation(const CancellationPattern& pattern, std::uint64_t x) {
  pattern.validate();
  if (x > 1'000'000'000ull) throw std::invalid_argument("char_cancellation: x beyond 10^9");
  const SupportFunction& f = pattern.f;
  ResidueSymbols rs(largest_prime(f));
  std::vector<StandardPrime> rho;
  for (const auto& en : f.entries()) rho.push_back(standard_prime(en.prime));

  long double re = 0, im = 0;
  CancellationResult res;
  for (std::uint32_t p : primes_one_mod(x, 3)) {
    int ef = rs.chi_exponent(f, p);
    if (ef < 0) continue;  // p in supp f
    const StandardPrime sp = standard_decompose(p);
    int e = pattern.eps1 * ef + pattern.eps2 * 2 * ef;
    for (std::size_t k = 0; k < rho.size(); ++k) {
      const std::uint64_t r = rho[k].p;
      const int mult = 2 * pattern.e[k][0] + pattern.e[k][1];
      if (mult == 0) continue;
      const int chi_r = rs.exponent(r, p);
      const auto image = static_cast<std::uint64_t>(
          mod_floor(sp.pi.a + sp.pi.b * static_cast<i128>(rho[k].r), static_cast<i128>(r)));
      const int sym = rs.exponent(r, image);
      e += mult * (chi_r + sym);
    }
    const cplx v = kRoots[e % 3];
    re += v.real();
    im += v.imag();
    ++res.count;
  }
  res.sum = {static_cast<double>(re), static_cast<double>(im)};
  return res;
}

CancellationResult legendre_three_prime_sum(std::uint64_t x) {
  CancellationResult res;
  long long s = 0;
  for (std::uint32_t p : sieve_primes(x)) {
    s += p % 3 == 1 ? 1 : p % 3 == 2 ? -1 : 0;
    ++res.count;
  }
  res.sum = static_cast<double>(s);
  return res;
}

// ---------------------------------------------------------------------------
// Ratio table

std::vector<RatioRow> ratio_report(const std::vector<u128>& x_grid, WeightMode mode, const ConstantReport& constants,
                                   unsigned threads) {
  const double c = mode == WeightMode::OmegaFull ? constants.c_heis3_full_omega : constants.c_heis3;
  std::vector<RatioRow> rows;
  for (u128 x : x_grid) {
    CountReport rep = heis_total(x, mode, threads);
    RatioRow r;
    r.x = x;
    r.count = rep.count_string();
    r.count_value = static_cast<double>(rep.raw_total) / kNormalization;
    r.x_quarter = std::pow(static_cast<double>(x), 0.25);
    r.ratio = r.count_value / r.x_quarter;
    r.c_estimate = c;
    r.ratio_over_c = r.ratio / c;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<u128> log_grid(u128 lo, u128 hi, unsigned n) {
  if (lo < 1 || hi < lo || n < 1) throw std::invalid_argument("log_grid: need 1 <= lo <= hi and n >= 1");
  std::vector<u128> out;
  const long double a = std::log(static_cast<long double>(lo));
  const long double b = std::log(static_cast<long double>(hi));
  for (unsigned k = 0; k < n; ++k) {
    u128 v;
    if (k == 0) {
      v = lo;
    } else if (k + 1 == n) {
      v = hi;
    } else {
      v = static_cast<u128>(std::llround(std::exp(a + (b - a) * k / (n - 1))));
      v = std::clamp(v, lo, hi);
    }
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  return out;
}

}  // namespace heis
