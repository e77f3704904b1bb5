#pragma once

// Multiplicative sums K(x; l, d), Dirichlet L-values at s = 1, renormalized
// Euler products and the leading constant of the census.

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "heis/char_space.hpp"
#include "heis/counter.hpp"
#include "heis/numeric.hpp"

namespace heis {

struct TruncationParams {
  std::uint64_t delta_max = 2000;      // cutoff for the sums over Delta
  std::uint64_t p_max = 1'000'000;     // prime cutoff for Euler products
  std::uint64_t series_terms = 1'000'000;  // terms for direct L-series checks

  void validate() const;
};

/// Sum of (l-1)^omega(n) over squarefree n <= x built from primes = 1 mod l
/// and coprime to d. Exact; x is limited to 10^9.
u128 k_direct(std::uint64_t x, std::uint32_t ell, std::uint64_t d);

struct Rational {
  u128 num = 0;
  u128 den = 1;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

/// prod_{p | d} p / (p + l - 1), reduced.
Rational psi_ell(std::uint64_t d, std::uint32_t ell);

/// Primitive Dirichlet character stored as a value table over Z/q.
struct DirichletCharacter {
  std::uint64_t modulus = 1;
  std::vector<std::complex<double>> values;
  bool even = true;
};

/// L(1, chi) for a primitive non-principal character through its Gauss sum.
std::complex<double> l_one_closed_form(const DirichletCharacter& chi);
/// Partial sums of sum chi(n)/n averaged over one full period ending at
/// `terms + modulus`; the averaging removes the O(q/N) oscillation.
std::complex<double> l_one_series(const DirichletCharacter& chi, std::uint64_t terms);

/// The real character (n/3).
DirichletCharacter legendre_three();

/// Cubic residue exponents chi_q(n) for every prime q = 1 mod 3 up to a bound,
/// tabulated over all residues mod q.
class ResidueSymbols {
 public:
  explicit ResidueSymbols(std::uint64_t bound);
  std::uint64_t bound() const { return bound_; }
  /// Exponent e with chi_q(n) = j^e, or -1 when q | n.
  int exponent(std::uint64_t q, std::uint64_t n) const;
  /// Exponent of chi(f)(n), or -1 when chi(f)(n) = 0.
  int chi_exponent(const SupportFunction& f, std::uint64_t n) const;

 private:
  std::uint64_t bound_;
  std::vector<std::int32_t> offset_;  // by prime, -1 when absent
  std::vector<std::int8_t> table_;
};

/// chi(f) as a value table (conductor Delta(f), or 9 Delta(f) when f(3) != 0).
DirichletCharacter cubic_character(const SupportFunction& f, const ResidueSymbols& rs);
/// (n/3) chi(f), conductor 3 Delta(f) or 9 Delta(f).
DirichletCharacter twisted_cubic_character(const SupportFunction& f, const ResidueSymbols& rs);

/// L(1, chi(f)) via the closed form.
std::complex<double> l_one_cubic(const SupportFunction& f);

/// alpha_l = l/(l+1) prod_p (1 + (sum_k chi_k(p))/p)(1 - 1/p), evaluated as the
/// product of L(1, chi_k) over the non-principal characters mod l times an
/// absolutely convergent product truncated at p_max.
double alpha_ell(std::uint32_t ell, const TruncationParams& params);

/// Which Euler product to evaluate for a support function f.
enum class EulerForm {
  /// prod over p = 1 mod 3 of 1 + 2(chi + chi^2)/(p+2) + 2/(sqrt(p)(p+2)).
  Heis,
  /// prod over p = 1 mod 3 of 1 + 2(chi + chi^2)/(p+2).
  Plain,
  /// prod over p = 1 mod 3, p not dividing Delta, of 1 + 2/(sqrt(p)(p + 2(1 + chi + chi^2))).
  Secondary,
};

/// Per-prime log factors up to p_max, shared by every f.
class EulerTables {
 public:
  EulerTables(std::uint64_t p_max, EulerForm form);
  std::uint64_t p_max() const { return p_max_; }
  EulerForm form() const { return form_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }
  /// Logarithm of the truncated product for the given per-prime classes
  /// (0: chi(p) = 1, 1: chi(p) = j or j^2, 2: chi(p) = 0).
  double log_product(const std::vector<std::uint8_t>& cls) const;

 private:
  std::uint64_t p_max_;
  EulerForm form_;
  std::vector<std::uint32_t> primes_;  // every prime <= p_max except 3
  std::vector<double> t0_, t1_, t2_;
};

/// Euler product of the given form for chi(f). Heis and Plain are computed as
/// |L(1, chi(f))|^2 |L(1, (./3) chi(f))|^2 times the residual product with the
/// four linear factors divided out; Secondary converges absolutely and is
/// truncated directly.
double euler_product_P(const SupportFunction& f, const EulerTables& tables, const ResidueSymbols& rs);
double euler_product_P(const SupportFunction& f, EulerForm form, const TruncationParams& params);

/// The same product multiplied out literally over p <= p_max (no
/// renormalization); converges slowly and serves as a cross-check.
double euler_product_naive(const SupportFunction& f, EulerForm form, std::uint64_t p_max);

struct ConstantReport {
  TruncationParams params;
  double l_one_chi3 = 0;  // L(1, (./3))
  double alpha3 = 0;
  double h0 = 0, h1 = 0, h1_prime = 0, h2 = 0;
  double c_heis3 = 0;
  double c_heis_star = 0;          // two-product form
  double c_heis_star_h0_form = 0;  // 2^-2 3^-3 alpha3 H0
  double c_heis3_full_omega = 0;   // classes 8..14 doubled
  std::array<double, kNumClasses> class_constants{};
  std::array<double, kNumClasses> class_constants_full_omega{};
  // Tail estimates.
  double tail_h0 = 0, tail_h1 = 0, tail_h2 = 0;  // Delta-series beyond delta_max
  double tail_euler_relative = 0;                // H-form product beyond p_max
  double tail_alpha3_relative = 0;
  std::uint64_t characters = 0;  // number of f summed
};

ConstantReport h_constants(const TruncationParams& params, unsigned threads = 0);

/// Exponent pattern for the cancellation probe: f in V*, (eps1, eps2) and a pair
/// (e1, e2) for every prime of supp f.
struct CancellationPattern {
  SupportFunction f;
  int eps1 = 0, eps2 = 0;
  std::vector<std::array<int, 2>> e;  // aligned with f.entries()

  void validate() const;
};

struct CancellationResult {
  std::complex<double> sum;
  std::uint64_t count = 0;  // standard primes summed
  double normalized() const { return count ? std::abs(sum) / static_cast<double>(count) : 0.0; }
};

/// Sum of M(pi) = chi(f)(p)^eps1 chi(2f)(p)^eps2 prod_r [chi_r(p) (pi/rho_r)_3]^(2 e1r + e2r)
/// over standard primes pi with p <= x, p not in supp f.
CancellationResult char_cancellation(const CancellationPattern& pattern, std::uint64_t x);

/// Sum over primes p <= x of (p/3), and the number of primes.
CancellationResult legendre_three_prime_sum(std::uint64_t x);

struct RatioRow {
  u128 x = 0;
  std::string count;  // exact count (integer or reduced fraction)
  double count_value = 0;
  double x_quarter = 0;
  double ratio = 0;
  double c_estimate = 0;
  double ratio_over_c = 0;
};

/// N(X)/X^{1/4} against the constant matching the weight mode.
std::vector<RatioRow> ratio_report(const std::vector<u128>& x_grid, WeightMode mode, const ConstantReport& constants,
                                   unsigned threads = 0);

/// n log-spaced integers from lo to hi inclusive (deduplicated, ascending).
std::vector<u128> log_grid(u128 lo, u128 hi, unsigned n);

}  // namespace heis
