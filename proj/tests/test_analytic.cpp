#include <cmath>
#include <numbers>

#include "heis/analytic.hpp"
#include "heis/primes.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace heis;

namespace {

// Sum of (ell-1)^omega(n) over squarefree n <= x with all prime factors = 1 mod
// ell and coprime to d, by direct factorization.
u128 brute_k(std::uint64_t x, std::uint64_t ell, std::uint64_t d) {
  u128 total = 0;
  for (std::uint64_t n = 1; n <= x; ++n) {
    const auto fs = n == 1 ? std::vector<std::uint64_t>{} : oracle::factor(n);
    if (n > 1 && fs.empty()) continue;
    bool ok = true;
    for (auto p : fs) ok = ok && p % ell == 1 && d % p != 0;
    if (!ok) continue;
    u128 w = 1;
    for (std::size_t i = 0; i < fs.size(); ++i) w *= ell - 1;
    total += w;
  }
  return total;
}

DirichletCharacter cubic_mod(std::uint64_t q, int power) {
  // chi_q^power as a value table.
  DirichletCharacter chi;
  chi.modulus = q;
  chi.even = true;  // cubic characters are even
  chi.values.assign(q, 0.0);
  for (std::uint64_t a = 1; a < q; ++a) {
    const CharValue v = chi_p(q, static_cast<i128>(a)).pow(static_cast<unsigned>(power));
    chi.values[a] = oracle::root_of_unity(v.exponent());
  }
  return chi;
}

}  // namespace

TEST_CASE("k_direct: worked values and brute force") {
  CHECK(k_direct(10, 3, 1) == 3);
  CHECK(k_direct(100, 3, 1) == 27);
  CHECK(k_direct(100, 3, 7) == 21);
  CHECK(k_direct(0, 3, 1) == 0);
  CHECK(k_direct(1, 3, 1) == 1);
  for (std::uint64_t ell : {3ull, 5ull, 7ull}) {
    for (std::uint64_t d : {1ull, 7ull, 91ull, 11ull * 31}) {
      for (std::uint64_t x : {6ull, 100ull, 999ull, 20000ull}) {
        CAPTURE(ell);
        CAPTURE(d);
        CAPTURE(x);
        REQUIRE(k_direct(x, static_cast<std::uint32_t>(ell), d) == brute_k(x, ell, d));
      }
    }
  }
  CHECK_THROWS_AS(k_direct(2'000'000'000, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(k_direct(100, 4, 1), std::invalid_argument);
}

TEST_CASE("psi_ell") {
  CHECK(psi_ell(1, 3) == Rational{1, 1});
  CHECK(psi_ell(7, 3) == Rational{7, 9});
  CHECK(psi_ell(91, 3) == Rational{91, 135});
  CHECK(psi_ell(11, 5) == Rational{11, 15});
}

TEST_CASE("L(1, (./3))") {
  const auto closed = l_one_closed_form(legendre_three());
  CHECK(closed.real() == doctest::Approx(std::numbers::pi / (3 * std::sqrt(3.0))).epsilon(1e-14));
  CHECK(std::abs(closed.imag()) < 1e-15);
  const auto series = l_one_series(legendre_three(), 1'000'000);
  CHECK(std::abs(series - closed) < 1e-9);
  CHECK(std::abs(closed.real() - 0.60459979) < 1e-6);
}

TEST_CASE("closed form and series agree for cubic and twisted characters") {
  const ResidueSymbols rs(500);
  for (std::uint32_t q : primes_one_mod(500, 3)) {
    for (int k = 1; k <= 2; ++k) {
      const auto chi = cubic_mod(q, k);
      const auto a = l_one_closed_form(chi), b = l_one_series(chi, 200'000);
      CAPTURE(q);
      REQUIRE(std::abs(a - b) < 1e-6);
    }
  }
  for (const SupportFunction& f : {SupportFunction{{3, 1}}, SupportFunction{{7, 1}, {13, 2}}, SupportFunction{{3, 2}, {19, 1}},
                                   SupportFunction{{7, 1}, {3, 1}}}) {
    CAPTURE(to_string(f));
    const auto chi = cubic_character(f, rs);
    const auto tw = twisted_cubic_character(f, rs);
    CHECK(chi.even);
    CHECK_FALSE(tw.even);
    CHECK(std::abs(l_one_closed_form(chi) - l_one_series(chi, 200'000)) < 1e-6);
    CHECK(std::abs(l_one_closed_form(tw) - l_one_series(tw, 200'000)) < 1e-6);
    CHECK(std::abs(l_one_cubic(f) - l_one_closed_form(chi)) < 1e-12);
  }
}

TEST_CASE("character tables match chi_eval") {
  const ResidueSymbols rs(200);
  const SupportFunction f{{3, 1}, {7, 2}, {13, 1}};
  const auto chi = cubic_character(f, rs);
  CHECK(chi.modulus == 9 * 91);
  for (std::uint64_t n = 0; n < chi.modulus; ++n) {
    const CharValue v = chi_eval(f, static_cast<i128>(n));
    const auto w = chi.values[n];
    if (v.is_zero()) {
      REQUIRE(std::abs(w) < 1e-12);
    } else {
      REQUIRE(std::abs(w - oracle::root_of_unity(v.exponent())) < 1e-12);
    }
    REQUIRE(rs.chi_exponent(f, n) == (v.is_zero() ? -1 : v.exponent()));
  }
  CHECK(twisted_cubic_character(SupportFunction{{7, 1}}, rs).modulus == 21);
}

TEST_CASE("alpha_ell is stable and matches the growth of K") {
  TruncationParams p;
  const double a3 = alpha_ell(3, p);
  TruncationParams p2 = p;
  p2.p_max *= 2;
  CHECK(std::abs(alpha_ell(3, p2) - a3) < 1e-6);
  CHECK(a3 == doctest::Approx(0.2594099).epsilon(1e-6));
  for (std::uint32_t ell : {3u, 5u, 7u}) {
    CAPTURE(ell);
    const double a = alpha_ell(ell, p);
    const double k = static_cast<double>(k_direct(10'000'000, ell, 1));
    CHECK(k / (a * 1e7) == doctest::Approx(1.0).epsilon(0.01));
  }
  CHECK_THROWS_AS(alpha_ell(4, p), std::invalid_argument);
}

TEST_CASE("renormalized Euler products track the literal ones") {
  const ResidueSymbols rs(1000);
  const std::uint64_t pm = 200'000;
  TruncationParams params;
  params.p_max = pm;
  for (const SupportFunction& f :
       {SupportFunction{{7, 1}}, SupportFunction{{7, 1}, {13, 2}}, SupportFunction{{3, 1}, {19, 1}}, SupportFunction{{3, 2}}}) {
    CAPTURE(to_string(f));
    const double sec = euler_product_P(f, EulerForm::Secondary, params);
    CHECK(sec == doctest::Approx(euler_product_naive(f, EulerForm::Secondary, pm)).epsilon(1e-12));
    for (EulerForm form : {EulerForm::Heis, EulerForm::Plain}) {
      const double smooth = euler_product_P(f, form, params);
      const double naive = euler_product_naive(f, form, pm);
      CHECK(smooth > 0);
      CHECK(smooth == doctest::Approx(naive).epsilon(0.02));
    }
    // The Heis form factors as Plain times Secondary up to the primes of Delta.
    double lambda = 1;
    for (auto p : delta(f).factors) lambda *= 1 + 2 / (std::sqrt(double(p)) * (p + 2));
    CHECK(euler_product_P(f, EulerForm::Heis, params) ==
          doctest::Approx(lambda * euler_product_P(f, EulerForm::Plain, params) * sec).epsilon(1e-10));
  }
}

TEST_CASE("constants at reduced truncation") {
  TruncationParams p;
  p.delta_max = 300;
  p.p_max = 100'000;
  const ConstantReport a = h_constants(p, 1);
  const ConstantReport b = h_constants(p, 3);
  CHECK(a.h0 == b.h0);
  CHECK(a.h2 == b.h2);
  CHECK(a.c_heis_star == b.c_heis_star);

  CHECK(a.h0 > 0);
  CHECK(a.h1 > 0);
  CHECK(a.h2 > 0);
  CHECK(a.h0 == doctest::Approx(a.h1 + a.h1_prime).epsilon(1e-14));
  CHECK(a.c_heis_star == doctest::Approx(a.c_heis_star_h0_form).epsilon(1e-3));
  CHECK(a.c_heis3 > 0);

  double lit = 0, full = 0;
  for (int k = 0; k < kNumClasses; ++k) {
    lit += a.class_constants[k];
    full += a.class_constants_full_omega[k];
  }
  CHECK(a.alpha3 / 108 * lit == doctest::Approx(a.c_heis3).epsilon(1e-12));
  CHECK(a.alpha3 / 108 * full == doctest::Approx(a.c_heis3_full_omega).epsilon(1e-12));
  CHECK(a.class_constants[0] == a.h0);
  CHECK(a.class_constants[7] == doctest::Approx(a.h0 / 27));
  CHECK(a.class_constants_full_omega[7] == doctest::Approx(2 * a.h0 / 27));
  CHECK(a.tail_h0 > 0);
  CHECK(a.tail_euler_relative < 1e-2);

  TruncationParams bad;
  bad.delta_max = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("cancellation patterns") {
  CancellationPattern ok{SupportFunction{{7, 1}}, 0, 0, {{1, 0}}};
  CHECK_NOTHROW(ok.validate());
  CancellationPattern zero_e{SupportFunction{{7, 1}}, 1, 0, {{0, 0}}};
  CHECK_THROWS_AS(zero_e.validate(), std::invalid_argument);
  CancellationPattern both_eps{SupportFunction{{7, 1}}, 1, 1, {{1, 0}}};
  CHECK_THROWS_AS(both_eps.validate(), std::invalid_argument);
  CancellationPattern with_three{SupportFunction{{3, 1}, {7, 1}}, 0, 0, {{1, 0}, {1, 0}}};
  CHECK_THROWS_AS(with_three.validate(), std::invalid_argument);
  CancellationPattern misaligned{SupportFunction{{7, 1}}, 0, 0, {{1, 0}, {0, 1}}};
  CHECK_THROWS_AS(misaligned.validate(), std::invalid_argument);

  const auto r = char_cancellation(ok, 100'000);
  CHECK(r.count == primes_one_mod(100'000, 3).size() - 1);
  CHECK(r.normalized() < 0.1);

  const auto leg = legendre_three_prime_sum(10);
  CHECK(leg.sum.real() == -1);
  CHECK(leg.count == 4);
}

TEST_CASE("cancellation sum agrees with a direct evaluation") {
  // M(pi) for f = {7:1, 13:2}, eps = (0, 1), e7 = (1, 0), e13 = (0, 1), written
  // out with the oracle symbols.
  const SupportFunction f{{7, 1}, {13, 2}};
  const CancellationPattern pat{f, 0, 1, {{1, 0}, {0, 1}}};
  oracle::Chi chi;
  const auto s7 = oracle::lattice_standard_prime(7), s13 = oracle::lattice_standard_prime(13);
  std::complex<double> sum = 0;
  std::uint64_t count = 0;
  for (std::uint32_t p : primes_one_mod(20'000, 3)) {
    if (p == 7 || p == 13) continue;
    const auto sp = oracle::lattice_standard_prime(p);
    const int ef = (chi(7, p) * 1 + chi(13, p) * 2) % 3;
    // (pi / rho)_3 through the image of pi in F_r.
    const int sym7 = chi(7, ((sp.a + sp.b * static_cast<std::int64_t>(s7.r)) % 7 + 7) % 7);
    const int sym13 = chi(13, ((sp.a + sp.b * static_cast<std::int64_t>(s13.r)) % 13 + 13) % 13);
    const int e = 2 * ef + 2 * (chi(7, p) + sym7) + 1 * (chi(13, p) + sym13);
    sum += oracle::root_of_unity(e % 3);
    ++count;
  }
  const auto got = char_cancellation(pat, 20'000);
  CHECK(got.count == count);
  CHECK(std::abs(got.sum - sum) < 1e-9);
}

TEST_CASE("log grid") {
  const auto g = log_grid(1'000'000'000, 10'000'000'000'000'000ull, 20);
  CHECK(g.size() == 20);
  CHECK(g.front() == 1'000'000'000);
  CHECK(g.back() == 10'000'000'000'000'000ull);
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK(log_grid(5, 5, 3) == std::vector<u128>{5});
  CHECK_THROWS_AS(log_grid(0, 5, 3), std::invalid_argument);
}
