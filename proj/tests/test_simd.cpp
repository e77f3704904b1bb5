#include <random>
#include <vector>

#include "heis/numeric.hpp"
#include "heis/primes.hpp"
#include "heis/simd/kernels.hpp"
#include "test_util.hpp"

using namespace heis;

namespace {

struct Batch {
  std::vector<std::uint32_t> base, mod;
};

Batch random_batch(std::mt19937_64& rng, std::size_t n) {
  static const auto primes = sieve_primes(1u << 20);
  Batch b;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t m;
    switch (rng() % 3) {
      case 0: m = primes[1 + rng() % (primes.size() - 1)]; break;       // odd prime
      case 1: m = 3 + 2 * static_cast<std::uint32_t>(rng() % 1'000'000'000); break;  // odd composite too
      default: m = (1u << 31) - 1 - 2 * static_cast<std::uint32_t>(rng() % 1000); break;  // near the top
    }
    b.mod.push_back(m);
    b.base.push_back(static_cast<std::uint32_t>(rng() % m));
  }
  return b;
}

}  // namespace

TEST_CASE("cube_power_batch matches pow_mod on every backend") {
  std::mt19937_64 rng(41);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 9u, 1000u, 4099u}) {
    const Batch b = random_batch(rng, n);
    std::vector<std::uint32_t> want(n), got(n);
    for (std::size_t i = 0; i < n; ++i) want[i] = static_cast<std::uint32_t>(pow_mod(b.base[i], (b.mod[i] - 1) / 3, b.mod[i]));
    simd::scalar::cube_power_batch(b.base.data(), b.mod.data(), got.data(), n);
    REQUIRE(got == want);
    simd::cube_power_batch(b.base.data(), b.mod.data(), got.data(), n);
    REQUIRE(got == want);
    if (simd::avx2_available()) {
      std::fill(got.begin(), got.end(), 0);
      simd::avx2::cube_power_batch(b.base.data(), b.mod.data(), got.data(), n);
      REQUIRE(got == want);
    }
  }
}

TEST_CASE("select_sum is bit-identical across backends") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {0u, 1u, 2u, 5u, 8u, 13u, 1000u, 100003u}) {
    std::vector<std::uint8_t> cls(n);
    std::vector<double> t0(n), t1(n), t2(n);
    long double ref = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cls[i] = static_cast<std::uint8_t>(rng() % 3);
      // Mixed magnitudes make the compensation matter.
      t0[i] = u(rng) * 1e-8;
      t1[i] = u(rng) * (i % 17 == 0 ? 1e6 : 1.0);
      t2[i] = u(rng);
      ref += cls[i] == 0 ? t0[i] : cls[i] == 1 ? t1[i] : t2[i];
    }
    const double s = simd::scalar::select_sum(cls.data(), t0.data(), t1.data(), t2.data(), n);
    CHECK(s == doctest::Approx(static_cast<double>(ref)).epsilon(1e-13));
    CHECK(simd::select_sum(cls.data(), t0.data(), t1.data(), t2.data(), n) == s);
    if (simd::avx2_available()) {
      CHECK(simd::avx2::select_sum(cls.data(), t0.data(), t1.data(), t2.data(), n) == s);
    }
  }
}

TEST_CASE("backend selection") {
  CHECK(std::string(simd::backend_name(simd::Backend::Scalar)) == "scalar");
  simd::force_backend(simd::Backend::Scalar);
  CHECK(simd::active_backend() == simd::Backend::Scalar);
  if (simd::avx2_available()) {
    simd::force_backend(simd::Backend::Avx2);
    CHECK(simd::active_backend() == simd::Backend::Avx2);
  } else {
    CHECK_THROWS_AS(simd::force_backend(simd::Backend::Avx2), std::runtime_error);
  }
  simd::force_backend(std::nullopt);
  CHECK(simd::active_backend() == (simd::avx2_available() ? simd::Backend::Avx2 : simd::Backend::Scalar));
}
