#include <atomic>
#include <stdexcept>

#include "heis/simd/kernels.hpp"

namespace heis::simd {

#if !HEIS_HAVE_AVX2_TU
namespace avx2 {
void cube_power_batch(const std::uint32_t*, const std::uint32_t*, std::uint32_t*, std::size_t) {
  throw std::runtime_error("AVX2 kernels not compiled in");
}
double select_sum(const std::uint8_t*, const double*, const double*, const double*, std::size_t) {
  throw std::runtime_error("AVX2 kernels not compiled in");
}
}  // namespace avx2
#endif

namespace {

// 0 = automatic, 1 = scalar, 2 = avx2.
std::atomic<int> forced{0};

}  // namespace

const char* backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if HEIS_HAVE_AVX2_TU
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

Backend active_backend() {
  int f = forced.load(std::memory_order_relaxed);
  if (f == 1) return Backend::Scalar;
  if (f == 2) return Backend::Avx2;
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

void force_backend(std::optional<Backend> b) {
  if (!b) {
    forced = 0;
    return;
  }
  if (*b == Backend::Avx2 && !avx2_available()) throw std::runtime_error("AVX2 backend unavailable on this CPU");
  forced = *b == Backend::Avx2 ? 2 : 1;
}

void cube_power_batch(const std::uint32_t* base, const std::uint32_t* mod, std::uint32_t* out, std::size_t n) {
  if (active_backend() == Backend::Avx2) {
    avx2::cube_power_batch(base, mod, out, n);
  } else {
    scalar::cube_power_batch(base, mod, out, n);
  }
}

double select_sum(const std::uint8_t* cls, const double* t0, const double* t1, const double* t2, std::size_t n) {
  if (active_backend() == Backend::Avx2) return avx2::select_sum(cls, t0, t1, t2, n);
  return scalar::select_sum(cls, t0, t1, t2, n);
}

}  // namespace heis::simd
