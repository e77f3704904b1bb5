#pragma once

// Batch kernels with a portable reference implementation and an AVX2 variant
// picked at runtime. Both variants produce bit-identical results.

#include <cstddef>
#include <cstdint>
#include <optional>

namespace heis::simd {

enum class Backend { Scalar, Avx2 };

const char* backend_name(Backend b);
bool avx2_available();
Backend active_backend();
/// Pins the backend (std::nullopt restores automatic selection). Throws
/// std::runtime_error if the requested backend is unavailable on this CPU.
void force_backend(std::optional<Backend> b);

/// out[i] = base[i]^((mod[i]-1)/3) mod mod[i] for odd moduli 3 <= mod[i] < 2^31.
void cube_power_batch(const std::uint32_t* base, const std::uint32_t* mod, std::uint32_t* out, std::size_t n);

/// Compensated sum of t_{cls[i]}[i] with cls[i] in {0,1,2}. Elements are
/// striped over four Neumaier accumulators (i mod 4) that are merged in a fixed
/// order, so the result does not depend on the backend.
double select_sum(const std::uint8_t* cls, const double* t0, const double* t1, const double* t2, std::size_t n);

namespace scalar {
void cube_power_batch(const std::uint32_t* base, const std::uint32_t* mod, std::uint32_t* out, std::size_t n);
double select_sum(const std::uint8_t* cls, const double* t0, const double* t1, const double* t2, std::size_t n);
}  // namespace scalar

namespace avx2 {
void cube_power_batch(const std::uint32_t* base, const std::uint32_t* mod, std::uint32_t* out, std::size_t n);
double select_sum(const std::uint8_t* cls, const double* t0, const double* t1, const double* t2, std::size_t n);
}  // namespace avx2

namespace detail {

struct Neumaier {
  double s = 0.0;
  double c = 0.0;
  void add(double v) {
    double t = s + v;
    if ((s < 0 ? -s : s) >= (v < 0 ? -v : v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  }
};

/// Fixed-order merge of the four lane accumulators.
inline double merge_lanes(const double s[4], const double c[4]) {
  Neumaier acc;
  for (int k = 0; k < 4; ++k) acc.add(s[k]);
  return acc.s + (acc.c + ((c[0] + c[1]) + (c[2] + c[3])));
}

}  // namespace detail

}  // namespace heis::simd
