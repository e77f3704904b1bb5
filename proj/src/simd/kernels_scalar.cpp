#include "heis/numeric.hpp"
#include "heis/simd/kernels.hpp"

namespace heis::simd::scalar {

void cube_power_batch(const std::uint32_t* base, const std::uint32_t* mod, std::uint32_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<std::uint32_t>(pow_mod(base[i], (mod[i] - 1) / 3, mod[i]));
  }
}

double select_sum(const std::uint8_t* cls, const double* t0, const double* t1, const double* t2, std::size_t n) {
  detail::Neumaier lane[4];
  for (std::size_t i = 0; i < n; ++i) {
    double v = cls[i] == 0 ? t0[i] : cls[i] == 1 ? t1[i] : t2[i];
    lane[i & 3].add(v);
  }
  double s[4], c[4];
  for (int k = 0; k < 4; ++k) {
    s[k] = lane[k].s;
    c[k] = lane[k].c;
  }
  return detail::merge_lanes(s, c);
}

}  // namespace heis::simd::scalar
