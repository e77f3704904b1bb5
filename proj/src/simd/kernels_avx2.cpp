#include <immintrin.h>

#include <algorithm>

#include "heis/numeric.hpp"
#include "heis/simd/kernels.hpp"

namespace heis::simd::avx2 {

namespace {

// Montgomery arithmetic with R = 2^32 on four 64-bit lanes, each holding a
// 32-bit residue. ninv holds -m^{-1} mod 2^32 per lane.
inline __m256i mont_mul(__m256i a, __m256i b, __m256i m, __m256i ninv) {
  const __m256i low32 = _mm256_set1_epi64x(0xFFFFFFFFll);
  __m256i t = _mm256_mul_epu32(a, b);
  __m256i q = _mm256_and_si256(_mm256_mul_epu32(t, ninv), low32);
  __m256i u = _mm256_srli_epi64(_mm256_add_epi64(t, _mm256_mul_epu32(q, m)), 32);
  // u < 2m; subtract m once when u >= m.
  __m256i ge = _mm256_cmpgt_epi64(m, u);
  return _mm256_sub_epi64(u, _mm256_andnot_si256(ge, m));
}

std::uint32_t neg_inverse_32(std::uint32_t m) {
  std::uint32_t x = m;  // correct to 3 bits for odd m
  for (int k = 0; k < 5; ++k) x *= 2 - m * x;
  return static_cast<std::uint32_t>(0u - x);
}

}  // namespace

void cube_power_batch(const std::uint32_t* base, const std::uint32_t* mod, std::uint32_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    alignas(32) std::uint64_t m[4], ni[4], r1[4], bm[4], e[4];
    std::uint64_t emax = 0;
    for (int k = 0; k < 4; ++k) {
      std::uint64_t mk = mod[i + k];
      m[k] = mk;
      ni[k] = neg_inverse_32(static_cast<std::uint32_t>(mk));
      r1[k] = (std::uint64_t{1} << 32) % mk;
      bm[k] = (std::uint64_t{base[i + k] % mk} << 32) % mk;
      e[k] = (mk - 1) / 3;
      emax = std::max(emax, e[k]);
    }
    const __m256i vm = _mm256_load_si256(reinterpret_cast<const __m256i*>(m));
    const __m256i vni = _mm256_load_si256(reinterpret_cast<const __m256i*>(ni));
    __m256i ve = _mm256_load_si256(reinterpret_cast<const __m256i*>(e));
    __m256i acc = _mm256_load_si256(reinterpret_cast<const __m256i*>(r1));
    __m256i b = _mm256_load_si256(reinterpret_cast<const __m256i*>(bm));
    const __m256i one = _mm256_set1_epi64x(1);
    while (emax) {
      __m256i bit = _mm256_cmpeq_epi64(_mm256_and_si256(ve, one), one);
      __m256i prod = mont_mul(acc, b, vm, vni);
      acc = _mm256_blendv_epi8(acc, prod, bit);
      b = mont_mul(b, b, vm, vni);
      ve = _mm256_srli_epi64(ve, 1);
      emax >>= 1;
    }
    // Leave Montgomery form: multiply by 1.
    acc = mont_mul(acc, one, vm, vni);
    alignas(32) std::uint64_t res[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(res), acc);
    for (int k = 0; k < 4; ++k) out[i + k] = static_cast<std::uint32_t>(res[k]);
  }
  for (; i < n; ++i) out[i] = static_cast<std::uint32_t>(pow_mod(base[i], (mod[i] - 1) / 3, mod[i]));
}

double select_sum(const std::uint8_t* cls, const double* t0, const double* t1, const double* t2, std::size_t n) {
  __m256d s = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256i zero = _mm256_setzero_si256();
  const __m256i onei = _mm256_set1_epi64x(1);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    std::uint32_t packed;
    __builtin_memcpy(&packed, cls + i, 4);
    __m256i k = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(static_cast<int>(packed)));
    __m256d is0 = _mm256_castsi256_pd(_mm256_cmpeq_epi64(k, zero));
    __m256d is1 = _mm256_castsi256_pd(_mm256_cmpeq_epi64(k, onei));
    __m256d v = _mm256_loadu_pd(t2 + i);
    v = _mm256_blendv_pd(v, _mm256_loadu_pd(t1 + i), is1);
    v = _mm256_blendv_pd(v, _mm256_loadu_pd(t0 + i), is0);

    __m256d t = _mm256_add_pd(s, v);
    __m256d big_s = _mm256_cmp_pd(_mm256_andnot_pd(sign, s), _mm256_andnot_pd(sign, v), _CMP_GE_OQ);
    __m256d when_s = _mm256_add_pd(_mm256_sub_pd(s, t), v);
    __m256d when_v = _mm256_add_pd(_mm256_sub_pd(v, t), s);
    c = _mm256_add_pd(c, _mm256_blendv_pd(when_v, when_s, big_s));
    s = t;
  }
  alignas(32) double sl[4], cl[4];
  _mm256_store_pd(sl, s);
  _mm256_store_pd(cl, c);
  detail::Neumaier lane[4];
  for (int k = 0; k < 4; ++k) lane[k] = {sl[k], cl[k]};
  for (; i < n; ++i) {
    double v = cls[i] == 0 ? t0[i] : cls[i] == 1 ? t1[i] : t2[i];
    lane[i & 3].add(v);
  }
  for (int k = 0; k < 4; ++k) {
    sl[k] = lane[k].s;
    cl[k] = lane[k].c;
  }
  return detail::merge_lanes(sl, cl);
}

}  // namespace heis::simd::avx2
