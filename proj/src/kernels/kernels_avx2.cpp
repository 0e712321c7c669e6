// AVX2 variants, vectorized over the lane (test-vector) dimension. Compiled
// with -mavx2 for x86-64 targets only; selected at runtime via cpuid.
#ifdef ALGC_ENABLE_AVX2

#include <immintrin.h>

#include <cmath>
#include <cstring>

#include "algc/kernels.hpp"

namespace algc::kernels {

namespace {

void jacobi_sweep_avx2(uint32_t n, const uint32_t* offsets, const uint32_t* nbr,
                       const double* nbr_w, const double* inv_wdeg, double omega,
                       const double* x, double* y, uint32_t stride) {
  const __m256d vkeep = _mm256_set1_pd(1.0 - omega);
  const __m256d vomega = _mm256_set1_pd(omega);
  const uint32_t full = stride & ~3u;
  for (uint32_t i = 0; i < n; ++i) {
    const double* xi = x + size_t(i) * stride;
    double* yi = y + size_t(i) * stride;
    const uint32_t begin = offsets[i], end = offsets[i + 1];
    if (begin == end) {
      std::memcpy(yi, xi, sizeof(double) * stride);
      continue;
    }
    const __m256d vinv = _mm256_set1_pd(inv_wdeg[i]);
    for (uint32_t k = 0; k < full; k += 4) {
      __m256d acc = _mm256_setzero_pd();
      for (uint32_t e = begin; e < end; ++e) {
        const __m256d vw = _mm256_set1_pd(nbr_w[e]);
        const __m256d xj = _mm256_loadu_pd(x + size_t(nbr[e]) * stride + k);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(vw, xj));
      }
      const __m256d vxi = _mm256_loadu_pd(xi + k);
      const __m256d out = _mm256_add_pd(
          _mm256_mul_pd(vkeep, vxi),
          _mm256_mul_pd(vomega, _mm256_mul_pd(acc, vinv)));
      _mm256_storeu_pd(yi + k, out);
    }
    for (uint32_t k = full; k < stride; ++k) {
      double acc = 0.0;
      for (uint32_t e = begin; e < end; ++e)
        acc += nbr_w[e] * x[size_t(nbr[e]) * stride + k];
      yi[k] = (1.0 - omega) * xi[k] + omega * (acc * inv_wdeg[i]);
    }
  }
}

double maxabs_diff_avx2(const double* a, const double* b, uint32_t k) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d vmax = _mm256_setzero_pd();
  uint32_t i = 0;
  for (; i + 4 <= k; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    vmax = _mm256_max_pd(vmax, _mm256_andnot_pd(sign_mask, d));
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, vmax);
  double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < k; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

double sumsq_diff_avx2(const double* a, const double* b, uint32_t k) {
  __m256d acc = _mm256_setzero_pd();
  uint32_t i = 0;
  for (; i + 4 <= k; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  for (; i < k; ++i) {
    const double d = a[i] - b[i];
    lanes[i & 3u] += d * d;
  }
  return (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
}

double dot_avx2(const double* a, const double* b, uint32_t k) {
  __m256d acc = _mm256_setzero_pd();
  uint32_t i = 0;
  for (; i + 4 <= k; i += 4) {
    acc = _mm256_add_pd(
        acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  for (; i < k; ++i) lanes[i & 3u] += a[i] * b[i];
  return (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops = {"avx2", jacobi_sweep_avx2, maxabs_diff_avx2,
                          sumsq_diff_avx2, dot_avx2};
  return ops;
}

}  // namespace algc::kernels

#endif  // ALGC_ENABLE_AVX2
