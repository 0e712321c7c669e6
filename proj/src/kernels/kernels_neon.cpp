// NEON variants for aarch64, two float64 lanes per register. The reductions
// keep two vector accumulators so the combined order matches the canonical
// 4-accumulator schedule of the scalar reference.
#ifdef ALGC_ENABLE_NEON

#include <arm_neon.h>

#include <cmath>
#include <cstring>

#include "algc/kernels.hpp"

namespace algc::kernels {

namespace {

void jacobi_sweep_neon(uint32_t n, const uint32_t* offsets, const uint32_t* nbr,
                       const double* nbr_w, const double* inv_wdeg, double omega,
                       const double* x, double* y, uint32_t stride) {
  const float64x2_t vkeep = vdupq_n_f64(1.0 - omega);
  const float64x2_t vomega = vdupq_n_f64(omega);
  const uint32_t full = stride & ~1u;
  for (uint32_t i = 0; i < n; ++i) {
    const double* xi = x + size_t(i) * stride;
    double* yi = y + size_t(i) * stride;
    const uint32_t begin = offsets[i], end = offsets[i + 1];
    if (begin == end) {
      std::memcpy(yi, xi, sizeof(double) * stride);
      continue;
    }
    const float64x2_t vinv = vdupq_n_f64(inv_wdeg[i]);
    for (uint32_t k = 0; k < full; k += 2) {
      float64x2_t acc = vdupq_n_f64(0.0);
      for (uint32_t e = begin; e < end; ++e) {
        const float64x2_t vw = vdupq_n_f64(nbr_w[e]);
        const float64x2_t xj = vld1q_f64(x + size_t(nbr[e]) * stride + k);
        acc = vaddq_f64(acc, vmulq_f64(vw, xj));
      }
      const float64x2_t vxi = vld1q_f64(xi + k);
      const float64x2_t out =
          vaddq_f64(vmulq_f64(vkeep, vxi), vmulq_f64(vomega, vmulq_f64(acc, vinv)));
      vst1q_f64(yi + k, out);
    }
    for (uint32_t k = full; k < stride; ++k) {
      double acc = 0.0;
      for (uint32_t e = begin; e < end; ++e)
        acc += nbr_w[e] * x[size_t(nbr[e]) * stride + k];
      yi[k] = (1.0 - omega) * xi[k] + omega * (acc * inv_wdeg[i]);
    }
  }
}

double maxabs_diff_neon(const double* a, const double* b, uint32_t k) {
  float64x2_t vmax = vdupq_n_f64(0.0);
  uint32_t i = 0;
  for (; i + 2 <= k; i += 2)
    vmax = vmaxq_f64(vmax, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  double m = std::max(vgetq_lane_f64(vmax, 0), vgetq_lane_f64(vmax, 1));
  for (; i < k; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

double sumsq_diff_neon(const double* a, const double* b, uint32_t k) {
  float64x2_t acc01 = vdupq_n_f64(0.0);  // lanes k%4 == 0,1
  float64x2_t acc23 = vdupq_n_f64(0.0);  // lanes k%4 == 2,3
  uint32_t i = 0;
  for (; i + 4 <= k; i += 4) {
    const float64x2_t d01 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    const float64x2_t d23 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    acc01 = vaddq_f64(acc01, vmulq_f64(d01, d01));
    acc23 = vaddq_f64(acc23, vmulq_f64(d23, d23));
  }
  double lanes[4] = {vgetq_lane_f64(acc01, 0), vgetq_lane_f64(acc01, 1),
                     vgetq_lane_f64(acc23, 0), vgetq_lane_f64(acc23, 1)};
  for (; i < k; ++i) {
    const double d = a[i] - b[i];
    lanes[i & 3u] += d * d;
  }
  return (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
}

double dot_neon(const double* a, const double* b, uint32_t k) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  uint32_t i = 0;
  for (; i + 4 <= k; i += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double lanes[4] = {vgetq_lane_f64(acc01, 0), vgetq_lane_f64(acc01, 1),
                     vgetq_lane_f64(acc23, 0), vgetq_lane_f64(acc23, 1)};
  for (; i < k; ++i) lanes[i & 3u] += a[i] * b[i];
  return (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
}

}  // namespace

const Ops& neon_ops() {
  static const Ops ops = {"neon", jacobi_sweep_neon, maxabs_diff_neon,
                          sumsq_diff_neon, dot_neon};
  return ops;
}

}  // namespace algc::kernels

#endif  // ALGC_ENABLE_NEON
