#include <cmath>
#include <cstring>
#include <vector>

#include "algc/kernels.hpp"

namespace algc::kernels {

namespace {

void jacobi_sweep_scalar(uint32_t n, const uint32_t* offsets, const uint32_t* nbr,
                         const double* nbr_w, const double* inv_wdeg,
                         double omega, const double* x, double* y,
                         uint32_t stride) {
  const double keep = 1.0 - omega;
  std::vector<double> acc(stride);
  for (uint32_t i = 0; i < n; ++i) {
    const double* xi = x + size_t(i) * stride;
    double* yi = y + size_t(i) * stride;
    const uint32_t begin = offsets[i], end = offsets[i + 1];
    if (begin == end) {
      std::memcpy(yi, xi, sizeof(double) * stride);
      continue;
    }
    for (uint32_t k = 0; k < stride; ++k) acc[k] = 0.0;
    for (uint32_t e = begin; e < end; ++e) {
      const double w = nbr_w[e];
      const double* xj = x + size_t(nbr[e]) * stride;
      for (uint32_t k = 0; k < stride; ++k) acc[k] += w * xj[k];
    }
    const double inv = inv_wdeg[i];
    for (uint32_t k = 0; k < stride; ++k)
      yi[k] = keep * xi[k] + omega * (acc[k] * inv);
  }
}

double maxabs_diff_scalar(const double* a, const double* b, uint32_t k) {
  double m = 0.0;
  for (uint32_t i = 0; i < k; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

double sumsq_diff_scalar(const double* a, const double* b, uint32_t k) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  for (uint32_t i = 0; i < k; ++i) {
    const double d = a[i] - b[i];
    acc[i & 3u] += d * d;
  }
  return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

double dot_scalar(const double* a, const double* b, uint32_t k) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  for (uint32_t i = 0; i < k; ++i) acc[i & 3u] += a[i] * b[i];
  return (acc[0] + acc[2]) + (acc[1] + acc[3]);
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {"scalar", jacobi_sweep_scalar, maxabs_diff_scalar,
                          sumsq_diff_scalar, dot_scalar};
  return ops;
}

}  // namespace algc::kernels
