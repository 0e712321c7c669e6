#pragma once

#include <cstdint>
#include <string>

namespace algc::kernels {

// Inner-loop kernels behind test-vector relaxation and per-edge distance
// reductions. Every backend must produce bit-identical results:
//  - jacobi_sweep treats lanes independently, so vectorizing over lanes
//    preserves each lane's operation sequence exactly;
//  - sum-type reductions use a fixed 4-accumulator schedule
//    (acc[k mod 4], combined as (acc0+acc2)+(acc1+acc3)), which every
//    backend reproduces;
//  - max reduction is exact in any order.
// The scalar backend is the reference; SIMD backends are equivalence-tested
// against it bit for bit.
struct Ops {
  const char* name;

  // One damped-Jacobi sweep on the homogeneous Laplacian system for all
  // lanes: y[i,k] = (1-omega)*x[i,k] + omega * (sum_j w_ij x[j,k]) * inv_wdeg[i].
  // Rows with no neighbors are copied unchanged. stride is the lane count
  // per node (padded); x and y must not alias.
  void (*jacobi_sweep)(uint32_t n, const uint32_t* offsets, const uint32_t* nbr,
                       const double* nbr_w, const double* inv_wdeg, double omega,
                       const double* x, double* y, uint32_t stride);

  // max_k |a[k] - b[k]| over the first k lanes
  double (*maxabs_diff)(const double* a, const double* b, uint32_t k);
  // sum_k (a[k] - b[k])^2, canonical accumulator schedule
  double (*sumsq_diff)(const double* a, const double* b, uint32_t k);
  // sum_k a[k]*b[k], canonical accumulator schedule
  double (*dot)(const double* a, const double* b, uint32_t k);
};

enum class Backend { scalar, avx2, neon };

const char* backend_name(Backend b);
bool backend_available(Backend b);

// Highest available backend (honors the ALGC_KERNELS environment variable on
// first use). Selection is per-process and deterministic on a given machine.
Backend active_backend();
void set_backend(Backend b);             // throws std::runtime_error if unavailable
bool set_backend(const std::string& s);  // "auto"|"scalar"|"avx2"|"neon"

const Ops& ops();           // active backend
const Ops& ops(Backend b);  // specific backend (must be available)

}  // namespace algc::kernels
