#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "algc/kernels.hpp"

namespace algc::kernels {

const Ops& scalar_ops();
#ifdef ALGC_ENABLE_AVX2
const Ops& avx2_ops();
#endif
#ifdef ALGC_ENABLE_NEON
const Ops& neon_ops();
#endif

namespace {

Backend detect_best() {
#ifdef ALGC_ENABLE_NEON
  return Backend::neon;
#endif
#ifdef ALGC_ENABLE_AVX2
  if (__builtin_cpu_supports("avx2")) return Backend::avx2;
#endif
  return Backend::scalar;
}

Backend initial_backend() {
  if (const char* env = std::getenv("ALGC_KERNELS")) {
    std::string s(env);
    if (s == "scalar") return Backend::scalar;
    if (s == "avx2" && backend_available(Backend::avx2)) return Backend::avx2;
    if (s == "neon" && backend_available(Backend::neon)) return Backend::neon;
  }
  return detect_best();
}

std::atomic<int>& active_slot() {
  static std::atomic<int> slot{static_cast<int>(initial_backend())};
  return slot;
}

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "?";
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#ifdef ALGC_ENABLE_AVX2
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::neon:
#ifdef ALGC_ENABLE_NEON
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() {
  return static_cast<Backend>(active_slot().load(std::memory_order_relaxed));
}

void set_backend(Backend b) {
  if (!backend_available(b))
    throw std::runtime_error(std::string("kernel backend '") + backend_name(b) +
                             "' is not available on this machine");
  active_slot().store(static_cast<int>(b), std::memory_order_relaxed);
}

bool set_backend(const std::string& s) {
  if (s == "auto") {
    active_slot().store(static_cast<int>(detect_best()), std::memory_order_relaxed);
    return true;
  }
  Backend b;
  if (s == "scalar") b = Backend::scalar;
  else if (s == "avx2") b = Backend::avx2;
  else if (s == "neon") b = Backend::neon;
  else return false;
  if (!backend_available(b)) return false;
  active_slot().store(static_cast<int>(b), std::memory_order_relaxed);
  return true;
}

const Ops& ops(Backend b) {
  switch (b) {
    case Backend::scalar:
      return scalar_ops();
    case Backend::avx2:
#ifdef ALGC_ENABLE_AVX2
      return avx2_ops();
#else
      break;
#endif
    case Backend::neon:
#ifdef ALGC_ENABLE_NEON
      return neon_ops();
#else
      break;
#endif
  }
  throw std::runtime_error("kernel backend not compiled in");
}

const Ops& ops() { return ops(active_backend()); }

}  // namespace algc::kernels
