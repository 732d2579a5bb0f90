#include <atomic>
#include <cstdlib>
#include <string>

#include "curvedepth/error.hpp"
#include "curvedepth/simd.hpp"

namespace curvedepth::simd {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(CURVEDEPTH_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(CURVEDEPTH_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels(Isa isa) {
  if (!supported(isa)) fail_usage("instruction set not available: " + std::string(to_string(isa)));
  switch (isa) {
#if defined(CURVEDEPTH_HAVE_AVX2)
    case Isa::avx2: return avx2_table();
#endif
#if defined(CURVEDEPTH_HAVE_NEON)
    case Isa::neon: return neon_table();
#endif
    default: return scalar_table();
  }
}

namespace {

Isa best_isa() {
  if (const char* env = std::getenv("CURVEDEPTH_ISA")) {
    const std::string_view v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && supported(Isa::avx2)) return Isa::avx2;
    if (v == "neon" && supported(Isa::neon)) return Isa::neon;
  }
  if (supported(Isa::avx2)) return Isa::avx2;
  if (supported(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

std::atomic<const KernelTable*> active{nullptr};

}  // namespace

const KernelTable& kernels() {
  const KernelTable* t = active.load(std::memory_order_acquire);
  if (!t) {
    t = &kernels(best_isa());
    active.store(t, std::memory_order_release);
  }
  return *t;
}

void force_isa(Isa isa) { active.store(&kernels(isa), std::memory_order_release); }
void reset_isa() { active.store(nullptr, std::memory_order_release); }

}  // namespace curvedepth::simd
