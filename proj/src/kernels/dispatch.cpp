#include <atomic>
#include <cstdlib>
#include <string>

#include "gadmp/errors.hpp"
#include "gadmp/kernels.hpp"

namespace gadmp::kernels {

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(GADMP_HAVE_AVX2_TU)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(GADMP_HAVE_NEON_TU)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!supported(isa)) {
    fail(ErrorCode::InvalidArgument, "instruction set '" + std::string(name(isa)) +
                                         "' is not available on this machine");
  }
  switch (isa) {
#if defined(GADMP_HAVE_AVX2_TU)
    case Isa::Avx2: return detail::avx2_table();
#endif
#if defined(GADMP_HAVE_NEON_TU)
    case Isa::Neon: return detail::neon_table();
#endif
    default: return detail::scalar_table();
  }
}

namespace {

const KernelTable* detect() {
  if (const char* env = std::getenv("GADMP_ISA")) {
    const std::string wanted(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (wanted == name(isa) && supported(isa)) return &table(isa);
    }
  }
  if (supported(Isa::Avx2)) return &table(Isa::Avx2);
  if (supported(Isa::Neon)) return &table(Isa::Neon);
  return &table(Isa::Scalar);
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{detect()};
  return current;
}

}  // namespace

const KernelTable& active() { return *slot().load(std::memory_order_relaxed); }

void select(Isa isa) { slot().store(&table(isa), std::memory_order_relaxed); }

}  // namespace gadmp::kernels
