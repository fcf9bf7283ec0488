#pragma once

// Data-parallel inner loops of basis evaluation and weight fitting.
//
// Every kernel has a scalar reference implementation and optional AVX2 (x86-64)
// and NEON (AArch64) variants. The variants are selected once at runtime from
// the CPU features and must produce results that are bit-identical to the
// scalar reference: reductions use a fixed 4-lane order, no operation is
// fused, and the exponential is a shared polynomial rather than libm.

#include <cstddef>
#include <span>
#include <string_view>

namespace gadmp::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view name(Isa isa);

struct KernelTable {
  Isa isa;
  // out[i] = exp(-h[i] * (x - c[i])^2), exponent floored at kMinExponent.
  void (*gaussian_activations)(double x, const double* centers, const double* widths,
                               double* out, std::size_t n);
  // Sum of a[i] * b[i] in canonical 4-lane order.
  double (*dot)(const double* a, const double* b, std::size_t n);
  // Sum of a[i] in canonical 4-lane order.
  double (*sum)(const double* a, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out[i] = exp_reference(in[i])
  void (*exp)(const double* in, double* out, std::size_t n);
};

/// Lower clamp applied to every exponent passed to the shared exponential.
inline constexpr double kMinExponent = -708.0;
inline constexpr double kMaxExponent = 709.0;

/// Scalar definition of the exponential shared by all variants.
double exp_reference(double a);

bool supported(Isa isa);

/// Table for a specific instruction set; throws if it is not supported here.
const KernelTable& table(Isa isa);

/// Table chosen at startup. GADMP_ISA=scalar|avx2|neon overrides detection.
const KernelTable& active();

/// Overrides the active table, e.g. to run a whole pipeline on the scalar path.
void select(Isa isa);

// Convenience wrappers over the active table.
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double sum(std::span<const double> a) { return active().sum(a.data(), a.size()); }
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

namespace detail {
// Per-ISA tables, defined in their own translation units.
const KernelTable& scalar_table();
#if defined(GADMP_HAVE_AVX2_TU)
const KernelTable& avx2_table();
#endif
#if defined(GADMP_HAVE_NEON_TU)
const KernelTable& neon_table();
#endif
}  // namespace detail

}  // namespace gadmp::kernels
