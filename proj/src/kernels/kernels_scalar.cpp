#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>

#include "exp_constants.hpp"
#include "gadmp/kernels.hpp"

namespace gadmp::kernels {

double exp_reference(double a) {
  using namespace detail;
  a = std::max(a, kMinExponent);
  a = std::min(a, kMaxExponent);
  const double k = std::nearbyint(a * kLog2e);
  double r = a - k * kLn2Hi;
  r = r - k * kLn2Lo;
  double p = kExpCoeff[13];
  for (int i = 12; i >= 0; --i) p = p * r + kExpCoeff[i];
  const std::int64_t bits = (static_cast<std::int64_t>(k) + 1023) << 52;
  double scale;
  std::memcpy(&scale, &bits, sizeof scale);
  return p * scale;
}

namespace {

void gaussian_activations(double x, const double* c, const double* h, double* out,
                          std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double e = x - c[i];
    const double t = h[i] * (e * e);
    out[i] = exp_reference(-t);
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t j = 0; j < 4; ++j) acc[j] = acc[j] + a[i + j] * b[i + j];
  }
  double s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
  for (; i < n; ++i) s = s + a[i] * b[i];
  return s;
}

double sum(const double* a, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t j = 0; j < 4; ++j) acc[j] = acc[j] + a[i + j];
  }
  double s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
  for (; i < n; ++i) s = s + a[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void exp_array(const double* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = exp_reference(in[i]);
}

constexpr KernelTable kScalar{Isa::Scalar, gaussian_activations, dot, sum, axpy, exp_array};

}  // namespace

const KernelTable& detail::scalar_table() { return kScalar; }

}  // namespace gadmp::kernels
