// AArch64 variant. NEON registers hold two doubles, so the canonical four
// lanes are carried in a pair of registers: lo = lanes {0,1}, hi = lanes {2,3}.

#include <arm_neon.h>

#include "exp_constants.hpp"
#include "gadmp/kernels.hpp"

namespace gadmp::kernels {
namespace {

inline float64x2_t exp2d(float64x2_t a) {
  using namespace detail;
  a = vmaxq_f64(a, vdupq_n_f64(kMinExponent));
  a = vminq_f64(a, vdupq_n_f64(kMaxExponent));
  const float64x2_t k = vrndnq_f64(vmulq_f64(a, vdupq_n_f64(kLog2e)));
  float64x2_t r = vsubq_f64(a, vmulq_f64(k, vdupq_n_f64(kLn2Hi)));
  r = vsubq_f64(r, vmulq_f64(k, vdupq_n_f64(kLn2Lo)));
  float64x2_t p = vdupq_n_f64(kExpCoeff[13]);
  for (int i = 12; i >= 0; --i) p = vaddq_f64(vmulq_f64(p, r), vdupq_n_f64(kExpCoeff[i]));
  int64x2_t e = vcvtq_s64_f64(k);
  e = vaddq_s64(e, vdupq_n_s64(1023));
  e = vshlq_n_s64(e, 52);
  return vmulq_f64(p, vreinterpretq_f64_s64(e));
}

inline double fold(float64x2_t lo, float64x2_t hi) {
  return (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) +
         (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
}

void gaussian_activations(double x, const double* c, const double* h, double* out,
                          std::size_t n) {
  const float64x2_t vx = vdupq_n_f64(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t e = vsubq_f64(vx, vld1q_f64(c + i));
    const float64x2_t t = vmulq_f64(vld1q_f64(h + i), vmulq_f64(e, e));
    vst1q_f64(out + i, exp2d(vnegq_f64(t)));
  }
  for (; i < n; ++i) {
    const double e = x - c[i];
    const double t = h[i] * (e * e);
    out[i] = exp_reference(-t);
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double s = fold(lo, hi);
  for (; i < n; ++i) s = s + a[i] * b[i];
  return s;
}

double sum(const double* a, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    lo = vaddq_f64(lo, vld1q_f64(a + i));
    hi = vaddq_f64(hi, vld1q_f64(a + i + 2));
  }
  double s = fold(lo, hi);
  for (; i < n; ++i) s = s + a[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void exp_array(const double* in, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, exp2d(vld1q_f64(in + i)));
  for (; i < n; ++i) out[i] = exp_reference(in[i]);
}

constexpr KernelTable kNeon{Isa::Neon, gaussian_activations, dot, sum, axpy, exp_array};

}  // namespace

const KernelTable& detail::neon_table() { return kNeon; }

}  // namespace gadmp::kernels
