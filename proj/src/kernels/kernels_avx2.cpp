// Compiled with -mavx2 (no FMA). Only reached after a runtime CPU check.

#include <immintrin.h>

#include "exp_constants.hpp"
#include "gadmp/kernels.hpp"

namespace gadmp::kernels {
namespace {

inline __m256d exp4(__m256d a) {
  using namespace detail;
  a = _mm256_max_pd(a, _mm256_set1_pd(kMinExponent));
  a = _mm256_min_pd(a, _mm256_set1_pd(kMaxExponent));
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(a, _mm256_set1_pd(kLog2e)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_sub_pd(a, _mm256_mul_pd(k, _mm256_set1_pd(kLn2Hi)));
  r = _mm256_sub_pd(r, _mm256_mul_pd(k, _mm256_set1_pd(kLn2Lo)));
  __m256d p = _mm256_set1_pd(kExpCoeff[13]);
  for (int i = 12; i >= 0; --i) {
    p = _mm256_add_pd(_mm256_mul_pd(p, r), _mm256_set1_pd(kExpCoeff[i]));
  }
  __m256i e = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(k));
  e = _mm256_add_epi64(e, _mm256_set1_epi64x(1023));
  e = _mm256_slli_epi64(e, 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(e));
}

inline double fold(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

void gaussian_activations(double x, const double* c, const double* h, double* out,
                          std::size_t n) {
  const __m256d vx = _mm256_set1_pd(x);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d e = _mm256_sub_pd(vx, _mm256_loadu_pd(c + i));
    const __m256d t = _mm256_mul_pd(_mm256_loadu_pd(h + i), _mm256_mul_pd(e, e));
    _mm256_storeu_pd(out + i, exp4(_mm256_xor_pd(t, sign)));
  }
  for (; i < n; ++i) {
    const double e = x - c[i];
    const double t = h[i] * (e * e);
    out[i] = exp_reference(-t);
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double s = fold(acc);
  for (; i < n; ++i) s = s + a[i] * b[i];
  return s;
}

double sum(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double s = fold(acc);
  for (; i < n; ++i) s = s + a[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void exp_array(const double* in, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, exp4(_mm256_loadu_pd(in + i)));
  for (; i < n; ++i) out[i] = exp_reference(in[i]);
}

constexpr KernelTable kAvx2{Isa::Avx2, gaussian_activations, dot, sum, axpy, exp_array};

}  // namespace

const KernelTable& detail::avx2_table() { return kAvx2; }

}  // namespace gadmp::kernels
