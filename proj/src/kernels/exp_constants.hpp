#pragma once

// Constants of the shared exponential. Every kernel variant evaluates
//   k = round(a / ln 2),  r = (a - k*ln2_hi) - k*ln2_lo,
//   exp(a) = 2^k * P13(r)
// with P13 the degree-13 Taylor polynomial in Horner form.

namespace gadmp::kernels::detail {

inline constexpr double kLog2e = 1.4426950408889634074;
// Cody-Waite split of ln 2; the high part has 21 trailing zero bits so k*kLn2Hi
// is exact for every reachable k.
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;

inline constexpr double kExpCoeff[14] = {
    1.0,
    1.0,
    1.0 / 2.0,
    1.0 / 6.0,
    1.0 / 24.0,
    1.0 / 120.0,
    1.0 / 720.0,
    1.0 / 5040.0,
    1.0 / 40320.0,
    1.0 / 362880.0,
    1.0 / 3628800.0,
    1.0 / 39916800.0,
    1.0 / 479001600.0,
    1.0 / 6227020800.0,
};

}  // namespace gadmp::kernels::detail
