#pragma once

#include <complex>

namespace xigap {

using cplx = std::complex<double>;

/// Heights above this are out of reach of plain double Euler-Maclaurin.
inline constexpr double kMaxHeight = 5000.0;

struct ZetaDerivs {
  cplx value;
  cplx d1;  ///< zeta'(s), zero unless requested
  cplx d2;  ///< zeta''(s), zero unless requested
};

/// zeta^{(order)}(s), order in {0, 1, 2}, by Euler-Maclaurin summation with
/// the remainder bound held below tol.
cplx zeta_em(cplx s, int order = 0, double tol = 1e-14);

/// zeta and its derivatives up to max_order in one pass.
ZetaDerivs zeta_derivs(cplx s, int max_order, double tol = 1e-14);

/// Fixed truncation: n < N summed directly, M correction terms.
ZetaDerivs zeta_em_fixed(cplx s, int max_order, int N, int M);

/// Default truncation point used by zeta_derivs before any retry.
int zeta_default_cutoff(cplx s);

}  // namespace xigap
