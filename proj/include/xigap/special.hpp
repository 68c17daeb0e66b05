#pragma once

#include <complex>

namespace xigap {

using cplx = std::complex<double>;

// Complex log-gamma, digamma and trigamma. Stirling series after upward
// recurrence to |z| >= 15, reflection for Re z < 1/2. Relative accuracy is
// about 1e-14 away from the poles at the nonpositive integers. The log-gamma
// branch is the sum of principal logs, so Im may differ from the continuous
// branch by a multiple of 2 pi.
cplx log_gamma(cplx z);
cplx digamma(cplx z);
cplx trigamma(cplx z);

}  // namespace xigap
