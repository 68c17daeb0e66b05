#include "xigap/zeta.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include "xigap/error.hpp"

namespace xigap {

namespace {

constexpr int kMaxCorrections = 60;

// Truncated Taylor expansion f(s + h) = c0 + c1 h + c2 h^2.
struct Jet {
  cplx c0, c1, c2;
};

Jet operator*(const Jet& a, const Jet& b) {
  return {a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0, a.c0 * b.c2 + a.c1 * b.c1 + a.c2 * b.c0};
}
Jet operator*(cplx k, const Jet& a) { return {k * a.c0, k * a.c1, k * a.c2}; }
Jet& operator+=(Jet& a, const Jet& b) {
  a.c0 += b.c0;
  a.c1 += b.c1;
  a.c2 += b.c2;
  return a;
}

// n^{-s} as a jet in s.
Jet power_jet(double log_n, cplx s) {
  const cplx v = std::exp(-s * log_n);
  return {v, -log_n * v, 0.5 * log_n * log_n * v};
}

// B_{2k} / (2k)!
const std::vector<double>& em_coefficients() {
  static const auto table = [] {
    std::vector<double> c(kMaxCorrections + 2);
    for (int k = 1; k < static_cast<int>(c.size()); ++k) {
      c[k] = boost::math::bernoulli_b2n<double>(k) / boost::math::factorial<double>(2 * k);
    }
    return c;
  }();
  return table;
}

ZetaDerivs to_derivs(const Jet& j, int max_order) {
  ZetaDerivs out{j.c0, 0.0, 0.0};
  if (max_order >= 1) out.d1 = j.c1;
  if (max_order >= 2) out.d2 = 2.0 * j.c2;
  return out;
}

void check_args(cplx s, int max_order) {
  if (max_order < 0 || max_order > 2) fail(ErrorKind::domain, "zeta order must be 0, 1 or 2");
  if (s == cplx(1.0, 0.0)) fail(ErrorKind::domain, "zeta has a pole at s = 1");
  if (std::abs(s.imag()) > kMaxHeight) {
    fail(ErrorKind::capacity, "|Im s| exceeds the supported height 5000");
  }
}

// Head sum, integral and half-term; the Bernoulli corrections are added by
// the caller.
Jet head(cplx s, int max_order, int N) {
  Jet sum{0.0, 0.0, 0.0};
  if (max_order == 0) {
    cplx acc = 0.0;
    for (int n = 1; n < N; ++n) acc += std::exp(-s * std::log(static_cast<double>(n)));
    sum.c0 = acc;
  } else {
    for (int n = 1; n < N; ++n) sum += power_jet(std::log(static_cast<double>(n)), s);
  }
  const double log_N = std::log(static_cast<double>(N));
  const Jet nms = power_jet(log_N, s);
  const cplx inv = 1.0 / (s - 1.0);
  const Jet inv_jet{inv, -inv * inv, inv * inv * inv};
  sum += cplx(N) * (nms * inv_jet);
  sum += cplx(0.5) * nms;
  return sum;
}

}  // namespace

int zeta_default_cutoff(cplx s) {
  return std::max(10, static_cast<int>(std::ceil(std::abs(s) / std::numbers::pi)) + 1);
}

ZetaDerivs zeta_em_fixed(cplx s, int max_order, int N, int M) {
  check_args(s, max_order);
  if (N < 1 || M < 0 || M > kMaxCorrections) fail(ErrorKind::domain, "bad truncation");
  Jet sum = head(s, max_order, N);
  const auto& coef = em_coefficients();
  const double log_N = std::log(static_cast<double>(N));
  const Jet nms = power_jet(log_N, s);
  Jet poch{s, 1.0, 0.0};
  double n_pow = 1.0;  // N^{1-2k}
  for (int k = 1; k <= M; ++k) {
    n_pow /= (k == 1) ? static_cast<double>(N) : static_cast<double>(N) * N;
    sum += cplx(coef[k] * n_pow) * (poch * nms);
    const double a = 2.0 * k - 1.0, b = 2.0 * k;
    poch = poch * Jet{s + a, 1.0, 0.0} * Jet{s + b, 1.0, 0.0};
  }
  return to_derivs(sum, max_order);
}

ZetaDerivs zeta_derivs(cplx s, int max_order, double tol) {
  check_args(s, max_order);
  if (!(tol >= 1e-14)) fail(ErrorKind::domain, "tolerance below 1e-14 is not achievable");
  const auto& coef = em_coefficients();
  int N = zeta_default_cutoff(s);
  for (int attempt = 0; attempt < 4; ++attempt, N *= 2) {
    Jet sum = head(s, max_order, N);
    const double log_N = std::log(static_cast<double>(N));
    const double order_scale = std::pow(1.0 + log_N, max_order);
    const Jet nms = power_jet(log_N, s);
    const double nms_abs = std::abs(nms.c0);
    Jet poch{s, 1.0, 0.0};
    double n_pow = 1.0;
    for (int k = 1; k <= kMaxCorrections; ++k) {
      n_pow /= (k == 1) ? static_cast<double>(N) : static_cast<double>(N) * N;
      sum += cplx(coef[k] * n_pow) * (poch * nms);
      const double a = 2.0 * k - 1.0, b = 2.0 * k;
      poch = poch * Jet{s + a, 1.0, 0.0} * Jet{s + b, 1.0, 0.0};
      // Rademacher-type bound: |R_k| <= |s + 2k + 1| / (sigma + 2k + 1) |T_{k+1}|.
      const double next = std::abs(coef[k + 1]) * n_pow / (static_cast<double>(N) * N) *
                          std::abs(poch.c0) * nms_abs;
      const double denom = s.real() + 2.0 * k + 1.0;
      if (denom <= 0.0) continue;
      const double bound = next * std::abs(s + 2.0 * k + 1.0) / denom * order_scale;
      if (bound < tol) return to_derivs(sum, max_order);
    }
  }
  fail(ErrorKind::precision, "Euler-Maclaurin remainder did not reach tolerance");
}

cplx zeta_em(cplx s, int order, double tol) {
  const auto d = zeta_derivs(s, order, tol);
  return order == 0 ? d.value : (order == 1 ? d.d1 : d.d2);
}

}  // namespace xigap
