#include "xigap/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "xigap/error.hpp"
#include "xigap/summation.hpp"

namespace xigap {

namespace {

constexpr double pi = std::numbers::pi;

bool is_nonpositive_even(cplx s) {
  if (s.imag() != 0.0 || s.real() > 0.0) return false;
  const double half = s.real() / 2.0;
  return half == std::round(half);
}

}  // namespace

EvalPoint EvalPoint::critical(double t, double precision) {
  if (!(precision >= 1e-14 && precision <= 1e-6)) {
    fail(ErrorKind::domain, "precision target must lie in [1e-14, 1e-6]");
  }
  return {cplx(0.5, t), precision};
}

EvalPoint EvalPoint::right_edge(double T, double tau, double precision) {
  if (!(T > 2.0 * pi)) fail(ErrorKind::domain, "T must exceed 2 pi");
  const double L = std::log(T / (2.0 * pi));
  auto p = critical(tau, precision);
  p.s = cplx(1.0 + 1.0 / L, tau);
  return p;
}

cplx L_func(cplx s, int order) {
  if (s == cplx(0.0) || s == cplx(1.0) || is_nonpositive_even(s)) {
    fail(ErrorKind::domain, "L(s) has a pole here");
  }
  if (order == 0) {
    return 1.0 / s + 1.0 / (s - 1.0) - std::log(pi) / 2.0 + 0.5 * digamma(s / 2.0);
  }
  if (order == 1) {
    return -1.0 / (s * s) - 1.0 / ((s - 1.0) * (s - 1.0)) + 0.25 * trigamma(s / 2.0);
  }
  fail(ErrorKind::domain, "L_func order must be 0 or 1");
}

cplx xi_log_derivative(cplx s, double tol) {
  const auto z = zeta_derivs(s, 1, tol);
  return L_func(s, 0) + z.d1 / z.value;
}

cplx log_xi(cplx s) {
  return std::log(s * (s - 1.0) / 2.0) - s / 2.0 * std::log(pi) + log_gamma(s / 2.0) +
         std::log(zeta_em(s, 0));
}

XiValue xi_scaled(double t) {
  if (!(t >= 0.0 && t <= kMaxHeight)) fail(ErrorKind::domain, "xi_scaled needs 0 <= t <= 5000");
  const cplx lg = log_gamma(cplx(0.25, 0.5 * t));
  const double theta = lg.imag() - 0.5 * t * std::log(pi);
  const cplx zeta = zeta_em(cplx(0.5, t), 0);
  // e^{i theta} zeta(1/2 + it) is Hardy's Z(t), real up to rounding.
  const cplx w = std::polar(1.0, theta) * zeta;
  XiValue out;
  out.real_residual = std::abs(w.imag()) / std::max(std::abs(w), 1e-3);
  if (out.real_residual > 1e-6) {
    fail(ErrorKind::precision,
         "Xi realness residual " + std::to_string(out.real_residual) + " at t = " + std::to_string(t));
  }
  const double Z = w.real();
  // xi(1/2+it) = -(t^2 + 1/4)/2 pi^{-1/4} |Gamma(1/4 + it/2)| Z(t)
  const double prefactor = -(t * t + 0.25) / 2.0 * std::pow(pi, -0.25);
  out.scaled_value = prefactor * std::exp(lg.real() + pi * t / 4.0) * Z;
  out.sign = (out.scaled_value > 0.0) - (out.scaled_value < 0.0);
  out.log_magnitude = std::log((t * t + 0.25) / 2.0) - 0.25 * std::log(pi) + lg.real() +
                      std::log(std::abs(Z));
  return out;
}

double g_detector(double t, double pole_radius) {
  const cplx s(0.5, t);
  const auto z = zeta_derivs(s, 1, 1e-14);
  if (std::abs(z.value) < pole_radius * std::abs(z.d1)) {
    fail(ErrorKind::pole_proximity, "t is within the pole radius of a zeta zero");
  }
  return -(L_func(s, 0) + z.d1 / z.value).imag();
}

cplx xi_log_derivative_prime(cplx s) {
  const auto z = zeta_derivs(s, 2, 1e-14);
  return L_func(s, 1) + (z.d2 * z.value - z.d1 * z.d1) / (z.value * z.value);
}

cplx xi2_over_xi1(cplx s) {
  const auto z = zeta_derivs(s, 2, 1e-14);
  const cplx R = L_func(s, 0) + z.d1 / z.value;
  const cplx Rp = L_func(s, 1) + (z.d2 * z.value - z.d1 * z.d1) / (z.value * z.value);
  if (std::abs(R) < 1e-6 * std::max(1.0, std::abs(Rp))) {
    fail(ErrorKind::conditioning, "s is too close to a zero of xi'");
  }
  return R + Rp / R;
}

AlphaBank::AlphaBank(const ArithTables& tables, int K, std::uint32_t N) : N_(N) {
  if (K < 0 || K > 30) fail(ErrorKind::domain, "K must lie in [0, 30]");
  if (N > tables.limit()) fail(ErrorKind::capacity, "N exceeds sieve limit");
  alpha_.reserve(K + 1);
  for (int k = 0; k <= K; ++k) alpha_.push_back(tables.alpha_table(k, N));
}

cplx aK_rhs(const AlphaBank& bank, cplx s, double T) {
  if (!(s.real() > 0.5)) fail(ErrorKind::domain, "aK_rhs needs Re s > 1/2");
  if (!(T > 0.0)) T = std::abs(s.imag());
  if (!(T > 2.0 * pi)) fail(ErrorKind::domain, "T must exceed 2 pi");
  const double L = std::log(T / (2.0 * pi));
  const cplx inv_Ls = 1.0 / L_func(s, 0);
  CompensatedComplexSum sum;
  sum += cplx(L / 2.0);
  const int K = bank.K();
  for (std::uint32_t n = 2; n <= bank.N(); ++n) {
    cplx a = 0.0;
    cplx w = 1.0;
    for (int k = 0; k <= K; ++k) {
      const double ak = bank.alpha(k)[n];
      if (ak != 0.0) a += ak * w;
      w *= inv_Ls;
    }
    if (a != cplx(0.0)) sum += a * std::exp(-s * std::log(static_cast<double>(n)));
  }
  return sum.value();
}

cplx aK_rhs(const ArithTables& tables, cplx s, std::uint32_t N, int K, double T) {
  return aK_rhs(AlphaBank(tables, K, N), s, T);
}

}  // namespace xigap
