#pragma once

#include <complex>
#include <vector>

#include "xigap/arith.hpp"
#include "xigap/special.hpp"
#include "xigap/zeta.hpp"

namespace xigap {

/// A point s = sigma + i tau with a precision target.
struct EvalPoint {
  cplx s;
  double precision = 1e-12;

  static EvalPoint critical(double t, double precision = 1e-12);
  /// sigma = 1 + 1/L with L = log(T / 2 pi), the right edge used for the
  /// Dirichlet-series side of the contour.
  static EvalPoint right_edge(double T, double tau, double precision = 1e-12);
  double t() const { return s.imag(); }
};

/// Xi(t) e^{pi t / 4} with its sign and log |Xi(t)|.
struct XiValue {
  double scaled_value = 0.0;
  double log_magnitude = 0.0;
  int sign = 0;
  /// Phase residual |Im Z| / max(|Z|, 1e-3) of Z(t) = e^{i theta} zeta(1/2+it);
  /// the floor keeps rounding noise at a zero from reading as a phase error.
  double real_residual = 0.0;
};

/// L(s) = 1/s + 1/(s-1) - log(pi)/2 + psi(s/2)/2 (order 0) or its derivative
/// -1/s^2 - 1/(s-1)^2 + psi'(s/2)/4 (order 1).
cplx L_func(cplx s, int order = 0);

/// xi'/xi(s) = L(s) + zeta'/zeta(s).
cplx xi_log_derivative(cplx s, double tol = 1e-14);

XiValue xi_scaled(double t);

/// log xi(s) for 0 < Re s < 1 (principal-branch pieces, Im mod 2 pi).
cplx log_xi(cplx s);

/// g(t) = -Im[(L + zeta'/zeta)(1/2 + it)], so that Xi'(t) = Xi(t) g(t).
/// Throws pole_proximity within ~pole_radius of a zeta zero.
double g_detector(double t, double pole_radius = 1e-6);

/// xi''/xi'(s) = R + R'/R with R = xi'/xi.
cplx xi2_over_xi1(cplx s);

/// (xi'/xi)'(s) = L'(s) + (zeta'' zeta - zeta'^2) / zeta^2.
cplx xi_log_derivative_prime(cplx s);

/// Truncated alpha_k tables for the xi''/xi' Dirichlet expansion.
class AlphaBank {
 public:
  AlphaBank(const ArithTables& tables, int K, std::uint32_t N);
  int K() const { return static_cast<int>(alpha_.size()) - 1; }
  std::uint32_t N() const { return N_; }
  const std::vector<double>& alpha(int k) const { return alpha_.at(k); }

 private:
  std::uint32_t N_;
  std::vector<std::vector<double>> alpha_;
};

/// L/2 + sum_{n<=N} a_K(n,s) n^{-s}, a_K(n,s) = sum_{k<=K} alpha_k(n) / L(s)^k,
/// with L = log(T / 2 pi). T defaults to |Im s| when not positive.
cplx aK_rhs(const AlphaBank& bank, cplx s, double T = 0.0);
cplx aK_rhs(const ArithTables& tables, cplx s, std::uint32_t N, int K, double T = 0.0);

}  // namespace xigap
