#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "xigap/arith.hpp"
#include "xigap/quadrature.hpp"
#include "xigap/zerofinder.hpp"

namespace xigap {

/// f(x) = sum_i coeffs[i] x^i on [0, 1], degree at most 8, not identically 0.
class PolyF {
 public:
  static constexpr std::size_t max_degree = 8;

  PolyF() : coeffs_{1.0} {}
  explicit PolyF(std::vector<double> coeffs);

  double operator()(double x) const;
  const std::vector<double>& coeffs() const { return coeffs_; }
  std::size_t degree() const { return coeffs_.size() - 1; }

 private:
  std::vector<double> coeffs_;
};

enum class MollifierKind { divisor, moebius, prime_twisted };

/// Which Dirichlet polynomial M(s) to use. For divisor / moebius,
/// M(s) = sum_{n<=y} a(n) f[n] n^{-s} with f[n] = f(log(y/n) / log y). For
/// prime_twisted, M = M1(s) + M1(1-s), M1(s) = 1 + sum_{p<=y} f[p] p^{-s},
/// f[p] = -c (1 - 2 log p / L) sin(pi twist_alpha log p / L).
struct MollifierSpec {
  MollifierKind kind = MollifierKind::divisor;
  int r = 1;
  double c = 0.0;
  double twist_alpha = 0.0;
  double theta = 0.5;
  PolyF f;

  static MollifierSpec divisor(int r, PolyF f, double theta = 0.5);
  static MollifierSpec moebius(int r, PolyF f, double theta = 0.5);
  static MollifierSpec prime_twisted(double c, double twist_alpha, double theta = 0.5);

  void validate() const;
  /// y = (T / 2 pi)^theta
  double y(double T) const;
};

/// A formula-level h_1 (main term, o(1) dropped) with its pieces.
struct FunctionalResult {
  double alpha = 0.0;
  double value = 0.0;
  std::map<std::string, double> terms;
  double quad_error = 0.0;
  std::string label = "main term";
};

/// Kernel of the closed form: exp(r eta) - r - 1 (divisor) or
/// exp(-r eta) + r - 1 (moebius).
double h1_kernel(CoeffKind kind, int r, double eta);

/// h_1(alpha) = alpha + (2/pi) N / D with
///   N = int_0^1 int_0^x sin(alpha eta pi/2)/eta (1-x)^{r^2-1} K(eta) f(x) f(x-eta)
///   D = int_0^1 (1-x)^{r^2-1} f(x)^2.
FunctionalResult h1_theorem1(double alpha, int r, const PolyF& f, CoeffKind kind,
                             double tol = 1e-9);

/// Coefficient-space form of h1_theorem1: for f with coefficient vector c,
/// h_1 = alpha + (2/pi) (c^T N c) / (c^T D c). N is symmetrised.
struct QuadraticForms {
  double alpha = 0.0;
  std::vector<std::vector<double>> N;
  std::vector<std::vector<double>> D;
  double quad_error = 0.0;

  double h1(const std::vector<double>& coeffs) const;
};

QuadraticForms h1_forms(double alpha, int r, std::size_t degree, CoeffKind kind,
                        double tol = 1e-10);

struct UVResult {
  double U = 0.0;
  double V = 0.0;
  double U_error = 0.0;
  double V_error = 0.0;
};

/// U = int_0^1 (1-u)^2 sin^2(pi alpha u/2) / u du,
/// V = int int_[0,1]^2 (1-u)(1-v) sin(pi alpha u/2) sin(pi alpha v/2) sin(pi alpha (u+v)/2).
/// swap_order integrates V with the other variable outermost.
UVResult UV(double alpha, double tol = 1e-10, bool swap_order = false);

/// Stationary points of c -> (4Uc + Vc^2) / (2 + Uc^2):
/// c_+- = (V +- sqrt(V^2 + 8U^3)) / (2U^2).
std::pair<double, double> c_opt(double U, double V);
std::pair<double, double> c_opt(double alpha);

/// alpha + (4Uc + Vc^2) / (pi (2 + Uc^2)).
FunctionalResult h1_theorem2(double alpha, double c, double tol = 1e-10);
FunctionalResult h1_theorem2(double alpha, double c, const UVResult& uv);

struct GSums {
  double g1 = 0.0;
  double g2 = 0.0;
  double denominator = 0.0;  ///< 2 + sum f[p]^2 / p
  std::size_t prime_count = 0;
};

/// Finite prime sums g_1, g_2 with f[p] = -c (1 - 2 log p/L) sin(pi alpha log p/L)
/// and L = 2 log y.
GSums g_sums(const ArithTables& tables, double alpha, double c, double y);

/// Second-moment main term: a_r T (log y)^{r^2} / Gamma(r^2) int (1-x)^{r^2-1} f^2
/// for divisor, T (4 + 2 sum_{p<=y} f[p]^2 / p) for prime_twisted. Moebius is
/// refused (unsupported).
double moment2(const ArithTables& tables, const MollifierSpec& spec, double T);

/// Dirichlet polynomial built from a spec at height T.
class DirichletPolynomial {
 public:
  DirichletPolynomial(const ArithTables& tables, const MollifierSpec& spec, double T);

  std::complex<double> operator()(std::complex<double> s) const;
  std::size_t size() const { return log_n_.size(); }
  double y() const { return y_; }

 private:
  std::complex<double> half(std::complex<double> s) const;

  bool twisted_;
  double y_;
  double constant_ = 0.0;
  std::vector<double> log_n_;
  std::vector<double> coef_;
};

struct EmpiricalResult {
  double value = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  std::size_t zero_count = 0;
  double L = 0.0;
  double y = 0.0;
};

struct EmpiricalOptions {
  double denominator_step = 0.01;
  int workers = 1;
};

/// int_T^{2T} |M(1/2 + it)|^{2k} dt by composite Simpson at the given step.
double empirical_moment(const ArithTables& tables, const MollifierSpec& spec, double T, int k,
                        double step = 0.01);

/// h_k(alpha, M) from actual xi' zeros: numerator sums, over zeros in (T, 2T],
/// a 64-point Gauss-Legendre integral of |M(1/2 + i(g1 + t))|^{2k} over
/// |t| <= pi alpha / L; the denominator is empirical_moment.
EmpiricalResult empirical_h(const ZeroList& zeros, const ArithTables& tables,
                            const MollifierSpec& spec, double alpha, int k, double T,
                            const EmpiricalOptions& options = {});

/// Right side of the large-gap counting inequality:
/// (1-h1)^4 m2^4 L^2 / (4 pi^2 sum_delta_sq m4^2).
double large_gap_lower_bound(double h1, double m2, double sum_delta_sq, double m4, double L);

/// Right side of the small-gap counting inequality:
/// (h1-1)^2 m2^2 L / (2 pi mu h2 m4).
double small_gap_lower_bound(double h1, double m2, double mu, double h2, double m4, double L);

}  // namespace xigap
