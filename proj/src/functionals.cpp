#include "xigap/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "xigap/error.hpp"
#include "xigap/parallel.hpp"
#include "xigap/summation.hpp"

namespace xigap {

namespace {

constexpr double pi = std::numbers::pi;

void require_converged(const QuadResult& q, double tol, const char* what) {
  if (!q.converged || !(q.error_estimate <= tol) || !std::isfinite(q.value)) {
    fail(ErrorKind::accuracy, std::string(what) + ": quadrature did not reach tolerance (estimate " +
                                  std::to_string(q.value) + ", error " +
                                  std::to_string(q.error_estimate) + ")");
  }
}

// sin(c eta) / eta with its limit at 0
double sinc_ratio(double c, double eta) {
  if (std::abs(eta) < 1e-8) return c * (1.0 - c * c * eta * eta / 6.0);
  return std::sin(c * eta) / eta;
}

void check_theorem1_args(double alpha, int r, double tol) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) fail(ErrorKind::domain, "alpha must be >= 0");
  if (r < 1 || r > 3) fail(ErrorKind::domain, "r must be 1, 2 or 3");
  if (!(tol > 0.0) || tol > 1e-8) fail(ErrorKind::domain, "tol must be in (0, 1e-8]");
}

double weight(int r, double x) { return std::pow(1.0 - x, r * r - 1); }

}  // namespace

PolyF::PolyF(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) fail(ErrorKind::domain, "PolyF needs at least one coefficient");
  if (coeffs_.size() > max_degree + 1) fail(ErrorKind::domain, "PolyF degree exceeds 8");
  bool nonzero = false;
  for (double c : coeffs_) {
    if (!std::isfinite(c)) fail(ErrorKind::domain, "PolyF coefficient is not finite");
    nonzero = nonzero || c != 0.0;
  }
  if (!nonzero) fail(ErrorKind::domain, "PolyF is identically zero");
}

double PolyF::operator()(double x) const {
  double v = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
  return v;
}

MollifierSpec MollifierSpec::divisor(int r, PolyF f, double theta) {
  MollifierSpec s;
  s.kind = MollifierKind::divisor;
  s.r = r;
  s.f = std::move(f);
  s.theta = theta;
  s.validate();
  return s;
}

MollifierSpec MollifierSpec::moebius(int r, PolyF f, double theta) {
  MollifierSpec s = divisor(r, std::move(f), theta);
  s.kind = MollifierKind::moebius;
  return s;
}

MollifierSpec MollifierSpec::prime_twisted(double c, double twist_alpha, double theta) {
  MollifierSpec s;
  s.kind = MollifierKind::prime_twisted;
  s.c = c;
  s.twist_alpha = twist_alpha;
  s.theta = theta;
  s.validate();
  return s;
}

void MollifierSpec::validate() const {
  if (!(theta > 0.0 && theta <= 0.5)) fail(ErrorKind::domain, "theta must be in (0, 1/2]");
  if (kind != MollifierKind::prime_twisted && r < 1) fail(ErrorKind::domain, "r must be >= 1");
  if (!std::isfinite(c) || !std::isfinite(twist_alpha) || twist_alpha < 0.0) {
    fail(ErrorKind::domain, "twisted mollifier needs finite c and alpha >= 0");
  }
}

double MollifierSpec::y(double T) const { return std::pow(T / (2.0 * pi), theta); }

double h1_kernel(CoeffKind kind, int r, double eta) {
  // expm1 keeps the cancellation near eta = 0 in check
  if (kind == CoeffKind::divisor) return std::expm1(r * eta) - r;
  return std::expm1(-r * eta) + r;
}

FunctionalResult h1_theorem1(double alpha, int r, const PolyF& f, CoeffKind kind, double tol) {
  check_theorem1_args(alpha, r, tol);
  const double c = alpha * pi / 2.0;

  const QuadResult den = adaptive_quad(
      [&](double x) {
        const double v = f(x);
        return weight(r, x) * v * v;
      },
      0.0, 1.0, tol / 10.0);
  require_converged(den, tol / 10.0, "h1 denominator");
  if (!(den.value > 0.0)) fail(ErrorKind::domain, "denominator vanishes (f is zero on [0,1])");

  FunctionalResult out;
  out.alpha = alpha;
  out.terms["denominator"] = den.value;
  if (alpha == 0.0) {
    out.terms["numerator"] = 0.0;
    out.terms["correction"] = 0.0;
    out.value = 0.0;
    return out;
  }

  // Scale the numerator tolerance so the propagated error on h1 stays within tol.
  const double num_tol = tol * den.value * pi / 8.0;
  const QuadResult num = triangle_quad(
      [&](double x, double eta) {
        return sinc_ratio(c, eta) * weight(r, x) * h1_kernel(kind, r, eta) * f(x) * f(x - eta);
      },
      num_tol);
  require_converged(num, num_tol, "h1 numerator");

  const double ratio = num.value / den.value;
  out.terms["numerator"] = num.value;
  out.terms["correction"] = 2.0 / pi * ratio;
  out.value = alpha + 2.0 / pi * ratio;
  out.quad_error = 2.0 / pi *
                   (num.error_estimate / den.value +
                    std::abs(num.value) * den.error_estimate / (den.value * den.value));
  return out;
}

double QuadraticForms::h1(const std::vector<double>& coeffs) const {
  const std::size_t n = N.size();
  if (coeffs.size() != n) fail(ErrorKind::domain, "coefficient count does not match forms");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      num += coeffs[i] * N[i][j] * coeffs[j];
      den += coeffs[i] * D[i][j] * coeffs[j];
    }
  }
  if (!(den > 0.0)) fail(ErrorKind::domain, "denominator vanishes (f is zero on [0,1])");
  return alpha + 2.0 / pi * num / den;
}

QuadraticForms h1_forms(double alpha, int r, std::size_t degree, CoeffKind kind, double tol) {
  check_theorem1_args(alpha, r, tol);
  if (degree > PolyF::max_degree) fail(ErrorKind::domain, "degree exceeds 8");
  const std::size_t n = degree + 1;
  const double c = alpha * pi / 2.0;
  const int r2 = r * r;

  QuadraticForms q;
  q.alpha = alpha;
  q.N.assign(n, std::vector<double>(n, 0.0));
  q.D.assign(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> raw(n, std::vector<double>(n, 0.0));

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // int_0^1 (1-x)^{r^2-1} x^{i+j} dx = B(i+j+1, r^2)
      q.D[i][j] = std::exp(std::lgamma(i + j + 1.0) + std::lgamma(double(r2)) -
                           std::lgamma(i + j + 1.0 + r2));
      if (alpha == 0.0) continue;
      const QuadResult e = triangle_quad(
          [&](double x, double eta) {
            return sinc_ratio(c, eta) * weight(r, x) * h1_kernel(kind, r, eta) *
                   std::pow(x, double(i)) * std::pow(x - eta, double(j));
          },
          tol);
      require_converged(e, tol, "h1 form entry");
      raw[i][j] = e.value;
      q.quad_error = std::max(q.quad_error, e.error_estimate);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q.N[i][j] = 0.5 * (raw[i][j] + raw[j][i]);
  }
  return q;
}

UVResult UV(double alpha, double tol, bool swap_order) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) fail(ErrorKind::domain, "alpha must be >= 0");
  UVResult out;
  if (alpha == 0.0) return out;
  const double c = pi * alpha / 2.0;

  const QuadResult u = adaptive_quad(
      [&](double x) {
        if (x == 0.0) return 0.0;
        const double s = std::sin(c * x);
        return (1.0 - x) * (1.0 - x) * s * sinc_ratio(c, x);
      },
      0.0, 1.0, tol);
  require_converged(u, tol, "U");

  auto v_integrand = [&](double a, double b) {
    return (1.0 - a) * (1.0 - b) * std::sin(c * a) * std::sin(c * b) * std::sin(c * (a + b));
  };
  const QuadResult v = swap_order
                           ? square_quad([&](double b, double a) { return v_integrand(a, b); }, tol)
                           : square_quad(v_integrand, tol);
  require_converged(v, tol, "V");

  out.U = std::max(u.value, 0.0);
  out.V = v.value;
  out.U_error = u.error_estimate;
  out.V_error = v.error_estimate;
  return out;
}

std::pair<double, double> c_opt(double U, double V) {
  if (!(U > 0.0)) fail(ErrorKind::degenerate, "U must be positive for the optimal c");
  const double root = std::sqrt(V * V + 8.0 * U * U * U);
  const double denom = 2.0 * U * U;
  // The smaller-magnitude root comes from Vieta to avoid cancellation.
  const double big = V >= 0.0 ? (V + root) / denom : (V - root) / denom;
  const double small = -2.0 / (U * big);
  return V >= 0.0 ? std::pair{small, big} : std::pair{big, small};
}

std::pair<double, double> c_opt(double alpha) {
  const UVResult uv = UV(alpha);
  return c_opt(uv.U, uv.V);
}

FunctionalResult h1_theorem2(double alpha, double c, const UVResult& uv) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) fail(ErrorKind::domain, "alpha must be >= 0");
  if (!std::isfinite(c)) fail(ErrorKind::domain, "c must be finite");
  const double den = pi * (2.0 + uv.U * c * c);
  const double g1 = 4.0 * uv.U * c / den;
  const double g2 = uv.V * c * c / den;
  FunctionalResult out;
  out.alpha = alpha;
  out.value = alpha + g1 + g2;
  out.terms = {{"U", uv.U}, {"V", uv.V}, {"c", c}, {"g1", g1}, {"g2", g2}};
  // d value / dU and d value / dV bound the propagated quadrature error.
  const double dU = (4.0 * c * den - (4.0 * uv.U * c + uv.V * c * c) * pi * c * c) / (den * den);
  const double dV = c * c / den;
  out.quad_error = std::abs(dU) * uv.U_error + std::abs(dV) * uv.V_error;
  return out;
}

FunctionalResult h1_theorem2(double alpha, double c, double tol) {
  return h1_theorem2(alpha, c, UV(alpha, tol));
}

GSums g_sums(const ArithTables& tables, double alpha, double c, double y) {
  if (!(alpha >= 0.0) || !std::isfinite(c)) fail(ErrorKind::domain, "need alpha >= 0, finite c");
  if (!(y >= 2.0)) fail(ErrorKind::domain, "y must be >= 2");
  if (y > tables.limit()) fail(ErrorKind::capacity, "y exceeds sieve limit");
  const double L = 2.0 * std::log(y);
  CompensatedSum s1, ssq, ws, wc;
  GSums out;
  for (std::uint32_t p : tables.primes()) {
    if (p > y) break;
    const double lp = std::log(double(p));
    const double taper = 1.0 - 2.0 * lp / L;
    const double sn = std::sin(pi * alpha * lp / L);
    const double fp = -c * taper * sn;
    s1 += taper * sn * fp / p;
    ssq += fp * fp / p;
    // sin(a + b) = sin a cos b + cos a sin b factorises the double sum
    const double w = lp * fp / (L * p);
    ws += w * sn;
    wc += w * std::cos(pi * alpha * lp / L);
    ++out.prime_count;
  }
  out.denominator = 2.0 + ssq.value();
  out.g1 = -4.0 / pi * s1.value() / out.denominator;
  out.g2 = 4.0 / pi * 2.0 * ws.value() * wc.value() / out.denominator;
  return out;
}

double moment2(const ArithTables& tables, const MollifierSpec& spec, double T) {
  spec.validate();
  if (!(T >= 100.0)) fail(ErrorKind::domain, "T must be >= 100");
  const double y = spec.y(T);
  switch (spec.kind) {
    case MollifierKind::moebius:
      fail(ErrorKind::unsupported, "no second-moment main term for the moebius mollifier");
    case MollifierKind::prime_twisted: {
      const double L = std::log(T / (2.0 * pi));
      if (y > tables.limit()) fail(ErrorKind::capacity, "y exceeds sieve limit");
      CompensatedSum s;
      for (std::uint32_t p : tables.primes()) {
        if (p > y) break;
        const double lp = std::log(double(p));
        const double fp =
            -spec.c * (1.0 - 2.0 * lp / L) * std::sin(pi * spec.twist_alpha * lp / L);
        s += fp * fp / p;
      }
      return T * (4.0 + 2.0 * s.value());
    }
    case MollifierKind::divisor: {
      const int r2 = spec.r * spec.r;
      const double a_r =
          spec.r == 1 ? 1.0
                      : a_r_const(tables, spec.r, std::min<std::uint32_t>(1'000'000, tables.limit()))
                            .value;
      const QuadResult q = adaptive_quad(
          [&](double x) {
            const double v = spec.f(x);
            return weight(spec.r, x) * v * v;
          },
          0.0, 1.0, 1e-12);
      require_converged(q, 1e-12, "moment2 integral");
      return a_r * T * std::pow(std::log(y), r2) / std::tgamma(double(r2)) * q.value;
    }
  }
  return 0.0;
}

DirichletPolynomial::DirichletPolynomial(const ArithTables& tables, const MollifierSpec& spec,
                                         double T)
    : twisted_(spec.kind == MollifierKind::prime_twisted) {
  spec.validate();
  if (!(T > 2.0 * pi)) fail(ErrorKind::domain, "T must exceed 2 pi");
  y_ = spec.y(T);
  if (y_ > tables.limit()) fail(ErrorKind::capacity, "y exceeds sieve limit");
  const auto ny = static_cast<std::uint32_t>(std::floor(y_));
  const double log_y = std::log(y_);
  if (twisted_) {
    const double L = std::log(T / (2.0 * pi));
    constant_ = 1.0;
    for (std::uint32_t p : tables.primes()) {
      if (p > ny) break;
      const double lp = std::log(double(p));
      const double fp = -spec.c * (1.0 - 2.0 * lp / L) * std::sin(pi * spec.twist_alpha * lp / L);
      if (fp == 0.0) continue;
      log_n_.push_back(lp);
      coef_.push_back(fp);
    }
    return;
  }
  const CoeffKind ck = spec.kind == MollifierKind::divisor ? CoeffKind::divisor : CoeffKind::moebius;
  const auto a = tables.coeff_table(spec.r, ck, std::max<std::uint32_t>(ny, 1));
  for (std::uint32_t n = 1; n <= ny; ++n) {
    const double an = (*a)[n];
    if (an == 0.0) continue;
    const double ln = std::log(double(n));
    const double fn = log_y > 0.0 ? spec.f((log_y - ln) / log_y) : spec.f(1.0);
    if (fn == 0.0) continue;
    if (n == 1) {
      constant_ += an * fn;
      continue;
    }
    log_n_.push_back(ln);
    coef_.push_back(an * fn);
  }
}

std::complex<double> DirichletPolynomial::half(std::complex<double> s) const {
  CompensatedComplexSum acc;
  acc += std::complex<double>(constant_, 0.0);
  for (std::size_t i = 0; i < log_n_.size(); ++i) acc += coef_[i] * std::exp(-s * log_n_[i]);
  return acc.value();
}

std::complex<double> DirichletPolynomial::operator()(std::complex<double> s) const {
  if (twisted_) return half(s) + half(1.0 - s);
  return half(s);
}

namespace {

double power_k(std::complex<double> m, int k) {
  const double a = std::norm(m);
  return k == 1 ? a : a * a;
}

}  // namespace

double empirical_moment(const ArithTables& tables, const MollifierSpec& spec, double T, int k,
                        double step) {
  if (k != 1 && k != 2) fail(ErrorKind::domain, "k must be 1 or 2");
  if (!(step > 0.0)) fail(ErrorKind::domain, "step must be positive");
  const DirichletPolynomial M(tables, spec, T);
  auto n = static_cast<std::size_t>(std::ceil(T / step));
  if (n % 2) ++n;
  const double h = T / n;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = power_k(M({0.5, T + i * h}), k);
  CompensatedSum s;
  for (std::size_t i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * vals[i];
  }
  return s.value() * h / 3.0;
}

EmpiricalResult empirical_h(const ZeroList& zeros, const ArithTables& tables,
                            const MollifierSpec& spec, double alpha, int k, double T,
                            const EmpiricalOptions& options) {
  if (zeros.kind != ZeroKind::xi_prime) fail(ErrorKind::window_mismatch, "need xi' zeros");
  if (!(alpha >= 0.0)) fail(ErrorKind::domain, "alpha must be >= 0");
  if (k != 1 && k != 2) fail(ErrorKind::domain, "k must be 1 or 2");
  if (!(T > 2.0 * pi) || 2.0 * T > 5000.0) fail(ErrorKind::domain, "need 2 pi < T and 2T <= 5000");
  if (zeros.t_min > T || zeros.t_max < 2.0 * T) {
    fail(ErrorKind::window_mismatch, "zero list does not cover (T, 2T]");
  }
  spec.validate();
  if (spec.y(T) > 1e5) fail(ErrorKind::capacity, "y exceeds 1e5 for direct summation");

  EmpiricalResult out;
  out.L = std::log(T / (2.0 * pi));
  out.y = spec.y(T);
  const DirichletPolynomial M(tables, spec, T);

  std::vector<double> gammas;
  for (const Zero& z : zeros.zeros) {
    if (z.ordinate > T && z.ordinate <= 2.0 * T) gammas.push_back(z.ordinate);
  }
  out.zero_count = gammas.size();
  out.denominator = empirical_moment(tables, spec, T, k, options.denominator_step);
  if (alpha == 0.0) return out;

  const double half_width = pi * alpha / out.L;
  std::vector<double> per_zero(gammas.size());
  parallel_for(gammas.size(), options.workers, [&](std::size_t i) {
    per_zero[i] = gauss_legendre_64(
        [&](double t) { return power_k(M({0.5, gammas[i] + t}), k); }, -half_width, half_width);
  });
  out.numerator = pairwise_sum(per_zero);
  out.value = out.numerator / out.denominator;
  return out;
}

double large_gap_lower_bound(double h1, double m2, double sum_delta_sq, double m4, double L) {
  if (!(sum_delta_sq > 0.0) || !(m4 > 0.0)) fail(ErrorKind::domain, "need positive sums");
  const double d = 1.0 - h1;
  return d * d * d * d * std::pow(m2, 4) * L * L / (4.0 * pi * pi * sum_delta_sq * m4 * m4);
}

double small_gap_lower_bound(double h1, double m2, double mu, double h2, double m4, double L) {
  if (!(mu > 0.0) || !(h2 > 0.0) || !(m4 > 0.0)) fail(ErrorKind::domain, "need positive mu, h2, m4");
  const double d = h1 - 1.0;
  return d * d * m2 * m2 * L / (2.0 * pi * mu * h2 * m4);
}

}  // namespace xigap
