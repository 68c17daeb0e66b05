#include "xigap/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bernoulli.hpp>

#include "xigap/error.hpp"

namespace xigap {

namespace {

constexpr int kStirlingTerms = 12;
constexpr double kShiftRadius = 15.0;
constexpr double pi = std::numbers::pi;

const std::array<double, kStirlingTerms + 1>& bernoulli_even() {
  static const auto table = [] {
    std::array<double, kStirlingTerms + 1> b{};
    for (int k = 0; k <= kStirlingTerms; ++k) b[k] = boost::math::bernoulli_b2n<double>(k);
    return b;
  }();
  return table;
}

// Reflection is only used near the real axis; far from it sin(pi z)
// overflows and the Stirling series is accurate without it.
bool use_reflection(cplx z) { return z.real() < 0.5 && std::abs(z.imag()) < 30.0; }

bool at_pole(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

// Number of unit steps that bring z outside the shift radius.
int shift_count(cplx z) {
  int n = 0;
  while (std::abs(z + static_cast<double>(n)) < kShiftRadius) ++n;
  return n;
}

cplx log_gamma_right(cplx z) {
  const int n = shift_count(z);
  cplx shift_log = 0.0;
  for (int k = 0; k < n; ++k) shift_log += std::log(z + static_cast<double>(k));
  const cplx w = z + static_cast<double>(n);
  const auto& b = bernoulli_even();
  const cplx w2inv = 1.0 / (w * w);
  cplx series = 0.0;
  cplx wpow = 1.0 / w;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    series += b[k] / (2.0 * k * (2.0 * k - 1.0)) * wpow;
    wpow *= w2inv;
  }
  return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * pi) + series - shift_log;
}

cplx digamma_right(cplx z) {
  const int n = shift_count(z);
  cplx shift = 0.0;
  for (int k = 0; k < n; ++k) shift += 1.0 / (z + static_cast<double>(k));
  const cplx w = z + static_cast<double>(n);
  const auto& b = bernoulli_even();
  const cplx w2inv = 1.0 / (w * w);
  cplx series = 0.0;
  cplx wpow = w2inv;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    series += b[k] / (2.0 * k) * wpow;
    wpow *= w2inv;
  }
  return std::log(w) - 0.5 / w - series - shift;
}

cplx trigamma_right(cplx z) {
  const int n = shift_count(z);
  cplx shift = 0.0;
  for (int k = 0; k < n; ++k) {
    const cplx zk = z + static_cast<double>(k);
    shift += 1.0 / (zk * zk);
  }
  const cplx w = z + static_cast<double>(n);
  const auto& b = bernoulli_even();
  const cplx winv = 1.0 / w;
  const cplx w2inv = winv * winv;
  cplx series = 0.0;
  cplx wpow = w2inv * winv;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    series += b[k] * wpow;
    wpow *= w2inv;
  }
  return winv + 0.5 * w2inv + series + shift;
}

}  // namespace

cplx log_gamma(cplx z) {
  if (at_pole(z)) fail(ErrorKind::domain, "log_gamma pole at nonpositive integer");
  if (use_reflection(z)) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma_right(1.0 - z);
  }
  return log_gamma_right(z);
}

cplx digamma(cplx z) {
  if (at_pole(z)) fail(ErrorKind::domain, "digamma pole at nonpositive integer");
  if (use_reflection(z)) {
    // psi(1-z) - psi(z) = pi cot(pi z)
    return digamma_right(1.0 - z) - pi / std::tan(pi * z);
  }
  return digamma_right(z);
}

cplx trigamma(cplx z) {
  if (at_pole(z)) fail(ErrorKind::domain, "trigamma pole at nonpositive integer");
  if (use_reflection(z)) {
    // psi'(1-z) + psi'(z) = pi^2 / sin^2(pi z)
    const cplx s = std::sin(pi * z);
    return pi * pi / (s * s) - trigamma_right(1.0 - z);
  }
  return trigamma_right(z);
}

}  // namespace xigap
