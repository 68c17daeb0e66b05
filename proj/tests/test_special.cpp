#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "xigap/special.hpp"
#include "xigap/zeta.hpp"

using namespace xigap;
using std::numbers::pi;

namespace {

// Im log Gamma is only defined modulo 2 pi on the principal-log branch.
double branch_distance(cplx a, cplx b) {
  const double re = std::abs(a.real() - b.real());
  const double im = std::remainder(a.imag() - b.imag(), 2.0 * pi);
  return std::hypot(re, im);
}

}  // namespace

TEST_CASE("log_gamma on the positive axis matches lgamma") {
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.25, 30.0, 170.5}) {
    CHECK(log_gamma({x, 0.0}).real() == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
  }
}

TEST_CASE("log_gamma duplication formula") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(-3.7, 6.0), im(-800.0, 800.0);
  for (int i = 0; i < 200; ++i) {
    const cplx z(re(rng), im(rng));
    const cplx lhs = log_gamma(z) + log_gamma(z + 0.5);
    const cplx rhs = (1.0 - 2.0 * z) * std::log(2.0) + 0.5 * std::log(pi) + log_gamma(2.0 * z);
    CHECK(branch_distance(lhs, rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("log_gamma recurrence at heights where reflection is skipped") {
  for (double t : {40.0, 500.0, 4000.0}) {
    const cplx z(0.25, t);
    CHECK(branch_distance(log_gamma(z + 1.0), log_gamma(z) + std::log(z)) < 1e-10);
  }
}

TEST_CASE("digamma and trigamma special values") {
  const double g = std::numbers::egamma;
  CHECK(digamma(1.0).real() == doctest::Approx(-g).epsilon(1e-14));
  CHECK(digamma(0.25).real() ==
        doctest::Approx(-g - pi / 2.0 - 3.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(digamma(0.5).real() == doctest::Approx(-g - 2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(trigamma(1.0).real() == doctest::Approx(pi * pi / 6.0).epsilon(1e-14));
  CHECK(trigamma(0.5).real() == doctest::Approx(pi * pi / 2.0).epsilon(1e-14));
}

TEST_CASE("digamma is the derivative of log_gamma") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> re(-2.3, 4.0), im(-300.0, 300.0);
  for (int i = 0; i < 50; ++i) {
    const cplx z(re(rng), im(rng));
    const double h = 1e-5;
    const cplx fd = (log_gamma(z + h) - log_gamma(z - h)) / (2.0 * h);
    // the branch cut can shift Im by 2 pi between the two samples
    const cplx d = digamma(z);
    CHECK(std::abs(fd.real() - d.real()) < 1e-6);
    CHECK(std::abs(std::remainder(fd.imag() - d.imag(), pi / h)) < 1e-6);
    const cplx td = (digamma(z + h) - digamma(z - h)) / (2.0 * h);
    CHECK(std::abs(td - trigamma(z)) < 1e-6 * std::max(1.0, std::abs(trigamma(z))));
  }
}

TEST_CASE("poles are refused") {
  CHECK(thrown_kind([] { log_gamma(0.0); }) == ErrorKind::domain);
  CHECK(thrown_kind([] { digamma(-3.0); }) == ErrorKind::domain);
  CHECK(thrown_kind([] { trigamma(-1.0); }) == ErrorKind::domain);
}

TEST_CASE("zeta at real points against independent oracles") {
  // direct series with an integral tail
  double s2 = 0.0;
  for (int n = 1000000; n >= 1; --n) s2 += 1.0 / (double(n) * n);
  s2 += 1.0 / 1000000.5;
  CHECK(zeta_em(2.0).real() == doctest::Approx(s2).epsilon(1e-12));
  CHECK(zeta_em(2.0).real() == doctest::Approx(pi * pi / 6.0).epsilon(1e-14));
  CHECK(zeta_em(0.0).real() == doctest::Approx(-0.5).epsilon(1e-14));

  // functional equation zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s) at s = -1.5
  const double s = -1.5;
  const double rhs = std::pow(2.0, s) * std::pow(pi, s - 1.0) * std::sin(pi * s / 2.0) *
                     std::tgamma(1.0 - s) * zeta_em(1.0 - s).real();
  CHECK(zeta_em(s).real() == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("first critical zero") {
  CHECK(std::abs(zeta_em({0.5, 14.134725})) < 1e-5);
  CHECK(std::abs(zeta_em({0.5, 14.134725141734693})) < 1e-12);
}

TEST_CASE("zeta derivatives against central differences") {
  for (cplx s : {cplx(0.5, 20.0), cplx(1.3, 300.0), cplx(0.5, 1500.0), cplx(-0.5, 50.0)}) {
    const double h = 1e-4;
    const ZetaDerivs z = zeta_derivs(s, 2);
    const cplx d1 = (zeta_em(s + h) - zeta_em(s - h)) / (2.0 * h);
    const cplx d2 = (zeta_em(s + h) - 2.0 * zeta_em(s) + zeta_em(s - h)) / (h * h);
    CHECK(std::abs(z.d1 - d1) < 1e-6 * std::max(1.0, std::abs(z.d1)));
    CHECK(std::abs(z.d2 - d2) < 1e-4 * std::max(1.0, std::abs(z.d2)));
    CHECK(std::abs(zeta_em(s, 1) - z.d1) < 1e-12 * std::max(1.0, std::abs(z.d1)));
  }
}

TEST_CASE("Euler-Maclaurin truncation self-consistency") {
  for (double t : {15.0, 100.0, 777.0, 2000.0}) {
    const cplx s(0.5, t);
    const int N = zeta_default_cutoff(s);
    const cplx a = zeta_em_fixed(s, 0, N, 30).value;
    const cplx b = zeta_em_fixed(s, 0, 2 * N, 30).value;
    CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("zeta errors") {
  CHECK(thrown_kind([] { zeta_em(1.0); }) == ErrorKind::domain);
  CHECK(thrown_kind([] { zeta_em({0.5, 6000.0}); }) == ErrorKind::capacity);
  CHECK(thrown_kind([] { zeta_em(2.0, 3); }) == ErrorKind::domain);
  CHECK(thrown_kind([] { zeta_em(2.0, 0, 1e-16); }) == ErrorKind::domain);
}
