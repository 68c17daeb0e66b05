#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "xigap/analytic.hpp"

using namespace xigap;
using std::numbers::pi;

namespace {

const ArithTables& tables() {
  static const ArithTables t(100000);
  return t;
}

}  // namespace

TEST_CASE("L at 1/2 from the digamma value at 1/4") {
  const double psi_quarter = -std::numbers::egamma - pi / 2.0 - 3.0 * std::log(2.0);
  const double expected = -std::log(pi) / 2.0 + 0.5 * psi_quarter;
  CHECK(L_func(0.5).real() == doctest::Approx(expected).epsilon(1e-13));
  CHECK(expected == doctest::Approx(-2.6860917).epsilon(1e-7));
  CHECK(std::abs(L_func(0.5).imag()) < 1e-15);
}

TEST_CASE("L(s) asymptotics") {
  const double T = 1000.0;
  const double L = std::log(T / (2.0 * pi));
  const cplx s(1.0 + 1.0 / L, T);
  CHECK(std::abs(L_func(s) - 0.5 * std::log(s / (2.0 * pi))) < 10.0 / (std::abs(s) + 2.0));

  double worst = 0.0, worst_d = 0.0;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(100.0, 2000.0);
  for (int i = 0; i < 20; ++i) {
    const double t = u(rng);
    const cplx z(1.0 + 1.0 / std::log(t / (2.0 * pi)), t);
    worst = std::max(worst, std::abs(L_func(z) - 0.5 * std::log(z / (2.0 * pi))) * (std::abs(z) + 2.0));
    worst_d = std::max(worst_d, std::abs(L_func(z, 1)) * (std::abs(z) + 2.0));
  }
  CHECK(worst < 10.0);
  CHECK(worst_d < 10.0);
}

TEST_CASE("L poles and order") {
  CHECK(thrown_kind([] { L_func(0.0); }) == ErrorKind::domain);
  CHECK(thrown_kind([] { L_func(1.0); }) == ErrorKind::domain);
  CHECK(thrown_kind([] { L_func(-2.0); }) == ErrorKind::domain);
  CHECK(thrown_kind([] { L_func(0.5, 2); }) == ErrorKind::domain);
}

TEST_CASE("xi at 1/2 and across the first zero") {
  const XiValue x0 = xi_scaled(0.0);
  CHECK(x0.sign == 1);
  // xi(1/2) = -(1/8) pi^{-1/4} Gamma(1/4) zeta(1/2)
  const double zeta_half = -1.4603545088095868;
  CHECK(x0.scaled_value == doctest::Approx(-0.125 * std::pow(pi, -0.25) * std::tgamma(0.25) * zeta_half)
                               .epsilon(1e-12));
  CHECK(xi_scaled(14.0).sign != xi_scaled(14.2).sign);
}

TEST_CASE("Xi is real") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(10.0, 1000.0);
  for (int i = 0; i < 50; ++i) {
    const XiValue v = xi_scaled(u(rng));
    CHECK(v.real_residual < 1e-8);
    CHECK(std::isfinite(v.scaled_value));
    CHECK(v.sign == (v.scaled_value > 0) - (v.scaled_value < 0));
  }
  CHECK(std::isfinite(xi_scaled(5000.0).scaled_value));
  CHECK(thrown_kind([] { xi_scaled(5000.5); }) == ErrorKind::domain);
}

TEST_CASE("functional equation in log form") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> sig(0.05, 0.95), t(10.0, 500.0);
  for (int i = 0; i < 50; ++i) {
    const cplx s(sig(rng), t(rng));
    const cplx a = log_xi(s), b = log_xi(1.0 - s);
    const double dre = std::abs(a.real() - b.real());
    const double dim = std::abs(std::remainder(a.imag() - b.imag(), 2.0 * pi));
    CHECK(std::hypot(dre, dim) < 1e-8);
  }
}

TEST_CASE("g has one sign change between the first two zeta zeros") {
  int changes = 0;
  double prev = g_detector(14.1348);
  for (double t = 14.1348 + 0.001; t < 21.0220; t += 0.001) {
    const double g = g_detector(t);
    changes += (g > 0) != (prev > 0);
    prev = g;
  }
  CHECK(changes == 1);
  CHECK((g_detector(14.1347 - 1e-3) > 0) != (g_detector(14.1347 + 1e-3) > 0));
  CHECK(thrown_kind([] { g_detector(14.134725141734693); }) == ErrorKind::pole_proximity);
}

TEST_CASE("Xi' from finite differences agrees in sign with Xi g") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(20.0, 500.0);
  int compared = 0;
  while (compared < 50) {
    const double t = u(rng);
    double g;
    try {
      g = g_detector(t);
    } catch (const Error&) {
      continue;
    }
    if (std::abs(g) < 1e-2) continue;  // too close to a zero of Xi' to resolve by differences
    const double h = 1e-5;
    const double f0 = xi_scaled(t).scaled_value;
    const double fp = xi_scaled(t + h).scaled_value, fm = xi_scaled(t - h).scaled_value;
    // (Xi e^{pi t/4})' = e^{pi t/4} (Xi' + pi/4 Xi)
    const double xi_prime_scaled = (fp - fm) / (2.0 * h) - pi / 4.0 * f0;
    if (std::abs(xi_prime_scaled) < 1e-6 * std::abs(f0) + 1e-12) continue;
    CHECK((xi_prime_scaled > 0) == (f0 * g > 0));
    ++compared;
  }
}

TEST_CASE("xi''/xi' near the right edge") {
  const double t = 150.0;
  const double L = std::log(t / (2.0 * pi));
  const cplx s = EvalPoint::right_edge(t, t).s;
  const cplx v = xi2_over_xi1(s);
  CHECK(std::isfinite(v.real()));
  CHECK(std::abs(v - L / 2.0) <= 5.0 * L);
}

TEST_CASE("xi''/xi' antisymmetry") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> sig(0.6, 1.5), t(20.0, 400.0);
  for (int i = 0; i < 20; ++i) {
    const cplx s(sig(rng), t(rng));
    const cplx a = xi2_over_xi1(1.0 - std::conj(s));
    const cplx b = -std::conj(xi2_over_xi1(s));
    CHECK(std::abs(a - b) < 1e-8 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("(xi'/xi)' against a central difference") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> sig(0.7, 1.6), t(20.0, 600.0);
  for (int i = 0; i < 10; ++i) {
    const cplx s(sig(rng), t(rng));
    const double h = 1e-5;
    const cplx fd = (xi_log_derivative(s + h) - xi_log_derivative(s - h)) / (2.0 * h);
    CHECK(std::abs(xi_log_derivative_prime(s) - fd) < 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("a_K right-hand side") {
  const cplx s(1.2, 150.0);
  const double L = std::log(150.0 / (2.0 * pi));
  for (int K : {0, 3, 10}) CHECK(std::abs(aK_rhs(tables(), s, 1, K) - L / 2.0) < 1e-14);

  cplx sum = 0.0;
  for (std::uint32_t n = 2; n <= 5000; ++n) {
    sum -= tables().von_mangoldt(n) * std::exp(-s * std::log(double(n)));
  }
  CHECK(std::abs(aK_rhs(tables(), s, 5000, 0) - (L / 2.0 + sum)) < 1e-11);

  CHECK(thrown_kind([] { aK_rhs(tables(), cplx(0.5, 100.0), 100, 2); }) == ErrorKind::domain);
  CHECK(thrown_kind([] { aK_rhs(tables(), cplx(1.5, 100.0), 100, 31); }) == ErrorKind::domain);
  CHECK(thrown_kind([] { aK_rhs(tables(), cplx(1.5, 100.0), 200000, 2); }) == ErrorKind::capacity);
}

TEST_CASE("Lemma 4 residual stays bounded") {
  const AlphaBank bank(tables(), 10, 10000);
  for (double t : {120.0, 150.0, 180.0}) {
    const cplx s = EvalPoint::right_edge(100.0, t).s;
    CHECK(std::abs(xi2_over_xi1(s) - aK_rhs(bank, s, 100.0)) <= 5.0);
  }
}

TEST_CASE("evaluation point presets") {
  CHECK(EvalPoint::critical(100.0).s.real() == 0.5);
  CHECK(thrown_kind([] { EvalPoint::critical(100.0, 1e-3); }) == ErrorKind::domain);
  CHECK(thrown_kind([] { EvalPoint::critical(100.0, 1e-15); }) == ErrorKind::domain);
  const EvalPoint e = EvalPoint::right_edge(1000.0, 1200.0);
  CHECK(e.s.real() == doctest::Approx(1.0 + 1.0 / std::log(1000.0 / (2.0 * pi))));
  CHECK(e.t() == 1200.0);
}
