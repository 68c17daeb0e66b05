#include <doctest.h>

#include <cmath>
#include <numbers>

#include "xigap/quadrature.hpp"

using namespace xigap;

TEST_CASE("polynomials") {
  const QuadResult q = adaptive_quad([](double x) { return x; }, 0.0, 1.0, 1e-14);
  CHECK(std::abs(q.value - 0.5) < 1e-14);
  CHECK(q.converged);
  CHECK(triangle_quad([](double, double) { return 1.0; }, 1e-12).value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(square_quad([](double x, double y) { return x * y; }, 1e-12).value ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(gauss_legendre_64([](double x) { return std::pow(x, 10); }, -1.0, 2.0) ==
        doctest::Approx((std::pow(2.0, 11) + 1.0) / 11.0).epsilon(1e-14));
}

TEST_CASE("triangle orientation") {
  // int_0^1 int_0^x eta d eta dx = 1/6
  CHECK(triangle_quad([](double, double eta) { return eta; }, 1e-12).value ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("U-type integrand against a refined trapezoid") {
  auto f = [](double u) {
    if (u == 0.0) return 0.0;
    const double s = std::sin(std::numbers::pi * u / 2.0);
    return s * s * (1.0 - u) * (1.0 - u) / u;
  };
  const int n = 1'000'000;
  const double h = 1.0 / n;
  double trap = 0.5 * (f(0.0) + f(1.0));
  for (int i = 1; i < n; ++i) trap += f(i * h);
  trap *= h;
  const QuadResult q = adaptive_quad(f, 0.0, 1.0, 1e-12);
  CHECK(std::abs(q.value - trap) < 1e-9);
  CHECK(q.error_estimate <= 1e-12);
}

TEST_CASE("exhausted panel budget is reported") {
  const QuadResult q =
      adaptive_quad([](double x) { return std::sin(1e4 * x) * std::exp(x); }, 0.0, 10.0, 1e-14, 8);
  CHECK_FALSE(q.converged);
  CHECK(q.panels <= 8);
}
