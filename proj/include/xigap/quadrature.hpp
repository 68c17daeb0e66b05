#pragma once

#include <cstddef>
#include <functional>

namespace xigap {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
  /// False when the panel budget ran out before error_estimate <= tol.
  bool converged = true;
};

using Integrand1D = std::function<double(double)>;
/// f(x, eta) on the triangle 0 <= eta <= x <= 1.
using Integrand2D = std::function<double(double, double)>;

/// Global adaptive Gauss-Kronrod (7/15) on [a, b]: the panel with the largest
/// error estimate is bisected until the summed estimate is below tol.
QuadResult adaptive_quad(const Integrand1D& f, double a, double b, double tol,
                         std::size_t max_panels = 4000);

/// Iterated adaptive quadrature over 0 <= eta <= x <= 1: outer in x, inner in
/// eta on [0, x]. The inner tolerance is tol / 10; the reported error adds the
/// largest inner estimate to the outer one.
QuadResult triangle_quad(const Integrand2D& f, double tol, std::size_t max_panels = 4000);

/// Iterated quadrature over the unit square, outer variable first.
QuadResult square_quad(const Integrand2D& f, double tol, std::size_t max_panels = 4000);

/// Fixed 64-point Gauss-Legendre rule on [a, b].
double gauss_legendre_64(const Integrand1D& f, double a, double b);

}  // namespace xigap
