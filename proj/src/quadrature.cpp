#include "xigap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "xigap/summation.hpp"

namespace xigap {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel eval_panel(const Integrand1D& f, double a, double b) {
  double err = 0.0;
  // max_depth = 0: a single Kronrod evaluation with its Gauss error estimate.
  const double v = Rule::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, v, err};
}

}  // namespace

QuadResult adaptive_quad(const Integrand1D& f, double a, double b, double tol,
                         std::size_t max_panels) {
  QuadResult out;
  if (a == b) return out;
  std::priority_queue<Panel> heap;
  heap.push(eval_panel(f, a, b));
  double total_err = heap.top().error;
  while (total_err > tol && heap.size() < max_panels) {
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted
    heap.pop();
    const Panel left = eval_panel(f, worst.a, mid);
    const Panel right = eval_panel(f, mid, worst.b);
    heap.push(left);
    heap.push(right);
    total_err += left.error + right.error - worst.error;
  }
  // Re-sum from scratch in a fixed (position) order so the result does not
  // depend on heap internals.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  CompensatedSum value, error;
  for (const auto& p : panels) {
    value += p.value;
    error += p.error;
  }
  out.value = value.value();
  out.error_estimate = error.value();
  out.panels = panels.size();
  out.converged = out.error_estimate <= tol;
  return out;
}

QuadResult triangle_quad(const Integrand2D& f, double tol, std::size_t max_panels) {
  double inner_err = 0.0;
  bool inner_ok = true;
  const auto outer = adaptive_quad(
      [&](double x) {
        if (x <= 0.0) return 0.0;
        const auto in = adaptive_quad([&](double eta) { return f(x, eta); }, 0.0, x, tol / 10.0,
                                      max_panels);
        inner_err = std::max(inner_err, in.error_estimate);
        inner_ok = inner_ok && in.converged;
        return in.value;
      },
      0.0, 1.0, tol / 2.0, max_panels);
  QuadResult out = outer;
  out.error_estimate = outer.error_estimate + inner_err;
  out.converged = outer.converged && inner_ok && out.error_estimate <= tol;
  return out;
}

QuadResult square_quad(const Integrand2D& f, double tol, std::size_t max_panels) {
  double inner_err = 0.0;
  bool inner_ok = true;
  const auto outer = adaptive_quad(
      [&](double u) {
        const auto in = adaptive_quad([&](double v) { return f(u, v); }, 0.0, 1.0, tol / 10.0,
                                      max_panels);
        inner_err = std::max(inner_err, in.error_estimate);
        inner_ok = inner_ok && in.converged;
        return in.value;
      },
      0.0, 1.0, tol / 2.0, max_panels);
  QuadResult out = outer;
  out.error_estimate = outer.error_estimate + inner_err;
  out.converged = outer.converged && inner_ok && out.error_estimate <= tol;
  return out;
}

double gauss_legendre_64(const Integrand1D& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 64>::integrate(f, a, b);
}

}  // namespace xigap
