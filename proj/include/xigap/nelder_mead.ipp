#pragma once

#include <algorithm>
#include <numeric>

namespace xigap {

template <class Fn>
SimplexResult nelder_mead(Fn&& fn, std::vector<double> start, double step, int max_iter,
                          double ftol, std::vector<TraceEntry>* history) {
  const std::size_t n = start.size();
  SimplexResult out;
  if (n == 0) {
    out.value = fn(start);
    out.x = start;
    if (history) history->push_back({out.x, out.value});
    return out;
  }

  std::vector<std::vector<double>> pts(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = fn(pts[i]);

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<std::vector<double>> p2(n + 1);
    std::vector<double> v2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      p2[i] = pts[order[i]];
      v2[i] = vals[order[i]];
    }
    pts.swap(p2);
    vals.swap(v2);
  };
  auto along = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = c[i] + t * (w[i] - c[i]);
    return x;
  };

  sort_simplex();
  int it = 0;
  for (; it < max_iter; ++it) {
    if (history) history->push_back({pts[0], vals[0]});
    if (std::abs(vals[n] - vals[0]) <= ftol * (std::abs(vals[0]) + ftol)) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / n;
    }
    const auto xr = along(centroid, pts[n], -1.0);
    const double fr = fn(xr);
    if (fr < vals[0]) {
      const auto xe = along(centroid, pts[n], -2.0);
      const double fe = fn(xe);
      if (fe < fr) {
        pts[n] = xe;
        vals[n] = fe;
      } else {
        pts[n] = xr;
        vals[n] = fr;
      }
    } else if (fr < vals[n - 1]) {
      pts[n] = xr;
      vals[n] = fr;
    } else {
      const bool outside = fr < vals[n];
      const auto xc = outside ? along(centroid, pts[n], -0.5) : along(centroid, pts[n], 0.5);
      const double fc = fn(xc);
      if (fc < (outside ? fr : vals[n])) {
        pts[n] = xc;
        vals[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          pts[i] = along(pts[0], pts[i], 0.5);
          vals[i] = fn(pts[i]);
        }
      }
    }
    sort_simplex();
  }
  out.x = pts[0];
  out.value = vals[0];
  out.iterations = it;
  return out;
}

}  // namespace xigap
