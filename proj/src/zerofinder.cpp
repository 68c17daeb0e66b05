#include "xigap/zerofinder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "xigap/analytic.hpp"
#include "xigap/error.hpp"
#include "xigap/parallel.hpp"
#include "xigap/summation.hpp"

namespace xigap {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr int kMaxRefineDepth = 3;

using Detector = std::function<double(double)>;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct Bracket {
  double lo, hi, f_lo, f_hi;
};

Zero bisect(const Detector& f, Bracket b, double tol) {
  while (b.hi - b.lo > tol) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (!(mid > b.lo && mid < b.hi)) break;
    const double fm = f(mid);
    if (fm == 0.0) {
      // Exact hit: keep a certificate by stepping to the neighbouring doubles.
      b.lo = std::nextafter(mid, b.lo);
      b.hi = std::nextafter(mid, b.hi);
      b.f_lo = f(b.lo);
      b.f_hi = f(b.hi);
      break;
    }
    if (sign_of(fm) == sign_of(b.f_lo)) {
      b.lo = mid;
      b.f_lo = fm;
    } else {
      b.hi = mid;
      b.f_hi = fm;
    }
  }
  return {0.5 * (b.lo + b.hi), b.lo, b.hi, b.f_lo, b.f_hi};
}

std::vector<double> grid(double a, double b, double max_step) {
  const auto cells = std::max<long>(1, static_cast<long>(std::ceil((b - a) / max_step - 1e-12)));
  std::vector<double> t(cells + 1);
  for (long i = 0; i <= cells; ++i) t[i] = a + (b - a) * static_cast<double>(i) / cells;
  t.back() = b;
  return t;
}

// Sign-change brackets of f on the grid over [a, b]. A same-signed local
// minimum of |f| may hide a close pair; those cells are rescanned on a finer
// grid.
void collect_brackets(const Detector& f, double a, double b, double step, int depth,
                      int workers, std::vector<Bracket>& out, int& refinements) {
  const auto t = grid(a, b, step);
  std::vector<double> v(t.size());
  parallel_for(t.size(), workers, [&](std::size_t i) { v[i] = f(t[i]); });
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (v[i] == 0.0) v[i] = f(std::nextafter(t[i], b));
    if (sign_of(v[i]) != sign_of(v[i + 1]) && v[i + 1] != 0.0) {
      out.push_back({t[i], t[i + 1], v[i], v[i + 1]});
    }
  }
  if (depth >= kMaxRefineDepth) return;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const bool same = sign_of(v[i - 1]) == sign_of(v[i]) && sign_of(v[i]) == sign_of(v[i + 1]);
    if (same && std::abs(v[i]) < std::abs(v[i - 1]) && std::abs(v[i]) < std::abs(v[i + 1])) {
      ++refinements;
      collect_brackets(f, t[i - 1], t[i + 1], (t[i + 1] - t[i - 1]) / 16.0, depth + 1, 1, out,
                       refinements);
    }
  }
}

double xi_detector(double t) { return xi_scaled(t).scaled_value; }

ZeroList scan_zeta_raw(double t_min, double t_max, double tol, const ScanOptions& opt) {
  ZeroList list;
  list.kind = ZeroKind::zeta;
  list.t_min = t_min;
  list.t_max = t_max;
  list.bracket_width = tol;
  std::vector<Bracket> brackets;
  collect_brackets(xi_detector, t_min, t_max, opt.grid_step, 0, opt.workers, brackets,
                   list.refinements);
  std::sort(brackets.begin(), brackets.end(),
            [](const Bracket& x, const Bracket& y) { return x.lo < y.lo; });
  list.zeros.resize(brackets.size());
  parallel_for(brackets.size(), opt.workers,
               [&](std::size_t i) { list.zeros[i] = bisect(xi_detector, brackets[i], tol); });
  for (std::size_t i = 0; i + 1 < list.zeros.size(); ++i) {
    const double gap = list.zeros[i + 1].ordinate - list.zeros[i].ordinate;
    if (gap < 2.0 * opt.grid_step) {
      std::ostringstream msg;
      msg << "grid-resolution: zeros at " << list.zeros[i].ordinate << " and "
          << list.zeros[i + 1].ordinate << " closer than two grid steps";
      list.warnings.push_back(msg.str());
    }
  }
  return list;
}

void check_window(double t_min, double t_max, double tol) {
  if (!(t_min >= 10.0 && t_min < t_max && t_max <= kMaxHeight)) {
    fail(ErrorKind::domain, "scan window must satisfy 10 <= t_min < t_max <= 5000");
  }
  if (!(tol >= 1e-9)) fail(ErrorKind::domain, "tolerance must be >= 1e-9");
}

ZeroList scan_xi_prime(double t_min, double t_max, double tol, const ScanOptions& opt) {
  // Zeta zeros on a padded window, widened until both ends have a neighbour
  // outside [t_min, t_max] (or the search range is exhausted).
  double lo = std::max(1.0, t_min - 2.0), hi = std::min(kMaxHeight, t_max + 2.0);
  auto zeta = scan_zeta_raw(lo, hi, tol, opt);
  auto below = [&] { return !zeta.zeros.empty() && zeta.zeros.front().ordinate < t_min; };
  auto above = [&] { return !zeta.zeros.empty() && zeta.zeros.back().ordinate > t_max; };
  while (!below() && lo > 1.0) {
    const double new_lo = std::max(1.0, lo - 4.0);
    auto ext = scan_zeta_raw(new_lo, lo, tol, opt);
    zeta.zeros.insert(zeta.zeros.begin(), ext.zeros.begin(), ext.zeros.end());
    lo = new_lo;
  }
  while (!above() && hi < kMaxHeight) {
    const double new_hi = std::min(kMaxHeight, hi + 4.0);
    auto ext = scan_zeta_raw(hi, new_hi, tol, opt);
    zeta.zeros.insert(zeta.zeros.end(), ext.zeros.begin(), ext.zeros.end());
    hi = new_hi;
  }
  std::sort(zeta.zeros.begin(), zeta.zeros.end(),
            [](const Zero& x, const Zero& y) { return x.ordinate < y.ordinate; });
  zeta.zeros.erase(std::unique(zeta.zeros.begin(), zeta.zeros.end(),
                               [&](const Zero& x, const Zero& y) {
                                 return std::abs(x.ordinate - y.ordinate) <= 2.0 * tol;
                               }),
                   zeta.zeros.end());

  struct Interval {
    double a, b;
    bool bounded;  // both ends are zeta zeros
  };
  std::vector<Interval> intervals;
  const auto& zz = zeta.zeros;
  if (zz.empty() || zz.front().ordinate > t_min) {
    const double b = zz.empty() ? t_max : std::min(t_max, zz.front().ordinate - opt.pole_shrink);
    intervals.push_back({t_min, b, false});
  }
  for (std::size_t i = 0; i + 1 < zz.size(); ++i) {
    const double a = zz[i].ordinate, b = zz[i + 1].ordinate;
    if (b < t_min || a > t_max) continue;
    intervals.push_back({a + opt.pole_shrink, b - opt.pole_shrink, true});
  }
  if (!zz.empty() && zz.back().ordinate < t_max && zz.size() >= 1 && hi >= kMaxHeight) {
    intervals.push_back({zz.back().ordinate + opt.pole_shrink, t_max, false});
  }

  const Detector g = [&](double t) { return g_detector(t, opt.pole_radius); };
  std::vector<std::vector<Zero>> found(intervals.size());
  std::vector<int> changes(intervals.size(), 0);
  parallel_for(intervals.size(), opt.workers, [&](std::size_t k) {
    const auto& iv = intervals[k];
    if (!(iv.b > iv.a)) return;
    std::vector<Bracket> brackets;
    int refinements = 0;
    const double step = std::min(opt.grid_step, (iv.b - iv.a) / 16.0);
    collect_brackets(g, iv.a, iv.b, step, kMaxRefineDepth, 1, brackets, refinements);
    changes[k] = static_cast<int>(brackets.size());
    for (const auto& br : brackets) found[k].push_back(bisect(g, br, tol));
  });

  ZeroList list;
  list.kind = ZeroKind::xi_prime;
  list.t_min = t_min;
  list.t_max = t_max;
  list.bracket_width = tol;
  list.refinements = zeta.refinements;
  list.warnings = zeta.warnings;
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    if (intervals[k].bounded && changes[k] != 1) {
      ++list.interlacing_violations;
      std::ostringstream msg;
      msg << "interlacing: " << changes[k] << " sign changes of g between zeta zeros near "
          << intervals[k].a << " and " << intervals[k].b;
      list.warnings.push_back(msg.str());
    }
    for (const auto& z : found[k]) {
      if (z.ordinate >= t_min && z.ordinate <= t_max) list.zeros.push_back(z);
    }
  }
  std::sort(list.zeros.begin(), list.zeros.end(),
            [](const Zero& x, const Zero& y) { return x.ordinate < y.ordinate; });
  return list;
}

}  // namespace

std::vector<double> ZeroList::ordinates() const {
  std::vector<double> out;
  out.reserve(zeros.size());
  for (const auto& z : zeros) out.push_back(z.ordinate);
  return out;
}

ZeroList scan_zeros(ZeroKind kind, double t_min, double t_max, double tol,
                    const ScanOptions& options) {
  check_window(t_min, t_max, tol);
  if (!(options.grid_step > 0.0 && options.grid_step <= 0.05)) {
    fail(ErrorKind::domain, "grid step must lie in (0, 0.05]");
  }
  if (kind == ZeroKind::zeta) return scan_zeta_raw(t_min, t_max, tol, options);
  return scan_xi_prime(t_min, t_max, tol, options);
}

ZeroList make_zero_list(ZeroKind kind, double t_min, double t_max, std::vector<double> ordinates) {
  std::sort(ordinates.begin(), ordinates.end());
  ZeroList list;
  list.kind = kind;
  list.t_min = t_min;
  list.t_max = t_max;
  for (double t : ordinates) list.zeros.push_back({t, t, t, 0.0, 0.0});
  return list;
}

bool certificates_valid(const ZeroList& zeros) {
  for (const auto& z : zeros.zeros) {
    double lo, hi;
    if (zeros.kind == ZeroKind::zeta) {
      lo = xi_detector(z.bracket_lo);
      hi = xi_detector(z.bracket_hi);
    } else {
      lo = g_detector(z.bracket_lo);
      hi = g_detector(z.bracket_hi);
    }
    if (sign_of(lo) == 0 || sign_of(hi) == 0 || sign_of(lo) == sign_of(hi)) return false;
  }
  return true;
}

GapStats normalized_gaps(const ZeroList& zeros) {
  const auto t = zeros.ordinates();
  if (t.size() < 3) fail(ErrorKind::too_few_zeros, "need at least 3 ordinates");
  if (!(zeros.t_min > two_pi)) fail(ErrorKind::domain, "window start must exceed 2 pi");
  GapStats st;
  st.T = zeros.t_min;
  st.L = std::log(st.T / two_pi);
  const std::size_t n = t.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double gap = t[i + 1] - t[i];
    st.deltas.push_back(gap * std::log(t[i]) / two_pi);
    st.delta_plus.push_back(gap * st.L / two_pi);
  }
  for (std::size_t i = 1; i < n; ++i) st.delta_minus.push_back((t[i] - t[i - 1]) * st.L / two_pi);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double plus = st.delta_plus[i];
    const double minus = st.delta_minus[i - 1];
    st.delta_zero.push_back(std::min(plus, minus));
    st.delta_one.push_back(std::max(plus, minus));
  }
  st.count = st.deltas.size();
  CompensatedSum sum, sum_sq, sum_plus;
  for (double d : st.deltas) {
    sum += d;
    sum_sq += d * d;
  }
  for (double d : st.delta_plus) sum_plus += d;
  st.mean_delta = sum.value() / static_cast<double>(st.count);
  st.mean_delta_plus = sum_plus.value() / static_cast<double>(st.delta_plus.size());
  st.sum_delta_sq = sum_sq.value();
  return st;
}

DistributionTable distribution(const ZeroList& zeros, const std::vector<double>& alphas,
                               Normalizer normalizer) {
  if (zeros.zeros.empty()) fail(ErrorKind::too_few_zeros, "empty zero list");
  const auto st = normalized_gaps(zeros);
  DistributionTable table;
  table.normalizer_kind = normalizer;
  const double T = zeros.t_max;
  table.normalizer = (normalizer == Normalizer::density) ? T * std::log(T) / two_pi
                                                       : static_cast<double>(st.count);
  table.sum_delta_sq = st.sum_delta_sq;
  table.count = st.count;
  table.count_residual =
      static_cast<double>(zeros.zeros.size()) -
      (zeros.t_max * std::log(zeros.t_max) - zeros.t_min * std::log(zeros.t_min)) / two_pi;
  for (double alpha : alphas) {
    DistributionRow row;
    row.alpha = alpha;
    const auto le = std::count_if(st.deltas.begin(), st.deltas.end(),
                                  [&](double d) { return d <= alpha; });
    row.D = static_cast<double>(le) / table.normalizer;
    const auto gt = std::count_if(st.delta_one.begin(), st.delta_one.end(),
                                  [&](double d) { return d > alpha; });
    const auto lt = std::count_if(st.delta_zero.begin(), st.delta_zero.end(),
                                  [&](double d) { return d < alpha; });
    row.frac_delta_one_gt = static_cast<double>(gt) / static_cast<double>(st.delta_one.size());
    row.frac_delta_zero_lt = static_cast<double>(lt) / static_cast<double>(st.delta_zero.size());
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace xigap
