#include "xigap/optimize.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "xigap/error.hpp"
#include "xigap/functionals.hpp"
#include "xigap/parallel.hpp"

namespace xigap {

namespace {

// Bounds printed for the hand-picked mollifiers; anything past them is
// reported as an extension.
double reference_alpha(const std::string& method, Direction d) {
  if (method == "theorem1") return d == Direction::large_gap ? 1.5 : 0.7203;
  return d == Direction::large_gap ? 1.18 : 0.796;
}

std::string label_for(const std::string& method, Direction d, double alpha) {
  const double ref = reference_alpha(method, d);
  const bool beyond = d == Direction::large_gap ? alpha > ref : alpha < ref;
  return beyond ? "extension" : "reference";
}

bool on_target_side(Direction d, double h1) { return d == Direction::large_gap ? h1 < 1.0 : h1 > 1.0; }

using InnerResult = Theorem1Point;

class Theorem1Search {
 public:
  Theorem1Search(Direction d, int r, int degree, CoeffKind kind, const Theorem1Options& o)
      : dir_(d), r_(r), degree_(degree), kind_(kind), opt_(o) {}

  InnerResult solve(double alpha, bool keep_trace) const {
    const QuadraticForms forms = h1_forms(alpha, r_, degree_, kind_, 1e-10);
    const double sign = dir_ == Direction::large_gap ? 1.0 : -1.0;
    const double box = opt_.box;
    auto objective = [&](const std::vector<double>& x) {
      std::vector<double> c(x.size() + 1, 1.0);
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::abs(x[i]) > box) return std::numeric_limits<double>::max();
        c[i + 1] = x[i];
      }
      return sign * forms.h1(c);
    };

    const int restarts = std::max(1, opt_.restarts);
    std::vector<SimplexResult> runs(restarts);
    std::vector<std::vector<TraceEntry>> histories(restarts);
    parallel_for(restarts, opt_.workers, [&](std::size_t k) {
      std::mt19937_64 rng(opt_.seed + k);
      std::uniform_real_distribution<double> u(-box, box);
      std::vector<double> x(degree_);
      for (double& v : x) v = u(rng);
      auto* hist = keep_trace ? &histories[k] : nullptr;
      SimplexResult s = nelder_mead(objective, x, 2.0, 4000, 1e-15, hist);
      // one restart from the converged point guards against a collapsed simplex
      runs[k] = nelder_mead(objective, s.x, 0.5, 4000, 1e-15, hist);
    });

    std::size_t best = 0;
    for (std::size_t k = 1; k < runs.size(); ++k) {
      if (runs[k].value < runs[best].value) best = k;
    }
    InnerResult out;
    out.coeffs.assign(1, 1.0);
    out.coeffs.insert(out.coeffs.end(), runs[best].x.begin(), runs[best].x.end());
    out.h1 = sign * runs[best].value;
    if (keep_trace) {
      double running = std::numeric_limits<double>::infinity();
      for (const auto& h : histories) {
        for (const auto& e : h) {
          if (e.value < running) {
            running = e.value;
            std::vector<double> c(1, 1.0);
            c.insert(c.end(), e.iterate.begin(), e.iterate.end());
            out.trace.push_back({std::move(c), e.value});
          }
        }
      }
    }
    return out;
  }

 private:
  Direction dir_;
  int r_;
  int degree_;
  CoeffKind kind_;
  Theorem1Options opt_;
};

// Finds the grid bracket [success, failure] nearest the boundary: the last
// success for large gaps, the first success for small gaps.
template <class Eval>
bool grid_bracket(Direction d, double lo, double hi, double step, Eval&& success, double& a_ok,
                  double& a_bad) {
  std::vector<double> grid;
  for (double a = lo; a < hi + 1e-12; a += step) grid.push_back(std::min(a, hi));
  std::vector<bool> ok(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) ok[i] = success(grid[i]);
  if (d == Direction::large_gap) {
    for (std::size_t i = grid.size() - 1; i-- > 0;) {
      if (ok[i] && !ok[i + 1]) {
        a_ok = grid[i];
        a_bad = grid[i + 1];
        return true;
      }
    }
  } else {
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (ok[i] && !ok[i - 1]) {
        a_ok = grid[i];
        a_bad = grid[i - 1];
        return true;
      }
    }
  }
  return false;
}

}  // namespace

std::string to_string(Direction d) { return d == Direction::large_gap ? "large_gap" : "small_gap"; }

Direction direction_from_string(const std::string& s) {
  if (s == "large_gap" || s == "large") return Direction::large_gap;
  if (s == "small_gap" || s == "small") return Direction::small_gap;
  fail(ErrorKind::validation, "unknown direction '" + s + "'");
}

namespace {

CoeffKind default_kind(Direction direction, const Theorem1Options& options) {
  if (options.kind_set) return options.kind;
  return direction == Direction::large_gap ? CoeffKind::divisor : CoeffKind::moebius;
}

void check_theorem1(int r, int degree, const Theorem1Options& options) {
  if (r < 1 || r > 3) fail(ErrorKind::domain, "r must be 1, 2 or 3");
  if (degree < 0 || degree > static_cast<int>(PolyF::max_degree)) {
    fail(ErrorKind::domain, "degree must be in [0, 8]");
  }
  if (options.restarts < 1) fail(ErrorKind::domain, "restarts must be >= 1");
  if (!(options.alpha_tol > 0.0)) fail(ErrorKind::domain, "alpha_tol must be positive");
  if (!(options.alpha_lo > 0.0 && options.alpha_lo < options.alpha_hi)) {
    fail(ErrorKind::domain, "need 0 < alpha_lo < alpha_hi");
  }
}

}  // namespace

Theorem1Point optimize_theorem1_at(Direction direction, double alpha, int r, int degree,
                                   const Theorem1Options& options) {
  check_theorem1(r, degree, options);
  const Theorem1Search search(direction, r, degree, default_kind(direction, options), options);
  return search.solve(alpha, true);
}

OptReport optimize_theorem1(Direction direction, int r, int degree, const Theorem1Options& options) {
  check_theorem1(r, degree, options);

  OptReport rep;
  rep.method = "theorem1";
  rep.direction = direction;
  rep.seed = options.seed;
  rep.restarts = options.restarts;
  rep.r = r;
  rep.degree = degree;
  rep.kind = default_kind(direction, options);
  rep.box = options.box;
  rep.alpha_tol = options.alpha_tol;

  const Theorem1Search search(direction, r, degree, rep.kind, options);
  auto success = [&](double a) {
    const InnerResult in = search.solve(a, false);
    const bool ok = on_target_side(direction, in.h1);
    rep.bisection.push_back({a, in.h1, ok});
    return ok;
  };

  double a_ok = 0.0, a_bad = 0.0;
  if (!grid_bracket(direction, options.alpha_lo, options.alpha_hi, 0.1, success, a_ok, a_bad)) {
    rep.label = "none";
    return rep;
  }
  while (std::abs(a_bad - a_ok) > options.alpha_tol) {
    const double mid = 0.5 * (a_ok + a_bad);
    (success(mid) ? a_ok : a_bad) = mid;
  }

  const InnerResult best = search.solve(a_ok, true);
  const FunctionalResult direct = h1_theorem1(a_ok, r, PolyF(best.coeffs), rep.kind, 1e-10);
  rep.found = true;
  rep.best_alpha = a_ok;
  rep.coeffs = best.coeffs;
  rep.h1_at_best = direct.value;
  rep.quad_error = direct.quad_error;
  rep.crossing_residual = std::abs(direct.value - 1.0);
  rep.certified = direction == Direction::large_gap
                      ? direct.value + 5.0 * direct.quad_error < 1.0
                      : direct.value - 5.0 * direct.quad_error > 1.0;
  rep.trace = best.trace;
  rep.label = label_for(rep.method, direction, a_ok);
  return rep;
}

OptReport optimize_theorem2(Direction direction) {
  OptReport rep;
  rep.method = "theorem2";
  rep.direction = direction;
  rep.alpha_tol = 1e-8;

  struct Eval {
    double c, h1, err;
  };
  auto evaluate = [&](double a) {
    const UVResult uv = UV(a, 1e-11);
    const auto [cm, cp] = c_opt(uv.U, uv.V);
    const double c = direction == Direction::large_gap ? cm : cp;
    const FunctionalResult f = h1_theorem2(a, c, uv);
    return Eval{c, f.value, f.quad_error};
  };
  auto success = [&](double a) {
    const Eval e = evaluate(a);
    const bool ok = on_target_side(direction, e.h1);
    rep.bisection.push_back({a, e.h1, ok});
    if (ok) {
      const double v = direction == Direction::large_gap ? -a : a;
      if (rep.trace.empty() || v <= rep.trace.back().value) rep.trace.push_back({{a, e.c}, v});
    }
    return ok;
  };

  double a_ok = 0.0, a_bad = 0.0;
  if (!grid_bracket(direction, 0.1, 3.0, 0.1, success, a_ok, a_bad)) {
    rep.label = "none";
    return rep;
  }
  // Restart the trace at the bracket so it only records progress toward the crossing.
  rep.trace.clear();
  success(a_ok);
  while (std::abs(a_bad - a_ok) > rep.alpha_tol) {
    const double mid = 0.5 * (a_ok + a_bad);
    (success(mid) ? a_ok : a_bad) = mid;
  }

  const Eval e = evaluate(a_ok);
  rep.found = true;
  rep.best_alpha = a_ok;
  rep.c = e.c;
  rep.h1_at_best = e.h1;
  rep.quad_error = e.err;
  rep.crossing_residual = std::abs(e.h1 - 1.0);
  rep.certified = direction == Direction::large_gap ? e.h1 + 5.0 * e.err < 1.0
                                                    : e.h1 - 5.0 * e.err > 1.0;
  rep.label = label_for(rep.method, direction, a_ok);
  return rep;
}

}  // namespace xigap
