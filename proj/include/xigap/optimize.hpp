#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xigap/arith.hpp"

namespace xigap {

enum class Direction { large_gap, small_gap };

struct TraceEntry {
  std::vector<double> iterate;
  /// The minimised objective: h1 for large_gap, -h1 for small_gap (theorem 1);
  /// -alpha / +alpha of the certified side during bisection (theorem 2).
  double value = 0.0;
};

struct BisectionStep {
  double alpha = 0.0;
  double h1 = 0.0;
  bool success = false;
};

struct OptReport {
  std::string method;  ///< "theorem1" or "theorem2"
  Direction direction = Direction::large_gap;
  bool found = false;
  double best_alpha = 0.0;
  std::vector<double> coeffs;  ///< theorem 1: f coefficients, c0 = 1
  double c = 0.0;              ///< theorem 2: c_- or c_+
  double h1_at_best = 0.0;
  double quad_error = 0.0;
  bool certified = false;
  /// |h1 - 1| at the reported alpha (theorem 2 bisection residual).
  double crossing_residual = 0.0;
  std::string label;  ///< "reference" or "extension"
  std::vector<TraceEntry> trace;
  std::vector<BisectionStep> bisection;
  std::uint64_t seed = 0;
  int restarts = 0;
  int r = 0;
  int degree = 0;
  CoeffKind kind = CoeffKind::divisor;
  double box = 20.0;
  double alpha_tol = 1e-4;
};

struct Theorem1Options {
  int restarts = 20;
  std::uint64_t seed = 1;
  int workers = 1;
  double box = 20.0;
  /// 1e-4 can leave the reported alpha just past the small-gap target.
  double alpha_tol = 1e-6;
  double alpha_lo = 0.1;
  double alpha_hi = 3.0;
  /// Default pairs divisor with large gaps and moebius with small gaps.
  bool kind_set = false;
  CoeffKind kind = CoeffKind::divisor;
};

/// Bisects alpha on [0.1, 3] for the h1 = 1 crossing; at each alpha, h1 is
/// minimised (large_gap) or maximised (small_gap) over f with c0 = 1 by
/// Nelder-Mead with seeded restarts. The winner is re-evaluated directly and
/// certified when it sits on the right side of 1 by at least 5 quad_error.
OptReport optimize_theorem1(Direction direction, int r, int degree,
                            const Theorem1Options& options = {});

/// Inner problem alone: the extremal h1 over f (c0 = 1) at a fixed alpha,
/// with the running-best trace.
struct Theorem1Point {
  std::vector<double> coeffs;
  double h1 = 0.0;
  std::vector<TraceEntry> trace;
};

Theorem1Point optimize_theorem1_at(Direction direction, double alpha, int r, int degree,
                                   const Theorem1Options& options = {});

/// c fixed to c_- (large_gap) or c_+ (small_gap) at each alpha; alpha bisected
/// for the h1 = 1 crossing.
OptReport optimize_theorem2(Direction direction);

/// Minimises fn from start by Nelder-Mead; returns the best vertex and appends
/// the running best per iteration to history (if given).
struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

template <class Fn>
SimplexResult nelder_mead(Fn&& fn, std::vector<double> start, double step, int max_iter,
                          double ftol, std::vector<TraceEntry>* history = nullptr);

std::string to_string(Direction d);
Direction direction_from_string(const std::string& s);

}  // namespace xigap

#include "xigap/nelder_mead.ipp"
