#pragma once

#include <string>
#include <vector>

namespace xigap {

enum class ZeroKind { zeta, xi_prime };

/// A located zero with its sign-change certificate: the detector (scaled Xi
/// for zeta, g for xi') takes opposite signs at bracket_lo and bracket_hi.
struct Zero {
  double ordinate = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double value_lo = 0.0;
  double value_hi = 0.0;
};

struct ZeroList {
  ZeroKind kind = ZeroKind::zeta;
  double t_min = 0.0;
  double t_max = 0.0;
  double bracket_width = 0.0;
  std::vector<Zero> zeros;
  /// xi' only: consecutive zeta-zero intervals holding more than one sign
  /// change of g. Reported, never asserted.
  int interlacing_violations = 0;
  /// Number of local refinements triggered by suspected close pairs.
  int refinements = 0;
  std::vector<std::string> warnings;

  std::vector<double> ordinates() const;
};

struct ScanOptions {
  double grid_step = 0.05;
  double pole_radius = 1e-6;
  /// Shrink applied to each inter-zero interval before scanning g.
  double pole_shrink = 1e-5;
  int workers = 1;
};

/// Zeros of zeta (sign changes of scaled Xi) or of xi' (sign changes of g
/// strictly between consecutive zeta zeros) in [t_min, t_max].
ZeroList scan_zeros(ZeroKind kind, double t_min, double t_max, double tol = 1e-9,
                    const ScanOptions& options = {});

/// Wraps a sorted ordinate list (synthetic or external) as a ZeroList
/// without certificates.
ZeroList make_zero_list(ZeroKind kind, double t_min, double t_max, std::vector<double> ordinates);

/// Re-evaluates the detector at each stored bracket and checks the signs
/// still differ.
bool certificates_valid(const ZeroList& zeros);

struct GapStats {
  /// delta(g1) = (g1' - g1) log(g1) / 2pi, one per zero with a successor.
  std::vector<double> deltas;
  /// delta+-(g1) use L = log(T / 2pi) with T = t_min of the window.
  std::vector<double> delta_plus;
  std::vector<double> delta_minus;
  /// min / max of delta+ and delta- for zeros with both neighbours.
  std::vector<double> delta_zero;
  std::vector<double> delta_one;
  double mean_delta = 0.0;
  double mean_delta_plus = 0.0;
  double sum_delta_sq = 0.0;
  std::size_t count = 0;
  double T = 0.0;
  double L = 0.0;
};

GapStats normalized_gaps(const ZeroList& zeros);

enum class Normalizer {
  /// (1/2pi) T log T with T = t_max, the D(alpha, T) definition.
  density,
  /// the number of gaps in the window, so D -> 1 as alpha grows.
  window,
};

struct DistributionRow {
  double alpha = 0.0;
  double D = 0.0;
  double frac_delta_one_gt = 0.0;   ///< #{delta_1 > alpha} / |delta_1|
  double frac_delta_zero_lt = 0.0;  ///< #{delta_0 < alpha} / |delta_0|
};

struct DistributionTable {
  std::vector<DistributionRow> rows;
  Normalizer normalizer_kind = Normalizer::density;
  double normalizer = 0.0;
  double sum_delta_sq = 0.0;
  std::size_t count = 0;
  /// count - (1/2pi)(t_max log t_max - t_min log t_min)
  double count_residual = 0.0;
};

DistributionTable distribution(const ZeroList& zeros, const std::vector<double>& alphas,
                               Normalizer normalizer = Normalizer::density);

}  // namespace xigap
