#include "xigap/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "xigap/error.hpp"

namespace xigap {

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(fmt12(x).c_str(), nullptr);
}

namespace {

json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

}  // namespace

std::string to_string(ZeroKind kind) { return kind == ZeroKind::zeta ? "zeta" : "xi_prime"; }

ZeroKind zero_kind_from_string(const std::string& s) {
  if (s == "zeta") return ZeroKind::zeta;
  if (s == "xi_prime" || s == "xi-prime" || s == "xiprime") return ZeroKind::xi_prime;
  fail(ErrorKind::validation, "unknown zero kind '" + s + "'");
}

std::string to_string(MollifierKind kind) {
  switch (kind) {
    case MollifierKind::divisor: return "divisor";
    case MollifierKind::moebius: return "moebius";
    case MollifierKind::prime_twisted: return "prime_twisted";
  }
  return "?";
}

std::string to_string(CoeffKind kind) { return kind == CoeffKind::divisor ? "divisor" : "moebius"; }

std::string zeros_csv(const ZeroList& zeros) {
  std::ostringstream os;
  os << "index,kind,ordinate,bracket_lo,bracket_hi\n";
  const std::string k = to_string(zeros.kind);
  for (std::size_t i = 0; i < zeros.zeros.size(); ++i) {
    const Zero& z = zeros.zeros[i];
    os << i + 1 << ',' << k << ',' << fmt12(z.ordinate) << ',' << fmt12(z.bracket_lo) << ','
       << fmt12(z.bracket_hi) << '\n';
  }
  return os.str();
}

ZeroList zeros_from_csv(const std::string& text, double t_min, double t_max) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.rfind("index,kind,ordinate", 0) != 0) {
    fail(ErrorKind::validation, "zero CSV is missing its header");
  }
  ZeroList out;
  out.t_min = t_min;
  out.t_max = t_max;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) fail(ErrorKind::validation, "zero CSV row needs 5 columns: " + line);
    const ZeroKind k = zero_kind_from_string(cells[1]);
    if (first) out.kind = k;
    if (k != out.kind) fail(ErrorKind::validation, "zero CSV mixes kinds");
    first = false;
    Zero z;
    try {
      z.ordinate = std::stod(cells[2]);
      z.bracket_lo = std::stod(cells[3]);
      z.bracket_hi = std::stod(cells[4]);
    } catch (const std::exception&) {
      fail(ErrorKind::validation, "bad number in zero CSV row: " + line);
    }
    if (z.ordinate >= t_min && z.ordinate <= t_max) out.zeros.push_back(z);
  }
  for (std::size_t i = 1; i < out.zeros.size(); ++i) {
    if (!(out.zeros[i].ordinate > out.zeros[i - 1].ordinate)) {
      fail(ErrorKind::validation, "zero CSV ordinates are not increasing");
    }
  }
  return out;
}

json to_json(const ZeroList& zeros) {
  json j;
  j["kind"] = to_string(zeros.kind);
  j["t_min"] = num(zeros.t_min);
  j["t_max"] = num(zeros.t_max);
  j["count"] = zeros.zeros.size();
  j["bracket_width"] = num(zeros.bracket_width);
  j["interlacing_violations"] = zeros.interlacing_violations;
  j["refinements"] = zeros.refinements;
  j["warnings"] = zeros.warnings;
  j["ordinates"] = nums(zeros.ordinates());
  return j;
}

json to_json(const GapStats& s) {
  json j;
  j["T"] = num(s.T);
  j["L"] = num(s.L);
  j["count"] = s.count;
  j["mean_delta"] = num(s.mean_delta);
  j["mean_delta_plus"] = num(s.mean_delta_plus);
  j["sum_delta_sq"] = num(s.sum_delta_sq);
  j["deltas"] = nums(s.deltas);
  j["delta_zero"] = nums(s.delta_zero);
  j["delta_one"] = nums(s.delta_one);
  return j;
}

json to_json(const DistributionTable& t) {
  json j;
  j["normalizer_kind"] = t.normalizer_kind == Normalizer::density ? "density" : "window";
  j["normalizer"] = num(t.normalizer);
  j["count"] = t.count;
  j["count_residual"] = num(t.count_residual);
  j["sum_delta_sq"] = num(t.sum_delta_sq);
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"alpha", num(r.alpha)},
                    {"D", num(r.D)},
                    {"frac_delta_one_gt", num(r.frac_delta_one_gt)},
                    {"frac_delta_zero_lt", num(r.frac_delta_zero_lt)}});
  }
  j["rows"] = rows;
  return j;
}

std::string distribution_csv(const DistributionTable& t) {
  std::ostringstream os;
  os << "alpha,D,frac_delta_one_gt,frac_delta_zero_lt\n";
  for (const auto& r : t.rows) {
    os << fmt12(r.alpha) << ',' << fmt12(r.D) << ',' << fmt12(r.frac_delta_one_gt) << ','
       << fmt12(r.frac_delta_zero_lt) << '\n';
  }
  return os.str();
}

json to_json(const MollifierSpec& spec) {
  json j;
  j["kind"] = to_string(spec.kind);
  j["theta"] = num(spec.theta);
  if (spec.kind == MollifierKind::prime_twisted) {
    j["c"] = num(spec.c);
    j["twist_alpha"] = num(spec.twist_alpha);
  } else {
    j["r"] = spec.r;
    j["coeffs"] = nums(spec.f.coeffs());
  }
  return j;
}

json to_json(const FunctionalResult& r) {
  json j;
  j["alpha"] = num(r.alpha);
  j["value"] = num(r.value);
  json terms = json::object();
  for (const auto& [k, v] : r.terms) terms[k] = num(v);
  j["terms"] = terms;
  j["quad_error"] = num(r.quad_error);
  j["label"] = r.label;
  return j;
}

json to_json(const OptReport& r) {
  json j;
  j["method"] = r.method;
  j["direction"] = to_string(r.direction);
  j["found"] = r.found;
  j["certified"] = r.certified;
  j["label"] = r.label;
  j["best_alpha"] = num(r.best_alpha);
  j["h1_at_best"] = num(r.h1_at_best);
  j["quad_error"] = num(r.quad_error);
  j["crossing_residual"] = num(r.crossing_residual);
  if (r.method == "theorem1") {
    j["coeffs"] = nums(r.coeffs);
    j["r"] = r.r;
    j["degree"] = r.degree;
    j["kind"] = to_string(r.kind);
    j["seed"] = r.seed;
    j["restarts"] = r.restarts;
    j["box"] = num(r.box);
  } else {
    j["c"] = num(r.c);
  }
  j["alpha_tol"] = num(r.alpha_tol);
  json trace = json::array();
  for (const auto& e : r.trace) trace.push_back({{"iterate", nums(e.iterate)}, {"value", num(e.value)}});
  j["trace"] = trace;
  json bis = json::array();
  for (const auto& b : r.bisection) {
    bis.push_back({{"alpha", num(b.alpha)}, {"h1", num(b.h1)}, {"success", b.success}});
  }
  j["bisection"] = bis;
  return j;
}

json to_json(const EmpiricalResult& r) {
  json j;
  j["value"] = num(r.value);
  j["numerator"] = num(r.numerator);
  j["denominator"] = num(r.denominator);
  j["zero_count"] = r.zero_count;
  j["L"] = num(r.L);
  j["y"] = num(r.y);
  return j;
}

}  // namespace xigap
