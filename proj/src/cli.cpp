#include "xigap/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "xigap/analytic.hpp"
#include "xigap/error.hpp"
#include "xigap/functionals.hpp"
#include "xigap/optimize.hpp"
#include "xigap/serialize.hpp"
#include "xigap/zerofinder.hpp"

namespace xigap {

namespace {

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    try {
      std::size_t used = 0;
      v.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      fail(ErrorKind::validation, std::string("bad number '") + cell + "' in " + what);
    }
  }
  if (v.empty()) fail(ErrorKind::validation, std::string(what) + " is empty");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::validation, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorKind::validation, "config line " + std::to_string(lineno) + " has no '='");
    }
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::accuracy:
    case ErrorKind::precision:
    case ErrorKind::search_failure:
    case ErrorKind::pole_proximity:
    case ErrorKind::conditioning:
      return exit_accuracy;
    default:
      return exit_validation;
  }
}

int resolve_workers(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("XIGAP_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<int>(v);
    fail(ErrorKind::validation, "XIGAP_WORKERS must be a positive integer");
  }
  return 1;
}

CoeffKind coeff_kind(const std::string& s) {
  if (s == "divisor") return CoeffKind::divisor;
  if (s == "moebius") return CoeffKind::moebius;
  fail(ErrorKind::validation, "kind must be divisor or moebius, got '" + s + "'");
}

struct Common {
  std::string out;
  std::string format = "auto";
  int workers = 0;
};

/// What a subcommand hands back: the artifact text and a one-line summary.
struct Artifact {
  std::string text;
  std::string summary;
  int code = exit_ok;
};

using Runner = std::function<Artifact(const json& config, int workers, const std::string& format)>;

struct Sub {
  CLI::App* app = nullptr;
  Runner run;
  std::string default_format = "json";
  std::vector<std::string> formats{"json"};
};

std::string dump(json j) { return j.dump(2) + "\n"; }

json config_echo(const CLI::App& app) {
  json j;
  j["command"] = app.get_name();
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "config" || name == "out" || name == "workers") {
      continue;
    }
    std::string value;
    if (opt->count() > 0) {
      const auto res = opt->reduced_results();
      value = res.empty() ? "true" : res.back();
    } else {
      value = opt->get_default_str();
    }
    j[name] = value;
  }
  return j;
}

double d(const json& c, const char* k) { return std::stod(c.at(k).get<std::string>()); }
int i(const json& c, const char* k) { return std::stoi(c.at(k).get<std::string>()); }
std::string s(const json& c, const char* k) { return c.at(k).get<std::string>(); }

std::unique_ptr<ArithTables> make_tables(double needed) {
  const double limit = std::max(needed, 1000.0);
  if (limit > 1e8) fail(ErrorKind::capacity, "requested sieve size exceeds 1e8");
  return std::make_unique<ArithTables>(static_cast<std::uint32_t>(std::ceil(limit)));
}

MollifierSpec spec_from(const json& c, double alpha_default) {
  const std::string kind = s(c, "kind");
  const double theta = d(c, "theta");
  if (kind == "prime") {
    const double tw = c.contains("twist-alpha") && s(c, "twist-alpha") != "alpha"
                          ? d(c, "twist-alpha")
                          : alpha_default;
    return MollifierSpec::prime_twisted(d(c, "c"), tw, theta);
  }
  const PolyF f(parse_list(s(c, "coeffs"), "coeffs"));
  if (kind == "divisor") return MollifierSpec::divisor(i(c, "r"), f, theta);
  if (kind == "moebius") return MollifierSpec::moebius(i(c, "r"), f, theta);
  fail(ErrorKind::validation, "kind must be divisor, moebius or prime, got '" + kind + "'");
}

ZeroList xi_prime_zeros(const json& c, double t_min, double t_max, int workers) {
  const std::string file = s(c, "zeros");
  if (!file.empty()) {
    ZeroList z = zeros_from_csv(read_file(file), t_min, t_max);
    if (z.kind != ZeroKind::xi_prime) fail(ErrorKind::window_mismatch, "zero file is not xi'");
    return z;
  }
  ScanOptions opts;
  opts.workers = workers;
  return scan_zeros(ZeroKind::xi_prime, t_min, t_max, d(c, "tol"), opts);
}

// --- subcommands -----------------------------------------------------------

Artifact run_functional(const json& c, int, const std::string&) {
  const std::string kind = s(c, "kind");
  const double alpha = d(c, "alpha");
  const double tol = d(c, "tol");
  json j;
  j["command"] = "functional";
  FunctionalResult r;
  if (kind == "prime") {
    const UVResult uv = UV(alpha, std::min(tol, 1e-10));
    const std::string cs = s(c, "c");
    double cval = 0.0;
    if (cs == "minus" || cs == "plus") {
      const auto [cm, cp] = c_opt(uv.U, uv.V);
      cval = cs == "minus" ? cm : cp;
    } else {
      cval = parse_list(cs, "c").at(0);
    }
    r = h1_theorem2(alpha, cval, uv);
    j["spec"] = to_json(MollifierSpec::prime_twisted(cval, alpha));
  } else {
    const CoeffKind ck = coeff_kind(kind);
    const PolyF f(parse_list(s(c, "coeffs"), "coeffs"));
    r = h1_theorem1(alpha, i(c, "r"), f, ck, tol);
    j["spec"] = to_json(ck == CoeffKind::divisor ? MollifierSpec::divisor(i(c, "r"), f)
                                                 : MollifierSpec::moebius(i(c, "r"), f));
  }
  j["result"] = to_json(r);
  j["config"] = c;
  return {dump(j), "h1(" + fmt12(alpha) + ") = " + fmt12(r.value) + " [" + r.label + "]"};
}

Artifact run_uv(const json& c, int, const std::string&) {
  const double alpha = d(c, "alpha");
  const UVResult uv = UV(alpha, d(c, "tol"));
  json j;
  j["command"] = "uv";
  j["alpha"] = round12(alpha);
  j["U"] = round12(uv.U);
  j["V"] = round12(uv.V);
  j["U_error"] = round12(uv.U_error);
  j["V_error"] = round12(uv.V_error);
  if (uv.U > 0.0) {
    const auto [cm, cp] = c_opt(uv.U, uv.V);
    j["c_minus"] = round12(cm);
    j["c_plus"] = round12(cp);
  } else {
    j["c_minus"] = nullptr;
    j["c_plus"] = nullptr;
  }
  j["config"] = c;
  return {dump(j), "U = " + fmt12(uv.U) + ", V = " + fmt12(uv.V)};
}

Artifact run_zeros(const json& c, int workers, const std::string& format) {
  ScanOptions opts;
  opts.workers = workers;
  opts.grid_step = d(c, "grid");
  const ZeroKind kind = zero_kind_from_string(s(c, "kind"));
  const ZeroList z = scan_zeros(kind, d(c, "t-min"), d(c, "t-max"), d(c, "tol"), opts);
  std::string text;
  if (format == "csv") {
    text = zeros_csv(z);
  } else {
    json j;
    j["command"] = "zeros";
    j["zeros"] = to_json(z);
    j["config"] = c;
    text = dump(j);
  }
  std::string summary = std::to_string(z.zeros.size()) + " " + to_string(kind) + " zeros in [" +
                        fmt12(z.t_min) + ", " + fmt12(z.t_max) + "]";
  if (kind == ZeroKind::xi_prime) {
    summary += ", " + std::to_string(z.interlacing_violations) + " interlacing violations";
  }
  return {text, summary};
}

Artifact run_gaps(const json& c, int workers, const std::string& format) {
  const ZeroList z = xi_prime_zeros(c, d(c, "t-min"), d(c, "t-max"), workers);
  const GapStats g = normalized_gaps(z);
  const std::string nk = s(c, "normalizer");
  if (nk != "density" && nk != "window") fail(ErrorKind::validation, "normalizer must be density or window");
  const DistributionTable t = distribution(z, parse_list(s(c, "alphas"), "alphas"),
                                           nk == "density" ? Normalizer::density : Normalizer::window);
  std::string text;
  if (format == "csv") {
    text = distribution_csv(t);
  } else {
    json j;
    j["command"] = "gaps";
    j["zero_count"] = z.zeros.size();
    j["interlacing_violations"] = z.interlacing_violations;
    j["gaps"] = to_json(g);
    j["distribution"] = to_json(t);
    j["config"] = c;
    text = dump(j);
  }
  return {text, std::to_string(g.count) + " gaps, mean delta " + fmt12(g.mean_delta) +
                    ", mean delta+ " + fmt12(g.mean_delta_plus)};
}

Artifact run_empirical(const json& c, int workers, const std::string&) {
  const double T = d(c, "T");
  const double alpha = d(c, "alpha");
  const MollifierSpec spec = spec_from(c, alpha);
  if (spec.y(T) > 1e5) fail(ErrorKind::capacity, "y exceeds 1e5 for direct summation");
  const auto tables = make_tables(spec.y(T) + 1);
  const ZeroList z = xi_prime_zeros(c, T, 2.0 * T, workers);
  EmpiricalOptions opts;
  opts.workers = workers;
  opts.denominator_step = d(c, "step");
  const EmpiricalResult r = empirical_h(z, *tables, spec, alpha, i(c, "k"), T, opts);
  json j;
  j["command"] = "empirical";
  j["alpha"] = round12(alpha);
  j["k"] = i(c, "k");
  j["T"] = round12(T);
  j["result"] = to_json(r);
  j["spec"] = to_json(spec);
  j["config"] = c;
  return {dump(j), "empirical h" + std::to_string(i(c, "k")) + "(" + fmt12(alpha) + ") = " +
                       fmt12(r.value) + " over " + std::to_string(r.zero_count) + " zeros"};
}

Artifact run_optimize(const json& c, int workers, const std::string&) {
  const Direction dir = direction_from_string(s(c, "direction"));
  const int theorem = i(c, "theorem");
  OptReport rep;
  if (theorem == 1) {
    Theorem1Options o;
    o.restarts = i(c, "restarts");
    o.seed = std::stoull(s(c, "seed"));
    o.workers = workers;
    o.alpha_tol = d(c, "alpha-tol");
    o.alpha_lo = d(c, "alpha-lo");
    o.alpha_hi = d(c, "alpha-hi");
    const std::string kind = s(c, "coeff-kind");
    if (kind != "auto") {
      o.kind_set = true;
      o.kind = coeff_kind(kind);
    }
    rep = optimize_theorem1(dir, i(c, "r"), i(c, "degree"), o);
  } else if (theorem == 2) {
    rep = optimize_theorem2(dir);
  } else {
    fail(ErrorKind::validation, "theorem must be 1 or 2");
  }
  json j;
  j["command"] = "optimize";
  j["report"] = to_json(rep);
  j["config"] = c;
  Artifact a{dump(j), ""};
  if (!rep.found) {
    a.summary = "search failure: no h1 = 1 crossing in alpha range";
    a.code = exit_accuracy;
  } else {
    a.summary = to_string(dir) + " best alpha " + fmt12(rep.best_alpha) + ", h1 " +
                fmt12(rep.h1_at_best) + (rep.certified ? " (certified, " : " (NOT certified, ") +
                rep.label + ")";
    if (!rep.certified) a.code = exit_accuracy;
  }
  return a;
}

Artifact run_lemma_check(const json& c, int, const std::string&) {
  const int r = i(c, "r");
  const double x6 = d(c, "x");
  const std::vector<double> ys = parse_list(s(c, "y-list"), "y-list");
  const std::vector<double> x7 = parse_list(s(c, "lemma7-x"), "lemma7-x");
  const auto m7 = static_cast<std::uint64_t>(d(c, "lemma7-m"));
  const int kmax = i(c, "lemma7-k-max");
  const double bound7 = d(c, "lemma7-bound");
  const double T4 = d(c, "lemma4-T");
  const std::vector<double> t4 = parse_list(s(c, "lemma4-t"), "lemma4-t");
  const int K = i(c, "K");
  const auto N = static_cast<std::uint32_t>(d(c, "N"));
  if (m7 < 1) fail(ErrorKind::validation, "lemma7-m must be >= 1");

  double need = std::max({x6, N * 1.0});
  for (double y : ys) need = std::max(need, y);
  for (double x : x7) need = std::max(need, x * m7);
  const auto tables = make_tables(need + 1);

  json checks = json::array();
  bool all = true;
  auto add = [&](json entry, bool pass) {
    entry["pass"] = pass;
    all = all && pass;
    checks.push_back(std::move(entry));
  };

  {
    LemmaParams p{x6, r, 1, 0, 1};
    const double t0 = oracle_sum(*tables, LemmaId::lemma6, p);
    const double ratio0 = t0 / (-r * std::log(x6));
    add({{"name", "lemma6_k0"}, {"x", round12(x6)}, {"sum", round12(t0)}, {"ratio", round12(ratio0)},
         {"range", {0.9, 1.1}}},
        ratio0 >= 0.9 && ratio0 <= 1.1);
    p.k = 1;
    const double t1 = oracle_sum(*tables, LemmaId::lemma6, p);
    const double ratio1 = t1 / (r * std::pow(std::log(x6), 2) / 2.0);
    add({{"name", "lemma6_k1"}, {"x", round12(x6)}, {"sum", round12(t1)}, {"ratio", round12(ratio1)},
         {"range", {0.8, 1.2}}},
        ratio1 >= 0.8 && ratio1 <= 1.2);
  }
  {
    const int r2 = r * r;
    const double a_r = a_r_const(*tables, r, std::min<std::uint32_t>(1'000'000, tables->limit())).value;
    json ratios = json::array();
    bool monotone = true;
    double prev = INFINITY;
    for (double y : ys) {
      const double sum = oracle_sum(*tables, LemmaId::lemma1, {y, r, 1, 0, 1});
      const double ratio = sum / (a_r * std::pow(std::log(y), r2) / std::tgamma(r2 + 1.0));
      ratios.push_back(round12(ratio));
      monotone = monotone && std::abs(ratio - 1.0) < prev;
      prev = std::abs(ratio - 1.0);
    }
    add({{"name", "lemma1_trend"}, {"y", ys}, {"ratios", ratios}}, monotone);
  }
  {
    json vals = json::array();
    double worst = 0.0;
    for (double x : x7) {
      for (int k = 0; k <= kmax; ++k) {
        const double sum = oracle_sum(*tables, LemmaId::lemma7, {x, r, 1, k, m7});
        const double norm = std::abs(sum) / std::pow(std::log(x), k + 1);
        worst = std::max(worst, norm);
        vals.push_back({{"x", round12(x)}, {"k", k}, {"normalized", round12(norm)}});
      }
    }
    add({{"name", "lemma7_bounded"}, {"m", m7}, {"bound", round12(bound7)}, {"max", round12(worst)},
         {"values", vals}},
        worst <= bound7);
  }
  {
    const AlphaBank bank(*tables, K, N);
    json vals = json::array();
    double worst = 0.0;
    for (double t : t4) {
      const cplx s0 = EvalPoint::right_edge(T4, t).s;
      const double res = std::abs(xi2_over_xi1(s0) - aK_rhs(bank, s0, T4));
      worst = std::max(worst, res);
      vals.push_back({{"t", round12(t)}, {"sigma", round12(s0.real())}, {"residual", round12(res)}});
    }
    add({{"name", "lemma4_residual"}, {"K", K}, {"N", N}, {"T", round12(T4)}, {"bound", 5.0},
         {"max", round12(worst)}, {"values", vals}},
        worst <= 5.0);
  }

  json j;
  j["command"] = "lemma-check";
  j["all_pass"] = all;
  j["checks"] = checks;
  j["config"] = c;
  std::size_t passed = 0;
  for (const auto& ch : checks) passed += ch["pass"].get<bool>();
  Artifact a{dump(j), std::to_string(passed) + "/" + std::to_string(checks.size()) + " lemma checks pass"};
  if (!all) a.code = exit_accuracy;
  return a;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mollified-moment functionals and zero statistics for xi'"};
  app.name("xigap");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::map<std::string, Sub> subs;
  Common common;
  std::string config_path;

  auto add_sub = [&](const std::string& name, const std::string& desc, Runner run,
                     std::vector<std::string> formats = {"json"}) -> CLI::App* {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "flat key=value file");
    sub->add_option("--out", common.out, "output path (stdout when omitted)");
    sub->add_option("--format", common.format, "json or csv");
    sub->add_option("--workers", common.workers, "worker cap (default XIGAP_WORKERS or 1)");
    subs[name] = Sub{sub, std::move(run), formats.front(), formats};
    return sub;
  };

  // Every parameter is kept as text; the runners read it back through the
  // echo block, so a re-run from an echoed config sees identical input.
  std::map<std::string, std::string> store;
  auto opt = [&](CLI::App* sub, const std::string& name, const std::string& def,
                 const std::string& help) {
    std::string& slot = store[sub->get_name() + "/" + name];
    slot = def;
    return sub->add_option("--" + name, slot, help)->default_str(def);
  };

  {
    CLI::App* f = add_sub("functional", "closed-form h1 for a mollifier", run_functional);
    opt(f, "kind", "divisor", "divisor, moebius or prime");
    opt(f, "alpha", "1.0", "alpha");
    opt(f, "r", "2", "divisor / moebius order");
    opt(f, "coeffs", "1", "f coefficients c0,c1,...");
    opt(f, "c", "0", "prime kind: number, minus or plus");
    opt(f, "tol", "1e-9", "quadrature tolerance");
  }
  {
    CLI::App* u = add_sub("uv", "U, V and c+- for the twisted mollifier", run_uv);
    opt(u, "alpha", "1.0", "alpha");
    opt(u, "tol", "1e-10", "quadrature tolerance");
  }
  {
    CLI::App* z = add_sub("zeros", "zeros of zeta or xi' on the critical line", run_zeros,
                          {"csv", "json"});
    opt(z, "kind", "zeta", "zeta or xi_prime");
    opt(z, "t-min", "10", "window start");
    opt(z, "t-max", "100", "window end");
    opt(z, "tol", "1e-9", "bracket width");
    opt(z, "grid", "0.05", "scan grid step");
  }
  {
    CLI::App* g = add_sub("gaps", "normalized xi' gaps and their distribution", run_gaps,
                          {"json", "csv"});
    opt(g, "t-min", "500", "window start");
    opt(g, "t-max", "1000", "window end");
    opt(g, "tol", "1e-9", "bracket width");
    opt(g, "alphas", "0.25,0.5,0.75,1,1.25,1.5,2", "alpha grid for D");
    opt(g, "normalizer", "density", "density or window");
    opt(g, "zeros", "", "xi' zero CSV to use instead of scanning");
  }
  {
    CLI::App* e = add_sub("empirical", "h_k measured on actual xi' zeros", run_empirical);
    opt(e, "T", "1000", "window (T, 2T]");
    opt(e, "alpha", "1.0", "alpha");
    opt(e, "k", "1", "moment index 1 or 2");
    opt(e, "kind", "prime", "divisor, moebius or prime");
    opt(e, "r", "1", "divisor / moebius order");
    opt(e, "coeffs", "1", "f coefficients");
    opt(e, "c", "0", "prime kind: c");
    opt(e, "twist-alpha", "alpha", "prime kind: alpha inside f[p] (defaults to --alpha)");
    opt(e, "theta", "0.5", "y = (T/2pi)^theta");
    opt(e, "step", "0.01", "denominator grid step");
    opt(e, "tol", "1e-9", "zero bracket width");
    opt(e, "zeros", "", "xi' zero CSV to use instead of scanning");
  }
  {
    CLI::App* o = add_sub("optimize", "search mollifiers for the h1 = 1 crossing", run_optimize);
    opt(o, "theorem", "1", "1 (polynomial f) or 2 (twisted, analytic c)");
    opt(o, "direction", "large_gap", "large_gap or small_gap");
    opt(o, "r", "2", "order");
    opt(o, "degree", "2", "degree of f");
    opt(o, "restarts", "20", "simplex restarts");
    opt(o, "seed", "1", "restart seed");
    opt(o, "alpha-tol", "1e-6", "alpha bisection tolerance");
    opt(o, "alpha-lo", "0.1", "theorem 1: alpha search start");
    opt(o, "alpha-hi", "3", "theorem 1: alpha search end");
    opt(o, "coeff-kind", "auto", "auto, divisor or moebius");
  }
  {
    CLI::App* l = add_sub("lemma-check", "arithmetic and Lemma-4 oracle report", run_lemma_check);
    opt(l, "r", "2", "order");
    opt(l, "x", "1e6", "T_k cutoff");
    opt(l, "y-list", "1e3,31622.7766016838,1e6", "cutoffs for the d_r^2 sum trend");
    opt(l, "lemma7-x", "1e4,1e5,1e6", "cutoffs for the twisted alpha_k sums");
    opt(l, "lemma7-m", "6", "twist m");
    opt(l, "lemma7-k-max", "3", "largest k");
    opt(l, "lemma7-bound", "10", "allowed |sum| / (log x)^(k+1)");
    opt(l, "lemma4-T", "100", "T fixing L = log(T/2pi)");
    opt(l, "lemma4-t", "120,150,180", "ordinates");
    opt(l, "K", "10", "truncation K");
    opt(l, "N", "10000", "Dirichlet length");
  }

  std::vector<std::string> args = raw_args;
  bool wrote_file = false;
  try {
    // Splice --config into the token stream right after the subcommand so
    // explicit flags (which come later) win.
    auto cfg = std::find(args.begin(), args.end(), std::string("--config"));
    std::string cfg_path;
    if (cfg != args.end()) {
      if (std::next(cfg) == args.end()) fail(ErrorKind::validation, "--config needs a path");
      cfg_path = *std::next(cfg);
      args.erase(cfg, std::next(cfg, 2));
    }
    for (auto it = args.begin(); it != args.end(); ++it) {
      if (it->rfind("--config=", 0) == 0) {
        cfg_path = it->substr(9);
        args.erase(it);
        break;
      }
    }
    if (!cfg_path.empty()) {
      auto sub_it = std::find_if(args.begin(), args.end(),
                                 [&](const std::string& a) { return subs.count(a) > 0; });
      if (sub_it == args.end()) fail(ErrorKind::validation, "--config needs a subcommand");
      CLI::App* sub = subs.at(*sub_it).app;
      std::vector<std::string> injected;
      for (const auto& [k, v] : parse_config(read_file(cfg_path))) {
        if (k == "command") {
          if (v != *sub_it) fail(ErrorKind::validation, "config is for '" + v + "', not '" + *sub_it + "'");
          continue;
        }
        if (k == "config" || k == "help" || sub->get_option_no_throw("--" + k) == nullptr) {
          fail(ErrorKind::validation, "unknown config key '" + k + "' for " + *sub_it);
        }
        injected.push_back("--" + k + "=" + v);
      }
      args.insert(std::next(sub_it), injected.begin(), injected.end());
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);

    const Sub* chosen = nullptr;
    for (const auto& [name, sub] : subs) {
      if (sub.app->parsed()) chosen = &sub;
    }
    if (!chosen) fail(ErrorKind::validation, "no subcommand");
    std::string format = common.format == "auto" ? chosen->default_format : common.format;
    if (std::find(chosen->formats.begin(), chosen->formats.end(), format) == chosen->formats.end()) {
      fail(ErrorKind::validation, "format '" + format + "' not supported by " + chosen->app->get_name());
    }
    const int workers = resolve_workers(common.workers);

    const Artifact a = chosen->run(config_echo(*chosen->app), workers, format);
    if (!common.out.empty()) {
      std::ofstream f(common.out, std::ios::binary);
      if (!f) fail(ErrorKind::validation, "cannot write '" + common.out + "'");
      f << a.text;
      wrote_file = true;
    } else {
      out << a.text;
    }
    (wrote_file ? out : err) << a.summary << "\n";
    return a.code;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? exit_ok : exit_validation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_internal;
  }
}

}  // namespace xigap
