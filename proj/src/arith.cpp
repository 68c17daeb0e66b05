#include "xigap/arith.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "xigap/error.hpp"
#include "xigap/summation.hpp"

namespace xigap {

namespace {

// Calls fn(p, a, q) for every prime power q = p^a <= upto.
template <class Fn>
void for_each_prime_power(const std::vector<std::uint32_t>& primes, std::uint32_t upto, Fn&& fn) {
  for (std::uint32_t p : primes) {
    if (p > upto) break;
    std::uint64_t q = p;
    for (int a = 1; q <= upto; ++a, q *= p) fn(p, a, static_cast<std::uint32_t>(q));
  }
}

}  // namespace

double divisor_prime_power(int r, int a) {
  // binom(a + r - 1, r - 1) built up multiplicatively; exact for the sizes used.
  double v = 1.0;
  for (int i = 1; i <= a; ++i) v = v * (i + r - 1) / i;
  return std::round(v);
}

double moebius_prime_power(int r, int a) {
  if (a > r) return 0.0;
  double v = 1.0;
  for (int i = 1; i <= a; ++i) v = v * (r - i + 1) / i;
  v = std::round(v);
  return (a % 2 == 0) ? v : -v;
}

ArithTables::ArithTables(std::uint32_t limit) : limit_(limit) {
  if (limit < 2) fail(ErrorKind::domain, "sieve limit must be at least 2");
  spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  primes_.reserve(limit / 10 + 16);
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes_.push_back(i);
    }
    for (std::uint32_t p : primes_) {
      const std::uint64_t m = static_cast<std::uint64_t>(p) * i;
      if (p > spf_[i] || m > limit) break;
      spf_[m] = p;
    }
  }
  spf_[1] = 1;
}

void ArithTables::check_index(std::uint64_t n) const {
  if (n == 0) fail(ErrorKind::domain, "argument must be a positive integer");
  if (n > limit_) {
    fail(ErrorKind::capacity,
         "n = " + std::to_string(n) + " exceeds sieve limit " + std::to_string(limit_));
  }
}

std::uint32_t ArithTables::smallest_prime_factor(std::uint64_t n) const {
  check_index(n);
  return spf_[n];
}

bool ArithTables::is_prime(std::uint64_t n) const {
  check_index(n);
  return n >= 2 && spf_[n] == n;
}

std::vector<PrimePower> ArithTables::factorize(std::uint64_t n) const {
  check_index(n);
  std::vector<PrimePower> out;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    int a = 0;
    while (n % p == 0) {
      n /= p;
      ++a;
    }
    out.push_back({p, a});
  }
  return out;
}

double ArithTables::coeff(std::uint64_t n, int r, CoeffKind kind) const {
  if (r < 1) fail(ErrorKind::domain, "r must be >= 1");
  double v = 1.0;
  for (const auto& [p, a] : factorize(n)) {
    v *= (kind == CoeffKind::divisor) ? divisor_prime_power(r, a) : moebius_prime_power(r, a);
    if (v == 0.0) break;
  }
  return v;
}

std::shared_ptr<const std::vector<double>> ArithTables::coeff_table(int r, CoeffKind kind,
                                                                   std::uint32_t upto) const {
  if (r < 1) fail(ErrorKind::domain, "r must be >= 1");
  if (upto > limit_) check_index(upto);
  const auto key = std::make_pair(static_cast<int>(kind), r);
  {
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end() && it->second->size() > upto) return it->second;
  }
  auto table = std::make_shared<std::vector<double>>(static_cast<std::size_t>(upto) + 1, 0.0);
  auto& g = *table;
  if (upto >= 1) g[1] = 1.0;
  // Multiplicative fill: g(n) = g(p^a) g(n / p^a) with p = spf(n).
  for (std::uint32_t n = 2; n <= upto; ++n) {
    const std::uint32_t p = spf_[n];
    std::uint32_t m = n;
    int a = 0;
    while (m % p == 0) {
      m /= p;
      ++a;
    }
    const double local =
        (kind == CoeffKind::divisor) ? divisor_prime_power(r, a) : moebius_prime_power(r, a);
    g[n] = local * g[m];
  }
  std::shared_ptr<const std::vector<double>> result = table;
  std::lock_guard lock(cache_mutex_);
  auto& slot = cache_[key];
  if (!slot || slot->size() < result->size()) slot = result;
  return slot;
}

double ArithTables::von_mangoldt(std::uint64_t n) const {
  check_index(n);
  if (n == 1) return 0.0;
  const std::uint32_t p = spf_[n];
  while (n % p == 0) n /= p;
  return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

std::vector<double> ArithTables::lambda_power_table(int j, std::uint32_t upto) const {
  if (j < 0) fail(ErrorKind::domain, "convolution power must be >= 0");
  if (upto > limit_) check_index(upto);
  std::vector<double> cur(static_cast<std::size_t>(upto) + 1, 0.0);
  if (upto >= 1) cur[1] = 1.0;
  for (int step = 0; step < j; ++step) {
    std::vector<double> next(cur.size(), 0.0);
    for_each_prime_power(primes_, upto, [&](std::uint32_t p, int, std::uint32_t q) {
      const double w = std::log(static_cast<double>(p));
      const std::uint32_t mmax = upto / q;
      for (std::uint32_t m = 1; m <= mmax; ++m) {
        if (cur[m] != 0.0) next[static_cast<std::size_t>(q) * m] += w * cur[m];
      }
    });
    cur.swap(next);
  }
  return cur;
}

std::vector<double> ArithTables::alpha_table(int k, std::uint32_t upto) const {
  if (k < 0) fail(ErrorKind::domain, "k must be >= 0");
  if (upto > limit_) check_index(upto);
  std::vector<double> out(static_cast<std::size_t>(upto) + 1, 0.0);
  if (k == 0) {
    for_each_prime_power(primes_, upto, [&](std::uint32_t p, int, std::uint32_t q) {
      out[q] = -std::log(static_cast<double>(p));
    });
    return out;
  }
  const auto prev = lambda_power_table(k - 1, upto);
  for_each_prime_power(primes_, upto, [&](std::uint32_t p, int a, std::uint32_t q) {
    const double lp = std::log(static_cast<double>(p));
    const double w = a * lp * lp;  // Lambda(q) log q
    const std::uint32_t mmax = upto / q;
    for (std::uint32_t m = 1; m <= mmax; ++m) {
      if (prev[m] != 0.0) out[static_cast<std::size_t>(q) * m] += w * prev[m];
    }
  });
  return out;
}

double ArithTables::alpha_k(int k, std::uint64_t n) const {
  if (k < 0) fail(ErrorKind::domain, "k must be >= 0");
  if (k == 0) return -von_mangoldt(n);
  const auto fac = factorize(n);
  if (fac.empty()) return 0.0;

  // Enumerate divisors of n as mixed-radix exponent vectors.
  std::vector<int> radix;
  for (const auto& pp : fac) radix.push_back(pp.exponent + 1);
  std::size_t count = 1;
  for (int r : radix) count *= static_cast<std::size_t>(r);
  auto index_of = [&](const std::vector<int>& e) {
    std::size_t idx = 0;
    for (std::size_t i = fac.size(); i-- > 0;) idx = idx * radix[i] + e[i];
    return idx;
  };
  std::vector<std::vector<int>> exps(count, std::vector<int>(fac.size(), 0));
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = 0; i < fac.size(); ++i) {
      exps[idx][i] = static_cast<int>(rest % radix[i]);
      rest /= radix[i];
    }
  }

  // Lambda_j on every divisor, j = 0 .. k-1.
  std::vector<double> lam(count, 0.0);
  lam[0] = 1.0;
  for (int j = 1; j <= k - 1; ++j) {
    std::vector<double> next(count, 0.0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      double acc = 0.0;
      auto e = exps[idx];
      for (std::size_t i = 0; i < fac.size(); ++i) {
        const double lp = std::log(static_cast<double>(fac[i].p));
        const int full = e[i];
        for (int a = 1; a <= full; ++a) {
          e[i] = full - a;
          acc += lp * lam[index_of(e)];
        }
        e[i] = full;
      }
      next[idx] = acc;
    }
    lam.swap(next);
  }

  double acc = 0.0;
  std::vector<int> e = exps[count - 1];
  for (std::size_t i = 0; i < fac.size(); ++i) {
    const double lp = std::log(static_cast<double>(fac[i].p));
    const int full = e[i];
    for (int a = 1; a <= full; ++a) {
      e[i] = full - a;
      acc += a * lp * lp * lam[index_of(e)];
    }
    e[i] = full;
  }
  return acc;
}

double A_r_local(double p, int lambda, int r, double s, double tol) {
  if (!(s > 0.0)) fail(ErrorKind::domain, "A_r requires s > 0 for convergence");
  if (!(tol > 0.0)) fail(ErrorKind::domain, "tolerance must be positive");
  const double x = std::pow(p, -s);
  // d_r(p^j) and d_r(p^{j+lambda}) advanced by their ratio recurrences.
  double dj = 1.0;
  double djl = divisor_prime_power(r, lambda);
  double xj = 1.0;
  CompensatedSum num, den;
  for (int j = 0; j < 200000; ++j) {
    const double tn = dj * djl * xj;
    const double td = dj * dj * xj;
    num += tn;
    den += td;
    const double rj = (j + r) / static_cast<double>(j + 1);
    const double rjl = (j + lambda + r) / static_cast<double>(j + lambda + 1);
    const double qn = rj * rjl * x;
    const double qd = rj * rj * x;
    if (qn < 1.0 && qd < 1.0) {
      const double tail_n = tn * qn / (1.0 - qn);
      const double tail_d = td * qd / (1.0 - qd);
      if (tail_n <= tol * num.value() && tail_d <= tol * den.value()) {
        return num.value() / den.value();
      }
    }
    dj *= rj;
    djl *= rjl;
    xj *= x;
  }
  fail(ErrorKind::precision, "A_r local series did not reach tolerance");
}

double ArithTables::A_r(std::uint64_t n, int r, double s, double tol) const {
  if (r < 1) fail(ErrorKind::domain, "r must be >= 1");
  if (!(s > 0.0)) fail(ErrorKind::domain, "A_r requires s > 0 for convergence");
  double v = 1.0;
  for (const auto& [p, a] : factorize(n)) v *= A_r_local(static_cast<double>(p), a, r, s, tol);
  return v;
}

std::vector<double> ArithTables::A_r_table(int r, std::uint32_t upto, double s,
                                           double tol) const {
  if (upto > limit_) check_index(upto);
  std::vector<double> out(static_cast<std::size_t>(upto) + 1, 0.0);
  if (upto >= 1) out[1] = 1.0;
  std::unordered_map<std::uint64_t, double> local;
  for (std::uint32_t n = 2; n <= upto; ++n) {
    const std::uint32_t p = spf_[n];
    std::uint32_t m = n;
    int a = 0;
    while (m % p == 0) {
      m /= p;
      ++a;
    }
    const std::uint64_t key = static_cast<std::uint64_t>(p) * 64 + a;
    auto it = local.find(key);
    if (it == local.end()) it = local.emplace(key, A_r_local(p, a, r, s, tol)).first;
    out[n] = it->second * out[m];
  }
  return out;
}

double ArithTables::F_tau(std::uint64_t n, double tau, double A) const {
  if (!(tau > 0.0)) fail(ErrorKind::domain, "tau must be positive");
  double v = 1.0;
  for (const auto& pp : factorize(n)) v *= 1.0 + A * std::pow(static_cast<double>(pp.p), -tau);
  return v;
}

ConstantEstimate a_r_const(const ArithTables& tables, int r, std::uint32_t prime_cutoff) {
  if (r < 1) fail(ErrorKind::domain, "r must be >= 1");
  if (prime_cutoff < 100) fail(ErrorKind::domain, "prime_cutoff must be >= 100");
  if (prime_cutoff > tables.limit()) {
    fail(ErrorKind::capacity, "prime_cutoff exceeds sieve limit");
  }
  const double r2 = static_cast<double>(r) * r;
  CompensatedSum log_product;
  for (std::uint32_t p : tables.primes()) {
    if (p > prime_cutoff) break;
    const double x = 1.0 / p;
    CompensatedSum local;
    double d = 1.0, xn = 1.0;
    for (int n = 0; n < 10000; ++n) {
      const double term = d * d * xn;
      local += term;
      if (term < 1e-18 * local.value()) break;
      d = d * (n + r) / (n + 1);
      xn *= x;
    }
    log_product += r2 * std::log1p(-x) + std::log(local.value());
  }
  // log of the local factor is c2/p^2 + O(p^-3) with
  // c2 = d_r(p^2)^2 - r^4/2 - r^2/2; sum_{p>P} p^-2 ~ 1/(P log P).
  const double d2 = r * (r + 1) / 2.0;
  const double c2 = d2 * d2 - r2 * r2 / 2.0 - r2 / 2.0;
  const double P = prime_cutoff;
  const double tail = c2 / (P * std::log(P));

  ConstantEstimate est;
  est.prime_cutoff = prime_cutoff;
  est.truncated_product = std::exp(log_product.value());
  est.tail_log_correction = tail;
  est.value = std::exp(log_product.value() + tail);
  est.error_bound = est.value * (0.25 * std::abs(tail) + 4.0 * r2 * r2 * r / (P * P));
  return est;
}

namespace {

double divisor_of_product(const std::vector<PrimePower>& n_fac,
                          std::uint64_t m, int r, const std::vector<double>& dr_table) {
  // d_r(mn) = d_r(m) * prod_{p^b || n} d_r(p^{a+b}) / d_r(p^a), a = v_p(m).
  double v = dr_table[m];
  for (const auto& [p, b] : n_fac) {
    int a = 0;
    std::uint64_t mm = m;
    while (mm % p == 0) {
      mm /= p;
      ++a;
    }
    v = v / divisor_prime_power(r, a) * divisor_prime_power(r, a + b);
  }
  return v;
}

}  // namespace

double oracle_sum(const ArithTables& tables, LemmaId id, const LemmaParams& params) {
  if (params.r < 1) fail(ErrorKind::domain, "r must be >= 1");
  if (!(params.bound >= 1.0)) fail(ErrorKind::domain, "summation bound must be >= 1");
  const double bound = std::floor(params.bound + 1e-9);
  if (bound > tables.limit()) fail(ErrorKind::capacity, "summation bound exceeds sieve limit");
  const auto X = static_cast<std::uint32_t>(bound);
  const int r = params.r;
  CompensatedSum sum;

  switch (id) {
    case LemmaId::lemma1: {
      const auto dr = tables.coeff_table(r, CoeffKind::divisor, X);
      for (std::uint32_t n = 1; n <= X; ++n) sum += (*dr)[n] * (*dr)[n] / n;
      break;
    }
    case LemmaId::lemma2: {
      const auto dr = tables.coeff_table(r, CoeffKind::divisor, X);
      const auto n_fac = tables.factorize(params.n);
      for (std::uint32_t m = 1; m <= X; ++m) {
        sum += (*dr)[m] * divisor_of_product(n_fac, m, r, *dr) / m;
      }
      break;
    }
    case LemmaId::lemma6: {
      const auto alpha = tables.alpha_table(params.k, X);
      const auto A = tables.A_r_table(r, X);
      for (std::uint32_t n = 1; n <= X; ++n) {
        if (alpha[n] != 0.0) sum += alpha[n] * A[n] / n;
      }
      break;
    }
    case LemmaId::lemma7: {
      if (params.m == 0) fail(ErrorKind::domain, "m must be positive");
      const double top = static_cast<double>(params.m) * X;
      if (top > tables.limit()) fail(ErrorKind::capacity, "m * x exceeds sieve limit");
      const auto alpha = tables.alpha_table(params.k, static_cast<std::uint32_t>(top));
      const auto dr = tables.coeff_table(r, CoeffKind::divisor, X);
      for (std::uint32_t n = 1; n <= X; ++n) {
        const double a = alpha[static_cast<std::size_t>(params.m) * n];
        if (a != 0.0) sum += a * (*dr)[n] / n;
      }
      break;
    }
  }
  return sum.value();
}

}  // namespace xigap
