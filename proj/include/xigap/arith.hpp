#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace xigap {

/// d_r (coefficients of zeta^r) or mu_r (coefficients of zeta^{-r}).
enum class CoeffKind { divisor, moebius };

struct PrimePower {
  std::uint64_t p;
  int exponent;
};

/// Sieve-backed arithmetic tables. Construction is single threaded; after
/// that every member is safe to call concurrently (the coefficient cache is
/// guarded internally and hands out immutable arrays).
class ArithTables {
 public:
  static constexpr std::uint32_t default_limit = 10'000'000;

  explicit ArithTables(std::uint32_t limit = default_limit);

  std::uint32_t limit() const { return limit_; }
  std::uint32_t smallest_prime_factor(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const;
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  /// Prime factorisation in increasing prime order. n must be in [1, limit].
  std::vector<PrimePower> factorize(std::uint64_t n) const;

  double coeff(std::uint64_t n, int r, CoeffKind kind) const;

  /// Shared, immutable table of coeff(n, r, kind) for 0 <= n <= upto (index 0
  /// holds 0). Cached by (kind, r); a larger request replaces the cache entry.
  std::shared_ptr<const std::vector<double>> coeff_table(int r, CoeffKind kind,
                                                         std::uint32_t upto) const;

  double von_mangoldt(std::uint64_t n) const;

  /// Lambda_j for 0 <= n <= upto; Lambda_0 is the convolution identity.
  std::vector<double> lambda_power_table(int j, std::uint32_t upto) const;

  /// alpha_k(n): -Lambda(n) for k = 0, (Lambda_{k-1} * Lambda log)(n) for k >= 1.
  std::vector<double> alpha_table(int k, std::uint32_t upto) const;
  double alpha_k(int k, std::uint64_t n) const;

  /// A_r(n, s) as a product of local ratios over p^lambda || n. Each local
  /// series is summed until a geometric tail bound drops below tol times the
  /// partial sum.
  double A_r(std::uint64_t n, int r, double s = 1.0, double tol = 1e-14) const;
  std::vector<double> A_r_table(int r, std::uint32_t upto, double s = 1.0,
                                double tol = 1e-14) const;

  /// F_tau(n) = prod_{p | n} (1 + A p^{-tau}); A is the otherwise implicit
  /// O-constant.
  double F_tau(std::uint64_t n, double tau, double A = 1.0) const;

 private:
  void check_index(std::uint64_t n) const;

  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const std::vector<double>>> cache_;
};

/// d_r(p^a) = binom(a + r - 1, r - 1).
double divisor_prime_power(int r, int a);
/// mu_r(p^a) = (-1)^a binom(r, a).
double moebius_prime_power(int r, int a);

/// Local ratio of A_r at p^lambda.
double A_r_local(double p, int lambda, int r, double s, double tol);

struct ConstantEstimate {
  double value = 0.0;
  double truncated_product = 0.0;
  double tail_log_correction = 0.0;
  double error_bound = 0.0;
  std::uint32_t prime_cutoff = 0;
};

/// a_r = prod_p (1 - 1/p)^{r^2} sum_n d_r(p^n)^2 / p^n, truncated at
/// prime_cutoff with a second-order tail correction.
ConstantEstimate a_r_const(const ArithTables& tables, int r, std::uint32_t prime_cutoff);

enum class LemmaId { lemma1, lemma2, lemma6, lemma7 };

struct LemmaParams {
  double bound = 0.0;  ///< y (lemma1) or x (the others)
  int r = 1;
  std::uint64_t n = 1;  ///< lemma2 twist
  int k = 0;            ///< lemma6 / lemma7
  std::uint64_t m = 1;  ///< lemma7 twist
};

/// Brute-force sums with compensated accumulation:
///   lemma1  sum_{n<=y} d_r(n)^2 / n
///   lemma2  sum_{m<=x} d_r(m) d_r(mn) / m
///   lemma6  T_k(x) = sum_{n<=x} alpha_k(n) A_r(n) / n
///   lemma7  sum_{n<=x} alpha_k(mn) d_r(n) / n
double oracle_sum(const ArithTables& tables, LemmaId id, const LemmaParams& params);

}  // namespace xigap
