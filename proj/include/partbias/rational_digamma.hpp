#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "partbias/preal.hpp"

namespace partbias {

// psi(p/q) for 1 <= p <= q via Gauss's closed form: a finite sum of
// cotangent, logarithm and cosine*log-sine terms plus -gamma - ln(2q).
// Absolute error < 2^-(precision_bits - 8).
PReal digamma_rational(long p, long q, long precision_bits);

// Same quantity by an independent route: shift the argument above a
// precision-dependent threshold with psi(x+1) = psi(x) + 1/x, then apply
// the asymptotic expansion ln z - 1/(2z) - sum B_2m / (2m z^2m) with exact
// Bernoulli numbers. Absolute error < 2^-(precision_bits - 8).
PReal digamma_series_oracle(long p, long q, long precision_bits);

// Convenience for arguments above 1: reduces p/q with the recurrence
// psi(x+1) = psi(x) + 1/x and delegates to digamma_rational.
PReal digamma_rational_extended(long p, long q, long precision_bits);

// Euler-Mascheroni constant, from the asymptotic method at a shifted
// argument. Absolute error < 2^-(precision_bits - 8).
PReal euler_gamma(long precision_bits);

// 60-digit reference value of gamma; a test fixture, not a runtime source.
extern const char* const kEulerGammaReference;

// Exact Bernoulli numbers B_0..B_max_index (B_1 = -1/2) by the standard
// recurrence. Cached: the returned snapshot is immutable and safe to share.
std::shared_ptr<const std::vector<mpq_class>> bernoulli_numbers(
    std::size_t max_index);

/// Cache of the tables psi(j/t), j = 1..t, keyed by (t, precision).
/// Tables are computed once and shared read-only; population is
/// mutex-guarded with idempotent insertion. Hit/miss counters let callers
/// verify table reuse.
class PsiTableCache {
 public:
  static PsiTableCache& instance();

  // Table of psi(j/t) for j = 1..t at entry j-1.
  std::shared_ptr<const std::vector<PReal>> get(long t, long precision_bits);

  struct Stats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    double hit_rate() const {
      const std::uint64_t total = hits + misses;
      return total == 0 ? 0.0 : static_cast<double>(hits) / total;
    }
  };
  Stats stats() const;
  void reset_stats();

 private:
  PsiTableCache() = default;

  mutable std::mutex mutex_;
  std::map<std::pair<long, long>, std::shared_ptr<const std::vector<PReal>>>
      tables_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

// Shorthand for PsiTableCache::instance().get(t, precision_bits).
std::shared_ptr<const std::vector<PReal>> psi_table(long t,
                                                    long precision_bits);

}  // namespace partbias
