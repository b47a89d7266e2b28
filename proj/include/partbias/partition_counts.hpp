#pragma once

#include <gmpxx.h>

#include <vector>

namespace partbias {

/// Parameter pair (k, t), validated coprime with k, t >= 2. Residue
/// representatives are always taken in 1..t.
struct CoprimePair {
  long k;
  long t;
  CoprimePair(long k, long t);
};

/// Memoized exact counts of k-indivisible partitions (no part divisible by
/// k) of 0..n_max. Immutable after construction; queries are pure and safe
/// to share across threads.
class PartitionTable {
 public:
  PartitionTable(long k, std::vector<mpz_class> counts);

  long k() const { return k_; }
  long n_max() const { return static_cast<long>(counts_.size()) - 1; }
  const mpz_class& count(long n) const;
  const std::vector<mpz_class>& counts() const { return counts_; }

 private:
  long k_;
  std::vector<mpz_class> counts_;
};

inline constexpr long kDefaultTableGuard = 1000000;  // max table entries
inline constexpr long kDefaultOracleBound = 40;      // max n for brute force

// Coefficient DP over prod 1/(1-q^j) for k-indivisible j, exact integers.
PartitionTable build_partition_table(long k, long n_max,
                                     long max_entries = kDefaultTableGuard);

// Total number of parts congruent to r (mod t) over all k-indivisible
// partitions of n, via the part-multiplicity identity
//   D = sum_{j == r (t), k !| j} sum_{m >= 1} p_k(n - m j).
mpz_class parts_count_in_class(const CoprimePair& pair, long r, long n,
                               const PartitionTable& table);

// Independent oracle: enumerates every k-indivisible partition of n in
// nonincreasing-part order and tallies parts congruent to r (mod t).
// Exponential; n is capped by oracle_bound.
mpz_class brute_force_parts_count(long k, long t, long r, long n,
                                  long oracle_bound = kDefaultOracleBound);

}  // namespace partbias
