#include "partbias/partition_counts.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace partbias {

CoprimePair::CoprimePair(long k_in, long t_in) : k(k_in), t(t_in) {
  if (k < 2) throw std::invalid_argument("CoprimePair: k must be >= 2");
  if (t < 2) throw std::invalid_argument("CoprimePair: t must be >= 2");
  if (std::gcd(k, t) != 1) {
    throw std::invalid_argument("CoprimePair: gcd(k, t) must be 1, got k=" +
                                std::to_string(k) + ", t=" +
                                std::to_string(t));
  }
}

PartitionTable::PartitionTable(long k, std::vector<mpz_class> counts)
    : k_(k), counts_(std::move(counts)) {}

const mpz_class& PartitionTable::count(long n) const {
  if (n < 0 || n > n_max()) {
    throw std::out_of_range("PartitionTable: n=" + std::to_string(n) +
                            " outside 0.." + std::to_string(n_max()));
  }
  return counts_[static_cast<std::size_t>(n)];
}

PartitionTable build_partition_table(long k, long n_max, long max_entries) {
  if (k < 2) throw std::invalid_argument("build_partition_table: k must be >= 2");
  if (n_max < 0) {
    throw std::invalid_argument("build_partition_table: n_max must be >= 0");
  }
  if (n_max + 1 > max_entries) {
    throw std::invalid_argument(
        "build_partition_table: n_max=" + std::to_string(n_max) +
        " exceeds the memory guard of " + std::to_string(max_entries) +
        " entries");
  }
  std::vector<mpz_class> counts(static_cast<std::size_t>(n_max) + 1, 0);
  counts[0] = 1;
  for (long j = 1; j <= n_max; ++j) {
    if (j % k == 0) continue;
    for (long n = j; n <= n_max; ++n) {
      counts[n] += counts[n - j];
    }
  }
  return PartitionTable(k, std::move(counts));
}

mpz_class parts_count_in_class(const CoprimePair& pair, long r, long n,
                               const PartitionTable& table) {
  if (table.k() != pair.k) {
    throw std::invalid_argument("parts_count_in_class: table built for k=" +
                                std::to_string(table.k()) + ", pair has k=" +
                                std::to_string(pair.k));
  }
  if (r < 1 || r > pair.t) {
    throw std::invalid_argument("parts_count_in_class: r=" + std::to_string(r) +
                                " outside 1.." + std::to_string(pair.t));
  }
  if (n < 0 || n > table.n_max()) {
    throw std::out_of_range("parts_count_in_class: n=" + std::to_string(n) +
                            " outside the table range 0.." +
                            std::to_string(table.n_max()));
  }
  mpz_class total = 0;
  for (long j = r; j <= n; j += pair.t) {
    if (j % pair.k == 0) continue;
    for (long m = n - j; m >= 0; m -= j) {
      total += table.count(m);
    }
  }
  return total;
}

namespace {

// Enumerates k-indivisible partitions of n (parts <= max_part,
// nonincreasing) and accumulates the number of parts == r (mod t).
void enumerate_and_tally(long n, long max_part, long k, long t, long r,
                         unsigned long long parts_in_class,
                         unsigned long long& tally) {
  if (n == 0) {
    tally += parts_in_class;
    return;
  }
  for (long j = std::min(n, max_part); j >= 1; --j) {
    if (j % k == 0) continue;
    enumerate_and_tally(n - j, j, k, t, r,
                        parts_in_class + (j % t == r % t ? 1 : 0), tally);
  }
}

}  // namespace

mpz_class brute_force_parts_count(long k, long t, long r, long n,
                                  long oracle_bound) {
  if (k < 2) throw std::invalid_argument("brute force: k must be >= 2");
  if (t < 1) throw std::invalid_argument("brute force: t must be >= 1");
  if (r < 1 || r > t) {
    throw std::invalid_argument("brute force: r=" + std::to_string(r) +
                                " outside 1.." + std::to_string(t));
  }
  if (n < 0 || n > oracle_bound) {
    throw std::invalid_argument("brute force: n=" + std::to_string(n) +
                                " above the oracle bound " +
                                std::to_string(oracle_bound));
  }
  unsigned long long tally = 0;
  enumerate_and_tally(n, n, k, t, r, 0, tally);
  return mpz_class(static_cast<unsigned long>(tally));
}

}  // namespace partbias
