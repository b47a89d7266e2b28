#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "partbias/partition_counts.hpp"

using namespace partbias;

TEST_CASE("table of 2-indivisible (odd-part) partition counts") {
  const auto table = build_partition_table(2, 4);
  REQUIRE(table.n_max() == 4);
  // enumeration of partitions of 0..4 into odd parts:
  // 0:{}  1:{1}  2:{1+1}  3:{3, 1+1+1}  4:{3+1, 1+1+1+1}
  CHECK(table.count(0) == 1);
  CHECK(table.count(1) == 1);
  CHECK(table.count(2) == 1);
  CHECK(table.count(3) == 2);
  CHECK(table.count(4) == 2);
}

TEST_CASE("table edge cases and guards") {
  const auto trivial = build_partition_table(2, 0);
  CHECK(trivial.n_max() == 0);
  CHECK(trivial.count(0) == 1);

  CHECK(build_partition_table(3, 3).count(3) == 2);  // 2+1 and 1+1+1

  CHECK_THROWS_AS(build_partition_table(1, 10), std::invalid_argument);
  CHECK_THROWS_AS(build_partition_table(2, -1), std::invalid_argument);
  CHECK_THROWS_AS(build_partition_table(2, 1000, 100), std::invalid_argument);

  // counts stay positive: the all-ones partition always qualifies
  for (long k = 2; k <= 5; ++k) {
    const auto table = build_partition_table(k, 300);
    for (long n = 0; n <= 300; ++n) {
      REQUIRE(table.count(n) > 0);
    }
  }
}

TEST_CASE("parts_count_in_class on the (k,t) = (2,3) example") {
  const CoprimePair pair(2, 3);
  const auto table = build_partition_table(2, 4);
  // partitions of 4 into odd parts: 3+1 and 1+1+1+1
  CHECK(parts_count_in_class(pair, 1, 4, table) == 5);
  CHECK(parts_count_in_class(pair, 3, 4, table) == 1);
  CHECK(parts_count_in_class(pair, 2, 4, table) == 0);

  CHECK_THROWS_AS(parts_count_in_class(pair, 0, 4, table),
                  std::invalid_argument);
  CHECK_THROWS_AS(parts_count_in_class(pair, 4, 4, table),
                  std::invalid_argument);
  CHECK_THROWS_AS(parts_count_in_class(pair, 1, 5, table), std::out_of_range);

  const auto wrong_k = build_partition_table(5, 4);
  CHECK_THROWS_AS(parts_count_in_class(pair, 1, 4, wrong_k),
                  std::invalid_argument);
}

TEST_CASE("brute-force oracle basics") {
  CHECK(brute_force_parts_count(2, 3, 1, 4) == 5);
  // partitions of 4 with no part divisible by 3: {4},{2+2},{2+1+1},{1^4};
  // the only part divisible by 4 is the single 4.
  CHECK(brute_force_parts_count(3, 4, 4, 4) == 1);
  CHECK(brute_force_parts_count(2, 3, 1, 0) == 0);
  CHECK(brute_force_parts_count(5, 4, 2, 0) == 0);

  CHECK_THROWS_AS(brute_force_parts_count(2, 3, 1, 41),
                  std::invalid_argument);
  CHECK_THROWS_AS(brute_force_parts_count(2, 3, 1, 70, 60),
                  std::invalid_argument);  // bound is overridable
  CHECK_NOTHROW(brute_force_parts_count(2, 3, 1, 45, 50));
  CHECK_THROWS_AS(brute_force_parts_count(2, 3, 4, 5),
                  std::invalid_argument);
}

TEST_CASE("identity-based counts equal the enumeration oracle") {
  // Smaller grid here; the full acceptance grid is k,t <= 6, n <= 30.
  for (long k = 2; k <= 4; ++k) {
    for (long t = 2; t <= 4; ++t) {
      if (std::gcd(k, t) != 1) continue;
      const CoprimePair pair(k, t);
      const auto table = build_partition_table(k, 18);
      for (long r = 1; r <= t; ++r) {
        for (long n = 0; n <= 18; ++n) {
          CAPTURE(k);
          CAPTURE(t);
          CAPTURE(r);
          CAPTURE(n);
          REQUIRE(parts_count_in_class(pair, r, n, table) ==
                  brute_force_parts_count(k, t, r, n));
        }
      }
    }
  }
}

TEST_CASE("total parts summed over classes is independent of t") {
  const auto table = build_partition_table(2, 200);
  const CoprimePair mod3(2, 3);
  const CoprimePair mod5(2, 5);
  const CoprimePair mod7(2, 7);
  for (long n = 0; n <= 200; ++n) {
    mpz_class sum3 = 0, sum5 = 0, sum7 = 0;
    for (long r = 1; r <= 3; ++r) sum3 += parts_count_in_class(mod3, r, n, table);
    for (long r = 1; r <= 5; ++r) sum5 += parts_count_in_class(mod5, r, n, table);
    for (long r = 1; r <= 7; ++r) sum7 += parts_count_in_class(mod7, r, n, table);
    CAPTURE(n);
    REQUIRE(sum3 == sum5);
    REQUIRE(sum5 == sum7);
  }
}

TEST_CASE("weak equidistribution of classes for (k,t) = (2,3)") {
  // The raw ratio D(1,3;n)/D(2,3;n) approaches 1 only at log speed: the
  // second-order bias terms stay comparable to (K/2) log n at any feasible
  // n, so at n = 2000 the raw ratio is still ~3. What is testable at this
  // scale: the raw ratio strictly decreases toward 1 between n = 200 and
  // n = 2000, and the count ratio on a log scale is within 0.05 of 1.
  const auto table = build_partition_table(2, 2000);
  const CoprimePair pair(2, 3);

  auto ratio_at = [&](long n) {
    const mpz_class d1 = parts_count_in_class(pair, 1, n, table);
    const mpz_class d2 = parts_count_in_class(pair, 2, n, table);
    REQUIRE(d2 > 0);
    return mpq_class(d1, d2).get_d();
  };

  const double ratio_200 = ratio_at(200);
  const double ratio_2000 = ratio_at(2000);
  CHECK(ratio_2000 > 1.0);
  CHECK(std::fabs(ratio_2000 - 1.0) < std::fabs(ratio_200 - 1.0));

  auto log_ratio_at = [&](long n) {
    const mpz_class d1 = parts_count_in_class(pair, 1, n, table);
    const mpz_class d2 = parts_count_in_class(pair, 2, n, table);
    const double l1 = std::log(mpq_class(d1).get_d());
    const double l2 = std::log(mpq_class(d2).get_d());
    return l1 / l2;
  };

  const double log_ratio_2000 = log_ratio_at(2000);
  CHECK(std::fabs(log_ratio_2000 - 1.0) < 0.05);
  CHECK(std::fabs(log_ratio_2000 - 1.0) < std::fabs(log_ratio_at(200) - 1.0));
}
