#pragma once

#include <stdexcept>
#include <vector>

#include "partbias/partition_counts.hpp"
#include "partbias/preal.hpp"
#include "partbias/rational_digamma.hpp"

namespace partbias {

// The unique x in 1..t with k x == r (mod t); the zero class is represented
// by t, never 0. Requires gcd(k, t) = 1 and 1 <= r <= t.
long inverse_residue(long k, long t, long r);

// Second-order bias term of residue class r for the pair (k, t):
//   -psi(r/t) + (1/k) psi(x/t),  x = inverse_residue(k, t, r),
// served from the shared psi(j/t) table.
PReal bias_value(const CoprimePair& pair, long r, long precision_bits);

/// Escalation policy for numerically tied bias values. Two values are tied
/// when their gap is below 2^-(threshold_fraction * precision); on a tie the
/// full profile is recomputed at double precision until the cap.
struct TiePolicy {
  double threshold_fraction = 0.5;
  long max_precision_bits = 1024;
};

/// Thrown when two bias values stay within the tie threshold at the maximum
/// precision. A genuine tie is impossible, so this signals an
/// implementation bug and must surface loudly.
class TieEscalationError : public std::runtime_error {
 public:
  TieEscalationError(const CoprimePair& pair, long r, long s,
                     long precision_bits);
  long k, t, r, s, precision_bits;
};

/// All bias values of a pair plus the induced total order on residues.
/// `order` lists residues 1..t ascending by bias value: the first entry is
/// the class that loses the part-count race for large n. precision_bits is
/// the precision the profile was finally resolved at.
struct BiasProfile {
  CoprimePair pair;
  long precision_bits;
  std::vector<PReal> values;  // entry r-1 holds the value for residue r
  std::vector<long> order;

  const PReal& value(long r) const { return values.at(r - 1); }
};

BiasProfile bias_profile(const CoprimePair& pair, long precision_bits,
                         const TiePolicy& policy = {});

/// Pairwise absolute gaps of a profile with extremal pairs. Gaps are listed
/// for (r, s), r < s, in lexicographic order; argmax/argmin ties are broken
/// lexicographically.
struct GapStats {
  CoprimePair pair;
  long precision_bits;
  std::vector<PReal> gaps;
  PReal max_gap, min_gap;
  long max_r, max_s;
  long min_r, min_s;
};

GapStats gap_statistics(const BiasProfile& profile);

// Constructive twist separating r from s modulo t: returns h coprime to t
// with r h == r (mod t) and s h != s (mod t), built as h = t y / p + 1 for
// the smallest valid y, where p > 2 is the smallest odd prime dividing
// gcd(r, t). Preconditions: gcd(r,t) > 1, gcd(s,t) > 1, the two gcds are
// coprime, and gcd(r,t) has an odd prime factor.
long find_separating_twist(long r, long s, long t);

}  // namespace partbias
