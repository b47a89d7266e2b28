#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "partbias/partition_counts.hpp"
#include "partbias/preal.hpp"

namespace partbias {

/// Period-t function with exact rational values, extended t-periodically:
/// f(n) = values[((n-1) mod t) + 1]. Immutable in spirit; all operations on
/// it are pure.
class PeriodicFunction {
 public:
  explicit PeriodicFunction(long t);  // zero function
  PeriodicFunction(long t, std::vector<mpq_class> values);

  long period() const { return t_; }
  // f(n) for any n >= 1.
  const mpq_class& at(long n) const;
  // Mutable access to the value at residue r in 1..t (construction only).
  mpq_class& slot(long r);

  bool is_zero() const;
  friend bool operator==(const PeriodicFunction& a, const PeriodicFunction& b) {
    return a.t_ == b.t_ && a.values_ == b.values_;
  }

 private:
  long t_;
  std::vector<mpq_class> values_;
};

// sum_{n=1}^{t} f(n), exact. This is the residue of L(s, f) at s = 1.
mpq_class residue_sum(const PeriodicFunction& f);

// L(1, f) = -(1/t) sum_{r=1}^{t} f(r) psi(r/t), defined when the residue
// vanishes; rejects nonzero residue (the message reports it).
PReal l_value_digamma(const PeriodicFunction& f, long precision_bits);

struct LValueEstimate {
  PReal value;
  double error_estimate;  // truncation bound for the tail correction
};

// L(1, f) by direct partial sums of sum f(n)/n over block_count complete
// periods, plus an Euler-Maclaurin tail correction on the block remainder;
// absolute error O(1/block_count^2) (the correction actually reaches
// O(1/block_count^4)). Requires residue_sum(f) = 0 and block_count >= 10.
LValueEstimate l_value_partial_sums(const PeriodicFunction& f,
                                    long block_count, long precision_bits);

// The four-indicator tie function
//   f = -1_r + 1_s + (1/k) 1_{x_r} - (1/k) 1_{x_s}
// with x_r, x_s the inverse residues of r, s; overlapping indicators sum.
// L(1, f) = -(1/t)(bias(r) - bias(s)), so its vanishing encodes a tie.
PeriodicFunction make_tie_function(const CoprimePair& pair, long r, long s);

// Relabeling by a unit: n -> f(h n), the rational-coefficient shadow of the
// Galois action. Requires gcd(h, t) = 1.
PeriodicFunction twist(const PeriodicFunction& f, long h);

// Convenience for test corpora: alpha*f + beta*g (equal periods).
PeriodicFunction linear_combination(const mpq_class& alpha,
                                    const PeriodicFunction& f,
                                    const mpq_class& beta,
                                    const PeriodicFunction& g);

// {gcd(n, t) : f(n) != 0} — the support-structure invariant of linear
// relations among digamma values.
using SupportGcds = std::set<long>;
SupportGcds support_gcds(const PeriodicFunction& f);

// Fixture format: one function per line, "t: v1,v2,...,vt", values exact
// rationals ("p/q" or integers). '#' lines and blank lines are skipped.
PeriodicFunction parse_fixture_line(const std::string& line);
std::vector<PeriodicFunction> parse_fixture(std::istream& in);
std::string to_fixture_line(const PeriodicFunction& f);

}  // namespace partbias
