#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "partbias/bias_order.hpp"
#include "partbias/partition_counts.hpp"
#include "partbias/preal.hpp"

namespace partbias {

/// Constants of the part-count asymptotic for a pair (k, t):
///   K = 1 - 1/k (exact rational)
///   C = (K/2) ln(pi sqrt(K/6)) - K ln t + (ln k)/k
struct AsymptoticConstants {
  CoprimePair pair;
  mpq_class big_k;
  PReal c_kt;
  long precision_bits;

  static AsymptoticConstants compute(const CoprimePair& pair,
                                     long precision_bits);
};

// Amplitude factor
//   A(n) = 3^(1/4) e^(pi sqrt(2 K n / 3)) / (2^(3/4) K^(1/4) n^(1/4) pi t sqrt(k)).
PReal asymptotic_amplitude(const CoprimePair& pair, long n,
                           long precision_bits);

// Main plus second-order terms of the part-count asymptotic:
//   A(n) ((K/2) ln n + bias(r) + C); the O(n^-1/2 log n) error term is
// dropped. Requires n >= 2.
PReal asymptotic_prediction(const CoprimePair& pair, long r, long n,
                            long precision_bits);

// floor(6/pi^2 (t^2 - 1)): the k range scanned when maximizing/minimizing
// gap statistics over k coprime to t.
long default_k_bound(long t);

struct ExtremalQuad {
  long k = 0;
  long r = 0;
  long s = 0;
  bool operator==(const ExtremalQuad&) const = default;
};

/// Per-t sweep record: M_t (max of per-k max gaps) and m_t (min of per-k
/// min gaps) over 2 <= k < k_bound with gcd(k, t) = 1, with the extremal
/// quadruples. has_data is false when the k range is empty.
struct SweepRow {
  long t = 0;
  long k_bound = 0;
  bool has_data = false;
  PReal max_gap;  // M_t
  PReal min_gap;  // m_t
  ExtremalQuad argmax;
  ExtremalQuad argmin;
  long precision_bits = 0;

  bool operator==(const SweepRow&) const = default;
};

// Sweeps one modulus. Ties between k are broken toward the smallest k (and
// lexicographic (r, s) within a k); the parallel reduction is ordered, so
// results are identical for any worker count.
SweepRow sweep_modulus(long t, long k_bound, long precision_bits,
                       unsigned workers = 1, const TiePolicy& policy = {});

std::vector<SweepRow> sweep_range(
    long t_min, long t_max, long precision_bits, unsigned workers = 1,
    std::optional<long> k_bound_override = std::nullopt,
    const TiePolicy& policy = {});

struct ConjectureEntry {
  SweepRow row;
  double max_over_t = 0.0;               // M_t / t
  double neg_log_min_over_sqrt_t = 0.0;  // -log(m_t) / sqrt(t)
  bool argmax_is_expected = false;       // quad == (t-1, t, 1, t-1)
  bool min_gap_positive = false;
};

/// Conjecture-sweep report. Only min-gap positivity is theorem-backed; the
/// remaining predicates are conjecture checks and are reported, never
/// asserted.
struct ConjectureReport {
  long t_min = 0;
  long t_max = 0;
  long precision_bits = 0;
  std::vector<ConjectureEntry> entries;
  bool all_min_gaps_positive = false;  // hard (theorem-backed)
  bool all_argmax_expected = false;    // reported
  double observed_log_bound = 0.0;     // max of -log(m_t)/sqrt(t)
  double log_bound_slack = 2.5;
  bool log_bound_holds = false;        // reported
  bool linear_growth_holds = false;    // M_t/t in (0.7, 1.3) for t >= 15
};

ConjectureReport check_conjecture(long t_min, long t_max, long precision_bits,
                                  unsigned workers = 1);

enum class ReportFormat { text, csv, json, svg };

struct SvgOptions {
  double reference_coefficient = 1.7;  // overlay curve c sqrt(t)
};

// Serializes sweep rows. CSV columns:
//   t,k_bound,M_t,m_t,argmax_k,argmax_r,argmax_s,argmin_k,argmin_r,argmin_s,precision_bits
// JSON mirrors the columns verbatim (PReals as decimal strings) under a
// schema_version field. SVG emits three charts (M_t, m_t, -log m_t with the
// reference curve) stacked in one document.
void emit_report(const std::vector<SweepRow>& rows, ReportFormat format,
                 std::ostream& out, const SvgOptions& svg = {});

std::string render_sweep_csv(const std::vector<SweepRow>& rows);
std::string render_sweep_json(const std::vector<SweepRow>& rows);
std::string render_sweep_text(const std::vector<SweepRow>& rows);
std::string render_sweep_svg(const std::vector<SweepRow>& rows,
                             const SvgOptions& options = {});

std::string conjecture_report_text(const ConjectureReport& report);
std::string conjecture_report_json(const ConjectureReport& report);

}  // namespace partbias
