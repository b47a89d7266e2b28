#include "partbias/sweep_report.hpp"

#include <cmath>
#include <exception>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "partbias/rational_digamma.hpp"

namespace partbias {

AsymptoticConstants AsymptoticConstants::compute(const CoprimePair& pair,
                                                 long precision_bits) {
  const long work = precision_bits + 32;
  const mpq_class big_k(pair.k - 1, pair.k);
  const PReal k_real = PReal::from_rational(big_k, work);
  const PReal pi = PReal::pi(work);

  PReal c = (k_real / 2) * (pi * (k_real / 6).sqrt()).ln();
  c -= k_real * PReal::from_long(pair.t, work).ln();
  c += PReal::from_long(pair.k, work).ln() / pair.k;
  return AsymptoticConstants{pair, big_k, c.round_to(precision_bits),
                             precision_bits};
}

PReal asymptotic_amplitude(const CoprimePair& pair, long n,
                           long precision_bits) {
  if (n < 1) {
    throw std::invalid_argument("asymptotic_amplitude: n must be >= 1");
  }
  const long work = precision_bits + 32;
  const PReal pi = PReal::pi(work);
  const PReal k_real =
      PReal::from_rational(mpq_class(pair.k - 1, pair.k), work);

  // exponent pi sqrt(2 K n / 3)
  const PReal expo =
      pi *
      PReal::from_rational(mpq_class(2 * (pair.k - 1) * n, 3 * pair.k), work)
          .sqrt();

  PReal numer = PReal::from_long(3, work).rootn(4) * expo.exp();
  PReal denom = PReal::from_long(8, work).rootn(4);  // 2^(3/4)
  denom = denom * k_real.rootn(4);
  denom = denom * PReal::from_long(n, work).rootn(4);
  denom = denom * pi * pair.t;
  denom = denom * PReal::from_long(pair.k, work).sqrt();
  return (numer / denom).round_to(precision_bits);
}

PReal asymptotic_prediction(const CoprimePair& pair, long r, long n,
                            long precision_bits) {
  if (n < 2) {
    throw std::invalid_argument("asymptotic_prediction: n must be >= 2");
  }
  const long work = precision_bits + 32;
  const auto constants = AsymptoticConstants::compute(pair, work);
  const PReal k_real = PReal::from_rational(constants.big_k, work);
  PReal bracket = (k_real / 2) * PReal::from_long(n, work).ln();
  bracket += bias_value(pair, r, work);
  bracket += constants.c_kt;
  return (asymptotic_amplitude(pair, n, work) * bracket)
      .round_to(precision_bits);
}

long default_k_bound(long t) {
  if (t < 2) throw std::invalid_argument("default_k_bound: t must be >= 2");
  const long work = 128;
  const PReal pi = PReal::pi(work);
  const PReal bound =
      PReal::from_long(6 * (t * t - 1), work) / (pi * pi);
  PReal floor_val(work);
  mpfr_floor(floor_val.get(), bound.get());
  return mpfr_get_si(floor_val.get(), MPFR_RNDN);
}

namespace {

struct KExtremes {
  long k = 0;
  PReal max_gap, min_gap;
  long max_r = 0, max_s = 0, min_r = 0, min_s = 0;
};

KExtremes extremes_for_k(long k, long t, long precision_bits,
                         const TiePolicy& policy) {
  const BiasProfile profile =
      bias_profile(CoprimePair(k, t), precision_bits, policy);
  const GapStats stats = gap_statistics(profile);
  return KExtremes{k,          stats.max_gap, stats.min_gap, stats.max_r,
                   stats.max_s, stats.min_r,   stats.min_s};
}

}  // namespace

SweepRow sweep_modulus(long t, long k_bound, long precision_bits,
                       unsigned workers, const TiePolicy& policy) {
  if (t < 3) throw std::invalid_argument("sweep_modulus: t must be >= 3");
  std::vector<long> ks;
  for (long k = 2; k < k_bound; ++k) {
    if (std::gcd(k, t) == 1) ks.push_back(k);
  }

  SweepRow row;
  row.t = t;
  row.k_bound = k_bound;
  row.precision_bits = precision_bits;
  if (ks.empty()) {
    row.has_data = false;
    return row;
  }

  // Warm the shared psi table before fan-out.
  psi_table(t, precision_bits);

  std::vector<KExtremes> results(ks.size());
  std::vector<std::exception_ptr> errors(ks.size());
  if (workers <= 1 || ks.size() == 1) {
    for (std::size_t i = 0; i < ks.size(); ++i) {
      results[i] = extremes_for_k(ks[i], t, precision_bits, policy);
    }
  } else {
    const unsigned n_threads =
        std::min<unsigned>(workers, static_cast<unsigned>(ks.size()));
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned w = 0; w < n_threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < ks.size(); i += n_threads) {
          try {
            results[i] = extremes_for_k(ks[i], t, precision_bits, policy);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  // Ordered reduction over ascending k; strict comparisons keep the
  // smallest k on ties.
  row.has_data = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const KExtremes& e = results[i];
    if (i == 0 || e.max_gap > row.max_gap) {
      row.max_gap = e.max_gap;
      row.argmax = ExtremalQuad{e.k, e.max_r, e.max_s};
    }
    if (i == 0 || e.min_gap < row.min_gap) {
      row.min_gap = e.min_gap;
      row.argmin = ExtremalQuad{e.k, e.min_r, e.min_s};
    }
  }
  return row;
}

std::vector<SweepRow> sweep_range(long t_min, long t_max, long precision_bits,
                                  unsigned workers,
                                  std::optional<long> k_bound_override,
                                  const TiePolicy& policy) {
  if (t_min < 3 || t_min > t_max) {
    throw std::invalid_argument("sweep_range: need 3 <= t_min <= t_max");
  }
  std::vector<SweepRow> rows;
  rows.reserve(t_max - t_min + 1);
  for (long t = t_min; t <= t_max; ++t) {
    const long k_bound = k_bound_override.value_or(default_k_bound(t));
    rows.push_back(sweep_modulus(t, k_bound, precision_bits, workers, policy));
  }
  return rows;
}

ConjectureReport check_conjecture(long t_min, long t_max, long precision_bits,
                                  unsigned workers) {
  ConjectureReport report;
  report.t_min = t_min;
  report.t_max = t_max;
  report.precision_bits = precision_bits;
  report.all_min_gaps_positive = true;
  report.all_argmax_expected = true;
  report.log_bound_holds = true;
  report.linear_growth_holds = true;

  const auto rows = sweep_range(t_min, t_max, precision_bits, workers);
  for (const auto& row : rows) {
    ConjectureEntry entry;
    entry.row = row;
    if (!row.has_data) {
      report.entries.push_back(entry);
      continue;
    }
    entry.min_gap_positive = row.min_gap.sign() > 0;
    entry.argmax_is_expected =
        row.argmax == ExtremalQuad{row.t - 1, 1, row.t - 1};
    entry.max_over_t = row.max_gap.to_double() / static_cast<double>(row.t);
    entry.neg_log_min_over_sqrt_t =
        -std::log(row.min_gap.to_double()) /
        std::sqrt(static_cast<double>(row.t));

    report.all_min_gaps_positive &= entry.min_gap_positive;
    report.all_argmax_expected &= entry.argmax_is_expected;
    report.observed_log_bound =
        std::max(report.observed_log_bound, entry.neg_log_min_over_sqrt_t);
    if (entry.neg_log_min_over_sqrt_t >= report.log_bound_slack) {
      report.log_bound_holds = false;
    }
    if (row.t >= 15 &&
        (entry.max_over_t <= 0.7 || entry.max_over_t >= 1.3)) {
      report.linear_growth_holds = false;
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

std::string render_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "t,k_bound,M_t,m_t,argmax_k,argmax_r,argmax_s,argmin_k,argmin_r,"
      "argmin_s,precision_bits\n";
  for (const auto& row : rows) {
    out += std::to_string(row.t) + "," + std::to_string(row.k_bound) + ",";
    if (row.has_data) {
      out += row.max_gap.to_decimal() + "," + row.min_gap.to_decimal() + "," +
             std::to_string(row.argmax.k) + "," +
             std::to_string(row.argmax.r) + "," +
             std::to_string(row.argmax.s) + "," +
             std::to_string(row.argmin.k) + "," +
             std::to_string(row.argmin.r) + "," +
             std::to_string(row.argmin.s);
    } else {
      out += ",,,,,,,";
    }
    out += "," + std::to_string(row.precision_bits) + "\n";
  }
  return out;
}

std::string render_sweep_json(const std::vector<SweepRow>& rows) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json j;
    j["t"] = row.t;
    j["k_bound"] = row.k_bound;
    j["precision_bits"] = row.precision_bits;
    j["has_data"] = row.has_data;
    if (row.has_data) {
      j["M_t"] = row.max_gap.to_decimal();
      j["m_t"] = row.min_gap.to_decimal();
      j["argmax_k"] = row.argmax.k;
      j["argmax_r"] = row.argmax.r;
      j["argmax_s"] = row.argmax.s;
      j["argmin_k"] = row.argmin.k;
      j["argmin_r"] = row.argmin.r;
      j["argmin_s"] = row.argmin.s;
    }
    doc["rows"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

std::string render_sweep_text(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  for (const auto& row : rows) {
    out << "t=" << row.t << " k<" << row.k_bound;
    if (!row.has_data) {
      out << "  (empty k range)\n";
      continue;
    }
    out << "  M_t=" << row.max_gap.to_decimal(12)
        << " at (k,r,s)=(" << row.argmax.k << "," << row.argmax.r << ","
        << row.argmax.s << ")"
        << "  m_t=" << row.min_gap.to_decimal(12)
        << " at (k,r,s)=(" << row.argmin.k << "," << row.argmin.r << ","
        << row.argmin.s << ")\n";
  }
  return out.str();
}

void emit_report(const std::vector<SweepRow>& rows, ReportFormat format,
                 std::ostream& out, const SvgOptions& svg) {
  switch (format) {
    case ReportFormat::csv:
      out << render_sweep_csv(rows);
      break;
    case ReportFormat::json:
      out << render_sweep_json(rows);
      break;
    case ReportFormat::svg:
      if (rows.empty()) {
        throw std::invalid_argument("emit_report: svg needs nonempty rows");
      }
      out << render_sweep_svg(rows, svg);
      break;
    case ReportFormat::text:
      out << render_sweep_text(rows);
      break;
  }
  if (!out) throw std::runtime_error("emit_report: write failed");
}

std::string conjecture_report_text(const ConjectureReport& report) {
  std::ostringstream out;
  out << "conjecture sweep t=" << report.t_min << ".." << report.t_max
      << " at " << report.precision_bits << " bits\n";
  for (const auto& e : report.entries) {
    if (!e.row.has_data) {
      out << "t=" << e.row.t << "  (empty k range)\n";
      continue;
    }
    out << "t=" << e.row.t << "  M_t/t=" << e.max_over_t
        << "  -log(m_t)/sqrt(t)=" << e.neg_log_min_over_sqrt_t
        << "  argmax=(" << e.row.argmax.k << "," << e.row.t << ","
        << e.row.argmax.r << "," << e.row.argmax.s << ")"
        << (e.argmax_is_expected ? " [expected]" : " [UNEXPECTED]") << "\n";
  }
  out << "m_t > 0 for all t:            "
      << (report.all_min_gaps_positive ? "PASS (theorem)" : "FAIL (theorem)")
      << "\n";
  out << "argmax always (t-1,t,1,t-1):  "
      << (report.all_argmax_expected ? "yes" : "no") << " (conjecture check)\n";
  out << "-log m_t < " << report.log_bound_slack
      << " sqrt(t):          " << (report.log_bound_holds ? "yes" : "no")
      << " (conjecture check, observed bound "
      << report.observed_log_bound << ")\n";
  out << "M_t/t in (0.7, 1.3), t>=15:   "
      << (report.linear_growth_holds ? "yes" : "no") << " (conjecture check)\n";
  return out.str();
}

std::string conjecture_report_json(const ConjectureReport& report) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["t_min"] = report.t_min;
  doc["t_max"] = report.t_max;
  doc["precision_bits"] = report.precision_bits;
  doc["all_min_gaps_positive"] = report.all_min_gaps_positive;
  doc["all_argmax_expected"] = report.all_argmax_expected;
  doc["observed_log_bound"] = report.observed_log_bound;
  doc["log_bound_slack"] = report.log_bound_slack;
  doc["log_bound_holds"] = report.log_bound_holds;
  doc["linear_growth_holds"] = report.linear_growth_holds;
  doc["entries"] = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json j;
    j["t"] = e.row.t;
    j["has_data"] = e.row.has_data;
    if (e.row.has_data) {
      j["M_t"] = e.row.max_gap.to_decimal();
      j["m_t"] = e.row.min_gap.to_decimal();
      j["M_t_over_t"] = e.max_over_t;
      j["neg_log_m_t_over_sqrt_t"] = e.neg_log_min_over_sqrt_t;
      j["argmax_k"] = e.row.argmax.k;
      j["argmax_r"] = e.row.argmax.r;
      j["argmax_s"] = e.row.argmax.s;
      j["argmax_expected"] = e.argmax_is_expected;
      j["min_gap_positive"] = e.min_gap_positive;
    }
    doc["entries"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace partbias
