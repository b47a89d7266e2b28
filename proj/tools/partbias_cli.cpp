// Command-line front end: exact part counts, bias profiles, L-values,
// twists, the separating-twist construction, and the conjecture sweep.
// Data goes to stdout (or --output-path); diagnostics go to stderr.
// Exit codes: 0 ok, 1 usage error, 2 tie-escalation failure, 3 I/O error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "partbias/bias_order.hpp"
#include "partbias/partition_counts.hpp"
#include "partbias/periodic_lfunctions.hpp"
#include "partbias/preal.hpp"
#include "partbias/sweep_report.hpp"

namespace {

using namespace partbias;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitEscalation = 2;
constexpr int kExitIo = 3;

struct Options {
  long precision_bits = 192;
  std::string output_format = "text";
  std::string output_path;  // empty = stdout
  std::optional<long> k_bound_override;
  long oracle_bound = 40;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
};

// Output sink: stdout unless --output-path names a file.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) {
        throw std::ios_base::failure("cannot open output path '" + path + "'");
      }
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void finish() {
    if (file_) {
      file_->flush();
      if (!*file_) throw std::ios_base::failure("write failed");
    } else {
      std::cout.flush();
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  if (name == "svg") return ReportFormat::svg;
  if (name == "text") return ReportFormat::text;
  throw CLI::ValidationError("--output-format", "unknown format '" + name + "'");
}

std::vector<PeriodicFunction> load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::ios_base::failure("cannot open fixture '" + path + "'");
  }
  return parse_fixture(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"congruence-class bias in k-indivisible partitions"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print usage");  // flags are long-form only
  app.set_config("--config", "", "key=value config file (flags override it)");

  Options opt;
  app.add_option("--precision-bits", opt.precision_bits,
                 "working precision in bits (>= 64)")
      ->check(CLI::Range(64L, 1L << 20));
  app.add_option("--output-format", opt.output_format,
                 "text|csv|json|svg (where supported)");
  app.add_option("--output-path", opt.output_path,
                 "write data here instead of stdout");
  app.add_option("--k-bound", opt.k_bound_override,
                 "override the default k bound in sweeps");
  app.add_option("--oracle-bound", opt.oracle_bound,
                 "max n for the brute-force oracle");
  app.add_option("--workers", opt.workers, "worker threads for sweeps")
      ->check(CLI::Range(1u, 1024u));

  long k = 0, t = 0, n = 0, h = 0, r = 0, s = 0;
  std::optional<long> r_opt;
  long t_min = 3, t_max = 10;
  long block_count = 100000;
  bool with_oracle = false;
  std::string fixture_path;

  auto* count = app.add_subcommand(
      "count", "exact number of parts == r (mod t) over k-indivisible "
               "partitions of n");
  count->add_option("--k", k)->required();
  count->add_option("--t", t)->required();
  count->add_option("--r", r)->required();
  count->add_option("--n", n)->required();
  bool count_brute = false;
  count->add_flag("--oracle", count_brute,
                  "use the enumeration oracle (n capped by --oracle-bound)");

  auto* psi = app.add_subcommand(
      "psi", "second-order bias values for the pair (k, t)");
  psi->add_option("--k", k)->required();
  psi->add_option("--t", t)->required();
  psi->add_option("--r", r_opt, "single residue (default: all)");

  auto* order = app.add_subcommand(
      "order", "residues 1..t sorted by bias value, losers first");
  order->add_option("--k", k)->required();
  order->add_option("--t", t)->required();

  auto* gaps = app.add_subcommand("gaps", "pairwise bias gap extremes");
  gaps->add_option("--k", k)->required();
  gaps->add_option("--t", t)->required();

  auto* lvalue = app.add_subcommand(
      "lvalue", "L(1, f) for each function in a fixture file");
  lvalue->add_option("--file", fixture_path)->required();
  lvalue->add_flag("--oracle", with_oracle,
                   "also evaluate by partial sums and print the difference");
  lvalue->add_option("--block-count", block_count,
                     "periods summed by the oracle");

  auto* twist_cmd = app.add_subcommand(
      "twist", "relabel fixture functions by a unit h (prints fixture lines)");
  twist_cmd->add_option("--file", fixture_path)->required();
  twist_cmd->add_option("--h", h)->required();

  auto* separate = app.add_subcommand(
      "separate", "h coprime to t with r h == r and s h != s (mod t)");
  separate->add_option("--r", r)->required();
  separate->add_option("--s", s)->required();
  separate->add_option("--t", t)->required();

  auto* asym = app.add_subcommand(
      "asym", "asymptotic part-count prediction for class r at n");
  asym->add_option("--k", k)->required();
  asym->add_option("--t", t)->required();
  asym->add_option("--r", r)->required();
  asym->add_option("--n", n)->required();

  auto* sweep = app.add_subcommand(
      "sweep", "per-t extremes of pairwise bias gaps over k");
  sweep->add_option("--t-min", t_min)->required();
  sweep->add_option("--t-max", t_max)->required();

  auto* conjecture = app.add_subcommand(
      "conjecture", "gap-growth report over a range of t");
  conjecture->add_option("--t-min", t_min)->required();
  conjecture->add_option("--t-max", t_max)->required();

  // global flags may follow the subcommand name; help stays long-form
  for (CLI::App* sub : app.get_subcommands(nullptr)) {
    sub->fallthrough();
    sub->set_help_flag("--help", "print usage");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      return app.exit(e);
    }
    app.exit(e);
    return kExitUsage;
  }

  try {
    Sink sink(opt.output_path);
    std::ostream& out = sink.stream();

    if (*count) {
      const CoprimePair pair(k, t);
      if (count_brute) {
        out << brute_force_parts_count(k, t, r, n, opt.oracle_bound).get_str()
            << "\n";
      } else {
        const auto table = build_partition_table(k, n);
        out << parts_count_in_class(pair, r, n, table).get_str() << "\n";
      }
    } else if (*psi) {
      const CoprimePair pair(k, t);
      if (r_opt) {
        out << bias_value(pair, *r_opt, opt.precision_bits).to_decimal()
            << "\n";
      } else {
        for (long i = 1; i <= t; ++i) {
          out << i << " "
              << bias_value(pair, i, opt.precision_bits).to_decimal() << "\n";
        }
      }
    } else if (*order) {
      const auto profile = bias_profile(CoprimePair(k, t), opt.precision_bits);
      for (std::size_t i = 0; i < profile.order.size(); ++i) {
        out << (i ? " " : "") << profile.order[i];
      }
      out << "\n";
    } else if (*gaps) {
      const auto stats = gap_statistics(
          bias_profile(CoprimePair(k, t), opt.precision_bits));
      out << "pairs " << stats.gaps.size() << "\n";
      out << "max " << stats.max_r << " " << stats.max_s << " "
          << stats.max_gap.to_decimal() << "\n";
      out << "min " << stats.min_r << " " << stats.min_s << " "
          << stats.min_gap.to_decimal() << "\n";
    } else if (*lvalue) {
      const auto functions = load_fixture(fixture_path);
      for (std::size_t i = 0; i < functions.size(); ++i) {
        const PReal direct = l_value_digamma(functions[i], opt.precision_bits);
        out << i + 1 << " " << direct.to_decimal();
        if (with_oracle) {
          const auto est = l_value_partial_sums(functions[i], block_count,
                                                opt.precision_bits);
          out << " " << est.value.to_decimal() << " "
              << (direct - est.value).abs().to_decimal(12) << " "
              << est.error_estimate;
        }
        out << "\n";
      }
    } else if (*twist_cmd) {
      for (const auto& f : load_fixture(fixture_path)) {
        out << to_fixture_line(twist(f, h)) << "\n";
      }
    } else if (*separate) {
      out << find_separating_twist(r, s, t) << "\n";
    } else if (*asym) {
      out << asymptotic_prediction(CoprimePair(k, t), r, n,
                                   opt.precision_bits)
                 .to_decimal()
          << "\n";
    } else if (*sweep) {
      const auto rows =
          sweep_range(t_min, t_max, opt.precision_bits, opt.workers,
                      opt.k_bound_override);
      emit_report(rows, parse_format(opt.output_format), out);
    } else if (*conjecture) {
      const auto report =
          check_conjecture(t_min, t_max, opt.precision_bits, opt.workers);
      if (opt.output_format == "json") {
        out << conjecture_report_json(report);
      } else if (opt.output_format == "text") {
        out << conjecture_report_text(report);
      } else {
        throw CLI::ValidationError(
            "--output-format",
            "conjecture supports text or json, got '" + opt.output_format +
                "'");
      }
    }

    sink.finish();
    return kExitOk;
  } catch (const TieEscalationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEscalation;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
