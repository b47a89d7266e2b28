#include "partbias/periodic_lfunctions.hpp"

#include <cctype>
#include <cmath>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "partbias/bias_order.hpp"
#include "partbias/rational_digamma.hpp"

namespace partbias {

PeriodicFunction::PeriodicFunction(long t) : t_(t) {
  if (t < 1) throw std::invalid_argument("PeriodicFunction: t must be >= 1");
  values_.resize(static_cast<std::size_t>(t), mpq_class(0));
}

PeriodicFunction::PeriodicFunction(long t, std::vector<mpq_class> values)
    : t_(t), values_(std::move(values)) {
  if (t < 1) throw std::invalid_argument("PeriodicFunction: t must be >= 1");
  if (values_.size() != static_cast<std::size_t>(t)) {
    throw std::invalid_argument("PeriodicFunction: expected " +
                                std::to_string(t) + " values, got " +
                                std::to_string(values_.size()));
  }
}

const mpq_class& PeriodicFunction::at(long n) const {
  if (n < 1) throw std::invalid_argument("PeriodicFunction: n must be >= 1");
  return values_[static_cast<std::size_t>((n - 1) % t_)];
}

mpq_class& PeriodicFunction::slot(long r) {
  if (r < 1 || r > t_) {
    throw std::invalid_argument("PeriodicFunction: residue " +
                                std::to_string(r) + " outside 1.." +
                                std::to_string(t_));
  }
  return values_[static_cast<std::size_t>(r - 1)];
}

bool PeriodicFunction::is_zero() const {
  for (const auto& v : values_) {
    if (v != 0) return false;
  }
  return true;
}

mpq_class residue_sum(const PeriodicFunction& f) {
  mpq_class sum(0);
  for (long r = 1; r <= f.period(); ++r) sum += f.at(r);
  return sum;
}

namespace {

void require_zero_residue(const PeriodicFunction& f, const char* op) {
  const mpq_class res = residue_sum(f);
  if (res != 0) {
    throw std::invalid_argument(
        std::string(op) +
        ": L(1, f) requires a vanishing residue, but sum f(n) = " +
        res.get_str());
  }
}

long ceil_log2(long n) {
  long bits = 0;
  while ((1L << bits) < n) ++bits;
  return bits;
}

}  // namespace

PReal l_value_digamma(const PeriodicFunction& f, long precision_bits) {
  require_zero_residue(f, "l_value_digamma");
  const long t = f.period();
  const long work = precision_bits + 32 + ceil_log2(t + 1);
  const auto table = psi_table(t, work);
  PReal sum(work);
  for (long r = 1; r <= t; ++r) {
    if (f.at(r) == 0) continue;
    sum += PReal::from_rational(f.at(r), work) * (*table)[r - 1];
  }
  return (-sum / t).round_to(precision_bits);
}

LValueEstimate l_value_partial_sums(const PeriodicFunction& f,
                                    long block_count, long precision_bits) {
  require_zero_residue(f, "l_value_partial_sums");
  if (block_count < 10) {
    throw std::invalid_argument(
        "l_value_partial_sums: block_count must be >= 10");
  }
  const long t = f.period();
  const long n_terms = block_count * t;
  const long work = precision_bits + 32 + ceil_log2(n_terms + 1);

  std::vector<PReal> coeff;
  coeff.reserve(t);
  double sum_abs = 0.0;
  for (long r = 1; r <= t; ++r) {
    coeff.push_back(PReal::from_rational(f.at(r), work));
    sum_abs += std::fabs(f.at(r).get_d());
  }

  // Main sum over complete periods, raw mpfr in the hot loop.
  PReal sum(work);
  PReal term(work);
  for (long j = 0; j < block_count; ++j) {
    const unsigned long base = static_cast<unsigned long>(j) *
                               static_cast<unsigned long>(t);
    for (long r = 1; r <= t; ++r) {
      if (f.at(r) == 0) continue;
      mpfr_div_ui(term.get(), coeff[r - 1].get(), base + r, MPFR_RNDN);
      mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    }
  }

  // Euler-Maclaurin on the block remainder h(x) = sum_r f(r)/(x t + r):
  //   tail = integral + h(N)/2 - h'(N)/12 + O(h'''(N))
  // where the integral telescopes to -(1/t) sum_r f(r) ln(N t + r) because
  // the residue vanishes.
  const long N = block_count;
  PReal integral(work), h_n(work), h_prime(work);
  for (long r = 1; r <= t; ++r) {
    if (f.at(r) == 0) continue;
    const long arg = N * t + r;
    integral += coeff[r - 1] * PReal::from_long(arg, work).ln();
    h_n += coeff[r - 1] / arg;
    h_prime += coeff[r - 1] / (PReal::from_long(arg, work) * arg);
  }
  integral = -integral / t;
  h_prime = -h_prime * t;

  sum += integral + h_n / 2 - h_prime / 12;

  // Next Euler-Maclaurin term is h'''(N)/720; |h'''| <= 6 sum|f| / (t N^4).
  const double nd = static_cast<double>(N);
  const double est = sum_abs / (120.0 * static_cast<double>(t) * nd * nd * nd * nd) +
                     std::ldexp(sum_abs * static_cast<double>(n_terms),
                                static_cast<int>(-work + 8));
  return LValueEstimate{sum.round_to(precision_bits), est};
}

PeriodicFunction make_tie_function(const CoprimePair& pair, long r, long s) {
  if (r < 1 || r > pair.t || s < 1 || s > pair.t) {
    throw std::invalid_argument("make_tie_function: r and s must lie in 1.." +
                                std::to_string(pair.t));
  }
  PeriodicFunction f(pair.t);
  const mpq_class inv_k(1, pair.k);
  f.slot(r) -= 1;
  f.slot(s) += 1;
  f.slot(inverse_residue(pair.k, pair.t, r)) += inv_k;
  f.slot(inverse_residue(pair.k, pair.t, s)) -= inv_k;
  return f;
}

PeriodicFunction twist(const PeriodicFunction& f, long h) {
  const long t = f.period();
  if (h < 1 || std::gcd(h, t) != 1) {
    throw std::invalid_argument("twist: h=" + std::to_string(h) +
                                " is not a residue coprime to t=" +
                                std::to_string(t));
  }
  PeriodicFunction g(t);
  for (long n = 1; n <= t; ++n) {
    g.slot(n) = f.at(h * n);
  }
  return g;
}

PeriodicFunction linear_combination(const mpq_class& alpha,
                                    const PeriodicFunction& f,
                                    const mpq_class& beta,
                                    const PeriodicFunction& g) {
  if (f.period() != g.period()) {
    throw std::invalid_argument("linear_combination: periods differ");
  }
  PeriodicFunction out(f.period());
  for (long r = 1; r <= f.period(); ++r) {
    out.slot(r) = alpha * f.at(r) + beta * g.at(r);
  }
  return out;
}

SupportGcds support_gcds(const PeriodicFunction& f) {
  SupportGcds out;
  for (long n = 1; n <= f.period(); ++n) {
    if (f.at(n) != 0) out.insert(std::gcd(n, f.period()));
  }
  return out;
}

namespace {

mpq_class parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw std::invalid_argument("fixture: empty value");
  if (s.find_first_not_of("+-/0123456789") != std::string::npos) {
    throw std::invalid_argument("fixture: '" + text +
                                "' is not an exact rational");
  }
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) {
    throw std::invalid_argument("fixture: cannot parse rational '" + text +
                                "'");
  }
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0) {
    throw std::invalid_argument("fixture: zero denominator in '" + text + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace

PeriodicFunction parse_fixture_line(const std::string& line) {
  const auto colon = line.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("fixture: missing ':' in line '" + line + "'");
  }
  long t = 0;
  try {
    t = std::stol(line.substr(0, colon));
  } catch (const std::exception&) {
    throw std::invalid_argument("fixture: bad period in line '" + line + "'");
  }
  std::vector<mpq_class> values;
  std::string rest = line.substr(colon + 1);
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    values.push_back(parse_rational(item));
  }
  return PeriodicFunction(t, std::move(values));
}

std::vector<PeriodicFunction> parse_fixture(std::istream& in) {
  std::vector<PeriodicFunction> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_fixture_line(line));
  }
  return out;
}

std::string to_fixture_line(const PeriodicFunction& f) {
  std::string out = std::to_string(f.period()) + ": ";
  for (long r = 1; r <= f.period(); ++r) {
    if (r > 1) out += ",";
    out += f.at(r).get_str();
  }
  return out;
}

}  // namespace partbias
