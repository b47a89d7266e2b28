#include "partbias/rational_digamma.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace partbias {

const char* const kEulerGammaReference =
    "0.577215664901532860606512090082402431042159335939923598805767";

namespace {

void check_digamma_args(long p, long q, long precision_bits) {
  if (p < 1) throw std::invalid_argument("digamma: p must be >= 1");
  if (q < 1) throw std::invalid_argument("digamma: q must be >= 1");
  if (p > q) throw std::invalid_argument("digamma: p must be <= q");
  if (precision_bits < kMinPrecisionBits) {
    throw std::invalid_argument("digamma: precision_bits must be >= " +
                                std::to_string(kMinPrecisionBits));
  }
}

long ceil_log2(long n) {
  long bits = 0;
  while ((1L << bits) < n) ++bits;
  return bits;
}

// --- Bernoulli numbers -----------------------------------------------------

std::mutex g_bernoulli_mutex;
std::shared_ptr<const std::vector<mpq_class>> g_bernoulli =
    std::make_shared<const std::vector<mpq_class>>();

// B_m = -(1/(m+1)) * sum_{j<m} C(m+1, j) B_j, B_0 = 1.
std::vector<mpq_class> extend_bernoulli(const std::vector<mpq_class>& base,
                                        std::size_t max_index) {
  std::vector<mpq_class> b = base;
  if (b.empty()) b.emplace_back(1);
  mpz_class binom;
  for (std::size_t m = b.size(); m <= max_index; ++m) {
    mpq_class sum(0);
    for (std::size_t j = 0; j < m; ++j) {
      if (j > 2 && j % 2 == 1) continue;  // odd B_j vanish past B_1
      mpz_bin_uiui(binom.get_mpz_t(), m + 1, j);
      sum += mpq_class(binom) * b[j];
    }
    sum /= -static_cast<long>(m + 1);
    sum.canonicalize();
    b.push_back(sum);
  }
  return b;
}

// --- asymptotic series core ------------------------------------------------

// psi(p/q) at working precision `work_bits`, truncation error < 2^-target_exp.
// Shifts the argument to z = p/q + shift with z large enough that the
// enveloping remainder bound of the asymptotic series reaches the target.
PReal digamma_series_impl(long p, long q, long work_bits, long target_exp) {
  // Enveloping bound: remainder < first omitted term, and the smallest term
  // of the divergent series is ~e^(-2 pi z); z >= 0.1103 * target_exp brings
  // it below 2^-target_exp. Margin of 8 on top.
  const long shift =
      static_cast<long>(std::ceil(0.1103 * static_cast<double>(target_exp))) +
      8;

  const PReal z = PReal::from_rational(
      mpq_class(p + shift * q, q), work_bits);
  PReal acc = z.ln();
  acc -= PReal::from_rational(mpq_class(1, 2), work_bits) / z;

  const PReal eps = PReal::exp2i(-target_exp, kMinPrecisionBits);
  const PReal z2inv = PReal::from_long(1, work_bits) / (z * z);
  PReal power = z2inv;

  auto bernoulli = bernoulli_numbers(64);
  for (std::size_t m = 1;; ++m) {
    if (2 * m >= bernoulli->size()) {
      bernoulli = bernoulli_numbers(2 * m + 64);
    }
    PReal term =
        PReal::from_rational((*bernoulli)[2 * m], work_bits) * power /
        static_cast<long>(2 * m);
    acc -= term;
    if (term.abs() < eps) break;
    power = power * z2inv;
    if (m > 100000) {
      throw std::logic_error("digamma series failed to converge");
    }
  }

  // Undo the shift: psi(x) = psi(x + shift) - sum_{i=0}^{shift-1} 1/(x+i).
  for (long i = 0; i < shift; ++i) {
    acc -= PReal::from_rational(mpq_class(q, p + i * q), work_bits);
  }
  return acc;
}

PReal euler_gamma_impl(long work_bits, long target_exp) {
  return -digamma_series_impl(1, 1, work_bits, target_exp);
}

// Memoized gamma per exact working precision; population is idempotent.
std::mutex g_gamma_mutex;
std::map<long, PReal> g_gamma_cache;

PReal cached_gamma(long work_bits, long target_exp) {
  {
    std::lock_guard<std::mutex> lock(g_gamma_mutex);
    auto it = g_gamma_cache.find(work_bits);
    if (it != g_gamma_cache.end()) return it->second;
  }
  PReal value = euler_gamma_impl(work_bits, target_exp);
  std::lock_guard<std::mutex> lock(g_gamma_mutex);
  return g_gamma_cache.emplace(work_bits, std::move(value)).first->second;
}

}  // namespace

std::shared_ptr<const std::vector<mpq_class>> bernoulli_numbers(
    std::size_t max_index) {
  {
    std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
    if (g_bernoulli->size() > max_index) return g_bernoulli;
  }
  // Round the target up so repeated callers extend in chunks.
  const std::size_t target = ((max_index / 64) + 1) * 64;
  auto snapshot = [] {
    std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
    return g_bernoulli;
  }();
  auto grown = std::make_shared<const std::vector<mpq_class>>(
      extend_bernoulli(*snapshot, target));
  std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
  if (g_bernoulli->size() < grown->size()) g_bernoulli = grown;
  return g_bernoulli;
}

PReal euler_gamma(long precision_bits) {
  if (precision_bits < kMinPrecisionBits) {
    throw std::invalid_argument("euler_gamma: precision_bits must be >= " +
                                std::to_string(kMinPrecisionBits));
  }
  const long work = precision_bits + 48;
  return cached_gamma(work, precision_bits + 16).round_to(precision_bits);
}

PReal digamma_rational(long p, long q, long precision_bits) {
  check_digamma_args(p, q, precision_bits);
  const long g = std::gcd(p, q);
  p /= g;
  q /= g;

  const long target_exp = precision_bits + 16;
  const long work = precision_bits + 48 + 2 * ceil_log2(q + 1);
  if (p == q) {  // psi(1) = -gamma
    return (-cached_gamma(work, target_exp)).round_to(precision_bits);
  }

  // Gauss: psi(p/q) = -gamma - ln(2q) - (pi/2) cot(pi p/q)
  //                   + 2 sum_{j=1}^{floor((q-1)/2)} cos(2 pi j p/q) ln sin(pi j/q)
  const PReal pi = PReal::pi(work);
  PReal acc = -cached_gamma(work, target_exp);
  acc -= PReal::from_long(2 * q, work).ln();
  acc -= (pi / 2) * ((pi * p) / q).cot();
  for (long j = 1; 2 * j < q; ++j) {
    const long a = (2 * j * p) % (2 * q);  // angle reduction: cos period 2 pi
    const PReal cosine = ((pi * a) / q).cos();
    const PReal log_sine = ((pi * j) / q).sin().ln();
    acc += 2 * (cosine * log_sine);
  }
  return acc.round_to(precision_bits);
}

PReal digamma_series_oracle(long p, long q, long precision_bits) {
  check_digamma_args(p, q, precision_bits);
  const long g = std::gcd(p, q);
  p /= g;
  q /= g;
  const long work = precision_bits + 48 + ceil_log2(q + 1);
  return digamma_series_impl(p, q, work, precision_bits + 16)
      .round_to(precision_bits);
}

PReal digamma_rational_extended(long p, long q, long precision_bits) {
  if (p < 1 || q < 1) {
    throw std::invalid_argument("digamma: p and q must be >= 1");
  }
  if (p <= q) return digamma_rational(p, q, precision_bits);
  // psi(p/q) = psi(a/q) + sum over the shifted-down arguments, a = p mod q
  // mapped into 1..q.
  const long a = ((p - 1) % q) + 1;
  const long steps = (p - a) / q;
  const long work = precision_bits + 48 + ceil_log2(steps + 2);
  PReal acc = digamma_rational(a, q, work);
  for (long i = 0; i < steps; ++i) {
    acc += PReal::from_rational(mpq_class(q, a + i * q), work);
  }
  return acc.round_to(precision_bits);
}

PsiTableCache& PsiTableCache::instance() {
  static PsiTableCache cache;
  return cache;
}

std::shared_ptr<const std::vector<PReal>> PsiTableCache::get(
    long t, long precision_bits) {
  if (t < 1) throw std::invalid_argument("psi table: t must be >= 1");
  const std::pair<long, long> key{t, precision_bits};
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = tables_.find(key);
    if (it != tables_.end()) {
      ++hits_;
      return it->second;
    }
    ++misses_;
  }
  auto table = std::make_shared<std::vector<PReal>>();
  table->reserve(t);
  for (long j = 1; j <= t; ++j) {
    table->push_back(digamma_rational(j, t, precision_bits));
  }
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = tables_.emplace(key, std::move(table));
  return it->second;
}

PsiTableCache::Stats PsiTableCache::stats() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return Stats{hits_, misses_};
}

void PsiTableCache::reset_stats() {
  std::lock_guard<std::mutex> lock(mutex_);
  hits_ = 0;
  misses_ = 0;
}

std::shared_ptr<const std::vector<PReal>> psi_table(long t,
                                                    long precision_bits) {
  return PsiTableCache::instance().get(t, precision_bits);
}

}  // namespace partbias
