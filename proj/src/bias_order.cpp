#include "partbias/bias_order.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace partbias {

namespace {

// Modular inverse via extended Euclid; requires gcd(a, m) = 1, m >= 1.
long mod_inverse(long a, long m) {
  long old_r = a % m, r = m;
  long old_s = 1, s = 0;
  while (r != 0) {
    const long quotient = old_r / r;
    old_r = std::exchange(r, old_r - quotient * r);
    old_s = std::exchange(s, old_s - quotient * s);
  }
  long inv = old_s % m;
  if (inv < 0) inv += m;
  return inv;
}

long tie_threshold_exponent(long precision_bits, const TiePolicy& policy) {
  return -static_cast<long>(
      std::floor(policy.threshold_fraction * static_cast<double>(precision_bits)));
}

}  // namespace

long inverse_residue(long k, long t, long r) {
  if (t < 2) throw std::invalid_argument("inverse_residue: t must be >= 2");
  if (std::gcd(k, t) != 1) {
    throw std::invalid_argument("inverse_residue: gcd(k, t) must be 1");
  }
  if (r < 1 || r > t) {
    throw std::invalid_argument("inverse_residue: r=" + std::to_string(r) +
                                " outside 1.." + std::to_string(t));
  }
  const long x = (mod_inverse(k % t, t) * (r % t)) % t;
  return x == 0 ? t : x;
}

PReal bias_value(const CoprimePair& pair, long r, long precision_bits) {
  if (r < 1 || r > pair.t) {
    throw std::invalid_argument("bias_value: r=" + std::to_string(r) +
                                " outside 1.." + std::to_string(pair.t));
  }
  const auto table = psi_table(pair.t, precision_bits);
  const long x = inverse_residue(pair.k, pair.t, r);
  return -(*table)[r - 1] + (*table)[x - 1] / pair.k;
}

TieEscalationError::TieEscalationError(const CoprimePair& pair, long r_in,
                                       long s_in, long precision_bits_in)
    : std::runtime_error(
          "tie escalation exhausted at " + std::to_string(precision_bits_in) +
          " bits for k=" + std::to_string(pair.k) + ", t=" +
          std::to_string(pair.t) + ", classes r=" + std::to_string(r_in) +
          " and s=" + std::to_string(s_in) +
          "; a genuine tie contradicts the separation theorem, so this is an"
          " implementation bug"),
      k(pair.k),
      t(pair.t),
      r(r_in),
      s(s_in),
      precision_bits(precision_bits_in) {}

BiasProfile bias_profile(const CoprimePair& pair, long precision_bits,
                         const TiePolicy& policy) {
  if (precision_bits < kMinPrecisionBits) {
    throw std::invalid_argument("bias_profile: precision_bits must be >= " +
                                std::to_string(kMinPrecisionBits));
  }
  long prec = precision_bits;
  for (;;) {
    BiasProfile profile{pair, prec, {}, {}};
    profile.values.reserve(pair.t);
    for (long r = 1; r <= pair.t; ++r) {
      profile.values.push_back(bias_value(pair, r, prec));
    }
    profile.order.resize(pair.t);
    std::iota(profile.order.begin(), profile.order.end(), 1L);
    std::sort(profile.order.begin(), profile.order.end(),
              [&](long a, long b) {
                return profile.values[a - 1] < profile.values[b - 1];
              });

    // Adjacent sorted gaps bound the min pairwise gap.
    const PReal threshold =
        PReal::exp2i(tie_threshold_exponent(prec, policy), kMinPrecisionBits);
    long tied_r = 0, tied_s = 0;
    for (long i = 0; i + 1 < pair.t; ++i) {
      const long a = profile.order[i], b = profile.order[i + 1];
      if ((profile.values[b - 1] - profile.values[a - 1]).abs() < threshold) {
        tied_r = std::min(a, b);
        tied_s = std::max(a, b);
        break;
      }
    }
    if (tied_r == 0) return profile;
    if (prec >= policy.max_precision_bits) {
      throw TieEscalationError(pair, tied_r, tied_s, prec);
    }
    prec = std::min(2 * prec, policy.max_precision_bits);
  }
}

GapStats gap_statistics(const BiasProfile& profile) {
  const long t = profile.pair.t;
  GapStats stats{profile.pair,
                 profile.precision_bits,
                 {},
                 PReal(profile.precision_bits),
                 PReal(profile.precision_bits),
                 0,
                 0,
                 0,
                 0};
  stats.gaps.reserve(static_cast<std::size_t>(t) * (t - 1) / 2);
  for (long r = 1; r <= t; ++r) {
    for (long s = r + 1; s <= t; ++s) {
      PReal gap = (profile.value(r) - profile.value(s)).abs();
      if (stats.max_r == 0 || gap > stats.max_gap) {
        stats.max_gap = gap;
        stats.max_r = r;
        stats.max_s = s;
      }
      if (stats.min_r == 0 || gap < stats.min_gap) {
        stats.min_gap = gap;
        stats.min_r = r;
        stats.min_s = s;
      }
      stats.gaps.push_back(std::move(gap));
    }
  }
  return stats;
}

long find_separating_twist(long r, long s, long t) {
  if (t < 2) throw std::invalid_argument("separating twist: t must be >= 2");
  if (r < 1 || r > t || s < 1 || s > t) {
    throw std::invalid_argument("separating twist: r and s must lie in 1.." +
                                std::to_string(t));
  }
  const long a = std::gcd(r, t);
  const long b = std::gcd(s, t);
  if (a <= 1) {
    throw std::invalid_argument(
        "separating twist: gcd(r, t) must exceed 1 (got gcd=" +
        std::to_string(a) + ")");
  }
  if (b <= 1) {
    throw std::invalid_argument(
        "separating twist: gcd(s, t) must exceed 1 (got gcd=" +
        std::to_string(b) + ")");
  }
  if (std::gcd(a, b) != 1) {
    throw std::invalid_argument(
        "separating twist: gcd(r, t) and gcd(s, t) must be coprime (got " +
        std::to_string(a) + " and " + std::to_string(b) + ")");
  }
  long odd = a;
  while (odd % 2 == 0) odd /= 2;
  if (odd == 1) {
    throw std::invalid_argument(
        "separating twist: gcd(r, t)=" + std::to_string(a) +
        " has no odd prime factor");
  }
  long p = odd;  // smallest odd prime factor of a
  for (long d = 3; d * d <= odd; d += 2) {
    if (odd % d == 0) {
      p = d;
      break;
    }
  }

  // h = t y / p + 1 with y != 0 (mod p) and t y / p != -1 (mod p); the
  // smallest valid y wins. At most one residue is excluded by the second
  // condition, so y <= 2 < p always exists.
  const long c = (t / p) % p;
  for (long y = 1; y < p; ++y) {
    if ((c * y) % p != p - 1) {
      return (t / p) * y + 1;
    }
  }
  throw std::logic_error("separating twist: no valid y found");
}

}  // namespace partbias
