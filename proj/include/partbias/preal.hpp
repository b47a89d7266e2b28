#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace partbias {

// Smallest working precision accepted anywhere in the library.
inline constexpr long kMinPrecisionBits = 64;

// Decimal digits needed so that print -> parse at the same precision is
// value-preserving (1 + ceil(p log10 2), plus one spare).
long round_trip_digits(long precision_bits);

/// Arbitrary-precision real tagged with its working precision in bits.
/// Arithmetic between two PReals rounds to the smaller of the two
/// precisions; operations with machine integers keep the PReal's precision.
/// All rounding is to nearest.
class PReal {
 public:
  PReal();  // zero at kMinPrecisionBits
  explicit PReal(long precision_bits);  // zero at the given precision
  PReal(const PReal& other);
  PReal(PReal&& other) noexcept;
  PReal& operator=(const PReal& other);
  PReal& operator=(PReal&& other) noexcept;
  ~PReal();

  static PReal from_long(long v, long precision_bits);
  static PReal from_integer(const mpz_class& v, long precision_bits);
  static PReal from_rational(const mpq_class& v, long precision_bits);
  // Parses a decimal string (sign, digits, optional exponent). Throws
  // std::invalid_argument on malformed input.
  static PReal from_string(const std::string& s, long precision_bits);
  static PReal pi(long precision_bits);
  // 2^e, exact.
  static PReal exp2i(long e, long precision_bits);

  long precision_bits() const { return mpfr_get_prec(v_); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }

  // Re-rounds to the given precision.
  PReal round_to(long precision_bits) const;

  PReal operator-() const;
  PReal abs() const;
  PReal sqrt() const;
  PReal ln() const;
  PReal exp() const;
  PReal cos() const;
  PReal sin() const;
  PReal cot() const;
  // n-th root (n >= 1).
  PReal rootn(unsigned long n) const;

  friend PReal operator+(const PReal& a, const PReal& b);
  friend PReal operator-(const PReal& a, const PReal& b);
  friend PReal operator*(const PReal& a, const PReal& b);
  friend PReal operator/(const PReal& a, const PReal& b);

  friend PReal operator*(const PReal& a, long b);
  friend PReal operator*(long a, const PReal& b);
  friend PReal operator/(const PReal& a, long b);

  PReal& operator+=(const PReal& b);
  PReal& operator-=(const PReal& b);

  friend bool operator==(const PReal& a, const PReal& b) {
    return mpfr_equal_p(a.v_, b.v_) != 0;
  }
  friend bool operator!=(const PReal& a, const PReal& b) { return !(a == b); }
  friend bool operator<(const PReal& a, const PReal& b) {
    return mpfr_less_p(a.v_, b.v_) != 0;
  }
  friend bool operator>(const PReal& a, const PReal& b) { return b < a; }
  friend bool operator<=(const PReal& a, const PReal& b) { return !(b < a); }
  friend bool operator>=(const PReal& a, const PReal& b) { return !(a < b); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Scientific-notation decimal string; digits < 0 derives the count from
  // the precision so that re-parsing recovers the value exactly.
  std::string to_decimal(long digits = -1) const;

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace partbias
