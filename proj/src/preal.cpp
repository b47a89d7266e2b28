#include "partbias/preal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace partbias {

namespace {

long checked_precision(long precision_bits) {
  if (precision_bits < kMinPrecisionBits) {
    throw std::invalid_argument("precision_bits must be at least " +
                                std::to_string(kMinPrecisionBits) + ", got " +
                                std::to_string(precision_bits));
  }
  return precision_bits;
}

}  // namespace

long round_trip_digits(long precision_bits) {
  return 2 + static_cast<long>(
                 std::floor(static_cast<double>(precision_bits) *
                            0.30102999566398119521));
}

PReal::PReal() : PReal(kMinPrecisionBits) {}

PReal::PReal(long precision_bits) {
  mpfr_init2(v_, checked_precision(precision_bits));
  mpfr_set_zero(v_, 1);
}

PReal::PReal(const PReal& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

PReal::PReal(PReal&& other) noexcept {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_swap(v_, other.v_);
}

PReal& PReal::operator=(const PReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

PReal& PReal::operator=(PReal&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

PReal::~PReal() { mpfr_clear(v_); }

PReal PReal::from_long(long v, long precision_bits) {
  PReal r(precision_bits);
  mpfr_set_si(r.v_, v, MPFR_RNDN);
  return r;
}

PReal PReal::from_integer(const mpz_class& v, long precision_bits) {
  PReal r(precision_bits);
  mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
  return r;
}

PReal PReal::from_rational(const mpq_class& v, long precision_bits) {
  PReal r(precision_bits);
  mpfr_set_q(r.v_, v.get_mpq_t(), MPFR_RNDN);
  return r;
}

PReal PReal::from_string(const std::string& s, long precision_bits) {
  PReal r(precision_bits);
  if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  }
  return r;
}

PReal PReal::pi(long precision_bits) {
  PReal r(precision_bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

PReal PReal::exp2i(long e, long precision_bits) {
  PReal r(precision_bits);
  mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

PReal PReal::round_to(long precision_bits) const {
  PReal r(precision_bits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

namespace {

using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

PReal unary(const PReal& a, UnaryFn fn) {
  PReal r(a.precision_bits());
  fn(r.get(), a.get(), MPFR_RNDN);
  return r;
}

PReal binary(const PReal& a, const PReal& b, BinaryFn fn) {
  PReal r(std::min(a.precision_bits(), b.precision_bits()));
  fn(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

}  // namespace

PReal PReal::operator-() const { return unary(*this, mpfr_neg); }
PReal PReal::abs() const { return unary(*this, mpfr_abs); }
PReal PReal::sqrt() const { return unary(*this, mpfr_sqrt); }
PReal PReal::ln() const { return unary(*this, mpfr_log); }
PReal PReal::exp() const { return unary(*this, mpfr_exp); }
PReal PReal::cos() const { return unary(*this, mpfr_cos); }
PReal PReal::sin() const { return unary(*this, mpfr_sin); }
PReal PReal::cot() const { return unary(*this, mpfr_cot); }

PReal PReal::rootn(unsigned long n) const {
  PReal r(precision_bits());
  mpfr_rootn_ui(r.get(), v_, n, MPFR_RNDN);
  return r;
}

PReal operator+(const PReal& a, const PReal& b) { return binary(a, b, mpfr_add); }
PReal operator-(const PReal& a, const PReal& b) { return binary(a, b, mpfr_sub); }
PReal operator*(const PReal& a, const PReal& b) { return binary(a, b, mpfr_mul); }
PReal operator/(const PReal& a, const PReal& b) { return binary(a, b, mpfr_div); }

PReal operator*(const PReal& a, long b) {
  PReal r(a.precision_bits());
  mpfr_mul_si(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}

PReal operator*(long a, const PReal& b) { return b * a; }

PReal operator/(const PReal& a, long b) {
  PReal r(a.precision_bits());
  mpfr_div_si(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}

PReal& PReal::operator+=(const PReal& b) {
  *this = *this + b;
  return *this;
}

PReal& PReal::operator-=(const PReal& b) {
  *this = *this - b;
  return *this;
}

std::string PReal::to_decimal(long digits) const {
  if (digits < 0) digits = round_trip_digits(precision_bits());
  if (digits < 2) digits = 2;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", static_cast<int>(digits - 1), v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace partbias
