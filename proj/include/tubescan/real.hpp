#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "tubescan/bigfloat.hpp"

namespace tubescan {

// Working precision for enclosures: 320 bits, about 96 decimal digits.
inline constexpr mpfr_prec_t kRealPrec = 320;

// A real number known either exactly (rational) or by an enclosure [lo, hi]
// with outward rounding. Operations stay exact while the result is rational.
class Real {
 public:
  Real() : Real(mpq_class(0)) {}
  Real(const mpq_class& q);  // NOLINT: implicit by design
  Real(long v) : Real(mpq_class(v)) {}  // NOLINT
  static Real range(BigFloat lo, BigFloat hi);

  bool is_exact() const { return exact_.has_value(); }
  const mpq_class& exact_value() const { return *exact_; }
  const BigFloat& lower() const { return lo_; }
  const BigFloat& upper() const { return hi_; }

  // Decimal with `digits` significant digits, rounded toward -inf / +inf.
  std::string down(int digits) const { return lo_.to_sci(digits, MPFR_RNDD); }
  std::string up(int digits) const { return hi_.to_sci(digits, MPFR_RNDU); }

 private:
  std::optional<mpq_class> exact_;
  BigFloat lo_, hi_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
// x^e for x >= 0 (x > 0 when e <= 0).
Real pow(const Real& x, const mpq_class& e);
Real sqrt(const Real& x);
// Smallest integer certainly >= x; exact ceiling for exact x.
mpz_class ceil_up(const Real& x);

// Three-way certainty tests on enclosures.
bool certainly_less(const Real& a, const Real& b);
bool certainly_leq(const Real& a, const Real& b);
bool certainly_positive(const Real& a);
bool maybe_zero_or_negative(const Real& a);

}  // namespace tubescan
