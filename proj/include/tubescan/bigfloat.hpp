#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace tubescan {

// RAII wrapper over mpfr_t. Arithmetic operators round to nearest at the
// larger operand precision; the named functions take an explicit rounding mode.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 256);
  BigFloat(const mpz_class& z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
  BigFloat(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
  BigFloat(double d, mpfr_prec_t prec);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  // Scientific notation with `digits` significant digits, e.g. "2.5e-2".
  std::string to_sci(int digits, mpfr_rnd_t rnd) const;

  static BigFloat infinity(mpfr_prec_t prec);

 private:
  mpfr_t v_;
};

BigFloat operator+(const BigFloat& a, const BigFloat& b);
BigFloat operator-(const BigFloat& a, const BigFloat& b);
BigFloat operator*(const BigFloat& a, const BigFloat& b);
BigFloat operator/(const BigFloat& a, const BigFloat& b);
BigFloat operator-(const BigFloat& a);
inline bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.get(), b.get()); }
inline bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.get(), b.get()); }
inline bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.get(), b.get()); }
inline bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.get(), b.get()); }
inline bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.get(), b.get()); }

BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, mpfr_prec_t prec);
BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, mpfr_prec_t prec);
BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, mpfr_prec_t prec);
BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, mpfr_prec_t prec);
BigFloat pow(const BigFloat& a, const BigFloat& e, mpfr_rnd_t rnd, mpfr_prec_t prec);
BigFloat log(const BigFloat& a, mpfr_rnd_t rnd = MPFR_RNDN);
BigFloat sqrt(const BigFloat& a, mpfr_rnd_t rnd = MPFR_RNDN);
BigFloat abs(const BigFloat& a);

// log of a positive integer / rational at the given precision.
BigFloat log_of(const mpz_class& z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);

}  // namespace tubescan
