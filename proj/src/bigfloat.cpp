#include "tubescan/bigfloat.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace tubescan {

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const mpz_class& z, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, z.get_mpz_t(), rnd);
}

BigFloat::BigFloat(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, q.get_mpq_t(), rnd);
}

BigFloat::BigFloat(double d, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, d, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::infinity(mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_set_inf(r.v_, 1);
  return r;
}

std::string BigFloat::to_sci(int digits, mpfr_rnd_t rnd) const {
  if (mpfr_zero_p(v_)) return "0";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_nan_p(v_)) return "nan";
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, rnd);
  std::string m(s);
  mpfr_free_str(s);
  std::string out;
  if (m[0] == '-') {
    out = "-";
    m.erase(0, 1);
  }
  out += m.substr(0, 1);
  if (m.size() > 1) out += "." + m.substr(1);
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

namespace {
mpfr_prec_t pmax(const BigFloat& a, const BigFloat& b) { return std::max(a.prec(), b.prec()); }
}  // namespace

BigFloat operator+(const BigFloat& a, const BigFloat& b) { return add(a, b, MPFR_RNDN, pmax(a, b)); }
BigFloat operator-(const BigFloat& a, const BigFloat& b) { return sub(a, b, MPFR_RNDN, pmax(a, b)); }
BigFloat operator*(const BigFloat& a, const BigFloat& b) { return mul(a, b, MPFR_RNDN, pmax(a, b)); }
BigFloat operator/(const BigFloat& a, const BigFloat& b) { return div(a, b, MPFR_RNDN, pmax(a, b)); }

BigFloat operator-(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}

BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_add(r.get(), a.get(), b.get(), rnd);
  return r;
}

BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_sub(r.get(), a.get(), b.get(), rnd);
  return r;
}

BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_mul(r.get(), a.get(), b.get(), rnd);
  return r;
}

BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_div(r.get(), a.get(), b.get(), rnd);
  return r;
}

BigFloat pow(const BigFloat& a, const BigFloat& e, mpfr_rnd_t rnd, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_pow(r.get(), a.get(), e.get(), rnd);
  return r;
}

BigFloat log(const BigFloat& a, mpfr_rnd_t rnd) {
  BigFloat r(a.prec());
  mpfr_log(r.get(), a.get(), rnd);
  return r;
}

BigFloat sqrt(const BigFloat& a, mpfr_rnd_t rnd) {
  BigFloat r(a.prec());
  mpfr_sqrt(r.get(), a.get(), rnd);
  return r;
}

BigFloat abs(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_abs(r.get(), a.get(), MPFR_RNDN);
  return r;
}

BigFloat log_of(const mpz_class& z, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  // z may exceed the working precision; mpfr_log on a rounded z is off by at
  // most one ulp of relative error, so round z in the direction of rnd first.
  BigFloat x(z, prec + 16, rnd);
  BigFloat r(prec);
  mpfr_log(r.get(), x.get(), rnd);
  return r;
}

}  // namespace tubescan
