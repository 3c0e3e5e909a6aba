#include "tubescan/real.hpp"

#include <array>
#include <stdexcept>
#include <utility>

#include "tubescan/arith.hpp"

namespace tubescan {

Real::Real(const mpq_class& q)
    : exact_(q), lo_(q, kRealPrec, MPFR_RNDD), hi_(q, kRealPrec, MPFR_RNDU) {}

Real Real::range(BigFloat lo, BigFloat hi) {
  Real r;
  r.exact_.reset();
  r.lo_ = std::move(lo);
  r.hi_ = std::move(hi);
  return r;
}

namespace {

using Op = BigFloat (*)(const BigFloat&, const BigFloat&, mpfr_rnd_t, mpfr_prec_t);

Real corners(const Real& a, const Real& b, Op op) {
  const BigFloat* as[2] = {&a.lower(), &a.upper()};
  const BigFloat* bs[2] = {&b.lower(), &b.upper()};
  BigFloat lo = BigFloat::infinity(kRealPrec), hi = -BigFloat::infinity(kRealPrec);
  for (auto x : as)
    for (auto y : bs) {
      BigFloat d = op(*x, *y, MPFR_RNDD, kRealPrec);
      BigFloat u = op(*x, *y, MPFR_RNDU, kRealPrec);
      if (d < lo) lo = d;
      if (u > hi) hi = u;
    }
  return Real::range(lo, hi);
}

}  // namespace

Real operator+(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return Real(mpq_class(a.exact_value() + b.exact_value()));
  return Real::range(add(a.lower(), b.lower(), MPFR_RNDD, kRealPrec),
                     add(a.upper(), b.upper(), MPFR_RNDU, kRealPrec));
}

Real operator-(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return Real(mpq_class(a.exact_value() - b.exact_value()));
  return Real::range(sub(a.lower(), b.upper(), MPFR_RNDD, kRealPrec),
                     sub(a.upper(), b.lower(), MPFR_RNDU, kRealPrec));
}

Real operator*(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return Real(mpq_class(a.exact_value() * b.exact_value()));
  return corners(a, b, &mul);
}

Real operator/(const Real& a, const Real& b) {
  if (b.lower().sign() <= 0 && b.upper().sign() >= 0) throw std::domain_error("division by an enclosure containing 0");
  if (a.is_exact() && b.is_exact()) return Real(mpq_class(a.exact_value() / b.exact_value()));
  return corners(a, b, &div);
}

Real min(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return a.exact_value() <= b.exact_value() ? a : b;
  if (certainly_leq(a, b)) return a;
  if (certainly_leq(b, a)) return b;
  return Real::range(a.lower() < b.lower() ? a.lower() : b.lower(),
                     a.upper() < b.upper() ? a.upper() : b.upper());
}

Real max(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return a.exact_value() >= b.exact_value() ? a : b;
  if (certainly_leq(a, b)) return b;
  if (certainly_leq(b, a)) return a;
  return Real::range(a.lower() > b.lower() ? a.lower() : b.lower(),
                     a.upper() > b.upper() ? a.upper() : b.upper());
}

Real pow(const Real& x, const mpq_class& e) {
  if (x.lower().sign() < 0) throw std::domain_error("pow of a negative base");
  if (e <= 0 && x.lower().sign() <= 0) throw std::domain_error("non-positive power of zero");
  if (e == 0) return Real(mpq_class(1));
  if (x.is_exact()) {
    const mpz_class& p = e.get_num();
    const mpz_class& q = e.get_den();
    if (p.fits_slong_p() && q.fits_ulong_p() && abs(p) <= 4096) {
      mpq_class t = ipow(x.exact_value(), p.get_si()), root;
      if (exact_root(t, q.get_ui(), root)) return Real(root);
    }
  }
  BigFloat elo(e, kRealPrec, MPFR_RNDD), ehi(e, kRealPrec, MPFR_RNDU);
  Real ex = Real::range(elo, ehi);
  // x^e is monotone in each argument separately, so the corners bound it.
  return corners(x, ex, &pow);
}

Real sqrt(const Real& x) { return pow(x, mpq_class(1, 2)); }

mpz_class ceil_up(const Real& x) {
  if (x.is_exact()) return ceil(x.exact_value());
  mpz_class z;
  BigFloat c(x.upper().prec());
  mpfr_ceil(c.get(), x.upper().get());
  mpfr_get_z(z.get_mpz_t(), c.get(), MPFR_RNDU);
  return z;
}

bool certainly_less(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return a.exact_value() < b.exact_value();
  return a.upper() < b.lower();
}

bool certainly_leq(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return a.exact_value() <= b.exact_value();
  return a.upper() <= b.lower();
}

bool certainly_positive(const Real& a) { return a.lower().sign() > 0; }

bool maybe_zero_or_negative(const Real& a) { return a.lower().sign() <= 0; }

}  // namespace tubescan
