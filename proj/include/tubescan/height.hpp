#pragma once

#include <gmpxx.h>

#include <vector>

#include "tubescan/bigfloat.hpp"
#include "tubescan/elliptic.hpp"

namespace tubescan {

struct HeightValue {
  double value = 0;  // >= 0
  double tol = 0;    // guaranteed absolute error bound
};

enum class Trivalent { IN, OUT, BOUNDARY };
const char* to_string(Trivalent t);

struct HeightBudget {
  int max_terms = 400;
  long max_precision_bits = 1L << 18;
};

// Canonical height normalized as 1/2 lim 4^-n h(x(2^n P)).
//
// On an integral model y^2 = x^3 + A'x + B' with doubling forms
//   F = X^4 - 2A'X^2Z^2 - 8B'XZ^3 + A'^2Z^4,  G = 4Z(X^3 + A'XZ^2 + B'Z^3)
// the height telescopes into
//   h^(P) = 1/2 h(x0) + 1/2 sum_n 4^-(n+1) (e_inf(x_n) - sum_p k_p(x_n) log p)
// where e_inf = log max(|F|,|G|) on sup-normalized (X,Z) and k_p = v_p gcd(F,G).
// Only primes dividing 2(4A'^3+27B'^2) contribute, and 0 <= k_p <= v_p(Res)
// with Res = 2^8 (4A'^3+27B'^2)^2. e_inf lies in [log m, log Mx] with Mx the
// larger coefficient 1-norm of F, G and m from the cofactor identities
// U F + V G = Z^7, X^7. Truncating after N terms leaves a tail below
// 1/2 (C_inf + sum v_p(Res) log p) 4^-N / 3.
//
// Construct once per curve; const methods are thread-safe.
class HeightEngine {
 public:
  explicit HeightEngine(const CurveOverQ& E, HeightBudget budget = {});

  const CurveOverQ& curve() const { return E_; }

  struct Precise {
    BigFloat value;
    double err;  // absolute error bound on value
  };
  Precise height_mp(const Point& P, double tol) const;
  HeightValue height(const Point& P, double tol) const;

  // Bad primes of the integral model, for diagnostics and tests.
  std::vector<mpz_class> bad_primes() const;
  const mpz_class& model_scale() const { return u_; }
  double log_m() const { return log_m_; }
  double log_Mx() const { return log_Mx_; }

 private:
  struct Bad {
    mpz_class p;
    unsigned long vres;
    double logp;
  };
  mpq_class padic_sum(const Bad& b, const mpz_class& X0, const mpz_class& Z0, int N) const;

  CurveOverQ E_;
  HeightBudget budget_;
  mpz_class u_, A_, B_;
  std::vector<Bad> bad_;
  double log_m_ = 0, log_Mx_ = 0;
};

double naive_height(const mpq_class& x);
double naive_height(const Point& P);

HeightValue canonical_height(const CurveOverQ& E, const Point& P, double tol);
double nt_pairing(const CurveOverQ& E, const Point& P, const Point& Q, double tol);
HeightValue vector_height(const CurveOverQ& E, const PointVector& x, double tol);
HeightValue vector_height(const HeightEngine& H, const PointVector& x, double tol);

// ||x|| = vector_height(x)^(1/2), known to within `tol` (value is the
// midpoint of the enclosure). All-torsion vectors are exactly 0.
struct NormValue {
  double value = 0;
  double tol = 0;
  bool exact_zero = false;
};
NormValue seminorm(const HeightEngine& H, const PointVector& x, double tol);

// IN if the norm estimate is <= threshold - band, OUT if > threshold + band,
// BOUNDARY otherwise; an exact zero norm is IN for any threshold >= 0.
Trivalent compare_norm(const NormValue& n, double threshold, double band);

Trivalent in_tube_O_eps(const CurveOverQ& E, const PointVector& x, double eps, double tol);
Trivalent in_tube_O_eps(const HeightEngine& H, const PointVector& x, double eps, double tol);

}  // namespace tubescan
