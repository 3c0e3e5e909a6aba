#include "tubescan/height.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "tubescan/arith.hpp"
#include "tubescan/errors.hpp"

namespace tubescan {

const char* to_string(Trivalent t) {
  switch (t) {
    case Trivalent::IN: return "IN";
    case Trivalent::OUT: return "OUT";
    case Trivalent::BOUNDARY: return "BOUNDARY";
  }
  return "?";
}

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// Solves the 8x8 system for cubic forms U, V with U F + V G = target, where
// target is X^7 (k = 0) or Z^7 (k = 7); returns sum of |coefficients|.
mpq_class cofactor_norm(const std::array<mpq_class, 5>& f, const std::array<mpq_class, 5>& g, int k) {
  std::array<std::array<mpq_class, 9>, 8> M{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 5; ++j) {
      M[i + j][i] += f[j];
      M[i + j][4 + i] += g[j];
    }
  M[k][8] = 1;
  for (int c = 0; c < 8; ++c) {
    int p = c;
    while (p < 8 && M[p][c] == 0) ++p;
    if (p == 8) throw std::logic_error("doubling forms share a root");
    std::swap(M[p], M[c]);
    for (int r = 0; r < 8; ++r) {
      if (r == c || M[r][c] == 0) continue;
      mpq_class t = M[r][c] / M[c][c];
      for (int j = c; j < 9; ++j) M[r][j] -= t * M[c][j];
    }
  }
  mpq_class s = 0;
  for (int c = 0; c < 8; ++c) s += abs(mpq_class(M[c][8] / M[c][c]));
  return s;
}

mpz_class mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

HeightEngine::HeightEngine(const CurveOverQ& E, HeightBudget budget) : E_(E), budget_(budget) {
  mpz_lcm(u_.get_mpz_t(), E.A().get_den().get_mpz_t(), E.B().get_den().get_mpz_t());
  mpq_class a = E.A() * mpq_class(ipow(u_, 4)), b = E.B() * mpq_class(ipow(u_, 6));
  A_ = a.get_num();
  B_ = b.get_num();

  mpz_class d = 4 * A_ * A_ * A_ + 27 * B_ * B_;
  for (auto& [p, e] : factorize(2 * d)) {
    unsigned long vres = 2 * valuation(d, p) + (p == 2 ? 8 : 0);
    bad_.push_back({p, vres, log_of(p, 64).to_double(MPFR_RNDU)});
  }

  std::array<mpq_class, 5> f = {1, 0, -2 * A_, -8 * B_, A_ * A_};
  std::array<mpq_class, 5> g = {0, 4, 0, 4 * A_, 4 * B_};
  mpq_class n1 = cofactor_norm(f, g, 7), n2 = cofactor_norm(f, g, 0);
  mpq_class nmax = std::max(n1, n2);
  mpz_class fnorm = 1 + 2 * abs(A_) + 8 * abs(B_) + A_ * A_, gnorm = 4 + 4 * abs(A_) + 4 * abs(B_);
  mpz_class Mx = std::max(fnorm, gnorm);
  BigFloat lnmax(nmax, 128, MPFR_RNDU);
  log_m_ = -log(lnmax, MPFR_RNDU).to_double(MPFR_RNDU);
  log_Mx_ = log_of(Mx, 128, MPFR_RNDU).to_double(MPFR_RNDU);
  // Guard the double conversions.
  log_m_ -= 1e-12 * (1 + std::fabs(log_m_));
  log_Mx_ += 1e-12 * (1 + std::fabs(log_Mx_));
}

std::vector<mpz_class> HeightEngine::bad_primes() const {
  std::vector<mpz_class> v;
  for (const auto& b : bad_) v.push_back(b.p);
  return v;
}

mpq_class HeightEngine::padic_sum(const Bad& b, const mpz_class& X0, const mpz_class& Z0, int N) const {
  if (mpz_divisible_p(Z0.get_mpz_t(), b.p.get_mpz_t())) return 0;  // v_p(x) < 0: all terms vanish
  unsigned long R = static_cast<unsigned long>(N) * b.vres + 10;
  mpz_class pR = ipow(b.p, R), zinv, x;
  mpz_invert(zinv.get_mpz_t(), Z0.get_mpz_t(), pR.get_mpz_t());
  x = mod(X0 * zinv, pR);
  mpq_class S = 0;
  mpz_class scale = 4;
  auto val = [&](const mpz_class& r, unsigned long cap) -> unsigned long {
    return r == 0 ? cap : valuation(r, b.p);
  };
  for (int n = 0; n < N; ++n, scale *= 4) {
    mpz_class x2 = x * x;
    mpz_class Fv = mod(x2 * x2 - 2 * A_ * x2 - 8 * B_ * x + A_ * A_, pR);
    mpz_class Gv = mod(4 * (x2 * x + A_ * x + B_), pR);
    unsigned long vF = val(Fv, R), vG = val(Gv, R);
    if (vF >= R && vG >= R) throw ResourceError("p-adic precision exhausted at p = " + b.p.get_str());
    unsigned long k = std::min(vF, vG);
    if (k > b.vres) throw std::logic_error("local gcd exceeds resultant valuation");
    S += mpq_class(k, scale);
    if (vF < vG) break;  // next x has negative valuation
    R -= vG;
    pR = ipow(b.p, R);
    mpz_class pk = ipow(b.p, vG), ginv;
    mpz_class gq = Gv / pk;
    mpz_invert(ginv.get_mpz_t(), gq.get_mpz_t(), pR.get_mpz_t());
    x = mod((Fv / pk) * ginv, pR);
  }
  S.canonicalize();
  return S;
}

HeightEngine::Precise HeightEngine::height_mp(const Point& P, double tol) const {
  require_on_curve(E_, P);
  if (!(tol > 0)) throw InputError("height tolerance must be positive");
  if (P.inf) return {BigFloat(mpz_class(0), 64), 0.0};

  mpq_class xs = P.x * mpq_class(u_ * u_);
  mpz_class X0 = xs.get_num(), Z0 = xs.get_den();

  double c_inf = std::max(std::fabs(log_m_), std::fabs(log_Mx_));
  double c_tot = c_inf;
  for (const auto& b : bad_) c_tot += static_cast<double>(b.vres) * b.logp;
  int N = std::max(1, static_cast<int>(std::ceil(std::log(2 * c_tot / (3 * tol)) / std::log(4.0))));
  if (N > budget_.max_terms) throw ResourceError("canonical height: term budget exceeded");
  double tail = 0.5 * c_tot * std::pow(4.0, -N) / 3;

  // Forward error of the normalized projective iteration grows by the
  // Lipschitz factor L = 8.08 Mx/m per step; pick the precision so the
  // accumulated error on the weighted sum stays below tol/8.
  double log2ratio = (log_Mx_ - log_m_) / kLn2;
  double log2L = std::log2(8.08) + log2ratio;
  double growth = std::log2(0.5 * N) + 2 * log2ratio + std::log2(18.0) + N * (log2L - 2) + 2;
  long prec = static_cast<long>(std::ceil(growth - std::log2(tol / 8))) + 16;
  prec = std::max(prec, 128L);
  if (prec > budget_.max_precision_bits) throw ResourceError("canonical height: precision budget exceeded");
  double float_err = std::exp2(growth - static_cast<double>(prec));

  mpfr_prec_t pr = static_cast<mpfr_prec_t>(prec);
  BigFloat A(A_, pr), B(B_, pr), two_A = A + A;
  BigFloat eight_B(mpz_class(8 * B_), pr), A2(mpz_class(A_ * A_), pr), four(mpz_class(4), pr);
  BigFloat X(X0, pr), Z(Z0, pr);
  BigFloat s = abs(X) > abs(Z) ? abs(X) : abs(Z);
  X = X / s;
  Z = Z / s;
  BigFloat sum(pr);
  for (int n = 0; n < N; ++n) {
    BigFloat X2 = X * X, Z2 = Z * Z;
    BigFloat XZ2 = X * Z2, Z3 = Z2 * Z;
    BigFloat F = X2 * X2 - two_A * X2 * Z2 - eight_B * XZ2 * Z + A2 * Z2 * Z2;
    BigFloat G = four * Z * (X2 * X + A * XZ2 + B * Z3);
    BigFloat m = abs(F) > abs(G) ? abs(F) : abs(G);
    BigFloat e = log(m);
    mpfr_div_2ui(e.get(), e.get(), 2UL * static_cast<unsigned long>(n + 1), MPFR_RNDN);
    sum = sum + e;
    X = F / m;
    Z = G / m;
  }

  BigFloat total = sum + log_of(std::max(mpz_class(abs(X0)), Z0), pr);
  for (const auto& b : bad_) {
    mpq_class S = padic_sum(b, X0, Z0, N);
    if (S != 0) total = total - BigFloat(S, pr) * log_of(b.p, pr);
  }
  mpfr_div_2ui(total.get(), total.get(), 1, MPFR_RNDN);

  double magnitude = std::fabs(total.to_double()) + c_tot + 1;
  double err = tail + float_err + magnitude * std::exp2(-static_cast<double>(prec) + 8);
  return {std::move(total), err};
}

HeightValue HeightEngine::height(const Point& P, double tol) const {
  if (P.inf) {
    require_on_curve(E_, P);
    return {0.0, 0.0};
  }
  Precise r = height_mp(P, tol / 2);
  double v = r.value.to_double();
  double err = r.err + std::fabs(v) * 0x1p-52;
  if (err > tol) throw ResourceError("canonical height: tolerance below double resolution");
  // The true height is >= 0, so clamping only shrinks the error.
  return {std::max(v, 0.0), err};
}

double naive_height(const mpq_class& x) {
  mpz_class m = std::max(mpz_class(abs(x.get_num())), mpz_class(x.get_den()));
  return log_of(m, 128).to_double();
}

double naive_height(const Point& P) { return P.inf ? 0.0 : naive_height(P.x); }

HeightValue canonical_height(const CurveOverQ& E, const Point& P, double tol) {
  if (P.inf) return {0.0, 0.0};
  return HeightEngine(E).height(P, tol);
}

double nt_pairing(const CurveOverQ& E, const Point& P, const Point& Q, double tol) {
  HeightEngine H(E);
  double t = tol / 2;
  return 0.5 * (H.height(point_add(E, P, Q), t).value - H.height(P, t).value - H.height(Q, t).value);
}

HeightValue vector_height(const HeightEngine& H, const PointVector& x, double tol) {
  HeightValue best{0.0, 0.0};
  for (const auto& P : x.coords) {
    HeightValue h = H.height(P, tol);
    if (h.value > best.value) best.value = h.value;
    best.tol = std::max(best.tol, h.tol);
  }
  return best;
}

HeightValue vector_height(const CurveOverQ& E, const PointVector& x, double tol) {
  return vector_height(HeightEngine(E), x, tol);
}

NormValue seminorm(const HeightEngine& H, const PointVector& x, double tol) {
  if (!(tol > 0)) throw InputError("norm tolerance must be positive");
  if (is_torsion(H.curve(), x)) return {0.0, 0.0, true};
  double ht = tol * std::min(1.0, tol);
  for (int attempt = 0; attempt < 12; ++attempt, ht /= 64) {
    BigFloat lo(mpz_class(0), 64), hi(mpz_class(0), 64);
    for (const auto& P : x.coords) {
      if (P.inf) continue;
      HeightEngine::Precise h = H.height_mp(P, ht);
      BigFloat e(h.err, 64);
      BigFloat l = sub(h.value, e, MPFR_RNDD, h.value.prec()), u = add(h.value, e, MPFR_RNDU, h.value.prec());
      if (l > lo) lo = l;
      if (u > hi) hi = u;
    }
    double nlo = sqrt(lo, MPFR_RNDD).to_double(MPFR_RNDD), nhi = sqrt(hi, MPFR_RNDU).to_double(MPFR_RNDU);
    if (nhi - nlo <= tol) return {0.5 * (nlo + nhi), 0.5 * (nhi - nlo) * (1 + 1e-15), false};
  }
  throw ResourceError("seminorm: could not reach the requested tolerance");
}

Trivalent compare_norm(const NormValue& n, double threshold, double band) {
  if (n.exact_zero) return threshold >= 0 ? Trivalent::IN : Trivalent::OUT;
  if (n.value <= threshold - band) return Trivalent::IN;
  if (n.value > threshold + band) return Trivalent::OUT;
  return Trivalent::BOUNDARY;
}

Trivalent in_tube_O_eps(const HeightEngine& H, const PointVector& x, double eps, double tol) {
  if (eps < 0) throw InputError("eps must be >= 0");
  // Enclosure half-width tol/2, so IN and OUT are certified.
  return compare_norm(seminorm(H, x, tol), eps, tol);
}

Trivalent in_tube_O_eps(const CurveOverQ& E, const PointVector& x, double eps, double tol) {
  return in_tube_O_eps(HeightEngine(E), x, eps, tol);
}

}  // namespace tubescan
