#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "tubescan/elliptic.hpp"
#include "tubescan/height.hpp"
#include "tubescan/real.hpp"

namespace tubescan {

struct BoundParams {
  long g = 2, d = 1, s = 0;
  mpq_class K = 1;
  long degV = 1, stab_order = 1, degE = 3;
  std::optional<mpq_class> eta;  // default 1/(2d)
  mpq_class c0 = 1, c1 = 1, c2 = 1;
  mpq_class c_bog_g = 1, c_bog_d1 = 1;
  mpq_class c_p = 1, eps0_p = 1;
  Real gamma_norm = 0;
  // Replaces min(K/g, eps1(V,eta)/(g m^(d+1))) when set.
  std::optional<mpq_class> eps1_threshold;

  mpq_class eta_value() const { return eta ? *eta : mpq_class(1, 2 * d); }
  // Throws InputError on violated ranges.
  void validate() const;
};

mpq_class deg_subgroup_bound(long r, const mpz_class& H, const mpq_class& c0);
mpq_class deg_image_bound(long d, const mpz_class& a, long degV, const mpq_class& c1);
mpq_class deg_helping_bound(long g, long r, const mpz_class& a, long degV, long stab_order, const mpq_class& c2);
// deg [b]X = b^(2d) deg X / |Stab X cap E^g[b]|.
mpq_class hindry_degree(const mpz_class& b, long d, long degX, long stab_b);

// c / degX^(1/(2 codX) + eta)
Real bogomolov_epsilon(long degX, long codX, const mpq_class& eta, const mpq_class& c);

// eps1(V,eta) = c(E^(d+1),eta) / (c1 degV)^(1/2+eta)
Real em_eps1(const BoundParams& p);
// eps2(V,eta) = c(E^g,eta) / (c2 stab degV)^(1/(2(g-d))+eta)
Real em_eps2(const BoundParams& p);
// (eps1(V,eta) / a^(d+2d eta), eps2(V,eta) a^(1/(g-d) - 2(g-d-1)eta))
std::pair<Real, Real> em_lower_bounds(const BoundParams& p, const mpz_class& a);

struct FinitoThresholds {
  mpq_class eta;
  mpq_class exponent_denominator;  // 1 - 2(g-d-1)(g-d) eta
  Real m;
  Real eps1_threshold;
  bool eps1_overridden = false;
  std::vector<std::string> diagnostics;
};
FinitoThresholds finito_thresholds(const BoundParams& p);

struct CentroM {
  long n;
  mpz_class M;
};
// n = r(g+s) - r^2 + 1, M = max(2, ceil((K+||p||)/eps)^2)^n; the ceiling is
// taken on an upper enclosure when the quotient is not exact.
CentroM centro_M(const Real& K, const Real& norm_p, const Real& eps, long r, long g, long s);

// (g+s) max(1, g(K+eps)/c_p)
Real equi_Kprime(long g, long s, const Real& K, const Real& eps, const mpq_class& c_p);

struct BoundReport {
  BoundParams params;
  long r = 0, n = 0;
  mpq_class eta, exponent_denominator;
  Real eps_bog, eps1_EM, eps2_EM, m, eps1_threshold, delta1;
  bool eps1_overridden = false;
  mpz_class M_big;
  Real delta, K_prime;
  std::vector<std::string> diagnostics;
};
BoundReport main_delta_chain(const BoundParams& p);

inline constexpr int kReportDigits = 60;
std::string version_stamp();
// Flat key = value record; radii printed rounded down, bounds rounded up.
std::string to_kv(const BoundReport& r);
std::string to_json(const BoundReport& r);

enum class CheckVerdict { PASS, FAIL, BOUNDARY };
const char* to_string(CheckVerdict v);

struct GammaCheck {
  CheckVerdict verdict = CheckVerdict::PASS;
  CheckVerdict condition1 = CheckVerdict::PASS;  // ||gamma_i|| >= 3gK
  CheckVerdict condition2 = CheckVerdict::PASS;  // ||sum b_i gamma_i||^2 >= 1/9 sum b_i^2 ||gamma_i||^2
  std::optional<std::size_t> failing_generator;
  std::vector<long> witness;  // first failing (else first boundary) b for condition 2
};
GammaCheck gamma_basis_check(const CurveOverQ& E, const std::vector<PointVector>& gens, const mpq_class& K,
                             double tol, long coeff_box);

}  // namespace tubescan
