#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tubescan/elliptic.hpp"
#include "tubescan/height.hpp"
#include "tubescan/morphism.hpp"
#include "tubescan/real.hpp"

namespace tubescan {

struct GammaData {
  std::vector<PointVector> generators;
  long coeff_box = 0;
};

struct Residual {
  NormValue norm;
  std::vector<long> witness;  // coefficients b of the minimizing combination
};

// min over |b_i| <= coeff_box of ||phi(x - sum b_i gamma_i)||. If x lies in
// B_phi + Gamma_eps with Gamma-part inside the box, the residual is at most
// (g-r+1) H(phi) eps: a necessary condition, not full membership.
Residual tube_residual(const HeightEngine& H, const IntMorphism& phi, const PointVector& x, const GammaData& gamma,
                       double tol);
Residual tube_residual(const CurveOverQ& E, const IntMorphism& phi, const PointVector& x, const GammaData& gamma,
                       double tol);

// (x, gamma) in E^(g+s).
PointVector product_embedding(const PointVector& x, const PointVector& gamma_point);

enum class TubeVerdict { HIT, MISS, BOUNDARY };
const char* to_string(TubeVerdict v);

struct ScanRecord {
  std::size_t point_id = 0;
  std::size_t morphism_index = 0;  // position in the enumeration
  IntMorphism phi;
  mpz_class height;
  Residual residual;
  double threshold = 0;
  TubeVerdict verdict = TubeVerdict::MISS;
  Trivalent vk = Trivalent::IN;  // V_K membership of the point
  std::string note;
};

struct ScanOptions {
  double K = 1;
  double eps = 0;
  GammaData gamma;
  std::size_t r = 1;
  long M_cap = 1;
  double tol = 1e-8;
  bool canonical_only = false;
  unsigned threads = 1;
  long budget = 10'000'000;  // cap on point x morphism pairs
};

struct ScanSummary {
  std::size_t points_total = 0, points_scanned = 0, points_boundary_vk = 0, points_outside_vk = 0;
  std::size_t morphisms = 0, records = 0, hits = 0, misses = 0, boundaries = 0, errors = 0;
  std::map<long, std::size_t> hits_by_height;
  std::map<std::size_t, std::size_t> hits_by_point;
};

struct ScanResult {
  std::vector<ScanRecord> records;  // sorted by (point_id, morphism_index)
  ScanSummary summary;
};

ScanResult scan(const CurveOverQ& E, const std::vector<PointVector>& points, const ScanOptions& opt);

enum class CentroStatus { FOUND, FAIL, BUDGET_EXCEEDED, PRECONDITION_FAILED };
const char* to_string(CentroStatus s);

struct CentroResult {
  CentroStatus status = CentroStatus::FAIL;
  std::optional<IntMorphism> psi;
  NormValue residual;
  long n = 0;
  mpz_class M;
  long examined = 0;
};

// x in E^(g+s) with V-part of norm <= K; the last s coordinates are p.
// Certifies the precondition residual(special_phi) <= (g+s-r+1) H eps /
// M^(1+1/2n), then searches special_phi itself and the Special psi with
// H(psi) <= M in increasing height for one with residual <=
// (g+s-r+1) H(psi) rho(psi), rho(psi) = (g+s+1) eps / H(psi)^(1+1/2n).
CentroResult centro_containment_check(const CurveOverQ& E, const PointVector& x, const IntMorphism& special_phi,
                                      const mpq_class& K, const mpq_class& eps, std::size_t g, std::size_t s,
                                      std::size_t r, double tol, long budget = 1'000'000);

}  // namespace tubescan
