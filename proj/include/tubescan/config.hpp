#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "tubescan/bounds.hpp"
#include "tubescan/elliptic.hpp"
#include "tubescan/tube.hpp"

namespace tubescan {

// INI-style run configuration. Curve and point data take exact rational
// literals only; tolerances and real parameters also accept decimals, which
// are converted exactly.
//
//   [curve]       A, B, degE
//   [ambient]     g, d, s
//   [params]      K, degV, stab_order, eta, c0, c1, c2, c_bog_g, c_bog_d1,
//                 c_p, eps0_p, gamma_norm, eps1_threshold
//   [gamma]       coeff_box, gen1, gen2, ...   (generators as "P ; Q ; ...")
//   [points]      path
//   [scan]        r, eps, canonical_only
//   [tolerances]  height, compare
//   [caps]        M_cap, budget, threads
struct RunConfig {
  mpq_class A = 0, B = 1;
  long degE = 3;
  long g = 2, d = 1, s = 0;
  mpq_class K = 1;
  long degV = 1, stab_order = 1;
  std::optional<mpq_class> eta;
  mpq_class c0 = 1, c1 = 1, c2 = 1, c_bog_g = 1, c_bog_d1 = 1, c_p = 1, eps0_p = 1;
  std::optional<mpq_class> gamma_norm, eps1_threshold;
  std::vector<PointVector> generators;
  long coeff_box = 0;
  std::string points_path;
  long r = 1;
  mpq_class eps = 0;
  bool canonical_only = false;
  mpq_class height_tol = mpq_class(1, 100000000), compare_tol = mpq_class(1, 100000000);
  long M_cap = 2, budget = 10'000'000, threads = 1;

  bool operator==(const RunConfig& o) const = default;

  CurveOverQ curve() const { return CurveOverQ(A, B, degE); }
  // gamma_norm falls back to the largest generator norm (upper enclosure).
  BoundParams bound_params() const;
  ScanOptions scan_options() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize(const RunConfig& c);

// One PointVector per line; blank lines and '#' comments skipped.
std::vector<PointVector> parse_points(const std::string& text);
std::vector<PointVector> load_points(const std::string& path);

// Correctly rounded double.
double nearest(const mpq_class& q);

std::string read_file(const std::string& path);

}  // namespace tubescan
