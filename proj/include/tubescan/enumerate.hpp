#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "tubescan/morphism.hpp"

namespace tubescan {

// Number of canonical (aI_r | L) with 1 <= a <= M: sum_a (2a+1)^(r(g-r)).
mpz_class count_gauss_reduced_canonical(std::size_t g, std::size_t r, const mpz_class& M);

// Gauss-reduced r x g matrices with H <= M, ordered by a, then row-major
// lexicographically. Without canonical_only every increasing column
// placement of the pivots is included.
class GaussReducedEnumerator {
 public:
  GaussReducedEnumerator(std::size_t g, std::size_t r, long M, bool canonical_only);
  std::optional<GaussReducedForm> next();

 private:
  void load_level();
  bool advance_odometer();

  std::size_t g_, r_;
  long M_, a_ = 0;
  bool canonical_;
  std::vector<long> L_;
  bool fresh_ = true;
  std::vector<IntMorphism> level_;
  std::size_t pos_ = 0;
};

// (phi | phi') with phi canonical Gauss-reduced of height a <= M and phi'
// an r x s block with entries in [-a, a].
class SpecialEnumerator {
 public:
  SpecialEnumerator(std::size_t g, std::size_t s, std::size_t r, long M);
  std::optional<IntMorphism> next();

 private:
  std::size_t s_, r_;
  GaussReducedEnumerator inner_;
  std::optional<GaussReducedForm> cur_;
  std::vector<long> block_;
  long a_ = 0;
};

std::vector<GaussReducedForm> enumerate_gauss_reduced(std::size_t g, std::size_t r, long M, bool canonical_only);
std::vector<IntMorphism> enumerate_special(std::size_t g, std::size_t s, std::size_t r, long M);

}  // namespace tubescan
