#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "tubescan/matrix.hpp"

namespace tubescan {

mpz_class matrix_height(const IntMorphism& F);
std::size_t matrix_rank(const IntMorphism& F);

struct GaussReducedForm {
  IntMorphism matrix;             // in the ambient column order
  mpz_class a;                    // pivot, equal to H(matrix)
  std::vector<std::size_t> perm;  // 0-based; matrix columns perm[0..g) give (aI_r | L)

  std::size_t rank() const { return matrix.rows(); }
  IntMorphism canonical() const { return permute_columns(matrix, perm); }
  IntMorphism L() const;
};

// aI_r is a submatrix (pivot columns increase with the row) and H = a.
// Pivot columns are taken as small as possible, row by row.
std::optional<GaussReducedForm> is_gauss_reduced(const IntMorphism& F);

// Gauss-reduced phi with rowspace(phi) contained in rowspace(psi) over Q.
// Pivot columns maximize |minor|, ties to the lexicographically smallest
// column subset; the result is divided by the gcd of its entries.
GaussReducedForm gauss_reduce(const IntMorphism& psi);

// rowspace(phi) within rowspace(psi) over Q. With End(E) = Z this is
// B_psi inside B_phi up to torsion.
bool kernel_contains_up_to_torsion(const IntMorphism& psi, const IntMorphism& phi);

struct SpecialClass {
  bool gauss_reduced = false;  // whole matrix
  bool quasi_special = false;  // left g-column block Gauss-reduced
  bool special = false;        // quasi-special and H(whole) = H(left block)
  const char* label() const;   // SPECIAL, QUASI_SPECIAL, GAUSS_REDUCED_ONLY or NONE
};
SpecialClass classify_special(const IntMorphism& F, std::size_t g, std::size_t s);

struct HelpingTriple {
  IntMorphism F, Lmat, Phi;  // g x g, in the frame of the form's permutation
};
// F = diag(1^r, a^(g-r)); Lmat = identity with L in rows 1..r, columns
// r+1..g; Phi = (aI_r | L) over (0 | I_(g-r)). Phi F = a Lmat.
HelpingTriple helping_isogenies(const GaussReducedForm& form, std::size_t g);

std::string describe(const GaussReducedForm& f);

}  // namespace tubescan
