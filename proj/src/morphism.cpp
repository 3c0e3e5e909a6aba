#include "tubescan/morphism.hpp"

#include <numeric>

#include "tubescan/errors.hpp"

namespace tubescan {

mpz_class matrix_height(const IntMorphism& F) {
  mpz_class h = 0;
  for (const auto& e : F.entries())
    if (abs(e) > h) h = abs(e);
  return h;
}

std::size_t matrix_rank(const IntMorphism& F) {
  IntMorphism a = F;
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    std::size_t p = rank;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(rank, j), a(p, j));
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        mpz_class t = a(i, j) * a(rank, c) - a(i, c) * a(rank, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(rank, c);
    ++rank;
  }
  return rank;
}

IntMorphism GaussReducedForm::L() const {
  IntMorphism c = canonical();
  return column_block(c, rank(), c.cols() - rank());
}

std::optional<GaussReducedForm> is_gauss_reduced(const IntMorphism& F) {
  std::size_t r = F.rows(), g = F.cols();
  if (r == 0 || r > g) return std::nullopt;
  mpz_class a = matrix_height(F);
  if (a == 0) return std::nullopt;
  std::vector<std::size_t> perm;
  std::vector<bool> used(g, false);
  // aI_r is a submatrix: pivot columns increase with the row. Taking the
  // smallest admissible column each time finds a placement if one exists.
  std::size_t next = 0;
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t found = g;
    for (std::size_t j = next; j < g && found == g; ++j) {
      bool ok = true;
      for (std::size_t k = 0; k < r && ok; ++k) ok = F(k, j) == (k == i ? a : mpz_class(0));
      if (ok) found = j;
    }
    if (found == g) return std::nullopt;
    perm.push_back(found);
    used[found] = true;
    next = found + 1;
  }
  for (std::size_t j = 0; j < g; ++j)
    if (!used[j]) perm.push_back(j);
  return GaussReducedForm{F, a, perm};
}

GaussReducedForm gauss_reduce(const IntMorphism& psi) {
  std::size_t r = psi.rows(), g = psi.cols();
  if (r == 0 || matrix_rank(psi) != r)
    throw InputError("gauss_reduce: matrix does not have full row rank");

  // C(g, r) subsets in lexicographic order; strict improvement keeps the first maximum.
  std::vector<std::size_t> sub(r), best;
  std::iota(sub.begin(), sub.end(), 0);
  mpz_class best_det = 0;
  for (;;) {
    mpz_class d = abs(determinant(permute_columns(psi, sub)));
    if (d > best_det) {
      best_det = d;
      best = sub;
    }
    std::size_t i = r;
    while (i > 0 && sub[i - 1] == g - r + i - 1) --i;
    if (i == 0) break;
    ++sub[i - 1];
    for (std::size_t k = i; k < r; ++k) sub[k] = sub[k - 1] + 1;
  }

  IntMorphism C = permute_columns(psi, best);
  mpz_class det = determinant(C);
  std::vector<bool> pivot(g, false);
  for (auto c : best) pivot[c] = true;

  // Row basis (I_r | L') of the row space by Cramer: L'_ij = det(C with column i := psi_j) / det C.
  std::vector<std::vector<mpq_class>> R(r, std::vector<mpq_class>(g, 0));
  mpz_class a = 1;
  for (std::size_t i = 0; i < r; ++i) R[i][best[i]] = 1;
  for (std::size_t j = 0; j < g; ++j) {
    if (pivot[j]) continue;
    for (std::size_t i = 0; i < r; ++i) {
      IntMorphism Ci = C;
      for (std::size_t k = 0; k < r; ++k) Ci(k, i) = psi(k, j);
      mpq_class q(determinant(Ci), det);
      q.canonicalize();
      if (abs(q) > 1) throw std::logic_error("gauss_reduce: pivot minor is not maximal");
      R[i][j] = q;
      mpz_lcm(a.get_mpz_t(), a.get_mpz_t(), q.get_den().get_mpz_t());
    }
  }
  IntMorphism phi(r, g);
  mpz_class content = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      mpq_class v = R[i][j] * a;
      phi(i, j) = v.get_num();
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), phi(i, j).get_mpz_t());
    }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < g; ++j) mpz_divexact(phi(i, j).get_mpz_t(), phi(i, j).get_mpz_t(), content.get_mpz_t());
  a /= content;

  std::vector<std::size_t> perm = best;
  for (std::size_t j = 0; j < g; ++j)
    if (!pivot[j]) perm.push_back(j);
  return GaussReducedForm{phi, a, perm};
}

bool kernel_contains_up_to_torsion(const IntMorphism& psi, const IntMorphism& phi) {
  if (psi.cols() != phi.cols()) throw InputError("kernel containment: column counts differ");
  return matrix_rank(vconcat(psi, phi)) == matrix_rank(psi);
}

const char* SpecialClass::label() const {
  if (special) return "SPECIAL";
  if (quasi_special) return "QUASI_SPECIAL";
  if (gauss_reduced) return "GAUSS_REDUCED_ONLY";
  return "NONE";
}

SpecialClass classify_special(const IntMorphism& F, std::size_t g, std::size_t s) {
  if (F.cols() != g + s)
    throw InputError("classify_special: expected " + std::to_string(g + s) + " columns, got " +
                     std::to_string(F.cols()));
  SpecialClass c;
  c.gauss_reduced = is_gauss_reduced(F).has_value();
  IntMorphism left = column_block(F, 0, g);
  c.quasi_special = is_gauss_reduced(left).has_value();
  c.special = c.quasi_special && matrix_height(F) == matrix_height(left);
  return c;
}

HelpingTriple helping_isogenies(const GaussReducedForm& form, std::size_t g) {
  std::size_t r = form.rank();
  IntMorphism C = form.canonical();
  if (C.cols() != g || r > g) throw InputError("helping_isogenies: dimension mismatch");
  auto check = is_gauss_reduced(C);
  if (!check || check->a != form.a) throw InputError("helping_isogenies: form is not Gauss-reduced");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k)
      if (C(i, k) != (i == k ? form.a : mpz_class(0)))
        throw InputError("helping_isogenies: permutation does not expose aI_r");

  HelpingTriple t{IntMorphism::identity(g), IntMorphism::identity(g), IntMorphism::identity(g)};
  for (std::size_t k = r; k < g; ++k) t.F(k, k) = form.a;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      t.Phi(i, j) = C(i, j);
      if (j >= r) t.Lmat(i, j) = C(i, j);
    }
  if (t.Phi * t.F != form.a * t.Lmat) throw std::logic_error("helping_isogenies: Phi F != a Lmat");
  return t;
}

std::string describe(const GaussReducedForm& f) {
  std::string s = block_string(f.canonical(), f.rank()) + ", a = " + f.a.get_str() + ", perm (";
  for (std::size_t i = 0; i < f.perm.size(); ++i) s += (i ? "," : "") + std::to_string(f.perm[i] + 1);
  return s + ")";
}

}  // namespace tubescan
