#include "tubescan/enumerate.hpp"

#include <set>

#include "tubescan/arith.hpp"
#include "tubescan/errors.hpp"

namespace tubescan {

mpz_class count_gauss_reduced_canonical(std::size_t g, std::size_t r, const mpz_class& M) {
  mpz_class total = 0;
  for (mpz_class a = 1; a <= M; ++a) total += ipow(mpz_class(2 * a + 1), r * (g - r));
  return total;
}

GaussReducedEnumerator::GaussReducedEnumerator(std::size_t g, std::size_t r, long M, bool canonical_only)
    : g_(g), r_(r), M_(M), canonical_(canonical_only) {
  if (r < 1 || r > g) throw InputError("enumeration needs 1 <= r <= g");
  if (M < 1) throw InputError("enumeration needs M >= 1");
}

bool GaussReducedEnumerator::advance_odometer() {
  for (std::size_t k = L_.size(); k-- > 0;) {
    if (L_[k] < a_) {
      ++L_[k];
      return true;
    }
    L_[k] = -a_;
  }
  return false;
}

void GaussReducedEnumerator::load_level() {
  // Every increasing placement of the pivot columns, every filling of the rest.
  std::set<IntMorphism> seen;
  std::vector<std::size_t> piv(r_);
  for (std::size_t i = 0; i < r_; ++i) piv[i] = i;
  for (;;) {
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0, k = 0; j < g_; ++j) {
      if (k < r_ && piv[k] == j) ++k;
      else free_cols.push_back(j);
    }
    std::vector<long> fill(r_ * (g_ - r_), -a_);
    for (;;) {
      IntMorphism m(r_, g_);
      for (std::size_t i = 0; i < r_; ++i) m(i, piv[i]) = a_;
      for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < g_ - r_; ++k) m(i, free_cols[k]) = fill[i * (g_ - r_) + k];
      seen.insert(std::move(m));
      std::size_t k = fill.size();
      while (k > 0 && fill[k - 1] == a_) fill[--k] = -a_;
      if (k == 0) break;
      ++fill[k - 1];
    }
    std::size_t i = r_;
    while (i > 0 && piv[i - 1] == g_ - r_ + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t k = i; k < r_; ++k) piv[k] = piv[k - 1] + 1;
  }
  level_.assign(seen.begin(), seen.end());
  pos_ = 0;
}

std::optional<GaussReducedForm> GaussReducedEnumerator::next() {
  if (canonical_) {
    if (fresh_ || !advance_odometer()) {
      if (a_ >= M_) return std::nullopt;
      ++a_;
      L_.assign(r_ * (g_ - r_), -a_);
      fresh_ = false;
    }
    IntMorphism m(r_, g_);
    for (std::size_t i = 0; i < r_; ++i) {
      m(i, i) = a_;
      for (std::size_t k = 0; k < g_ - r_; ++k) m(i, r_ + k) = L_[i * (g_ - r_) + k];
    }
    std::vector<std::size_t> perm(g_);
    for (std::size_t j = 0; j < g_; ++j) perm[j] = j;
    return GaussReducedForm{std::move(m), mpz_class(a_), std::move(perm)};
  }
  while (pos_ >= level_.size()) {
    if (a_ >= M_) return std::nullopt;
    ++a_;
    load_level();
  }
  return is_gauss_reduced(level_[pos_++]);
}

SpecialEnumerator::SpecialEnumerator(std::size_t g, std::size_t s, std::size_t r, long M)
    : s_(s), r_(r), inner_(g, r, M, true) {}

std::optional<IntMorphism> SpecialEnumerator::next() {
  if (cur_) {
    std::size_t k = block_.size();
    while (k > 0 && block_[k - 1] == a_) block_[--k] = -a_;
    if (k > 0) ++block_[k - 1];
    else cur_.reset();
  }
  if (!cur_) {
    cur_ = inner_.next();
    if (!cur_) return std::nullopt;
    a_ = cur_->a.get_si();
    block_.assign(r_ * s_, -a_);
  }
  IntMorphism right(r_, s_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < s_; ++k) right(i, k) = block_[i * s_ + k];
  return s_ == 0 ? cur_->matrix : hconcat(cur_->matrix, right);
}

std::vector<GaussReducedForm> enumerate_gauss_reduced(std::size_t g, std::size_t r, long M, bool canonical_only) {
  std::vector<GaussReducedForm> out;
  GaussReducedEnumerator e(g, r, M, canonical_only);
  while (auto f = e.next()) out.push_back(std::move(*f));
  return out;
}

std::vector<IntMorphism> enumerate_special(std::size_t g, std::size_t s, std::size_t r, long M) {
  std::vector<IntMorphism> out;
  SpecialEnumerator e(g, s, r, M);
  while (auto m = e.next()) out.push_back(std::move(*m));
  return out;
}

}  // namespace tubescan
