#include <gtest/gtest.h>

#include <random>

#include "tubescan/errors.hpp"
#include "tubescan/morphism.hpp"

using namespace tubescan;

namespace {

// Exact rational row reduction, independent of the fraction-free code under test.
std::size_t rank_q(const IntMorphism& m) {
  std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[rank][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

mpz_class ipow_check(long a, std::size_t e) {
  mpz_class r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= a;
  return r;
}

IntMorphism random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t g, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMorphism m(r, g);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < g; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST(MatrixHeight, Examples) {
  EXPECT_EQ(matrix_height(IntMorphism{{3, -5}, {0, 2}}), 5);
  EXPECT_EQ(matrix_height(IntMorphism(2, 3)), 0);
  EXPECT_EQ(matrix_height(IntMorphism{{4, 0, -4}, {0, 4, 3}}), 4);
}

TEST(MatrixRank, ExamplesAndAgreement) {
  EXPECT_EQ(matrix_rank(IntMorphism::identity(3)), 3u);
  EXPECT_EQ(matrix_rank(IntMorphism{{2, 4}}), 1u);
  EXPECT_EQ(matrix_rank(IntMorphism{{2, 0, 3}, {0, 2, 5}}), 2u);
  EXPECT_EQ(matrix_rank(IntMorphism{{1, 2, 3}, {2, 4, 6}}), 1u);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    IntMorphism m = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 4, 2);
    EXPECT_EQ(matrix_rank(m), rank_q(m));
  }
}

TEST(IsGaussReduced, Examples) {
  auto f = is_gauss_reduced(IntMorphism{{0, 0, 1}});
  ASSERT_TRUE(f);
  EXPECT_EQ(f->a, 1);
  EXPECT_EQ(f->perm, (std::vector<std::size_t>{2, 0, 1}));
  // The entry 2 is a 1x1 submatrix equal to 2 I_1 and H = 2.
  auto g = is_gauss_reduced(IntMorphism{{1, 0, 2}});
  ASSERT_TRUE(g);
  EXPECT_EQ(g->a, 2);
  EXPECT_FALSE(is_gauss_reduced(IntMorphism{{1, 0, 2}, {0, 1, 3}}));
  EXPECT_FALSE(is_gauss_reduced(IntMorphism{{1, 2}, {2, 1}}));
  // The pivot columns must appear in row order for aI_r to be a submatrix.
  EXPECT_FALSE(is_gauss_reduced(IntMorphism{{0, 1}, {1, 0}}));
  EXPECT_FALSE(is_gauss_reduced(IntMorphism{{0, 2, 1}, {2, 0, -1}}));
  EXPECT_TRUE(is_gauss_reduced(IntMorphism{{2, 0, 1}, {0, 2, -1}}));
  EXPECT_FALSE(is_gauss_reduced(IntMorphism{{-2, 1}}));
  EXPECT_TRUE(is_gauss_reduced(IntMorphism{{2, 0, -2}, {0, 2, 1}}));
}

TEST(IsGaussReduced, CanonicalFrameExposesPivot) {
  auto f = is_gauss_reduced(IntMorphism{{1, 3, 0}, {-2, 0, 3}});
  ASSERT_TRUE(f);
  EXPECT_EQ(f->a, 3);
  EXPECT_EQ(f->canonical(), (IntMorphism{{3, 0, 1}, {0, 3, -2}}));
  EXPECT_EQ(f->L(), (IntMorphism{{1}, {-2}}));
}

TEST(GaussReduce, Examples) {
  GaussReducedForm f = gauss_reduce(IntMorphism{{2, 4}});
  EXPECT_EQ(f.matrix, (IntMorphism{{1, 2}}));
  EXPECT_EQ(f.a, 2);
  EXPECT_EQ(f.perm, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(describe(f), "(2 | 1), a = 2, perm (2,1)");

  GaussReducedForm id = gauss_reduce(IntMorphism::identity(3));
  EXPECT_EQ(id.matrix, IntMorphism::identity(3));
  EXPECT_EQ(id.a, 1);

  GaussReducedForm h = gauss_reduce(IntMorphism{{2, 0, 3}, {0, 2, 5}});
  EXPECT_EQ(h.matrix, (IntMorphism{{5, -3, 0}, {0, 2, 5}}));
  EXPECT_EQ(h.a, 5);
  EXPECT_EQ(h.perm, (std::vector<std::size_t>{0, 2, 1}));
}

TEST(GaussReduce, RejectsRankDeficiency) {
  EXPECT_THROW(gauss_reduce(IntMorphism{{1, 2}, {2, 4}}), InputError);
  EXPECT_THROW(gauss_reduce(IntMorphism(1, 3)), InputError);
}

TEST(GaussReduce, TiesGoToFirstColumnSubset) {
  // |minor| = 1 at columns {1} and {2}; the first is chosen.
  GaussReducedForm f = gauss_reduce(IntMorphism{{1, -1}});
  EXPECT_EQ(f.perm, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(f.matrix, (IntMorphism{{1, -1}}));
}

TEST(GaussReduce, RandomFullRankProperties) {
  std::mt19937_64 rng(2024);
  int done = 0;
  while (done < 200) {
    std::size_t g = 1 + rng() % 4, r = 1 + rng() % g;
    IntMorphism psi = random_matrix(rng, r, g, 20);
    if (rank_q(psi) != r) continue;
    ++done;
    GaussReducedForm f = gauss_reduce(psi);
    auto again = is_gauss_reduced(f.matrix);
    ASSERT_TRUE(again) << serialize(psi);
    EXPECT_EQ(again->a, f.a);
    EXPECT_EQ(rank_q(f.matrix), r);
    EXPECT_TRUE(kernel_contains_up_to_torsion(psi, f.matrix));
    // Same row space: containment both ways.
    EXPECT_TRUE(kernel_contains_up_to_torsion(f.matrix, psi));
    EXPECT_EQ(rank_q(vconcat(psi, f.matrix)), r);
  }
}

TEST(KernelContainment, Examples) {
  IntMorphism psi{{2, 0, 3}, {0, 2, 5}};
  EXPECT_TRUE(kernel_contains_up_to_torsion(psi, psi));
  EXPECT_TRUE(kernel_contains_up_to_torsion(IntMorphism{{2, 4}}, IntMorphism{{1, 2}}));
  EXPECT_FALSE(kernel_contains_up_to_torsion(psi, IntMorphism{{2, 0, 1}, {0, 2, 1}}));
  EXPECT_THROW(kernel_contains_up_to_torsion(psi, IntMorphism{{1, 2}}), InputError);
}

TEST(ClassifySpecial, Examples) {
  SpecialClass a = classify_special(IntMorphism{{0, 0, 1}}, 2, 1);
  EXPECT_TRUE(a.gauss_reduced);
  EXPECT_FALSE(a.quasi_special);
  EXPECT_FALSE(a.special);
  EXPECT_STREQ(a.label(), "GAUSS_REDUCED_ONLY");

  SpecialClass b = classify_special(IntMorphism{{1, 0, 2}}, 2, 1);
  EXPECT_TRUE(b.quasi_special);
  EXPECT_FALSE(b.special);
  EXPECT_STREQ(b.label(), "QUASI_SPECIAL");

  SpecialClass c = classify_special(IntMorphism{{1, 0, 2}, {0, 1, 3}}, 2, 1);
  EXPECT_TRUE(c.quasi_special);
  EXPECT_FALSE(c.gauss_reduced);
  EXPECT_FALSE(c.special);

  SpecialClass d = classify_special(IntMorphism{{2, 1, -2}}, 2, 1);
  EXPECT_TRUE(d.special);
  EXPECT_STREQ(d.label(), "SPECIAL");
  EXPECT_THROW(classify_special(IntMorphism{{1, 0}}, 2, 1), InputError);
}

TEST(HelpingIsogenies, Examples) {
  HelpingTriple t = helping_isogenies(*is_gauss_reduced(IntMorphism{{2, 1}}), 2);
  EXPECT_EQ(t.F, (IntMorphism{{1, 0}, {0, 2}}));
  EXPECT_EQ(t.Lmat, (IntMorphism{{1, 1}, {0, 1}}));
  EXPECT_EQ(t.Phi, (IntMorphism{{2, 1}, {0, 1}}));
  EXPECT_EQ(t.Phi * t.F, (IntMorphism{{2, 2}, {0, 2}}));

  HelpingTriple id = helping_isogenies(*is_gauss_reduced(IntMorphism::identity(3)), 3);
  EXPECT_EQ(id.F, IntMorphism::identity(3));
  EXPECT_EQ(id.Lmat, IntMorphism::identity(3));
  EXPECT_EQ(id.Phi, IntMorphism::identity(3));
}

TEST(HelpingIsogenies, Determinants) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    std::size_t g = 1 + rng() % 4, r = 1 + rng() % g;
    long a = 1 + static_cast<long>(rng() % 4);
    IntMorphism m(r, g);
    std::uniform_int_distribution<long> d(-a, a);
    for (std::size_t i2 = 0; i2 < r; ++i2) {
      m(i2, i2) = a;
      for (std::size_t j = r; j < g; ++j) m(i2, j) = d(rng);
    }
    auto form = is_gauss_reduced(m);
    ASSERT_TRUE(form);
    HelpingTriple t = helping_isogenies(*form, g);
    EXPECT_EQ(determinant(t.F), ipow_check(a, g - r));
    EXPECT_EQ(determinant(t.Lmat), 1);
    EXPECT_EQ(determinant(t.Phi), ipow_check(a, r));
    EXPECT_EQ(t.Phi * t.F, mpz_class(a) * t.Lmat);
  }
}
