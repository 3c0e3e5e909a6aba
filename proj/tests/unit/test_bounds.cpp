#include <gtest/gtest.h>

#include "tubescan/arith.hpp"
#include "tubescan/bounds.hpp"
#include "tubescan/errors.hpp"

using namespace tubescan;

namespace {

BoundParams unit_211() {
  BoundParams p;
  p.g = 2, p.d = 1, p.s = 1, p.K = 1, p.gamma_norm = Real(2);
  return p;
}

mpq_class exact(const Real& r) {
  EXPECT_TRUE(r.is_exact());
  return r.is_exact() ? r.exact_value() : mpq_class(-1);
}

}  // namespace

TEST(DegreeBounds, SubgroupBound) {
  EXPECT_EQ(deg_subgroup_bound(2, 3, 1), 81);
  for (long r = 1; r <= 4; ++r) EXPECT_EQ(deg_subgroup_bound(r, 1, 1), 1);
  for (long r = 1; r <= 3; ++r)
    EXPECT_EQ(deg_subgroup_bound(r, 10, 1) * ipow(mpz_class(4), static_cast<unsigned long>(r)), deg_subgroup_bound(r, 20, 1));
}

TEST(DegreeBounds, ImageBound) {
  EXPECT_EQ(deg_image_bound(2, 1, 7, mpq_class(3, 2)), mpq_class(21, 2));
  EXPECT_EQ(deg_image_bound(1, 5, 3, 1), 75);
  EXPECT_EQ(deg_image_bound(2, 6, 3, 1), deg_image_bound(2, 3, 3, 1) * 16);
}

TEST(DegreeBounds, HelpingBound) {
  EXPECT_EQ(deg_helping_bound(3, 3, 7, 2, 5, 3), 30);
  EXPECT_EQ(deg_helping_bound(3, 2, 2, 1, 1, 1), 4);
}

TEST(DegreeBounds, HindryDegree) {
  // deg [b]X |Stab X cap E^g[b]| = b^(2d) deg X
  for (long b = 1; b <= 5; ++b)
    for (long stab : {1L, 2L, 4L})
      EXPECT_EQ(hindry_degree(b, 2, 3, stab) * stab, ipow(mpz_class(b), 4) * 3);
  EXPECT_EQ(hindry_degree(2, 1, 1, 1), deg_image_bound(1, 2, 1, 1));
}

TEST(Bogomolov, Examples) {
  EXPECT_EQ(exact(bogomolov_epsilon(1, 3, mpq_class(1, 5), mpq_class(7, 3))), mpq_class(7, 3));
  EXPECT_EQ(exact(bogomolov_epsilon(16, 2, 0, 1)), mpq_class(1, 2));
  Real a = bogomolov_epsilon(5, 2, mpq_class(1, 3), 1), b = bogomolov_epsilon(6, 2, mpq_class(1, 3), 1);
  Real c = bogomolov_epsilon(5, 2, mpq_class(1, 2), 1);
  EXPECT_TRUE(certainly_less(b, a));
  EXPECT_TRUE(certainly_less(c, a));
}

TEST(EMLowerBounds, Examples) {
  BoundParams p = unit_211();
  p.eta = mpq_class(1, 2);
  auto [e1, e2] = em_lower_bounds(p, 1);
  EXPECT_EQ(exact(e1), exact(em_eps1(p)));
  EXPECT_EQ(exact(e2), exact(em_eps2(p)));
  EXPECT_EQ(exact(em_lower_bounds(p, 4).first), mpq_class(1, 16));
  for (mpq_class eta : {mpq_class(1, 7), mpq_class(3, 2)}) {
    p.eta = eta;
    EXPECT_EQ(exact(em_lower_bounds(p, 5).second), exact(em_eps2(p)) * 5);
  }
}

TEST(Finito, Examples) {
  BoundParams p = unit_211();
  p.K = 3;
  p.c_bog_g = 2;
  FinitoThresholds f = finito_thresholds(p);
  EXPECT_EQ(f.eta, mpq_class(1, 2));
  EXPECT_EQ(f.exponent_denominator, 1);
  EXPECT_EQ(exact(f.m), exact(Real(p.K) / em_eps2(p)));
  EXPECT_TRUE(f.diagnostics.empty());

  BoundParams q = unit_211();
  q.g = 3, q.eta = mpq_class(1, 2);
  FinitoThresholds h = finito_thresholds(q);
  EXPECT_EQ(h.exponent_denominator, -1);
  EXPECT_EQ(h.diagnostics, std::vector<std::string>{"EXPONENT_NONPOSITIVE"});

  // K/g is the smaller branch when eps1 is large.
  BoundParams r = unit_211();
  r.c_bog_d1 = 100;
  EXPECT_EQ(exact(finito_thresholds(r).eps1_threshold), mpq_class(1, 2));
}

TEST(Finito, DegenerateDenominatorIsAnInputError) {
  BoundParams p = unit_211();
  p.g = 3, p.eta = mpq_class(1, 4);  // 1 - 2*1*2/4 = 0
  EXPECT_THROW(finito_thresholds(p), InputError);
}

TEST(CentroM, Examples) {
  EXPECT_EQ(centro_M(1, 0, 1, 2, 2, 1).n, 3);
  CentroM c = centro_M(2, 1, 1, 2, 2, 1);
  EXPECT_EQ(c.M, 729);
  EXPECT_EQ(centro_M(Real(mpq_class(1, 2)), Real(mpq_class(1, 2)), Real(1), 2, 2, 1).M, 8);
  EXPECT_EQ(centro_M(Real(mpq_class(7, 5)), Real(0), Real(1), 1, 2, 0).M, 16);  // n = 2
  EXPECT_THROW(centro_M(1, 0, 0, 1, 2, 1), InputError);
}

TEST(EquiKprime, Examples) {
  EXPECT_EQ(exact(equi_Kprime(2, 1, 1, 0, 4)), 3);
  EXPECT_EQ(exact(equi_Kprime(3, 2, mpq_class(1, 10), mpq_class(1, 10), 1)), 5);
  Real a = equi_Kprime(2, 1, 3, 0, 1), b = equi_Kprime(2, 1, 4, 0, 1), c = equi_Kprime(2, 1, 4, 1, 1);
  EXPECT_TRUE(certainly_leq(a, b));
  EXPECT_TRUE(certainly_leq(b, c));
}

TEST(MainChain, UnitConstants) {
  BoundReport r = main_delta_chain(unit_211());
  EXPECT_EQ(r.n, 3);
  EXPECT_EQ(exact(r.eps1_threshold), mpq_class(1, 2));
  EXPECT_EQ(exact(r.delta1), mpq_class(1, 24));
  EXPECT_EQ(r.M_big, ipow(mpz_class(5184), 3));
  EXPECT_EQ(exact(r.delta), mpq_class(1, 24) / (ipow(mpz_class(5184), 3) * 72));
  EXPECT_TRUE(r.diagnostics.empty());
}

TEST(MainChain, ThresholdOverride) {
  BoundParams p = unit_211();
  p.eps1_threshold = mpq_class(3, 10);
  BoundReport r = main_delta_chain(p);
  EXPECT_TRUE(r.eps1_overridden);
  EXPECT_EQ(exact(r.delta1), mpq_class(1, 40));
  EXPECT_EQ(r.M_big, ipow(mpz_class(14400), 3));
  EXPECT_EQ(exact(r.delta), mpq_class(1, 40) / mpq_class(ipow(mpz_class(120), 7)));
  EXPECT_TRUE(certainly_less(r.delta, r.delta1));
  EXPECT_TRUE(certainly_leq(r.delta1, Real(p.K)));
}

TEST(MainChain, IrrationalChainStaysOrdered) {
  BoundParams p = unit_211();
  p.degV = 3, p.c1 = 2, p.K = mpq_class(5, 3), p.gamma_norm = sqrt(Real(3)), p.eta = mpq_class(1, 3);
  BoundReport r = main_delta_chain(p);
  EXPECT_FALSE(r.eps1_EM.is_exact());
  EXPECT_TRUE(certainly_less(r.delta, r.delta1));
  EXPECT_TRUE(certainly_leq(r.delta1, Real(p.K)));
  EXPECT_TRUE(certainly_positive(r.delta));
}

TEST(MainChain, NoGammaUsesZeroNorm) {
  BoundParams p = unit_211();
  p.s = 0, p.gamma_norm = Real(0);
  BoundReport r = main_delta_chain(p);
  EXPECT_TRUE(certainly_positive(r.delta));
  EXPECT_TRUE(certainly_positive(r.K_prime));
}

TEST(MainChain, G3DiagnosticAndDeterministicReport) {
  BoundParams p = unit_211();
  p.g = 3;
  BoundReport r = main_delta_chain(p);
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0], "EXPONENT_NONPOSITIVE");
  EXPECT_EQ(to_kv(r), to_kv(main_delta_chain(p)));
  EXPECT_NE(to_kv(r).find("diagnostics = EXPONENT_NONPOSITIVE"), std::string::npos);
}

TEST(MainChain, ValidatesParameters) {
  BoundParams p = unit_211();
  p.d = 2;
  EXPECT_THROW(main_delta_chain(p), InputError);
  p = unit_211();
  p.c0 = 0;
  EXPECT_THROW(main_delta_chain(p), InputError);
}

TEST(Report, KvPrintsFiftyDigitDelta) {
  BoundParams p = unit_211();
  p.eps1_threshold = mpq_class(3, 10);
  std::string kv = to_kv(main_delta_chain(p));
  // 1/(40*120^7) = 7.0559...e-17
  EXPECT_NE(kv.find("delta.exact = 1/14332723200000000"), std::string::npos) << kv;
  EXPECT_NE(kv.find("M_big = 2985984000000"), std::string::npos);
  EXPECT_NE(to_json(main_delta_chain(p)).find("\"M_big\": \"2985984000000\""), std::string::npos);
}

TEST(GammaCheck, Examples) {
  CurveOverQ E(0, -2);
  // ||(3,5)|| ~ 0.82; scaled by 5 it exceeds 3gK = 3 for g = 1, K = 1.
  PointVector big{{scalar_mul(E, 5, parse_point("3,5"))}};
  GammaCheck ok = gamma_basis_check(E, {big}, 1, 1e-8, 3);
  EXPECT_EQ(ok.verdict, CheckVerdict::PASS);
  EXPECT_EQ(ok.condition2, CheckVerdict::PASS);

  CurveOverQ T(0, 1);
  GammaCheck tor = gamma_basis_check(T, {parse_point_vector("2,3")}, 1, 1e-8, 2);
  EXPECT_EQ(tor.condition1, CheckVerdict::FAIL);
  EXPECT_EQ(tor.verdict, CheckVerdict::FAIL);
  ASSERT_TRUE(tor.failing_generator);
  EXPECT_EQ(*tor.failing_generator, 0u);

  PointVector small{{parse_point("3,5")}};
  EXPECT_EQ(gamma_basis_check(E, {small}, 1, 1e-8, 1).condition1, CheckVerdict::FAIL);
}
