#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tubescan/arith.hpp"
#include "tubescan/errors.hpp"
#include "tubescan/height.hpp"

using namespace tubescan;

namespace {

// Canonical heights from the independent oracle (tests/oracle/height_oracle.py,
// 60-digit run), normalized as 1/2 lim 4^-n h(x(2^n P)).
struct OracleCase {
  long A, B;
  const char* point;
  const char* value;
};
const OracleCase kOracle[] = {
    {0, -2, "3,5", "0.674788417840059022738880592822"},
    {0, 17, "-2,3", "0.227308432592105313427898922729"},
    {0, 17, "-1,4", "0.712552157702836728088768414968"},
    {0, 17, "4,9", "0.394587990390632751845652674427"},
    {-1, 1, "1,1", "0.0249041986490324133200845466986"},
    {-7, 10, "1,2", "0.0785364317543439954494502030792"},
};

// |a - b| as a double, computed at high precision first.
double gap(const BigFloat& a, const BigFloat& b) { return abs(sub(a, b, MPFR_RNDN, 256)).to_double(); }

BigFloat big(const char* decimal) { return BigFloat(parse_real_literal(decimal), 256); }

}  // namespace

TEST(Height, MatchesOracle) {
  for (const auto& c : kOracle) {
    HeightEngine H(CurveOverQ(c.A, c.B));
    auto h = H.height_mp(parse_point(c.point), 1e-26);
    EXPECT_LE(h.err, 1e-26);
    // Frozen values carry 30 digits.
    EXPECT_LE(gap(h.value, big(c.value)), 1e-26 + 1e-30) << c.point;
  }
}

TEST(Height, DoubleApiHonoursTolerance) {
  CurveOverQ E(0, -2);
  for (double tol : {1e-3, 1e-6, 1e-9, 1e-12}) {
    HeightValue h = canonical_height(E, parse_point("3,5"), tol);
    EXPECT_LE(h.tol, tol);
    EXPECT_NEAR(h.value, 0.674788417840059022738880592822, tol + 1e-16);
  }
}

TEST(Height, Identity) { EXPECT_EQ(canonical_height(CurveOverQ(0, 1), Point::O(), 1e-8).value, 0.0); }

TEST(Height, TorsionVanishes) {
  CurveOverQ E(0, 1);
  HeightEngine H(E);
  for (const char* t : {"-1,0", "0,1", "0,-1", "2,3", "2,-3"}) {
    auto h = H.height_mp(parse_point(t), 1e-30);
    EXPECT_LE(abs(h.value).to_double(), 1e-30 + h.err) << t;
  }
}

TEST(Height, Quadratic) {
  struct Case {
    long A, B;
    const char* P;
  };
  // The second curve has positive discriminant, outside the oracle's range.
  for (const Case& c : {Case{0, -2, "3,5"}, Case{-25, 0, "-4,6"}, Case{-7, 10, "1,2"}}) {
    CurveOverQ E(c.A, c.B);
    HeightEngine H(E);
    Point P = parse_point(c.P);
    auto h1 = H.height_mp(P, 1e-30);
    for (long m = 2; m <= 5; ++m) {
      auto hm = H.height_mp(scalar_mul(E, m, P), 1e-30);
      BigFloat m2(mpz_class(m * m), 64);
      EXPECT_LE(gap(hm.value, mul(m2, h1.value, MPFR_RNDN, 256)), (m * m + 1) * 1e-30) << c.P << " m=" << m;
    }
  }
}

TEST(Height, ParallelogramLaw) {
  CurveOverQ E(0, 17);
  HeightEngine H(E);
  Point P = parse_point("-2,3"), Q = parse_point("-1,4");
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> d(-3, 3);
  for (int i = 0; i < 10; ++i) {
    Point a = point_add(E, scalar_mul(E, d(rng), P), scalar_mul(E, d(rng), Q));
    Point b = point_add(E, scalar_mul(E, d(rng), P), scalar_mul(E, d(rng), Q));
    const double t = 1e-25;
    auto s = add(H.height_mp(point_add(E, a, b), t).value, H.height_mp(point_sub(E, a, b), t).value, MPFR_RNDN, 256);
    auto r = add(H.height_mp(a, t).value, H.height_mp(b, t).value, MPFR_RNDN, 256);
    EXPECT_LE(gap(s, mul(BigFloat(mpz_class(2), 64), r, MPFR_RNDN, 256)), 8 * t);
  }
}

TEST(Height, InvariantUnderRescaling) {
  // (x, y) -> (u^2 x, u^3 y) with (A, B) -> (u^4 A, u^6 B) is an isomorphism.
  CurveOverQ E(0, -2);
  auto h = HeightEngine(E).height_mp(parse_point("3,5"), 1e-28);
  for (mpq_class u : {mpq_class(1, 2), mpq_class(3), mpq_class(2, 5)}) {
    CurveOverQ F(0, -2 * ipow(u, 6));
    Point Q{false, 3 * u * u, 5 * u * u * u};
    auto hu = HeightEngine(F).height_mp(Q, 1e-28);
    EXPECT_LE(gap(h.value, hu.value), 2e-28) << u.get_str();
  }
}

TEST(Height, BudgetExhaustionIsReported) {
  HeightBudget b;
  b.max_terms = 3;
  HeightEngine H(CurveOverQ(0, -2), b);
  EXPECT_THROW(H.height(parse_point("3,5"), 1e-12), ResourceError);
  EXPECT_THROW(H.height(parse_point("3,5"), 0.0), InputError);
}

TEST(NaiveHeight, Examples) {
  EXPECT_DOUBLE_EQ(naive_height(mpq_class(3)), std::log(3.0));
  EXPECT_DOUBLE_EQ(naive_height(mpq_class(1)), 0.0);
  EXPECT_DOUBLE_EQ(naive_height(mpq_class(22, 7)), std::log(22.0));
  EXPECT_DOUBLE_EQ(naive_height(Point::O()), 0.0);
}

TEST(Pairing, Examples) {
  CurveOverQ E(0, 17);
  Point P = parse_point("-2,3"), Q = parse_point("-1,4");
  const double tol = 1e-10;
  EXPECT_NEAR(nt_pairing(E, P, P, tol), canonical_height(E, P, tol).value, 2 * tol);
  EXPECT_NEAR(nt_pairing(E, P, Point::O(), tol), 0.0, tol);
  EXPECT_NEAR(nt_pairing(E, P, Q, tol) - nt_pairing(E, Q, P, tol), 0.0, 2 * tol);
  // Bilinearity: <2P, Q> = 2 <P, Q>.
  EXPECT_NEAR(nt_pairing(E, scalar_mul(E, 2, P), Q, tol), 2 * nt_pairing(E, P, Q, tol), 8 * tol);
}

TEST(VectorHeight, IsTheMaximum) {
  CurveOverQ E(0, -2);
  Point P = parse_point("3,5");
  const double tol = 1e-10, h = 0.674788417840059022738880592822;
  EXPECT_EQ(vector_height(E, parse_point_vector("O ; O ; O"), tol).value, 0.0);
  EXPECT_NEAR(vector_height(E, PointVector{{P, Point::O()}}, tol).value, h, tol);
  EXPECT_NEAR(vector_height(E, PointVector{{P, scalar_mul(E, 2, P)}}, tol).value, 4 * h, 5 * tol);
}

TEST(Seminorm, ExactZeroOnTorsionAndToleranceOtherwise) {
  HeightEngine H1(CurveOverQ(0, 1)), H2(CurveOverQ(0, -2));
  NormValue z = seminorm(H1, parse_point_vector("2,3 ; 0,-1"), 1e-8);
  EXPECT_TRUE(z.exact_zero);
  EXPECT_EQ(z.value, 0.0);
  for (double tol : {1e-4, 1e-9, 1e-14}) {
    NormValue n = seminorm(H2, parse_point_vector("3,5 ; O"), tol);
    EXPECT_FALSE(n.exact_zero);
    EXPECT_LE(n.tol, tol / 2 * (1 + 1e-12));
    EXPECT_NEAR(n.value, std::sqrt(0.674788417840059022738880592822), n.tol + 1e-16);
  }
}

TEST(TubeO, ThreeValued) {
  CurveOverQ E1(0, 1), E2(0, -2);
  EXPECT_EQ(in_tube_O_eps(E1, parse_point_vector("2,3 ; -1,0"), 0.0, 1e-8), Trivalent::IN);
  double norm = std::sqrt(0.674788417840059022738880592822);
  PointVector x = parse_point_vector("3,5 ; O");
  EXPECT_EQ(in_tube_O_eps(E2, x, norm / 2, 1e-8), Trivalent::OUT);
  EXPECT_EQ(in_tube_O_eps(E2, x, norm, 1e-8), Trivalent::BOUNDARY);
  EXPECT_EQ(in_tube_O_eps(E2, x, 2 * norm, 1e-8), Trivalent::IN);
}

TEST(CompareNorm, Bands) {
  NormValue n{1.0, 1e-9, false};
  EXPECT_EQ(compare_norm(n, 2.0, 1e-6), Trivalent::IN);
  EXPECT_EQ(compare_norm(n, 0.5, 1e-6), Trivalent::OUT);
  EXPECT_EQ(compare_norm(n, 1.0, 1e-6), Trivalent::BOUNDARY);
  EXPECT_EQ(compare_norm(NormValue{0, 0, true}, 0.0, 1e-6), Trivalent::IN);
}
