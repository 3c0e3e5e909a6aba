#include <gtest/gtest.h>

#include <random>

#include "tubescan/arith.hpp"
#include "tubescan/bigfloat.hpp"
#include "tubescan/errors.hpp"
#include "tubescan/real.hpp"

using namespace tubescan;

TEST(ParseRational, AcceptsIntegersAndFractions) {
  EXPECT_EQ(parse_rational("-3"), mpq_class(-3));
  EXPECT_EQ(parse_rational("22/7"), mpq_class(22, 7));
  EXPECT_EQ(parse_rational("6/4"), mpq_class(3, 2));
  EXPECT_EQ(parse_rational("+5"), mpq_class(5));
}

TEST(ParseRational, RejectsDecimalsAndJunk) {
  for (const char* s : {"0.5", "1e3", "", "1/0", "a", "1/", "/2", "1 2", "--1"})
    EXPECT_THROW(parse_rational(s), InputError) << s;
}

TEST(ParseRealLiteral, ConvertsExactly) {
  EXPECT_EQ(parse_real_literal("0.3"), mpq_class(3, 10));
  EXPECT_EQ(parse_real_literal("1e-8"), mpq_class(1, 100000000));
  EXPECT_EQ(parse_real_literal("2.5E3"), mpq_class(2500));
  EXPECT_EQ(parse_real_literal("-1/40"), mpq_class(-1, 40));
  EXPECT_THROW(parse_real_literal("1e"), InputError);
  EXPECT_THROW(parse_real_literal("0.3.1"), InputError);
}

TEST(ToString, RoundTripsRationals) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> d(-1000000, 1000000);
  for (int i = 0; i < 200; ++i) {
    long den = d(rng);
    if (den == 0) continue;
    mpq_class q(d(rng), den);
    q.canonicalize();
    EXPECT_EQ(parse_rational(to_string(q)), q);
  }
  EXPECT_EQ(to_string(mpq_class(-4)), "-4");
}

TEST(Factorize, ReconstructsRandomProducts) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    mpz_class n = 1;
    for (int k = 0; k < 4; ++k) n *= mpz_class(std::to_string(rng() % 100000 + 2));
    auto f = factorize(n);
    mpz_class back = 1;
    mpz_class prev = 1;
    for (const auto& [p, e] : f) {
      EXPECT_NE(mpz_probab_prime_p(p.get_mpz_t(), 30), 0);
      EXPECT_GT(p, prev);
      prev = p;
      back *= ipow(p, e);
    }
    EXPECT_EQ(back, n);
  }
}

TEST(Factorize, LargeSemiprime) {
  mpz_class p("1000000007"), q("998244353");
  auto f = factorize(p * q * 8);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].first, 2);
  EXPECT_EQ(f[0].second, 3u);
  EXPECT_EQ(f[1].first, q);
  EXPECT_EQ(f[2].first, p);
}

TEST(Valuation, Basics) {
  EXPECT_EQ(valuation(mpz_class(48), mpz_class(2)), 4u);
  EXPECT_EQ(valuation(mpz_class(-27), mpz_class(3)), 3u);
  EXPECT_EQ(valuation(mpz_class(35), mpz_class(2)), 0u);
}

TEST(ExactRoot, PerfectAndImperfect) {
  mpq_class r;
  EXPECT_TRUE(exact_root(mpq_class(27, 8), 3, r));
  EXPECT_EQ(r, mpq_class(3, 2));
  EXPECT_FALSE(exact_root(mpq_class(2), 2, r));
  EXPECT_TRUE(exact_root(mpq_class(0), 5, r));
  EXPECT_EQ(r, 0);
}

TEST(CeilFloor, Signs) {
  EXPECT_EQ(tubescan::ceil(mpq_class(7, 2)), 4);
  EXPECT_EQ(tubescan::floor(mpq_class(7, 2)), 3);
  EXPECT_EQ(tubescan::ceil(mpq_class(-7, 2)), -3);
  EXPECT_EQ(tubescan::floor(mpq_class(-7, 2)), -4);
  EXPECT_EQ(tubescan::ceil(mpq_class(5)), 5);
}

TEST(Ipow, NegativeExponent) { EXPECT_EQ(ipow(mpq_class(2, 3), -3), mpq_class(27, 8)); }

TEST(BigFloat, DirectedRoundingBrackets) {
  BigFloat one(mpz_class(1), 64), three(mpz_class(3), 64);
  BigFloat lo = div(one, three, MPFR_RNDD, 64), hi = div(one, three, MPFR_RNDU, 64);
  EXPECT_LT(lo, hi);
  EXPECT_EQ(BigFloat(mpq_class(1, 40), 64).to_sci(2, MPFR_RNDN), "2.5e-2");
}

TEST(Real, StaysExactOnRationalOps) {
  Real a = mpq_class(1, 3), b = mpq_class(1, 6);
  Real c = a + b;
  ASSERT_TRUE(c.is_exact());
  EXPECT_EQ(c.exact_value(), mpq_class(1, 2));
  Real p = pow(Real(mpq_class(5184)), mpq_class(3, 2));
  ASSERT_TRUE(p.is_exact());
  EXPECT_EQ(p.exact_value(), 373248);
}

TEST(Real, IrrationalPowerEnclosesValue) {
  Real s = sqrt(Real(2));
  EXPECT_FALSE(s.is_exact());
  EXPECT_LE(s.lower().to_double(MPFR_RNDD), 1.4142135623730951);
  EXPECT_GE(s.upper().to_double(MPFR_RNDU), 1.4142135623730950);
  Real sq = s * s;
  EXPECT_TRUE(certainly_leq(sq, Real(mpq_class(2000001, 1000000))));
  EXPECT_TRUE(certainly_less(Real(mpq_class(1999999, 1000000)), sq));
  EXPECT_FALSE(certainly_less(sq, Real(2)));
}

TEST(Real, CeilUpOfEnclosure) {
  EXPECT_EQ(ceil_up(Real(mpq_class(7, 2))), 4);
  EXPECT_EQ(ceil_up(sqrt(Real(2)) * Real(10)), 15);
}
