#include <gtest/gtest.h>

#include <mpfr.h>

#include <random>

#include "asymvol/error.hpp"
#include "asymvol/scalar.hpp"

using namespace asymvol;

namespace {

QuadExt q(long a_num, long a_den, long b_num, long b_den, long d) {
  return canonicalize(make_rat(a_num, a_den), make_rat(b_num, b_den), Int(d));
}

// High-precision evaluation, independent of QuadExt::sign.
int mpfr_sign_of(const QuadExt& v) {
  mpfr_t a, r;
  mpfr_inits2(512, a, r, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_z(r, v.discriminant().get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(r, r, MPFR_RNDN);
  mpfr_mul_q(r, r, v.radical_coefficient().get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(a, v.rational_part().get_mpq_t(), MPFR_RNDN);
  mpfr_add(a, a, r, MPFR_RNDN);
  int s = mpfr_sgn(a);
  mpfr_clears(a, r, static_cast<mpfr_ptr>(nullptr));
  return s > 0 ? 1 : (s < 0 ? -1 : 0);
}

}  // namespace

TEST(Rat, ParseAndFormat) {
  EXPECT_EQ(parse_rat("6/4"), make_rat(3, 2));
  EXPECT_EQ(format_rat(parse_rat("-6/4")), "-3/2");
  EXPECT_EQ(format_rat(parse_rat(" 7 ")), "7");
  EXPECT_THROW(parse_rat("1/0"), Error);
  EXPECT_THROW(parse_rat("abc"), Error);
  EXPECT_THROW(make_rat(1, 0), Error);
}

TEST(Rat, CanonicalInvariant) {
  Rat r = make_rat(-10, -4);
  EXPECT_EQ(r.get_num(), 5);
  EXPECT_EQ(r.get_den(), 2);
}

TEST(Rat, FieldLawsOnRandomTriples) {
  std::mt19937_64 rng(11);
  auto draw = [&] { return make_rat(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97) + 1); };
  for (int i = 0; i < 2000; ++i) {
    Rat a = draw(), b = draw(), c = draw();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(Rat, FloorCeilPow) {
  EXPECT_EQ(floor_rat(make_rat(-7, 2)), -4);
  EXPECT_EQ(ceil_rat(make_rat(-7, 2)), -3);
  EXPECT_EQ(pow_rat(make_rat(2, 3), 3), make_rat(8, 27));
  Rat root;
  EXPECT_TRUE(exact_root(make_rat(8, 27), 3, root));
  EXPECT_EQ(root, make_rat(2, 3));
  EXPECT_FALSE(exact_root(Rat(2), 2, root));
}

TEST(QuadExt, Canonicalize) {
  QuadExt a = canonicalize(0, 1, 8);
  EXPECT_EQ(a.discriminant(), 2);
  EXPECT_EQ(a.radical_coefficient(), 2);
  QuadExt b = canonicalize(3, 0, 5);
  EXPECT_EQ(b.discriminant(), 1);
  EXPECT_TRUE(b.is_rational());
  QuadExt c = q(-7, 2, 5, 2, 5);
  EXPECT_EQ(canonicalize(c.rational_part(), c.radical_coefficient(), c.discriminant()), c);
  EXPECT_EQ(c.to_string(), "-7/2 + 5/2*sqrt(5)");
  EXPECT_THROW(canonicalize(1, 1, 0), Error);
  EXPECT_THROW(canonicalize(1, 1, -3), Error);
  // A perfect square folds into the rational part.
  EXPECT_EQ(canonicalize(1, 1, 9), QuadExt(4));
}

TEST(QuadExt, CanonicalizeIdempotent) {
  for (long d : {2L, 12L, 50L, 72L, 1000L}) {
    QuadExt x = canonicalize(make_rat(1, 3), make_rat(-2, 5), d);
    EXPECT_EQ(canonicalize(x.rational_part(), x.radical_coefficient(), x.discriminant()), x);
  }
}

TEST(QuadExt, Compare) {
  EXPECT_GT(q(0, 1, 1, 1, 5), QuadExt(2));
  EXPECT_GT(q(-1, 2, 1, 2, 5), QuadExt(0));
  EXPECT_GT(q(-7, 2, 5, 2, 5), QuadExt(2));
  EXPECT_LT(q(-7, 2, 5, 2, 5), QuadExt(make_rat(21, 10)));
  EXPECT_THROW((void)quad_compare(q(0, 1, 1, 1, 2), q(0, 1, 1, 1, 3)), Error);
}

TEST(QuadExt, CompareAgreesWithHighPrecision) {
  std::mt19937_64 rng(3);
  const long discs[] = {2, 3, 5, 6, 7, 10, 11, 13};
  for (int i = 0; i < 10000; ++i) {
    long a = static_cast<long>(rng() % 4001) - 2000, b = static_cast<long>(rng() % 401) - 200;
    long da = static_cast<long>(rng() % 50) + 1, db = static_cast<long>(rng() % 50) + 1;
    QuadExt v = q(a, da, b, db, discs[rng() % 8]);
    ASSERT_EQ(v.sign(), mpfr_sign_of(v)) << v.to_string();
  }
}

TEST(QuadExt, Arithmetic) {
  QuadExt s = q(-1, 2, 1, 2, 5);  // (sqrt5 - 1)/2
  EXPECT_EQ(s * s + s, QuadExt(1));
  EXPECT_EQ(QuadExt(5) * s - QuadExt(1), q(-7, 2, 5, 2, 5));
  EXPECT_EQ((s / s), QuadExt(1));
  EXPECT_EQ(s.conjugate(), q(-1, 2, -1, 2, 5));
  EXPECT_EQ(s.norm(), -1);
  EXPECT_THROW(s / QuadExt(0), Error);
  EXPECT_THROW(q(0, 1, 1, 1, 2) + q(0, 1, 1, 1, 3), Error);
}

TEST(QuadExt, RoundTrip) {
  for (const auto& v : {q(-7, 2, 5, 2, 5), q(0, 1, -3, 4, 2), QuadExt(make_rat(-5, 3)), q(1, 1, 1, 1, 7)}) {
    EXPECT_EQ(QuadExt::parse(v.to_string()), v) << v.to_string();
  }
  EXPECT_EQ(QuadExt::parse("-3/4*sqrt(2)").to_string(), "-3/4*sqrt(2)");
  EXPECT_THROW(QuadExt::parse("1 + sqrt(5"), Error);
}

TEST(QuadExt, Decimal) {
  EXPECT_EQ(q(-7, 2, 5, 2, 5).to_decimal(12), "2.09016994375");
  EXPECT_NEAR(q(-7, 2, 5, 2, 5).to_double(), 2.0901699437494742, 1e-15);
}

TEST(QuadExt, QuadraticRoots) {
  auto r = quadratic_roots(-1, -1, 1);  // 1 - s - s^2
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[1], q(-1, 2, 1, 2, 5));
  EXPECT_EQ(quadratic_roots(0, 2, -1), std::vector<QuadExt>{QuadExt(make_rat(1, 2))});
  EXPECT_TRUE(quadratic_roots(1, 0, 1).empty());
}
