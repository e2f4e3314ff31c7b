#include <gtest/gtest.h>

#include "wrtwist/errors.hpp"
#include "wrtwist/interval.hpp"
#include "wrtwist/numeric.hpp"

using namespace wrtwist;

TEST(Rational, CanonicalText) {
  EXPECT_EQ(to_string(Rational(0)), "0");
  EXPECT_EQ(to_string(Rational(28899)), "28899");
  Rational q(-6, 4);
  q.canonicalize();
  EXPECT_EQ(to_string(q), "-3/2");
}

TEST(Rational, Parse) {
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("1.25"), Rational(5, 4));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(Integer, RootsAndRounding) {
  EXPECT_EQ(isqrt(Integer(48)), 6);
  EXPECT_EQ(isqrt(Integer(49)), 7);
  EXPECT_TRUE(is_perfect_square(Integer(169)));
  EXPECT_FALSE(is_perfect_square(Integer(170)));
  EXPECT_EQ(floor_of(Rational(-7, 2)), -4);
  EXPECT_EQ(round_of(Rational(-7, 2)), -3);
  EXPECT_EQ(round_of(Rational(5, 2)), 3);
}

TEST(Integer, Squarefree) {
  EXPECT_EQ(is_squarefree(Integer(7519)), Tri::True);  // 73 * 103
  EXPECT_EQ(is_squarefree(Integer(27)), Tri::False);
  EXPECT_EQ(is_squarefree(Integer(301)), Tri::True);
  EXPECT_EQ(is_squarefree(Integer(1)), Tri::True);
  // Square of a prime above the trial bound.
  Integer big = Integer(1000003) * 1000003;
  EXPECT_EQ(is_squarefree(big, 1000), Tri::False);
  // Past bound^3 the cofactor could hide a square.
  EXPECT_EQ(is_squarefree(Integer(1000003) * 1000033, 1000), Tri::Unknown);
  EXPECT_EQ(is_squarefree(Integer(1000003) * 1000033, 100000), Tri::True);
}

TEST(Integer, Factor) {
  auto f = trial_factor(Integer(2 * 2 * 3 * 7 * 7 * 13));
  ASSERT_EQ(f.primes.size(), 4u);
  EXPECT_EQ(f.primes[1].first, 3);
  EXPECT_EQ(f.primes[2].second, 2u);
  EXPECT_EQ(f.cofactor, 1);
}

TEST(Integer, CrtAndInverse) {
  EXPECT_EQ(crt({{Integer(2), Integer(3)}, {Integer(3), Integer(5)}}), 8);
  EXPECT_EQ(mod_inverse(Integer(3), Integer(7)), 5);
}

TEST(Rational, BestApproximation) {
  Rational x(355, 113);
  EXPECT_EQ(best_rational(x + Rational(1, 1000000000), Integer(200)), x);
  EXPECT_EQ(best_rational(Rational(1, 3), Integer(5)), Rational(1, 3));
}

TEST(Tri, Logic) {
  EXPECT_EQ(tri_and(Tri::True, Tri::Unknown), Tri::Unknown);
  EXPECT_EQ(tri_and(Tri::False, Tri::Unknown), Tri::False);
  EXPECT_EQ(tri_and(Tri::True, Tri::True), Tri::True);
}

TEST(Matrix, DeterminantAndInverse) {
  Mat3 m = identity3();
  m[0][1] = 2;
  m[2][0] = Rational(1, 2);
  Mat3 inv = inverse3(m);
  EXPECT_EQ(mul(m, inv), identity3());
  EXPECT_EQ(det3(m), det3(transpose(m)));
  Mat3 zero{};
  EXPECT_THROW(inverse3(zero), Error);
  EXPECT_EQ(rank_of({IVec3{1, 2, 3}, IVec3{2, 4, 6}}), 1);
}

TEST(Interval, Arithmetic) {
  Interval a(Rational(-1), Rational(2));
  Interval b(Rational(3), Rational(4));
  Interval p = a * b;
  EXPECT_EQ(p.lo(), -4);
  EXPECT_EQ(p.hi(), 8);
  EXPECT_TRUE(a.contains_zero());
  EXPECT_FALSE(b.certain_sign() != 1);
  EXPECT_FALSE(a.certain_sign().has_value());
  Interval r = Interval(Rational(1, 3)).rounded_outward(8);
  EXPECT_TRUE(r.contains(Rational(1, 3)));
  EXPECT_LE(r.width(), Rational(1, 128));
}

TEST(SplitMix, Deterministic) {
  std::uint64_t s1 = 42, s2 = 42;
  EXPECT_EQ(splitmix64(s1), splitmix64(s2));
  EXPECT_NE(splitmix64(s1), splitmix64(s1));
}
