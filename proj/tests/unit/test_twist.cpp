#include <gtest/gtest.h>

#include "wrtwist/errors.hpp"
#include "wrtwist/families.hpp"
#include "wrtwist/twist.hpp"

using namespace wrtwist;

namespace {

FieldPtr shanks_field(long n) {
  return CubicField::from_polynomial(-1, -(n + 3), -n);
}

Basis3 shanks_good(const FieldPtr& f) {
  auto r = f->rho();
  return {(f->one() + r + r.square()) / Rational(3), r, r + r.square()};
}

GramMatrix3 shanks_expected(long n) {
  Rational q = n * n + 3 * n + 9;
  Rational s = Rational(n * n + 3 * n + 3) * q / 9;
  Rational u = -Rational(n * n + 9 * n + 9) * q / 27;
  Rational v = Rational(n * n - 3 * n - 9) * q / 27;
  Rational w = 2 * q / 3;
  return GramMatrix3::equal_diagonal(s, u, v, w);
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ParseError;
}

}  // namespace

TEST(Algorithm1, ShanksN21) {
  auto f = shanks_field(21);
  TwistReport r = test_good_basis(shanks_good(f));
  ASSERT_TRUE(r.sign_ok);
  ASSERT_TRUE(r.twisted_gram);
  EXPECT_EQ(*r.twisted_gram, GramMatrix3::equal_diagonal(28899, -12141, 7011, 342));
  EXPECT_TRUE(r.is_good);
}

TEST(Algorithm1, ShanksPolynomialsInN) {
  for (long n : {21L, 48L, 75L}) {
    auto f = shanks_field(n);
    TwistReport r = test_good_basis(shanks_good(f));
    ASSERT_TRUE(r.twisted_gram) << n;
    EXPECT_EQ(*r.twisted_gram, shanks_expected(n)) << n;
    EXPECT_TRUE(r.is_good);
  }
}

TEST(Algorithm1, SymmetricFunctionIdentities) {
  auto f = shanks_field(21);
  TwistReport r = test_good_basis(shanks_good(f));
  EXPECT_EQ(r.e1, trace(r.alpha0));
  EXPECT_EQ(r.e3, norm(r.alpha0));
  EXPECT_EQ(r.e2, (trace(r.alpha0) * trace(r.alpha0) - trace(r.alpha0.square())) / 2);
  EXPECT_EQ(r.sign_ok, r.e1 * r.e3 > 0 && r.e2 > 0);
  EXPECT_EQ(alpha0_of_basis(r.basis), r.alpha0);
}

TEST(Algorithm1, WashingtonN4) {
  auto inst = make_family_field(Family::Washington, Integer(4));
  auto gb = family_good_basis(inst, "1");
  TwistReport r = test_good_basis(gb.basis);
  ASSERT_TRUE(r.twisted_gram);
  EXPECT_EQ(*r.twisted_gram, GramMatrix3::equal_diagonal(17955, 4788, -4788, 4788));
  EXPECT_TRUE(r.is_good);
}

TEST(Algorithm1, WashingtonN2Excluded) {
  auto inst = make_family_field(Family::Washington, Integer(2));
  EXPECT_EQ(kind_of([&] { family_good_basis(inst, "1"); }), ErrorKind::ConditionOutOfRange);
}

TEST(Algorithm1, DegenerateBasis) {
  auto f = shanks_field(-1);
  auto r = f->rho();
  EXPECT_EQ(kind_of([&] { test_good_basis({r, r + r, f->one()}); }), ErrorKind::DegenerateBasis);
}

TEST(Algorithm1, IntegralAlphaForIntegralBasis) {
  auto inst = make_family_field(Family::Shanks, Integer(-1));
  ASSERT_TRUE(inst.integral_basis);
  FieldElement a = alpha0_of_basis(*inst.integral_basis);
  EXPECT_TRUE(inst.field->is_integral(a));
}

TEST(TwistedGram, SignMismatch) {
  auto f = shanks_field(-1);
  Basis3 b{f->one(), f->rho(), f->rho().square()};
  EXPECT_EQ(kind_of([&] { gram_of_twisted_basis(b, f->rho(), 1); }), ErrorKind::SignMismatch);
  GramMatrix3 g = gram_of_twisted_basis(b, f->one(), 1);
  EXPECT_EQ(g.s11, 3);
}

TEST(TwistedGram, EqualDiagonalWhenSignOk) {
  auto inst = make_family_field(Family::Shanks, Integer(-1));
  std::mt19937_64 rng(3);
  int seen = 0;
  for (int it = 0; it < 100; ++it) {
    Basis3 b = transform_basis(*inst.integral_basis, random_unimodular(rng, 3));
    TwistReport r = test_good_basis(b);
    if (!r.sign_ok) continue;
    ++seen;
    EXPECT_TRUE(r.twisted_gram->has_equal_diagonal());
    if (r.is_good) EXPECT_TRUE(wr_gram_criterion(*r.twisted_gram));
  }
  EXPECT_GT(seen, 0);
}

TEST(UnitTransport, Pool) {
  auto f = shanks_field(21);
  TwistReport r = test_good_basis(shanks_good(f));
  ASSERT_TRUE(r.is_good);
  for (const auto& u : {f->one(), -f->one(), f->rho(), f->rho().inverse(), galois_apply(f->rho(), 1) * f->rho()}) {
    TwistReport t = unit_transport(r, u);
    ASSERT_TRUE(t.twisted_gram);
    EXPECT_EQ(*t.twisted_gram, *r.twisted_gram);
  }
  EXPECT_EQ(unit_transport(r, f->one()).alpha0, r.alpha0);
  EXPECT_EQ(unit_transport(r, f->rho()).alpha0, r.alpha0 / f->rho().square());
  EXPECT_EQ(kind_of([&] { unit_transport(r, f->element(2)); }), ErrorKind::NotAUnit);
}

TEST(Search, ZeroIterationsTestsOnlyStart) {
  auto f = shanks_field(21);
  SearchOptions o;
  o.iterations = 0;
  auto found = good_basis_search(shanks_good(f), o);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(*found[0].twisted_gram, GramMatrix3::equal_diagonal(28899, -12141, 7011, 342));
}

TEST(Search, FindsGoodBasisForConductorSeven) {
  auto inst = make_family_field(Family::Shanks, Integer(-1));
  SearchOptions o;
  auto found = good_basis_search(*inst.integral_basis, o);
  EXPECT_FALSE(found.empty());
  for (const auto& r : found) EXPECT_TRUE(r.is_good);
}

TEST(Search, DeterministicAcrossThreads) {
  auto inst = make_family_field(Family::Shanks, Integer(2));
  SearchOptions o;
  o.iterations = 300;
  o.seed = 99;
  auto a = good_basis_search(*inst.integral_basis, o);
  o.threads = 4;
  auto b = good_basis_search(*inst.integral_basis, o);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(*a[i].twisted_gram, *b[i].twisted_gram);
    EXPECT_EQ(a[i].basis, b[i].basis);
  }
}

TEST(RandomUnimodular, DeterminantOne) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(det3(random_unimodular(rng, 3)) * det3(random_unimodular(rng, 3)) != 0, true);
  std::mt19937_64 r2(1);
  for (int i = 0; i < 50; ++i) {
    Integer d = det3(random_unimodular(r2, 3));
    EXPECT_TRUE(d == 1 || d == -1);
  }
}

TEST(PrincipalLink, WashingtonCases) {
  struct Case {
    long n;
    const char* id;
    long k;
  };
  // The 2b basis has halves, so alpha0 there is the closed form (n^2-4n+7)(n^2+3) psi over 16.
  for (Case c : {Case{4, "1", 3 * 3 * 19}, Case{6, "1", 5 * 5 * 39}, Case{3, "2b", 4 * 12 / 16}, Case{5, "2b", 12 * 28 / 16}}) {
    auto inst = make_family_field(Family::Washington, Integer(c.n));
    auto gb = family_good_basis(inst, c.id);
    TwistReport r = test_good_basis(gb.basis);
    ASSERT_TRUE(r.is_good) << c.n;
    auto g = washington_principal_generator(inst);
    auto link = principal_link(r, kDefaultTMax, g);
    ASSERT_TRUE(link) << c.n;
    long a = c.n * c.n - 3 * c.n + 3;
    EXPECT_EQ(link->norm_psi, a * a) << c.n;
    EXPECT_EQ(link->k, c.k) << c.n;
    EXPECT_EQ(link->t, 1);
    EXPECT_TRUE(link->verified);
    EXPECT_TRUE(link->equal_abs_offdiagonal);
    EXPECT_EQ(link->similar_to_generator, true);
    EXPECT_TRUE(is_totally_positive(link->psi));
  }
}

TEST(PrincipalLink, AbsentWithoutDivisibility) {
  auto inst = make_family_field(Family::Washington, Integer(4));
  TwistReport r = test_good_basis(family_good_basis(inst, "1").basis);
  ASSERT_TRUE(r.is_good);
  // rho + 3 has norm prime to the discriminant, so no power of it is divisible.
  auto f = inst.field;
  r.alpha0 = r.alpha0 * (f->rho() + Rational(3));
  ASSERT_NE(norm(f->rho() + Rational(3)), 1);
  EXPECT_FALSE(principal_link(r, 4));
  r.is_good = false;
  EXPECT_FALSE(principal_link(r, 4));
}

TEST(Ortho, ConductorSevenAndShanks) {
  for (long n : {-1L, 1L}) {
    auto inst = make_family_field(Family::Shanks, Integer(n));
    OrthoResult res = orthogonal_twist(inst.field);
    ASSERT_TRUE(res.certificate) << n;
    const auto& c = *res.certificate;
    EXPECT_EQ(c.unimodular_gram.det(), 1);
    EXPECT_EQ(c.frame_gram, GramMatrix3::equal_diagonal(1, 0, 0, 0));
    EXPECT_TRUE(is_totally_positive(c.delta));
    EXPECT_EQ(abs(norm(c.delta)), *inst.field->discriminant());
    EXPECT_EQ(abs(Rational(det3(c.orthonormal_frame))), 1);
  }
  auto f7 = CubicField::from_conductor(conductor_params(Integer(7)));
  EXPECT_TRUE(orthogonal_twist(f7).certificate);
}
