#include <gtest/gtest.h>

#include <random>

#include "wrtwist/errors.hpp"
#include "wrtwist/field.hpp"
#include "wrtwist/twist.hpp"

using namespace wrtwist;

namespace {

FieldPtr field7() { return CubicField::from_conductor(conductor_params(Integer(7))); }
FieldPtr field9() { return CubicField::from_conductor(conductor_params(Integer(9))); }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ParseError;
}

FieldElement random_element(const FieldPtr& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-9, 9);
  Rational c0(d(rng), static_cast<long>(1 + rng() % 4));
  c0.canonicalize();
  return f->element(c0, d(rng), d(rng));
}

}  // namespace

TEST(Conductor, Params) {
  ConductorData c7 = conductor_params(Integer(7));
  EXPECT_EQ(c7.a, -1);
  EXPECT_EQ(c7.b, 3);
  ConductorData c9 = conductor_params(Integer(9));
  EXPECT_EQ(c9.a, -3);
  EXPECT_EQ(c9.b, 3);
  EXPECT_EQ(kind_of([] { conductor_params(Integer(5)); }), ErrorKind::NoRepresentation);
}

TEST(Conductor, Shape) {
  EXPECT_TRUE(is_conductor_shape(Integer(7)));
  EXPECT_TRUE(is_conductor_shape(Integer(63)));
  EXPECT_TRUE(is_conductor_shape(Integer(91)));
  EXPECT_FALSE(is_conductor_shape(Integer(49)));
  EXPECT_FALSE(is_conductor_shape(Integer(27)));
  EXPECT_EQ(conductor_primes(Integer(63)), std::vector<Integer>{7});
  // Two fields of conductor 91.
  EXPECT_EQ(conductor_params_all(Integer(91)).size(), 2u);
}

TEST(Conductor, InvariantsHold) {
  for (int m = 7; m < 400; ++m) {
    if (!is_conductor_shape(Integer(m))) continue;
    for (const auto& cd : conductor_params_all(Integer(m))) {
      EXPECT_EQ(cd.a * cd.a + 3 * cd.b * cd.b, 4 * cd.m);
      EXPECT_NO_THROW(validate(cd));
    }
  }
}

TEST(Conductor, RejectsBadData) {
  EXPECT_ANY_THROW(CubicField::from_conductor(ConductorData{Integer(7), Integer(2), Integer(1)}));
}

TEST(Field, DefiningPolynomials) {
  auto f = field7();
  EXPECT_EQ(f->poly()[0], 1);
  EXPECT_EQ(f->poly()[1], -2);
  EXPECT_EQ(f->poly()[2], -1);
  EXPECT_EQ(*f->discriminant(), 49);
  auto g = field9();
  EXPECT_EQ(g->poly()[0], 1);
  EXPECT_EQ(g->poly()[1], -3);
  EXPECT_EQ(g->poly()[2], 0);
  EXPECT_EQ(*g->discriminant(), 81);
}

TEST(Field, Arithmetic) {
  auto f = field9();
  auto r = f->rho();
  EXPECT_EQ(r * r.square(), f->element(-1, 3));
  EXPECT_EQ(r.inverse(), f->element(3, 0, -1));
  EXPECT_EQ(r * r.inverse(), f->one());
  EXPECT_EQ(r + f->zero(), r);
  EXPECT_EQ(elem_arith(r, r, ArithOp::Mul), r.square());
  EXPECT_EQ(elem_arith(r, r, ArithOp::ScalarMul, Rational(1, 2)), r / Rational(2));
  EXPECT_EQ(elem_arith(r, r, ArithOp::Inv), r.inverse());
}

TEST(Field, Errors) {
  auto f = field9();
  auto g = field7();
  EXPECT_EQ(kind_of([&] { f->zero().inverse(); }), ErrorKind::DivisionByZero);
  EXPECT_EQ(kind_of([&] { (void)(f->rho() + g->rho()); }), ErrorKind::FieldMismatch);
}

TEST(Field, TraceNorm) {
  auto f = field9();
  auto one = trace_and_norm(f->one());
  EXPECT_EQ(one.trace, 3);
  EXPECT_EQ(one.norm, 1);
  auto r = trace_and_norm(f->rho());
  EXPECT_EQ(r.trace, 0);
  EXPECT_EQ(r.norm, -1);
  auto g = field7();
  EXPECT_EQ(abs(norm(poly_derivative_at_root(g))), 49);
}

TEST(Field, TraceNormProperties) {
  std::mt19937_64 rng(7);
  for (auto f : {field7(), field9()}) {
    for (int i = 0; i < 50; ++i) {
      auto x = random_element(f, rng);
      auto y = random_element(f, rng);
      EXPECT_EQ(trace(x + y), trace(x) + trace(y));
      EXPECT_EQ(norm(x * y), norm(x) * norm(y));
      EXPECT_EQ(trace(x), trace(x + galois_apply(x, 1) + galois_apply(x, 2)) / 3);
    }
  }
}

TEST(Galois, OrderThree) {
  for (auto f : {field7(), field9()}) {
    auto r = f->rho();
    EXPECT_EQ(galois_apply(f->one(), 1), f->one());
    EXPECT_EQ(galois_apply(galois_apply(galois_apply(r, 1), 1), 1), r);
    EXPECT_NE(galois_apply(r, 1), r);
    EXPECT_EQ(galois_apply(r, 2), galois_apply(galois_apply(r, 1), 1));
    auto s = galois_apply(r, 1);
    auto& p = f->poly();
    EXPECT_TRUE((s * s * s + p[2] * s * s + p[1] * s + p[0]).is_zero());
    EXPECT_EQ(mul(mul(f->galois(), f->galois()), f->galois()), identity3());
  }
}

TEST(Galois, OrientationGivesNegativeT) {
  for (int m : {7, 9, 13, 19, 63, 91}) {
    for (const auto& cd : conductor_params_all(Integer(m))) {
      auto f = CubicField::from_conductor(cd);
      EXPECT_EQ(f->t_sign(), -1) << "m=" << m;
    }
  }
}

TEST(Embed, Roots) {
  auto f = field9();
  auto e = embed(f->rho(), 64);
  std::vector<double> got{e[0].to_double(), e[1].to_double(), e[2].to_double()};
  std::sort(got.begin(), got.end());
  EXPECT_NEAR(got[0], -1.879385, 1e-6);
  EXPECT_NEAR(got[1], 0.347296, 1e-6);
  EXPECT_NEAR(got[2], 1.532089, 1e-6);
  // The first embedding is the smallest root.
  EXPECT_NEAR(e[0].to_double(), -1.879385, 1e-6);
  for (const auto& iv : embed(f->one(), 64)) EXPECT_TRUE(iv.contains(Rational(1)));
}

TEST(Embed, WidthBoundedByPrecision) {
  auto f = field7();
  auto x = f->element(Rational(1, 3), 2, -1);
  for (unsigned bits : {32u, 64u, 128u, 256u}) {
    auto e = embed(x, bits);
    auto fine = embed(x, 2 * bits);
    for (int i = 0; i < 3; ++i) {
      Rational cap = e[i].magnitude() > 1 ? e[i].magnitude() : Rational(1);
      Rational limit = cap * 2 / Rational(Integer(Integer(1) << bits));
      EXPECT_LE(e[i].width(), limit) << bits;
      EXPECT_TRUE(e[i].contains(fine[i].midpoint()));
    }
  }
}

TEST(Embed, Homomorphism) {
  std::mt19937_64 rng(3);
  auto f = field7();
  for (int i = 0; i < 20; ++i) {
    auto x = random_element(f, rng);
    auto y = random_element(f, rng);
    auto ex = embed(x, 64), ey = embed(y, 64), exy = embed(x * y, 64);
    for (int k = 0; k < 3; ++k) {
      Interval prod = ex[k] * ey[k];
      EXPECT_TRUE(prod.contains(exy[k].midpoint()) || exy[k].contains(prod.midpoint()));
    }
    Interval tr = ex[0] + ex[1] + ex[2];
    EXPECT_TRUE(tr.contains(trace(x)));
  }
}

TEST(Signs, Patterns) {
  auto f = field9();
  EXPECT_EQ(sign_pattern(f->one()), (std::array<int, 3>{1, 1, 1}));
  EXPECT_EQ(sign_pattern(f->zero()), (std::array<int, 3>{0, 0, 0}));
  EXPECT_EQ(sign_pattern(f->rho()), (std::array<int, 3>{-1, 1, 1}));
  EXPECT_TRUE(is_totally_positive(f->rho().square() + f->one()));
  EXPECT_FALSE(is_totally_positive(f->rho()));
}

TEST(Field, FromPolynomialComputesGalois) {
  // x^3 - 3x + 1 again, without conductor data.
  auto f = CubicField::from_polynomial(1, -3, 0);
  auto r = f->rho();
  EXPECT_EQ(galois_apply(galois_apply(galois_apply(r, 1), 1), 1), r);
  EXPECT_ANY_THROW(CubicField::from_polynomial(-1, 0, 0));  // x^3 - 1 is reducible
}

TEST(Field, IntegralBasis) {
  auto f = field7();
  ASSERT_TRUE(f->has_integral_basis());
  EXPECT_EQ(basis_discriminant(f->integral_basis()), 49);
  EXPECT_TRUE(f->is_integral(f->rho().square()));
  EXPECT_FALSE(f->is_integral(f->rho() / Rational(2)));
  EXPECT_NE(to_string(f->element(1, Rational(-1, 2), 3)).find('r'), std::string::npos);
}
