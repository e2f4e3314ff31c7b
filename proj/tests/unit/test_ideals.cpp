#include <gtest/gtest.h>

#include <random>

#include "wrtwist/errors.hpp"
#include "wrtwist/ideals.hpp"

using namespace wrtwist;

namespace {

FieldPtr conductor_field(long m, std::size_t index = 0) {
  return CubicField::from_conductor(conductor_params_all(Integer(m)).at(index));
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

TEST(Eisenstein, Seven) {
  ConductorData cd = conductor_params(Integer(7));
  EisensteinRep r = represent_prime_eisenstein(Integer(7), cd);
  EXPECT_EQ(r.y * r.y - r.y * r.z + r.z * r.z, 7);
  Integer s = r.y + r.z;
  EXPECT_EQ(((s % 3) + 3) % 3, 1);
  Integer t = r.z * (cd.a + 3 * cd.b) + r.y * (cd.a - 3 * cd.b);
  EXPECT_EQ(t % 7, 0);
}

TEST(Eisenstein, NotRepresentable) {
  ConductorData cd = conductor_params(Integer(7));
  EXPECT_EQ(kind_of([&] { represent_prime_eisenstein(Integer(5), cd); }), ErrorKind::NotRepresentable);
}

TEST(Eisenstein, ContractOverPrimes) {
  for (long m : {13L, 19L, 31L, 91L, 133L, 247L}) {
    for (const auto& cd : conductor_params_all(Integer(m))) {
      for (const auto& p : conductor_primes(Integer(m))) {
        EisensteinRep r = represent_prime_eisenstein(p, cd);
        EXPECT_EQ(r.y * r.y - r.y * r.z + r.z * r.z, p);
      }
    }
  }
}

TEST(IdealBasis, KappaOrbitConductorSeven) {
  RamifiedSpec spec{conductor_field(7), {1}, {}, 0};
  IdealBasis ib = ideal_basis(spec);
  EXPECT_EQ(ib.construction, IdealTag::KappaOrbit);
  EXPECT_EQ(ib.claimed_norm, 49);
  EXPECT_TRUE(covolume_ok(ib));
  EXPECT_EQ(ib.elements[1], galois_apply(ib.elements[0], 1));
  // 54 N(kappa) is divisible by p_I^2 p_J.
  Rational nk = norm(ib.elements[0]);
  EXPECT_TRUE(is_integer(54 * nk / 49));
}

TEST(IdealBasis, ThreeDividesConductor) {
  auto f = conductor_field(63);
  // P_0^2 P_1: {3 p_1, 3 rho, rho - sigma(rho)}.
  RamifiedSpec spec{f, {}, {1}, 2};
  IdealBasis ib = ideal_basis(spec);
  EXPECT_EQ(ib.construction, IdealTag::ThreeMidMShapeII);
  EXPECT_EQ(ib.claimed_norm, 9 * 7);
  EXPECT_TRUE(covolume_ok(ib));
  EXPECT_EQ(ib.elements[0], f->element(3 * 7));
  EXPECT_EQ(ib.elements[1], f->element(0, 3));
  EXPECT_EQ(ib.elements[2], f->rho() - galois_apply(f->rho(), 1));
  EXPECT_TRUE(covolume_ok(ideal_basis(RamifiedSpec{f, {1}, {}, 2})));
  for (int p0 : {0, 1}) {
    IdealBasis other = ideal_basis(RamifiedSpec{f, {}, {1}, p0});
    EXPECT_TRUE(covolume_ok(other)) << p0;
  }
}

TEST(IdealBasis, InvalidSpec) {
  auto f = conductor_field(91);
  EXPECT_EQ(kind_of([&] { ideal_basis(RamifiedSpec{f, {1}, {1}, 0}); }), ErrorKind::InvalidSpec);
  EXPECT_EQ(kind_of([&] { ideal_basis(RamifiedSpec{f, {3}, {}, 0}); }), ErrorKind::InvalidSpec);
  EXPECT_EQ(kind_of([&] { ideal_basis(RamifiedSpec{f, {}, {}, 1}); }), ErrorKind::InvalidSpec);
}

TEST(WrStatus, ClosedForm) {
  // Simple prime P_1 of m = 7: 49 > 28.
  auto f7 = conductor_field(7);
  EXPECT_FALSE(ideal_wr_status(RamifiedSpec{f7, {}, {1}, 0}).is_wr);
  // Its square has norm rule 7 in [7/4, 28].
  EXPECT_TRUE(ideal_wr_status(RamifiedSpec{f7, {1}, {}, 0}).is_wr);
  // m = 793 = 13 * 61, P above 13: 169 < 793/4.
  auto f793 = conductor_field(793);
  RamifiedSpec p13{f793, {}, {1}, 0};
  EXPECT_FALSE(ideal_wr_status(p13).is_wr);
  EXPECT_FALSE(is_wr_lattice(ideal_gram(ideal_basis(p13))).is_wr);
  auto f63 = conductor_field(63);
  IdealWrStatus s = ideal_wr_status(RamifiedSpec{f63, {}, {1}, 0});
  EXPECT_FALSE(s.is_wr);
  EXPECT_EQ(s.reason, WrReason::ProvenNotWR);
}

TEST(WrStatus, AgreesWithEnumeration) {
  for (long m : {7L, 9L, 13L, 63L, 91L, 117L, 247L, 279L}) {
    for (std::size_t idx = 0; idx < conductor_params_all(Integer(m)).size(); ++idx) {
      auto f = conductor_field(m, idx);
      for (const auto& spec : all_ramified_specs(f)) {
        IdealBasis ib = ideal_basis(spec);
        EXPECT_TRUE(covolume_ok(ib));
        GramMatrix3 g = ideal_gram(ib);
        EXPECT_EQ(ideal_wr_status(spec).is_wr, is_wr_lattice(g).is_wr) << "m=" << m;
      }
    }
  }
}

TEST(WrStatus, FirstMinimumFormula) {
  for (long m : {7L, 13L, 91L, 247L}) {
    auto f = conductor_field(m);
    for (const auto& spec : all_ramified_specs(f)) {
      if (spec.I.empty()) continue;
      GramMatrix3 g = ideal_gram(ideal_basis(spec));
      EXPECT_EQ(kappa_first_minimum(spec), is_wr_lattice(g).first_minimum) << m;
    }
  }
}

TEST(WrStatus, MinimalVectorsAreTheOrbit) {
  auto f = conductor_field(247);
  for (const auto& spec : all_ramified_specs(f)) {
    if (!ideal_wr_status(spec).is_wr) continue;
    IdealBasis ib = ideal_basis(spec);
    WrResult w = is_wr_lattice(ideal_gram(ib));
    EXPECT_EQ(w.minimal_vectors.size(), 6u);
  }
}

TEST(BetaNorm, Values) {
  auto f = conductor_field(13);
  EXPECT_EQ(beta_norm(f, 1, 0, 0), 3);
  EXPECT_EQ(beta_norm(f, 0, 1, 0), Rational(2 * 13, 3));
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> d(-6, 6);
  FieldElement beta = f->rho() - Rational(1, 3);
  for (int i = 0; i < 30; ++i) {
    Rational m1(d(rng), 2), m2 = d(rng), m3 = d(rng);
    m1.canonicalize();
    FieldElement x = f->element(m1) + m2 * beta + m3 * galois_apply(beta, 1);
    EXPECT_EQ(beta_norm(f, m1, m2, m3), trace(x.square()));
  }
}

TEST(Hnf, Basics) {
  IdealHnf h = hnf_of({IVec3{4, 0, 0}, IVec3{2, 2, 0}, IVec3{0, 0, 3}, IVec3{6, 2, 3}});
  EXPECT_EQ(h.index(), 24);
  for (int i = 0; i < 3; ++i) EXPECT_GT(h.rows[i][i], 0);
  EXPECT_EQ(h.rows[1][0], 0);
  EXPECT_THROW(hnf_of({IVec3{1, 0, 0}}), Error);
}

TEST(Hnf, PrimeAboveRamified) {
  auto f = conductor_field(91);
  for (const auto& p : conductor_primes(Integer(91))) {
    IdealHnf h = prime_above(f, p);
    EXPECT_EQ(h.index(), p);
    IdealHnf cube = ideal_mul(f, ideal_mul(f, h, h), h);
    EXPECT_EQ(cube, hnf_of({IVec3{p, 0, 0}, IVec3{0, p, 0}, IVec3{0, 0, p}}));
  }
  auto g = conductor_field(63);
  EXPECT_EQ(prime_above(g, Integer(3)).index(), 3);
}

TEST(Specs, Enumeration) {
  // Three choices per prime, three P_0 exponents when 3 | m; the unit ideal is included.
  EXPECT_EQ(all_ramified_specs(conductor_field(7)).size(), 3u);
  EXPECT_EQ(all_ramified_specs(conductor_field(91)).size(), 9u);
  EXPECT_EQ(all_ramified_specs(conductor_field(63)).size(), 9u);
  EXPECT_EQ(to_string(IdealTag::KappaOrbit), "kappa_orbit");
  EXPECT_EQ(to_string(WrReason::ProvenNotWR), "proven_not_wr");
}
