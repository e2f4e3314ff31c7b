#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "wrtwist/field.hpp"
#include "wrtwist/lattice.hpp"
#include "wrtwist/twist.hpp"

namespace wrtwist {

// Ideal P_0^{p0_exponent} P_I^2 P_J of a conductor field. Indices in I and J
// are 1-based positions in conductor_primes(m); P_0 (above 3) only when 3 | m.
struct RamifiedSpec {
  FieldPtr field;
  std::vector<int> I;
  std::vector<int> J;
  int p0_exponent = 0;
};

enum class IdealTag { KappaOrbit, ThreeMidMShapeI, ThreeMidMShapeII, ThreeMidMShapeIII, IntegralBasis, Twisted, PrimeProduct };
std::string to_string(IdealTag t);

struct IdealBasis {
  Basis3 elements;
  Integer claimed_norm;
  IdealTag construction;
};

struct EisensteinRep {
  Integer y;
  Integer z;
};

// y^2 - yz + z^2 = p, y + z = 1 (mod 3), p | z(a+3b) + y(a-3b); first such
// (y, z) in lexicographic order. p may be a product of the conductor primes.
// Throws NotRepresentable.
EisensteinRep represent_prime_eisenstein(const Integer& p, const ConductorData& cd);

// Throws InvalidSpec on overlapping or out-of-range indices, or P_0 for 3 | m false.
void validate(const RamifiedSpec& spec);
Integer p_product(const RamifiedSpec& spec, const std::vector<int>& idx);
Integer ideal_norm(const RamifiedSpec& spec);

IdealBasis ideal_basis(const RamifiedSpec& spec);

enum class WrReason { ClosedForm, ProvenNotWR };
std::string to_string(WrReason r);

struct IdealWrStatus {
  bool is_wr = false;
  WrReason reason = WrReason::ClosedForm;
};

IdealWrStatus ideal_wr_status(const RamifiedSpec& spec);

// Squared length of m1 + m2 beta + m3 sigma(beta), beta = rho - 1/3 (3 does not divide m).
Rational beta_norm(const FieldPtr& field, const Rational& m1, const Rational& m2, const Rational& m3);

// Gram matrix Tr(x_i x_j) of the ideal lattice.
GramMatrix3 ideal_gram(const IdealBasis& ib);
// |det(coords)| / |det(integral basis coords)| == claimed_norm.
bool covolume_ok(const IdealBasis& ib);
// First minimum of P_I^2 P_J predicted for 3 not dividing m.
Rational kappa_first_minimum(const RamifiedSpec& spec);
// Every valid spec of a conductor field, with I, J disjoint subsets and all
// P_0 exponents when 3 | m.
std::vector<RamifiedSpec> all_ramified_specs(const FieldPtr& field);

// Integral ideals as Hermite normal forms in integral-basis coordinates.
struct IdealHnf {
  IMat3 rows;  // upper triangular, positive diagonal
  Integer index() const;
  bool operator==(const IdealHnf&) const = default;
};

IdealHnf hnf_of(const std::vector<IVec3>& generators);
IdealHnf ideal_hnf(const FieldPtr& field, const Basis3& basis);
// The prime above a ramified p: pO + lift of the kernel of Frobenius on O/pO.
IdealHnf prime_above(const FieldPtr& field, const Integer& p);
IdealHnf ideal_mul(const FieldPtr& field, const IdealHnf& a, const IdealHnf& b);
IdealHnf ideal_power_product(const FieldPtr& field, const std::vector<std::pair<Integer, int>>& factors);
Basis3 basis_of(const FieldPtr& field, const IdealHnf& h);

}  // namespace wrtwist
