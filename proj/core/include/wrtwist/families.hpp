#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wrtwist/field.hpp"
#include "wrtwist/lattice.hpp"
#include "wrtwist/twist.hpp"

namespace wrtwist {

enum class Family { Shanks, Washington, Kishi };
std::string to_string(Family f);
// Throws InvalidSpec.
Family parse_family(const std::string& name);

using GateMap = std::map<std::string, Tri>;

struct FamilyInstance {
  Family family;
  Integer n;
  FieldPtr field;  // carries the integral basis when a gate selects one
  std::optional<Basis3> integral_basis;
  std::string basis_case;  // "basis_unknown" when no gate holds
  GateMap conditions_met;
  // sigma^k(rho) equals the published Moebius image of rho.
  int mobius_power = 0;
};

// Squarefree and congruence gates, evaluated with three-valued trial division.
GateMap family_gates(Family f, const Integer& n);

// Throws ReduciblePolynomial, InvalidSpec (Shanks n < -1) or
// GaloisReconstructionFailed when the Moebius map is not in the Galois group.
FamilyInstance make_family_field(Family f, const Integer& n);

struct IntegralBasisChoice {
  Basis3 basis;
  std::string case_tag;
};

// Throws GateFailed naming the first violated condition.
IntegralBasisChoice family_integral_basis(const FamilyInstance& inst);

// Field discriminant predicted by the case that selects the integral basis.
std::optional<Integer> family_field_discriminant(Family f, const Integer& n, const GateMap& gates);

struct FamilyGoodBasis {
  std::string case_id;
  Basis3 basis;
  std::optional<GramMatrix3> expected_gram;  // absent for Kishi rows
};

// Case ids: Shanks "1"; Washington "1", "2a", "2b"; Kishi "A", "B1", "B2",
// "B3", "C1", "C2", "D1", "D2", "E", "F".
std::vector<std::string> family_cases(Family f);
// Cases whose congruence class and n-range admit this instance.
std::vector<std::string> admissible_cases(const FamilyInstance& inst);
// Throws ConditionOutOfRange (or GateFailed without an integral basis).
FamilyGoodBasis family_good_basis(const FamilyInstance& inst, const std::string& case_id);

// (rho^2 - 1)/(n - 1) - n rho, with N = -(n^2 - 3n + 3) checked exactly.
// Throws GateFailed unless n^2 - 3n + 3 divides the field discriminant.
FieldElement washington_principal_generator(const FamilyInstance& inst);

}  // namespace wrtwist
