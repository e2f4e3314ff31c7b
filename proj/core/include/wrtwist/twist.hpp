#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wrtwist/field.hpp"
#include "wrtwist/lattice.hpp"

namespace wrtwist {

using Basis3 = std::array<FieldElement, 3>;

// new_j = sum_i U[i][j] b_i
Basis3 transform_basis(const Basis3& b, const IMat3& u);

struct PrincipalLink {
  FieldElement psi;    // sign * alpha0 / k, totally positive
  Integer k;           // content of alpha0 in the integral basis
  Rational norm_psi;
  int t = 0;           // least exponent with N(psi) | disc^t
  bool verified = false;  // twist similar to the lattice of (psi^2)
  bool equal_abs_offdiagonal = false;  // |u| = |v| = |w| on a minimal basis of the twist
  std::optional<bool> similar_to_generator;  // twist similar to the lattice of (g)
  // "mixed_sign_unit_found" or "not_established": whether the field shows a
  // unit that is neither totally positive nor totally negative.
  std::string unit_assumption;
};

struct TwistReport {
  Basis3 basis;
  FieldElement alpha0;
  Rational e1, e2, e3;
  bool sign_ok = false;
  int sign = 0;  // common sign of the conjugates of alpha0 when sign_ok
  std::optional<GramMatrix3> twisted_gram;
  bool is_good = false;
  std::optional<PrincipalLink> principal_link;
};

FieldElement alpha0_of_basis(const Basis3& b);
// Algorithm 1. Throws DegenerateBasis on linearly dependent input.
TwistReport test_good_basis(const Basis3& b);
// Entries Tr(sign * alpha0 * b_i * b_j). Throws SignMismatch unless every
// conjugate of alpha0 has the given sign.
GramMatrix3 gram_of_twisted_basis(const Basis3& b, const FieldElement& alpha0, int sign);

// Report for {u x, u y, u z}. Throws NotAUnit if |N(u)| != 1.
TwistReport unit_transport(const TwistReport& report, const FieldElement& u);

// Product of `steps` elementary matrices I + c E_ij with 0 < |c| <= coeff_bound.
IMat3 random_unimodular(std::mt19937_64& rng, int coeff_bound, int steps = 4);

struct SearchOptions {
  std::size_t iterations = 200;
  int coeff_bound = 3;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

// Good bases among B0 and `iterations` random unimodular images (words of
// 1 to 4 elementary steps, cycling), one per
// distinct twisted Gram, ordered by Gram entries.
std::vector<TwistReport> good_basis_search(const Basis3& b0, const SearchOptions& opts);

inline constexpr int kDefaultTMax = 4;

// Link between a good basis of O_F and a principal ideal. Absent when the
// basis is not good, the field has no integral basis, or N(psi) does not
// divide disc^t for t <= t_max.
std::optional<PrincipalLink> principal_link(const TwistReport& report, int t_max = kDefaultTMax,
                                            const std::optional<FieldElement>& generator = std::nullopt);

struct OrthoTwistCertificate {
  FieldElement delta;
  std::string delta_source;  // how delta was obtained from df'(rho)
  GramMatrix3 unimodular_gram;  // Tr(delta^-1 w_i w_j) on the integral basis
  IMat3 orthonormal_frame;      // columns in integral-basis coordinates
  GramMatrix3 frame_gram;       // identity when certified
};

struct OrthoResult {
  std::optional<OrthoTwistCertificate> certificate;  // absent means Unverified
  std::size_t candidates_tried = 0;
};

OrthoResult orthogonal_twist(const FieldPtr& field);

// df'(rho) for the defining polynomial of the field.
FieldElement poly_derivative_at_root(const FieldPtr& field);

}  // namespace wrtwist
