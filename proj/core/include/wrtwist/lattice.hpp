#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wrtwist/numeric.hpp"

namespace wrtwist {

// Symmetric Gram matrix [[s11, u, v], [u, s22, w], [v, w, s33]].
struct GramMatrix3 {
  Rational s11, s22, s33;
  Rational u, v, w;

  static GramMatrix3 from_matrix(const Mat3& m);
  static GramMatrix3 equal_diagonal(const Rational& s, const Rational& u, const Rational& v, const Rational& w) {
    return {s, s, s, u, v, w};
  }
  Mat3 matrix() const;
  Rational at(int i, int j) const;
  Rational det() const;
  bool is_positive_definite() const;
  bool has_equal_diagonal() const { return s11 == s22 && s22 == s33; }
  // U^T G U for an integer change of basis with columns = new vectors.
  GramMatrix3 transformed(const IMat3& u) const;
  GramMatrix3 scaled(const Rational& c) const;
  Rational min_diagonal() const;
  Rational quadratic_form(const IVec3& x) const;

  bool operator==(const GramMatrix3&) const = default;
};

std::string to_string(const GramMatrix3& g);

// Either explicit rational vectors in R^3 (rows) or just a Gram matrix.
class LatticeBasis3 {
 public:
  static LatticeBasis3 from_vectors(const Mat3& rows);
  static LatticeBasis3 from_gram(const GramMatrix3& g);

  const GramMatrix3& gram() const { return gram_; }
  const std::optional<Mat3>& vectors() const { return rows_; }
  // New basis b'_j = sum_i U[i][j] b_i.
  LatticeBasis3 transformed(const IMat3& u) const;

 private:
  GramMatrix3 gram_;
  std::optional<Mat3> rows_;
};

// Entries of the criterion: |u|,|v|,|w| <= s/2 and the four sign sums <= s.
struct WrSlack {
  std::array<Rational, 3> half_bound;  // s/2 - |u|, s/2 - |v|, s/2 - |w|
  std::array<Rational, 4> sum_bound;   // s - (-u+v+w), s - (u-v+w), s - (u+v-w), s - (-u-v-w)
};

// Throws UnequalDiagonal unless s11 = s22 = s33.
bool wr_gram_criterion(const GramMatrix3& g);
WrSlack wr_slack(const GramMatrix3& g);

struct TwistCoefficients {
  Rational alpha0, beta0, gamma0;
};

// The three 2x2 determinants that solve the equal-length system for rows x, y, z.
TwistCoefficients twist_coefficients(const Mat3& rows);

bool same_sign(const Rational& r, const Rational& s, const Rational& t);

struct ShortVector {
  IVec3 coeffs;
  Rational norm;
};

inline constexpr std::size_t kDefaultEnumerationCap = 2000000;

// All nonzero x with x^T G x <= bound, sorted by norm then coefficients.
// Throws BudgetExceeded past `cap` candidates, DegenerateBasis if G is not
// positive definite.
std::vector<ShortVector> enumerate_short_vectors(const GramMatrix3& g, const Rational& bound,
                                                 std::size_t cap = kDefaultEnumerationCap);
inline std::vector<ShortVector> enumerate_short_vectors(const LatticeBasis3& l, const Rational& bound,
                                                        std::size_t cap = kDefaultEnumerationCap) {
  return enumerate_short_vectors(l.gram(), bound, cap);
}

struct WrResult {
  bool is_wr = false;
  Rational first_minimum;
  std::vector<ShortVector> minimal_vectors;
};

WrResult is_wr_lattice(const GramMatrix3& g, std::size_t cap = kDefaultEnumerationCap);
inline WrResult is_wr_lattice(const LatticeBasis3& l, std::size_t cap = kDefaultEnumerationCap) {
  return is_wr_lattice(l.gram(), cap);
}

struct MinimalBasis {
  IMat3 transform;  // columns are coefficient vectors in the input basis
  GramMatrix3 gram;
};

// Throws NotWR when the lattice is not well rounded.
MinimalBasis minimal_basis(const GramMatrix3& g, std::size_t cap = kDefaultEnumerationCap);
LatticeBasis3 minimal_basis(const LatticeBasis3& l, std::size_t cap = kDefaultEnumerationCap);

struct LllResult {
  IMat3 transform;  // columns are the reduced vectors in input coordinates
  GramMatrix3 gram;
};

// Exact LLL (delta = 3/4) on a positive definite Gram matrix.
LllResult lll_reduce(const GramMatrix3& g);

// Similarity invariant of a WR lattice: the lexicographically least
// (u, v, w) / s over all minimal bases. Two WR lattices are similar iff
// their invariants agree.
std::array<Rational, 3> similarity_invariant(const GramMatrix3& g, std::size_t cap = kDefaultEnumerationCap);
bool are_similar_wr(const GramMatrix3& a, const GramMatrix3& b);

}  // namespace wrtwist
