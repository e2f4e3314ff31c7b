#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "wrtwist/interval.hpp"
#include "wrtwist/numeric.hpp"

namespace wrtwist {

struct ConductorData {
  Integer m;
  Integer a;
  Integer b;

  bool operator==(const ConductorData&) const = default;
};

// m = p_1...p_r or 9 p_1...p_r with distinct primes p_i = 1 (mod 3).
bool is_conductor_shape(const Integer& m);
// Prime factors p_i = 1 (mod 3) of the conductor, ascending (3 excluded).
std::vector<Integer> conductor_primes(const Integer& m);

// Throws InvalidSpec naming the violated invariant.
void validate(const ConductorData& cd);

// Every (a, b) meeting the congruence conditions, ordered by b then a.
// Composite conductors carry one pair per field of that conductor.
std::vector<ConductorData> conductor_params_all(const Integer& m);
// First entry of conductor_params_all. Throws NoRepresentation.
ConductorData conductor_params(const Integer& m);

class CubicField;
using FieldPtr = std::shared_ptr<const CubicField>;

class FieldElement {
 public:
  FieldElement(FieldPtr field, Vec3 coords);

  const Vec3& coords() const { return c_; }
  const Rational& operator[](int i) const { return c_[i]; }
  const FieldPtr& field() const { return field_; }
  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0; }
  bool is_rational() const { return c_[1] == 0 && c_[2] == 0; }

  FieldElement inverse() const;
  FieldElement pow(long e) const;
  FieldElement square() const { return *this * *this; }

  friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator-(const FieldElement& x);
  friend FieldElement operator*(const Rational& s, const FieldElement& x);
  friend FieldElement operator*(const FieldElement& x, const Rational& s) { return s * x; }
  friend FieldElement operator/(const FieldElement& x, const Rational& s);
  friend FieldElement operator+(const FieldElement& x, const Rational& s);
  friend FieldElement operator-(const FieldElement& x, const Rational& s);
  friend bool operator==(const FieldElement& x, const FieldElement& y);

 private:
  FieldPtr field_;
  Vec3 c_;
};

enum class ArithOp { Add, Sub, Mul, Inv, ScalarMul };
// Uniform entry point; `scalar` is used by ScalarMul, `y` ignored by Inv.
FieldElement elem_arith(const FieldElement& x, const FieldElement& y, ArithOp op, const Rational& scalar = 1);

struct TraceNorm {
  Rational trace;
  Rational norm;
};

TraceNorm trace_and_norm(const FieldElement& x);
Rational trace(const FieldElement& x);
Rational norm(const FieldElement& x);
Mat3 multiplication_matrix(const FieldElement& x);
FieldElement galois_apply(const FieldElement& x, int power);
// Certified intervals containing (x, sigma x, sigma^2 x) at the smallest root.
std::array<Interval, 3> embed(const FieldElement& x, unsigned precision_bits);
// Exact signs of (x, sigma x, sigma^2 x); each entry is -1, 0 or +1.
std::array<int, 3> sign_pattern(const FieldElement& x);
bool is_totally_positive(const FieldElement& x);
std::string to_string(const FieldElement& x, const std::string& var = "r");

struct FieldOptions {
  std::optional<ConductorData> conductor;
  std::optional<Integer> discriminant;          // field discriminant if known
  std::optional<std::array<Vec3, 3>> integral_basis;  // power-basis coordinates
};

class CubicField : public std::enable_shared_from_this<CubicField> {
 public:
  // Field generated by a root of x^3 + c2 x^2 + c1 x + c0.
  static FieldPtr from_polynomial(const Rational& c0, const Rational& c1, const Rational& c2, FieldOptions opts = {});
  static FieldPtr from_conductor(const ConductorData& cd);

  const std::array<Rational, 3>& poly() const { return poly_; }
  std::string poly_string() const;
  Rational poly_discriminant() const { return poly_disc_; }
  const std::optional<ConductorData>& conductor() const { return conductor_; }
  const std::optional<Integer>& discriminant() const { return disc_; }
  // Columns are power-basis coordinates of sigma(1), sigma(rho), sigma(rho^2).
  const Mat3& galois() const { return galois_; }
  const Mat3& galois_squared() const { return galois2_; }
  // sigma(rho) evaluated at root i is root root_cycle()[i].
  const std::array<int, 3>& root_cycle() const { return cycle_; }
  // Sign of (rho - s rho)(s rho - s^2 rho)(s^2 rho - rho) at the first embedding.
  int t_sign() const { return t_sign_; }

  bool has_integral_basis() const { return basis_.has_value(); }
  std::array<FieldElement, 3> integral_basis() const;
  // Coordinates of x in the integral basis.
  Vec3 integral_coords(const FieldElement& x) const;
  bool is_integral(const FieldElement& x) const;

  FieldElement element(const Vec3& coords) const;
  FieldElement element(const Rational& c0, const Rational& c1 = 0, const Rational& c2 = 0) const;
  FieldElement one() const { return element(1); }
  FieldElement zero() const { return element(0); }
  FieldElement rho() const { return element(0, 1); }

  // Ascending isolating intervals of the three roots, each of width <= 2^-bits.
  std::array<Interval, 3> roots(unsigned bits) const;

  Vec3 mul_coords(const Vec3& a, const Vec3& b) const;
  Rational trace_coords(const Vec3& a) const;

  CubicField(const CubicField&) = delete;
  CubicField& operator=(const CubicField&) = delete;

 private:
  struct Token {};

 public:
  CubicField(Token, const Rational& c0, const Rational& c1, const Rational& c2);

 private:
  static std::shared_ptr<CubicField> build(const Rational& c0, const Rational& c1, const Rational& c2);
  void set_integral_basis(const std::array<Vec3, 3>& basis);
  void isolate_roots();
  void refine_root(int i, const Rational& max_width) const;
  void compute_galois();
  Rational eval_poly(const Rational& x) const;

  std::array<Rational, 3> poly_;  // c0, c1, c2
  Rational poly_disc_;
  std::array<Rational, 5> power_traces_;
  std::optional<ConductorData> conductor_;
  std::optional<Integer> disc_;
  std::optional<std::array<Vec3, 3>> basis_;
  std::optional<Mat3> basis_inv_;
  Mat3 galois_;
  Mat3 galois2_;
  std::array<int, 3> cycle_{0, 1, 2};
  int t_sign_ = 0;

  mutable std::mutex root_mutex_;
  mutable std::array<Interval, 3> root_cache_;
};

// det(Tr(w_i w_j)) of three field elements.
Rational basis_discriminant(const std::array<FieldElement, 3>& basis);
// Power-basis coordinate matrix with rows = elements.
Mat3 coordinate_matrix(const std::array<FieldElement, 3>& basis);

}  // namespace wrtwist
