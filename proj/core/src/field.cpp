#include "wrtwist/field.hpp"

#include <algorithm>
#include <sstream>

#include "wrtwist/errors.hpp"

namespace wrtwist {

// ---------------------------------------------------------------- conductors

bool is_conductor_shape(const Integer& m) {
  if (m <= 1) return false;
  Integer rest = m;
  if (rest % 3 == 0) {
    if (rest % 9 != 0 || rest % 27 == 0) return false;
    rest /= 9;
  }
  auto f = trial_factor(rest);
  if (f.cofactor != 1) throw Error(ErrorKind::InvalidSpec, "conductor " + m.get_str() + " too large to factor");
  for (const auto& [p, e] : f.primes)
    if (e != 1 || p % 3 != 1) return false;
  return true;
}

std::vector<Integer> conductor_primes(const Integer& m) {
  std::vector<Integer> out;
  for (const auto& [p, e] : trial_factor(m).primes)
    if (p != 3) out.push_back(p);
  return out;
}

void validate(const ConductorData& cd) {
  const auto& [m, a, b] = cd;
  if (m <= 0 || b <= 0) throw Error(ErrorKind::InvalidSpec, "conductor data needs m > 0 and b > 0");
  if (4 * m != a * a + 3 * b * b) throw Error(ErrorKind::InvalidSpec, "4m != a^2 + 3b^2");
  auto mod = [](const Integer& x, long n) { Integer r = x % n; return r < 0 ? Integer(r + n) : r; };
  if (m % 3 != 0) {
    if (mod(a, 3) != 2 || mod(b, 3) != 0) throw Error(ErrorKind::InvalidSpec, "need a = 2 (mod 3) and b = 0 (mod 3)");
  } else {
    Integer bb = mod(b, 9);
    if (mod(a, 9) != 6 || (bb != 3 && bb != 6))
      throw Error(ErrorKind::InvalidSpec, "need a = 6 (mod 9) and b = 3, 6 (mod 9)");
  }
}

std::vector<ConductorData> conductor_params_all(const Integer& m) {
  if (m <= 0 || !is_conductor_shape(m))
    throw Error(ErrorKind::NoRepresentation, m.get_str() + " is not a cyclic cubic conductor");
  std::vector<ConductorData> out;
  Integer four_m = 4 * m;
  for (Integer b = 1; 3 * b * b <= four_m; ++b) {
    Integer r = four_m - 3 * b * b;
    if (!is_perfect_square(r)) continue;
    Integer a0 = isqrt(r);
    for (Integer a : {Integer(-a0), a0}) {
      ConductorData cd{m, a, b};
      try {
        validate(cd);
      } catch (const Error&) {
        continue;
      }
      if (out.empty() || !(out.back() == cd)) out.push_back(cd);
    }
  }
  if (out.empty()) throw Error(ErrorKind::NoRepresentation, "no (a, b) with 4m = a^2 + 3b^2 for m = " + m.get_str());
  return out;
}

ConductorData conductor_params(const Integer& m) { return conductor_params_all(m).front(); }

// ---------------------------------------------------------------- elements

FieldElement::FieldElement(FieldPtr field, Vec3 coords) : field_(std::move(field)), c_(std::move(coords)) {}

namespace {

void same_field(const FieldElement& x, const FieldElement& y) {
  if (x.field() != y.field()) throw Error(ErrorKind::FieldMismatch, "elements belong to different fields");
}

}  // namespace

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
  same_field(x, y);
  return FieldElement(x.field_, {x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2]});
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) {
  same_field(x, y);
  return FieldElement(x.field_, {x.c_[0] - y.c_[0], x.c_[1] - y.c_[1], x.c_[2] - y.c_[2]});
}

FieldElement operator-(const FieldElement& x) { return FieldElement(x.field_, {-x.c_[0], -x.c_[1], -x.c_[2]}); }

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
  same_field(x, y);
  return FieldElement(x.field_, x.field_->mul_coords(x.c_, y.c_));
}

FieldElement operator*(const Rational& s, const FieldElement& x) {
  return FieldElement(x.field_, {s * x.c_[0], s * x.c_[1], s * x.c_[2]});
}

FieldElement operator/(const FieldElement& x, const Rational& s) {
  if (s == 0) throw Error(ErrorKind::DivisionByZero, "division by rational zero");
  return FieldElement(x.field_, {x.c_[0] / s, x.c_[1] / s, x.c_[2] / s});
}

FieldElement operator+(const FieldElement& x, const Rational& s) {
  return FieldElement(x.field_, {x.c_[0] + s, x.c_[1], x.c_[2]});
}

FieldElement operator-(const FieldElement& x, const Rational& s) {
  return FieldElement(x.field_, {x.c_[0] - s, x.c_[1], x.c_[2]});
}

FieldElement operator/(const FieldElement& x, const FieldElement& y) { return x * y.inverse(); }

bool operator==(const FieldElement& x, const FieldElement& y) { return x.field_ == y.field_ && x.c_ == y.c_; }

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  // Solve M_x e = 1 where M_x is the multiplication matrix.
  Mat3 m = multiplication_matrix(*this);
  Mat3 inv = inverse3(m);
  return FieldElement(field_, {inv[0][0], inv[1][0], inv[2][0]});
}

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement result = field_->one();
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

FieldElement elem_arith(const FieldElement& x, const FieldElement& y, ArithOp op, const Rational& scalar) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Inv: return x.inverse();
    case ArithOp::ScalarMul: return scalar * x;
  }
  throw Error(ErrorKind::InvalidSpec, "unknown arithmetic op");
}

Mat3 multiplication_matrix(const FieldElement& x) {
  const auto& F = *x.field();
  Mat3 m;
  for (int j = 0; j < 3; ++j) {
    Vec3 e{0, 0, 0};
    e[j] = 1;
    Vec3 col = F.mul_coords(x.coords(), e);
    for (int i = 0; i < 3; ++i) m[i][j] = col[i];
  }
  return m;
}

Rational trace(const FieldElement& x) { return x.field()->trace_coords(x.coords()); }
Rational norm(const FieldElement& x) { return det3(multiplication_matrix(x)); }
TraceNorm trace_and_norm(const FieldElement& x) { return {trace(x), norm(x)}; }

FieldElement galois_apply(const FieldElement& x, int power) {
  int p = ((power % 3) + 3) % 3;
  if (p == 0) return x;
  const Mat3& g = p == 1 ? x.field()->galois() : x.field()->galois_squared();
  return FieldElement(x.field(), mul(g, x.coords()));
}

namespace {

Interval horner(const Vec3& c, const Interval& r) {
  Interval acc(c[2]);
  acc = acc * r + Interval(c[1]);
  acc = acc * r + Interval(c[0]);
  return acc;
}

}  // namespace

std::array<Interval, 3> embed(const FieldElement& x, unsigned precision_bits) {
  if (precision_bits < 32) precision_bits = 32;
  const auto& F = *x.field();
  const auto& cyc = F.root_cycle();
  std::array<int, 3> order{0, cyc[0], cyc[cyc[0]]};
  if (x.is_rational()) {
    Interval p(x[0]);
    return {p, p, p};
  }
  Integer one = 1;
  for (unsigned extra = 8;; extra *= 2) {
    auto roots = F.roots(precision_bits + extra);
    std::array<Interval, 3> out;
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
      out[k] = horner(x.coords(), roots[order[k]]);
      Rational scale = std::max(Rational(1), out[k].magnitude());
      Rational step(Integer(2), Integer(one << precision_bits));
      step.canonicalize();
      Rational limit = scale * step;
      if (out[k].width() > limit) ok = false;
    }
    if (ok) return out;
    if (extra > 1u << 16) throw Error(ErrorKind::InvalidSpec, "embedding refinement did not converge");
  }
}

std::array<int, 3> sign_pattern(const FieldElement& x) {
  if (x.is_zero()) return {0, 0, 0};
  for (unsigned bits = 64;; bits *= 2) {
    auto iv = embed(x, bits);
    std::array<int, 3> s{};
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
      auto c = iv[k].certain_sign();
      if (!c) {
        ok = false;
        break;
      }
      s[k] = *c;
    }
    if (ok) return s;
    if (bits > 1u << 20) throw Error(ErrorKind::InvalidSpec, "sign determination did not converge");
  }
}

bool is_totally_positive(const FieldElement& x) {
  auto s = sign_pattern(x);
  return s[0] > 0 && s[1] > 0 && s[2] > 0;
}

std::string to_string(const FieldElement& x, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  const char* pw[3] = {"", "", "^2"};
  for (int i = 2; i >= 0; --i) {
    const Rational& c = x[i];
    if (c == 0) continue;
    Rational a = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    if (i == 0 || a != 1) os << to_string(a) << (i ? "*" : "");
    if (i > 0) os << var << pw[i];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

Mat3 coordinate_matrix(const std::array<FieldElement, 3>& basis) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = basis[i][j];
  return m;
}

Rational basis_discriminant(const std::array<FieldElement, 3>& basis) {
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[i][j] = trace(basis[i] * basis[j]);
  return det3(g);
}

// ---------------------------------------------------------------- fields

CubicField::CubicField(Token, const Rational& c0, const Rational& c1, const Rational& c2) : poly_{c0, c1, c2} {
  const Rational& b = c2;
  const Rational& c = c1;
  const Rational& d = c0;
  poly_disc_ = 18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c - 27 * d * d;
  auto& t = power_traces_;
  t[0] = 3;
  t[1] = -c2;
  t[2] = c2 * c2 - 2 * c1;
  t[3] = -c2 * t[2] - c1 * t[1] - 3 * c0;
  t[4] = -c2 * t[3] - c1 * t[2] - c0 * t[1];
}

Vec3 CubicField::mul_coords(const Vec3& a, const Vec3& b) const {
  // Product of degree-2 polynomials, then reduce x^4 and x^3.
  Rational p0 = a[0] * b[0];
  Rational p1 = a[0] * b[1] + a[1] * b[0];
  Rational p2 = a[0] * b[2] + a[1] * b[1] + a[2] * b[0];
  Rational p3 = a[1] * b[2] + a[2] * b[1];
  Rational p4 = a[2] * b[2];
  const auto& [c0, c1, c2] = poly_;
  // x^4 = -c2 x^3 - c1 x^2 - c0 x
  p3 -= c2 * p4;
  p2 -= c1 * p4;
  p1 -= c0 * p4;
  // x^3 = -c2 x^2 - c1 x - c0
  p2 -= c2 * p3;
  p1 -= c1 * p3;
  p0 -= c0 * p3;
  return {p0, p1, p2};
}

Rational CubicField::trace_coords(const Vec3& a) const {
  return a[0] * power_traces_[0] + a[1] * power_traces_[1] + a[2] * power_traces_[2];
}

Rational CubicField::eval_poly(const Rational& x) const {
  return ((x + poly_[2]) * x + poly_[1]) * x + poly_[0];
}

std::string CubicField::poly_string() const {
  std::ostringstream os;
  os << "x^3";
  const char* pw[3] = {"", "x", "x^2"};
  for (int i = 2; i >= 0; --i) {
    const Rational& c = poly_[i];
    if (c == 0) continue;
    os << (c < 0 ? " - " : " + ");
    Rational a = abs(c);
    if (i == 0 || a != 1) os << to_string(a) << (i ? "*" : "");
    os << pw[i];
  }
  return os.str();
}

FieldElement CubicField::element(const Vec3& coords) const { return FieldElement(shared_from_this(), coords); }

FieldElement CubicField::element(const Rational& c0, const Rational& c1, const Rational& c2) const {
  return element(Vec3{c0, c1, c2});
}

std::array<FieldElement, 3> CubicField::integral_basis() const {
  if (!basis_) throw Error(ErrorKind::InvalidSpec, "field has no known integral basis");
  return {element((*basis_)[0]), element((*basis_)[1]), element((*basis_)[2])};
}

Vec3 CubicField::integral_coords(const FieldElement& x) const {
  if (!basis_inv_) throw Error(ErrorKind::InvalidSpec, "field has no known integral basis");
  // x = sum_i k_i w_i, i.e. coords = W^T k with W rows = basis elements.
  return mul(*basis_inv_, x.coords());
}

bool CubicField::is_integral(const FieldElement& x) const {
  auto k = integral_coords(x);
  return is_integer(k[0]) && is_integer(k[1]) && is_integer(k[2]);
}

namespace {

using Poly = std::vector<Rational>;  // ascending coefficients

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_rem(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

Rational poly_eval(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_changes(const std::vector<Poly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    int s = sign(poly_eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

void CubicField::isolate_roots() {
  Poly p{poly_[0], poly_[1], poly_[2], 1};
  Poly dp{poly_[1], 2 * poly_[2], 3};
  std::vector<Poly> chain{p, dp};
  while (true) {
    Poly r = poly_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(r);
  }
  Rational bound = 1;
  for (const auto& c : poly_) bound = std::max(bound, Rational(1 + abs(c)));
  // Round the bound up to a power of two so bisection points stay dyadic.
  Rational pow2 = 1;
  while (pow2 < bound) pow2 *= 2;

  std::vector<Interval> found;
  std::vector<Interval> work{Interval(-pow2, pow2)};
  while (!work.empty()) {
    Interval iv = work.back();
    work.pop_back();
    int count = sign_changes(chain, iv.lo()) - sign_changes(chain, iv.hi());
    if (count == 0) continue;
    if (count == 1 && eval_poly(iv.lo()) != 0 && eval_poly(iv.hi()) != 0) {
      found.push_back(iv);
      continue;
    }
    Rational mid = iv.midpoint();
    if (eval_poly(mid) == 0) throw Error(ErrorKind::ReduciblePolynomial, "rational root " + to_string(mid));
    work.emplace_back(iv.lo(), mid);
    work.emplace_back(mid, iv.hi());
  }
  if (found.size() != 3) throw Error(ErrorKind::InvalidSpec, "polynomial does not have three real roots");
  std::sort(found.begin(), found.end(), [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
  for (int i = 0; i < 3; ++i) root_cache_[i] = found[i];
}

void CubicField::refine_root(int i, const Rational& max_width) const {
  Interval& iv = root_cache_[i];
  int slo = sign(eval_poly(iv.lo()));
  while (iv.width() > max_width) {
    Rational mid = iv.midpoint();
    int sm = sign(eval_poly(mid));
    if (sm == 0) throw Error(ErrorKind::ReduciblePolynomial, "rational root " + to_string(mid));
    if (sm == slo) iv = Interval(mid, iv.hi());
    else iv = Interval(iv.lo(), mid);
  }
}

std::array<Interval, 3> CubicField::roots(unsigned bits) const {
  Integer den = 1;
  den <<= bits;
  Rational w(Integer(1), den);
  std::lock_guard<std::mutex> lock(root_mutex_);
  for (int i = 0; i < 3; ++i) refine_root(i, w);
  return root_cache_;
}

void CubicField::compute_galois() {
  // Orientation: the cycle i -> cycle[i] with t < 0 at the first embedding.
  // With ascending roots r0 < r1 < r2 that is r0 -> r2 -> r1 -> r0; the sign is
  // still certified numerically below.
  std::array<std::array<int, 3>, 2> cycles{{{2, 0, 1}, {1, 2, 0}}};
  std::array<int, 3> chosen{};
  bool have = false;
  for (const auto& cyc : cycles) {
    for (unsigned bits = 32;; bits *= 2) {
      auto r = roots(bits);
      Interval t = (r[0] - r[cyc[0]]) * (r[cyc[0]] - r[cyc[cyc[0]]]) * (r[cyc[cyc[0]]] - r[0]);
      if (auto s = t.certain_sign()) {
        if (*s < 0) {
          chosen = cyc;
          have = true;
          t_sign_ = -1;
        }
        break;
      }
      if (bits > 4096) throw Error(ErrorKind::GaloisReconstructionFailed, "cannot certify orientation");
    }
    if (have) break;
  }
  if (!have) throw Error(ErrorKind::GaloisReconstructionFailed, "no orientation with t < 0");
  cycle_ = chosen;

  // Denominator bound for the coordinates of sigma(rho).
  Integer lcm_den = 1;
  for (const auto& c : poly_) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  Integer disc_num = poly_disc_.get_num();
  if (disc_num < 0) disc_num = -disc_num;
  Integer lcm6 = lcm_den * lcm_den;
  lcm6 = lcm6 * lcm6 * lcm6;
  Integer max_den = 2 * disc_num * lcm6;
  if (max_den < 2) max_den = 2;

  auto bitlen = [](const Integer& z) { return static_cast<unsigned>(mpz_sizeinbase(z.get_mpz_t(), 2)); };
  Rational bound = 1;
  for (const auto& c : poly_) bound = std::max(bound, Rational(1 + abs(c)));
  unsigned bits = 2 * bitlen(max_den) + 8 * bitlen(floor_of(bound) + 1) + 64;
  for (; bits <= 4096 * 4; bits *= 2) {
    auto r = roots(bits);
    Mat3 v;
    Vec3 rhs;
    for (int i = 0; i < 3; ++i) {
      Rational x = r[i].midpoint();
      v[i] = {1, x, x * x};
      rhs[i] = r[cycle_[i]].midpoint();
    }
    Vec3 g = mul(inverse3(v), rhs);
    Vec3 cand;
    for (int k = 0; k < 3; ++k) cand[k] = best_rational(g[k], max_den);
    // Exact checks: df(g) = 0, order three, and the numeric cycle matches.
    Vec3 g2 = mul_coords(cand, cand);
    Vec3 g3 = mul_coords(g2, cand);
    Vec3 val{g3[0] + poly_[2] * g2[0] + poly_[1] * cand[0] + poly_[0], g3[1] + poly_[2] * g2[1] + poly_[1] * cand[1],
             g3[2] + poly_[2] * g2[2] + poly_[1] * cand[2]};
    if (val[0] != 0 || val[1] != 0 || val[2] != 0) continue;
    Mat3 gm;
    for (int i = 0; i < 3; ++i) {
      gm[i][0] = i == 0 ? 1 : 0;
      gm[i][1] = cand[i];
      gm[i][2] = g2[i];
    }
    if (gm == identity3()) continue;
    Mat3 gm2 = mul(gm, gm);
    if (mul(gm2, gm) != identity3()) continue;
    Interval at0 = horner(cand, r[0]);
    const Interval& target = r[cycle_[0]];
    if (at0.hi() < target.lo() || at0.lo() > target.hi()) continue;
    galois_ = gm;
    galois2_ = gm2;
    return;
  }
  throw Error(ErrorKind::GaloisReconstructionFailed, "rational reconstruction failed up to the precision cap");
}

std::shared_ptr<CubicField> CubicField::build(const Rational& c0, const Rational& c1, const Rational& c2) {
  auto F = std::make_shared<CubicField>(Token{}, c0, c1, c2);
  if (F->poly_disc_ <= 0) {
    if (F->poly_disc_ == 0) throw Error(ErrorKind::ReduciblePolynomial, "polynomial has a repeated root");
    throw Error(ErrorKind::InvalidSpec, "polynomial does not have three real roots");
  }
  F->isolate_roots();
  // A rational root of a monic polynomial has denominator dividing lcm(den)
  // after scaling; test every candidate inside each isolating interval.
  Integer lcm_den = 1;
  for (const auto& c : F->poly_) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  {
    Rational w(Integer(1), Integer(4 * lcm_den));
    std::lock_guard<std::mutex> lock(F->root_mutex_);
    for (int i = 0; i < 3; ++i) {
      F->refine_root(i, w);
      const auto& iv = F->root_cache_[i];
      for (Integer k = floor_of(iv.lo() * lcm_den); k <= floor_of(iv.hi() * lcm_den) + 1; ++k) {
        Rational x(k, lcm_den);
        x.canonicalize();
        if (F->eval_poly(x) == 0) throw Error(ErrorKind::ReduciblePolynomial, "rational root " + to_string(x));
      }
    }
  }
  if (!is_perfect_square(F->poly_disc_.get_num()) || !is_perfect_square(F->poly_disc_.get_den()))
    throw Error(ErrorKind::InvalidSpec, "discriminant is not a square; the field is not cyclic");
  F->compute_galois();
  return F;
}

void CubicField::set_integral_basis(const std::array<Vec3, 3>& basis) {
  Mat3 w;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w[i][j] = basis[i][j];
  basis_inv_ = inverse3(transpose(w));
  basis_ = basis;
}

FieldPtr CubicField::from_polynomial(const Rational& c0, const Rational& c1, const Rational& c2, FieldOptions opts) {
  auto F = build(c0, c1, c2);
  F->conductor_ = opts.conductor;
  F->disc_ = opts.discriminant;
  if (opts.conductor && !F->disc_) F->disc_ = opts.conductor->m * opts.conductor->m;
  if (opts.integral_basis) F->set_integral_basis(*opts.integral_basis);
  return F;
}

FieldPtr CubicField::from_conductor(const ConductorData& cd) {
  validate(cd);
  const auto& [m, a, b] = cd;
  Rational c0, c1, c2;
  if (m % 3 != 0) {
    c2 = -1;
    c1 = Rational(1 - m, 3);
    c0 = -Rational(m * (a - 3) + 1, 27);
  } else {
    c2 = 0;
    c1 = -Rational(m, 3);
    c0 = -Rational(a * m, 27);
  }
  c0.canonicalize();
  c1.canonicalize();
  if (!is_integer(c0) || !is_integer(c1))
    throw Error(ErrorKind::NonIntegralPolynomial, "defining polynomial has non-integral coefficients");
  auto F = build(c0, c1, c2);
  F->conductor_ = cd;
  F->disc_ = m * m;
  // Integral basis from the Galois orbit of rho.
  Vec3 r{0, 1, 0};
  Vec3 sr = mul(F->galois_, r);
  if (m % 3 != 0) F->set_integral_basis({r, sr, mul(F->galois_, sr)});
  else F->set_integral_basis({Vec3{1, 0, 0}, r, sr});
  return F;
}

}  // namespace wrtwist
