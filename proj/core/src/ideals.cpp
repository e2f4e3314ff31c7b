#include "wrtwist/ideals.hpp"

#include <algorithm>
#include <set>

#include "wrtwist/errors.hpp"

namespace wrtwist {

std::string to_string(IdealTag t) {
  switch (t) {
    case IdealTag::KappaOrbit: return "kappa_orbit";
    case IdealTag::ThreeMidMShapeI: return "three_mid_m_shape_i";
    case IdealTag::ThreeMidMShapeII: return "three_mid_m_shape_ii";
    case IdealTag::ThreeMidMShapeIII: return "three_mid_m_shape_iii";
    case IdealTag::IntegralBasis: return "integral_basis";
    case IdealTag::Twisted: return "twisted";
    case IdealTag::PrimeProduct: return "prime_product";
  }
  return "unknown";
}

std::string to_string(WrReason r) { return r == WrReason::ClosedForm ? "closed_form" : "proven_not_wr"; }

namespace {

Integer mod_pos(const Integer& x, const Integer& m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return r;
}

const ConductorData& conductor_of(const FieldPtr& f) {
  if (!f || !f->conductor()) throw Error(ErrorKind::InvalidSpec, "ramified ideals need a field built from its conductor");
  return *f->conductor();
}

}  // namespace

EisensteinRep represent_prime_eisenstein(const Integer& p, const ConductorData& cd) {
  if (p <= 0 || mod_pos(p, 3) != 1)
    throw Error(ErrorKind::NotRepresentable, p.get_str() + " is not a norm from Z[zeta_3] prime to 3");
  Integer bound = isqrt(4 * p / 3) + 1;
  Integer f1 = cd.a + 3 * cd.b, f2 = cd.a - 3 * cd.b;
  for (Integer y = -bound; y <= bound; ++y)
    for (Integer z = -bound; z <= bound; ++z) {
      if (y * y - y * z + z * z != p) continue;
      if (mod_pos(y + z, 3) != 1) continue;
      if (mod_pos(z * f1 + y * f2, p) != 0) continue;
      return {y, z};
    }
  throw Error(ErrorKind::NotRepresentable, "no Eisenstein representation of " + p.get_str() + " meets the congruences");
}

void validate(const RamifiedSpec& spec) {
  const auto& cd = conductor_of(spec.field);
  auto primes = conductor_primes(cd.m);
  std::set<int> seen;
  for (const auto* v : {&spec.I, &spec.J})
    for (int i : *v) {
      if (i < 1 || i > static_cast<int>(primes.size()))
        throw Error(ErrorKind::InvalidSpec, "prime index " + std::to_string(i) + " does not name a conductor prime");
      if (!seen.insert(i).second) throw Error(ErrorKind::InvalidSpec, "I and J must be disjoint sets");
    }
  bool three = cd.m % 3 == 0;
  if (spec.p0_exponent < 0 || spec.p0_exponent > 2 || (!three && spec.p0_exponent != 0))
    throw Error(ErrorKind::InvalidSpec, "P_0 exponent must be 0 when 3 does not divide m, else 0, 1 or 2");
}

Integer p_product(const RamifiedSpec& spec, const std::vector<int>& idx) {
  auto primes = conductor_primes(conductor_of(spec.field).m);
  Integer p = 1;
  for (int i : idx) p *= primes.at(i - 1);
  return p;
}

Integer ideal_norm(const RamifiedSpec& spec) {
  Integer pi = p_product(spec, spec.I), pj = p_product(spec, spec.J);
  Integer n = pi * pi * pj;
  for (int e = 0; e < spec.p0_exponent; ++e) n *= 3;
  return n;
}

// ---------------------------------------------------------------- HNF machinery

Integer IdealHnf::index() const {
  Integer d = rows[0][0] * rows[1][1] * rows[2][2];
  return d < 0 ? Integer(-d) : d;
}

IdealHnf hnf_of(const std::vector<IVec3>& generators) {
  std::vector<IVec3> a = generators;
  std::size_t r = 0;
  for (int col = 0; col < 3; ++col) {
    while (true) {
      // Smallest nonzero pivot among rows r.. in this column.
      std::size_t piv = a.size();
      for (std::size_t i = r; i < a.size(); ++i)
        if (a[i][col] != 0 && (piv == a.size() || abs(a[i][col]) < abs(a[piv][col]))) piv = i;
      if (piv == a.size()) throw Error(ErrorKind::DegenerateBasis, "generators do not span a full-rank lattice");
      std::swap(a[r], a[piv]);
      bool done = true;
      for (std::size_t i = r + 1; i < a.size(); ++i) {
        if (a[i][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[r][col].get_mpz_t());
        for (int c = 0; c < 3; ++c) a[i][c] -= q * a[r][c];
        if (a[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (a[r][col] < 0)
      for (int c = 0; c < 3; ++c) a[r][c] = -a[r][c];
    ++r;
  }
  IdealHnf h;
  for (int i = 0; i < 3; ++i) h.rows[i] = a[i];
  for (int j = 1; j < 3; ++j)
    for (int i = 0; i < j; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h.rows[i][j].get_mpz_t(), h.rows[j][j].get_mpz_t());
      for (int c = 0; c < 3; ++c) h.rows[i][c] -= q * h.rows[j][c];
    }
  return h;
}

namespace {

IVec3 to_w(const FieldPtr& f, const FieldElement& x) {
  Vec3 k = f->integral_coords(x);
  IVec3 out;
  for (int i = 0; i < 3; ++i) {
    if (!is_integer(k[i])) throw Error(ErrorKind::InvalidSpec, "element is not integral: " + to_string(x));
    out[i] = k[i].get_num();
  }
  return out;
}

FieldElement from_w(const FieldPtr& f, const IVec3& c) {
  auto w = f->integral_basis();
  return Rational(c[0]) * w[0] + Rational(c[1]) * w[1] + Rational(c[2]) * w[2];
}

// Structure constants: w_i w_j = sum_k T[i][j][k] w_k.
std::array<std::array<IVec3, 3>, 3> structure_constants(const FieldPtr& f) {
  auto w = f->integral_basis();
  std::array<std::array<IVec3, 3>, 3> t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = to_w(f, w[i] * w[j]);
  return t;
}

IVec3 mul_mod(const std::array<std::array<IVec3, 3>, 3>& t, const IVec3& a, const IVec3& b, const Integer& p) {
  IVec3 r{0, 0, 0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (a[i] == 0 || b[j] == 0) continue;
      Integer c = a[i] * b[j];
      for (int k = 0; k < 3; ++k) r[k] += c * t[i][j][k];
    }
  for (auto& x : r) x = mod_pos(x, p);
  return r;
}

// Basis of {x in F_p^3 : sum_j x_j col_j = 0}.
std::vector<IVec3> kernel_mod_p(const std::array<IVec3, 3>& cols, const Integer& p) {
  // Matrix M with M[i][j] = cols[j][i]; solve M x = 0.
  std::array<std::array<Integer, 3>, 3> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = mod_pos(cols[j][i], p);
  std::array<int, 3> pivot_col{-1, -1, -1};
  int row = 0;
  for (int col = 0; col < 3 && row < 3; ++col) {
    int piv = -1;
    for (int i = row; i < 3; ++i)
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[row], m[piv]);
    Integer inv = mod_inverse(m[row][col], p);
    for (int c = 0; c < 3; ++c) m[row][c] = mod_pos(m[row][c] * inv, p);
    for (int i = 0; i < 3; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Integer f = m[i][col];
      for (int c = 0; c < 3; ++c) m[i][c] = mod_pos(m[i][c] - f * m[row][c], p);
    }
    pivot_col[row] = col;
    ++row;
  }
  std::vector<IVec3> basis;
  for (int free = 0; free < 3; ++free) {
    bool is_pivot = false;
    for (int r = 0; r < row; ++r)
      if (pivot_col[r] == free) is_pivot = true;
    if (is_pivot) continue;
    IVec3 x{0, 0, 0};
    x[free] = 1;
    for (int r = 0; r < row; ++r) x[pivot_col[r]] = mod_pos(-m[r][free], p);
    basis.push_back(x);
  }
  return basis;
}

}  // namespace

IdealHnf ideal_hnf(const FieldPtr& field, const Basis3& basis) {
  std::vector<IVec3> g;
  for (const auto& b : basis) g.push_back(to_w(field, b));
  return hnf_of(g);
}

IdealHnf prime_above(const FieldPtr& field, const Integer& p) {
  auto t = structure_constants(field);
  std::array<IVec3, 3> frob;
  for (int j = 0; j < 3; ++j) {
    IVec3 base{0, 0, 0};
    base[j] = 1;
    IVec3 acc{0, 0, 0};
    acc[0] = 0;
    // 1 in integral-basis coordinates.
    IVec3 one = to_w(field, field->one());
    acc = one;
    IVec3 b = base;
    Integer e = p;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) acc = mul_mod(t, acc, b, p);
      b = mul_mod(t, b, b, p);
      e >>= 1;
    }
    frob[j] = acc;
  }
  std::vector<IVec3> gens;
  for (int i = 0; i < 3; ++i) {
    IVec3 v{0, 0, 0};
    v[i] = p;
    gens.push_back(v);
  }
  for (const auto& k : kernel_mod_p(frob, p)) gens.push_back(k);
  return hnf_of(gens);
}

IdealHnf ideal_mul(const FieldPtr& field, const IdealHnf& a, const IdealHnf& b) {
  auto t = structure_constants(field);
  std::vector<IVec3> gens;
  for (const auto& x : a.rows)
    for (const auto& y : b.rows) {
      IVec3 r{0, 0, 0};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          Integer c = x[i] * y[j];
          if (c == 0) continue;
          for (int k = 0; k < 3; ++k) r[k] += c * t[i][j][k];
        }
      gens.push_back(r);
    }
  return hnf_of(gens);
}

IdealHnf ideal_power_product(const FieldPtr& field, const std::vector<std::pair<Integer, int>>& factors) {
  IdealHnf acc{iidentity3()};
  for (const auto& [p, e] : factors) {
    IdealHnf prime = prime_above(field, p);
    for (int k = 0; k < e; ++k) acc = ideal_mul(field, acc, prime);
  }
  return acc;
}

Basis3 basis_of(const FieldPtr& field, const IdealHnf& h) {
  return {from_w(field, h.rows[0]), from_w(field, h.rows[1]), from_w(field, h.rows[2])};
}

// ---------------------------------------------------------------- explicit bases

namespace {

// m/9 = A^2 - AB + B^2 with A = (a+b)/6, B = b/3.
std::pair<Integer, Integer> three_mid_m_ab(const ConductorData& cd) {
  return {Integer((cd.a + cd.b) / 6), Integer(cd.b / 3)};
}

Integer x_for(const ConductorData& cd, const Integer& p_i) {
  if (p_i == 1) return 0;
  auto [A, B] = three_mid_m_ab(cd);
  return mod_pos(-A * mod_inverse(mod_pos(B, p_i), p_i), p_i);
}

}  // namespace

IdealBasis ideal_basis(const RamifiedSpec& spec) {
  validate(spec);
  const FieldPtr& F = spec.field;
  const auto& cd = *F->conductor();
  Integer pi = p_product(spec, spec.I), pj = p_product(spec, spec.J);
  Integer norm = ideal_norm(spec);
  FieldElement r = F->rho();
  FieldElement sr = galois_apply(r, 1);
  if (cd.m % 3 != 0) {
    auto [y, z] = represent_prime_eisenstein(pi, cd);
    Rational x(pi * pj - y - z, 3);
    x.canonicalize();
    FieldElement kappa = F->element(x) + Rational(y) * r + Rational(z) * sr;
    return {{kappa, galois_apply(kappa, 1), galois_apply(kappa, 2)}, norm, IdealTag::KappaOrbit};
  }
  switch (spec.p0_exponent) {
    case 0: {
      Integer x = x_for(cd, pi);
      return {{F->element(Rational(pi * pj)), Rational(pi) * r, Rational(x) * r - sr}, norm, IdealTag::ThreeMidMShapeI};
    }
    case 2: {
      if (spec.I.empty())
        return {{F->element(Rational(3 * pj)), Rational(3) * r, r - sr}, norm, IdealTag::ThreeMidMShapeII};
      Integer x = crt({{x_for(cd, pi), pi}, {Integer(1), Integer(3)}});
      return {{F->element(Rational(3 * pi * pj)), Rational(3 * pi) * r, Rational(x) * r - sr}, norm,
              IdealTag::ThreeMidMShapeIII};
    }
    default: {
      auto primes = conductor_primes(cd.m);
      std::vector<std::pair<Integer, int>> f{{Integer(3), 1}};
      for (int i : spec.I) f.emplace_back(primes[i - 1], 2);
      for (int j : spec.J) f.emplace_back(primes[j - 1], 1);
      return {basis_of(F, ideal_power_product(F, f)), norm, IdealTag::PrimeProduct};
    }
  }
}

IdealWrStatus ideal_wr_status(const RamifiedSpec& spec) {
  validate(spec);
  const auto& cd = *spec.field->conductor();
  Integer pi = p_product(spec, spec.I), pj = p_product(spec, spec.J);
  Rational key(pi * pj * pj);
  Rational m(cd.m);
  if (cd.m % 3 != 0) return {m / 4 <= key && key <= 4 * m, WrReason::ClosedForm};
  if (spec.p0_exponent != 1) return {false, WrReason::ProvenNotWR};
  return {m / 36 <= key && key <= 4 * m / 9, WrReason::ClosedForm};
}

Rational beta_norm(const FieldPtr& field, const Rational& m1, const Rational& m2, const Rational& m3) {
  const auto& cd = conductor_of(field);
  if (cd.m % 3 == 0) throw Error(ErrorKind::InvalidSpec, "beta coordinates need 3 not dividing m");
  Rational m(cd.m);
  return 3 * m1 * m1 + Rational(2, 3) * m * (m2 * m2 - m2 * m3 + m3 * m3);
}

GramMatrix3 ideal_gram(const IdealBasis& ib) {
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) g[i][j] = g[j][i] = trace(ib.elements[i] * ib.elements[j]);
  return GramMatrix3::from_matrix(g);
}

bool covolume_ok(const IdealBasis& ib) {
  const FieldPtr& F = ib.elements[0].field();
  Rational d = det3(coordinate_matrix(ib.elements)) / det3(coordinate_matrix(F->integral_basis()));
  return abs(d) == Rational(ib.claimed_norm);
}

Rational kappa_first_minimum(const RamifiedSpec& spec) {
  const auto& cd = conductor_of(spec.field);
  Rational pi(p_product(spec, spec.I)), pj(p_product(spec, spec.J)), m(cd.m);
  return std::min({Rational(3 * pi * pi * pj * pj), Rational(2 * m * pi),
                   Rational(pi * pi * pj * pj / 3 + 2 * m * pi / 3)});
}

std::vector<RamifiedSpec> all_ramified_specs(const FieldPtr& field) {
  const auto& cd = conductor_of(field);
  int r = static_cast<int>(conductor_primes(cd.m).size());
  std::vector<int> exps = cd.m % 3 == 0 ? std::vector<int>{0, 1, 2} : std::vector<int>{0};
  std::vector<RamifiedSpec> out;
  // Each prime index is in I, J or neither: 3^r patterns.
  int patterns = 1;
  for (int i = 0; i < r; ++i) patterns *= 3;
  for (int e : exps)
    for (int code = 0; code < patterns; ++code) {
      RamifiedSpec s{field, {}, {}, e};
      int c = code;
      for (int i = 1; i <= r; ++i, c /= 3) {
        if (c % 3 == 1) s.I.push_back(i);
        if (c % 3 == 2) s.J.push_back(i);
      }
      out.push_back(std::move(s));
    }
  return out;
}

}  // namespace wrtwist
