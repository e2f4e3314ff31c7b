#include "wrtwist/families.hpp"

#include <algorithm>

#include "wrtwist/errors.hpp"

namespace wrtwist {

std::string to_string(Family f) {
  switch (f) {
    case Family::Shanks: return "shanks";
    case Family::Washington: return "washington";
    case Family::Kishi: return "kishi";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  if (name == "shanks") return Family::Shanks;
  if (name == "washington") return Family::Washington;
  if (name == "kishi") return Family::Kishi;
  throw Error(ErrorKind::InvalidSpec, "unknown family '" + name + "' (expected shanks, washington or kishi)");
}

namespace {

long mod(const Integer& n, long k) {
  Integer r = n % k;
  if (r < 0) r += k;
  return r.get_si();
}

bool in(long r, std::initializer_list<long> xs) { return std::find(xs.begin(), xs.end(), r) != xs.end(); }

Tri squarefree_quotient(const Integer& num, const Integer& den) {
  if (num % den != 0) return Tri::False;
  return is_squarefree(num / den);
}

// Row of the Kishi integral-basis table, 1..6.
int kishi_row(const Integer& n) {
  if (in(mod(n, 6), {0, 2}) || in(mod(n, 18), {4, 10})) return 1;
  if (in(mod(n, 18), {1, 13}) || in(mod(n, 6), {3, 5})) return 2;
  long r = mod(n, 54);
  if (in(r, {7, 25})) return 3;
  if (r == 16) return 4;
  if (in(r, {34, 52})) return 5;
  return 6;
}

const long kKishiE[7] = {0, 1, 4, 12, 27, 3, 108};

Integer kishi_p(const Integer& n) { return (n * n + 3) * (n * n * n * n + n * n * n + 4 * n * n + 3); }
Integer wash_p(const Integer& n) { return (n * n + 3) * (n * n - 3 * n + 3); }
Integer shanks_q(const Integer& n) { return n * n + 3 * n + 9; }

bool gate(const GateMap& g, const std::string& key) {
  auto it = g.find(key);
  return it != g.end() && it->second == Tri::True;
}

struct Poly {
  Rational c0, c1, c2;
};

Poly family_poly(Family f, const Integer& n) {
  switch (f) {
    case Family::Shanks: return {-1, Rational(-(n + 3)), Rational(-n)};
    case Family::Washington: return {-1, Rational(-n * n), Rational(-(n * n * n - 2 * n * n + 3 * n - 3))};
    case Family::Kishi:
      return {-1, Rational(-(n * n * n + 2 * n * n + 3 * n + 3)), Rational(-n * (n * n + n + 3) * (n * n + 2))};
  }
  return {};
}

Vec3 v3(const Rational& a, const Rational& b, const Rational& c) { return {a, b, c}; }

Vec3 scale(const Vec3& x, const Rational& s) { return {x[0] * s, x[1] * s, x[2] * s}; }

Vec3 kishi_theta(const Integer& n) {
  Rational d(n * n + 1);
  return v3(1 / d, Rational(n * n + n + 2) / d, Rational(3 * n * n + n + 3) / d);
}

std::optional<std::pair<std::array<Vec3, 3>, std::string>> select_integral_basis(Family f, const Integer& n,
                                                                                  const GateMap& g) {
  using B = std::array<Vec3, 3>;
  switch (f) {
    case Family::Shanks:
      if (gate(g, "q_squarefree")) return {{B{v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)}, "monogenic"}};
      if (gate(g, "nonmonogenic_class") && gate(g, "q_over_27_squarefree"))
        return {{B{v3(1, 0, 0), v3(0, 1, 0), v3(Rational(1, 3), Rational(1, 3), Rational(1, 3))}, "nonmonogenic"}};
      return std::nullopt;
    case Family::Washington: {
      if (n == 1) return std::nullopt;
      Rational d(n - 1);
      if (mod(n, 2) == 0 && gate(g, "even_squarefree"))
        return {{B{v3(1, 0, 0), v3(0, 1, 0), v3(-1 / d, 0, 1 / d)}, "even"}};
      if (mod(n, 2) == 1 && gate(g, "odd_squarefree"))
        return {{B{v3(-1 / (2 * d), 0, 1 / (2 * d)), v3(0, Rational(1, 2), Rational(1, 2)), v3(0, 0, 1)}, "odd"}};
      return std::nullopt;
    }
    case Family::Kishi: {
      if (!gate(g, "N_squarefree")) return std::nullopt;
      Vec3 th = kishi_theta(n);
      Vec3 r{0, 1, 0}, r2{0, 0, 1};
      Vec3 half{0, Rational(1, 2), Rational(1, 2)};
      int row = kishi_row(n);
      switch (row) {
        case 1: return {{B{th, r, r2}, "row1"}};
        case 2: return {{B{scale(th, Rational(1, 2)), half, r2}, "row2"}};
        case 3: return {{B{scale(th, Rational(1, 6)), half, r2}, "row3"}};
        case 4: return {{B{scale(th, Rational(1, 9)), v3(0, Rational(1, 3), Rational(2, 3)), r2}, "row4"}};
        case 5: return {{B{scale(th, Rational(1, 3)), r, r2}, "row5"}};
        default: return {{B{scale(th, Rational(1, 18)), v3(0, Rational(1, 6), Rational(5, 6)), r2}, "row6"}};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

GateMap family_gates(Family f, const Integer& n) {
  GateMap g;
  switch (f) {
    case Family::Shanks: {
      Integer q = shanks_q(n);
      g["q_squarefree"] = is_squarefree(q);
      g["nonmonogenic_class"] = (in(mod(n, 27), {3, 21}) && n > 12) ? Tri::True : Tri::False;
      g["q_over_27_squarefree"] = squarefree_quotient(q, 27);
      break;
    }
    case Family::Washington: {
      Integer p = wash_p(n);
      Integer nine = mod(n, 3) == 0 ? 9 : 1;
      bool even = mod(n, 2) == 0;
      g["n_even"] = even ? Tri::True : Tri::False;
      g["even_squarefree"] = even ? squarefree_quotient(p, nine) : Tri::False;
      g["odd_squarefree"] = even ? Tri::False : squarefree_quotient(p, 4 * nine);
      break;
    }
    case Family::Kishi: {
      Integer den = (mod(n, 2) == 1 ? 4 : 1) * (mod(n, 3) != 2 ? 9 : 1);
      g["N_squarefree"] = squarefree_quotient(kishi_p(n), den);
      g["row" + std::to_string(kishi_row(n))] = Tri::True;
      break;
    }
  }
  return g;
}

std::optional<Integer> family_field_discriminant(Family f, const Integer& n, const GateMap& g) {
  auto sq = [](const Integer& x) { return Integer(x * x); };
  switch (f) {
    case Family::Shanks:
      if (gate(g, "q_squarefree")) return sq(shanks_q(n));
      if (gate(g, "nonmonogenic_class") && gate(g, "q_over_27_squarefree")) return sq(shanks_q(n) / 3);
      return std::nullopt;
    case Family::Washington:
      if (gate(g, "even_squarefree")) return sq(wash_p(n));
      if (gate(g, "odd_squarefree")) return sq(wash_p(n) / 4);
      return std::nullopt;
    case Family::Kishi: {
      if (!gate(g, "N_squarefree")) return std::nullopt;
      Integer p = kishi_p(n);
      long e = kKishiE[kishi_row(n)];
      if (p % e != 0) return std::nullopt;
      return sq(p / e);
    }
  }
  return std::nullopt;
}

FamilyInstance make_family_field(Family f, const Integer& n) {
  if (f == Family::Shanks && n < -1) throw Error(ErrorKind::InvalidSpec, "Shanks family needs n >= -1");
  Poly p = family_poly(f, n);
  GateMap g = family_gates(f, n);
  FieldOptions opts;
  auto choice = select_integral_basis(f, n, g);
  std::string tag = "basis_unknown";
  if (choice) {
    opts.integral_basis = choice->first;
    opts.discriminant = family_field_discriminant(f, n, g);
    tag = choice->second;
  }
  FieldPtr F = CubicField::from_polynomial(p.c0, p.c1, p.c2, opts);

  FamilyInstance inst{f, n, F, std::nullopt, tag, g, 0};
  if (choice) {
    inst.integral_basis = F->integral_basis();
    bool ok = opts.discriminant && basis_discriminant(*inst.integral_basis) == Rational(*opts.discriminant);
    inst.conditions_met["basis_discriminant_matches"] = ok ? Tri::True : Tri::False;
  }

  FieldElement r = F->rho();
  FieldElement image = r;
  switch (f) {
    case Family::Shanks: image = -(F->one() / (r + Rational(1))); break;
    case Family::Washington:
      image = -((r + Rational(1)) / (Rational(n * n - n + 1) * r + Rational(n)));
      break;
    case Family::Kishi:
      image = -((Rational(n) * r + Rational(1)) /
                (Rational(n * n * n * n + n * n * n + 3 * n * n + n + 1) * r + Rational(n * n + n + 1)));
      break;
  }
  if (image == galois_apply(r, 1)) inst.mobius_power = 1;
  else if (image == galois_apply(r, 2)) inst.mobius_power = 2;
  else throw Error(ErrorKind::GaloisReconstructionFailed, "published Galois map disagrees with the computed automorphism");
  return inst;
}

IntegralBasisChoice family_integral_basis(const FamilyInstance& inst) {
  if (inst.integral_basis) return {*inst.integral_basis, inst.basis_case};
  const auto& g = inst.conditions_met;
  auto first_failed = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
      auto it = g.find(k);
      if (it != g.end() && it->second != Tri::True)
        return std::string(k) + " is " + std::string(to_string(it->second));
    }
    return std::string("no table row applies");
  };
  std::string why;
  switch (inst.family) {
    case Family::Shanks: why = first_failed({"q_squarefree", "nonmonogenic_class", "q_over_27_squarefree"}); break;
    case Family::Washington:
      why = first_failed({mod(inst.n, 2) == 0 ? "even_squarefree" : "odd_squarefree"});
      break;
    case Family::Kishi: why = first_failed({"N_squarefree"}); break;
  }
  throw Error(ErrorKind::GateFailed, to_string(inst.family) + " n=" + inst.n.get_str() + ": " + why);
}

std::vector<std::string> family_cases(Family f) {
  switch (f) {
    case Family::Shanks: return {"1"};
    case Family::Washington: return {"1", "2a", "2b"};
    case Family::Kishi: return {"A", "B1", "B2", "B3", "C1", "C2", "D1", "D2", "E", "F"};
  }
  return {};
}

namespace {

// Empty when admissible, otherwise the violated condition.
std::string case_condition(const FamilyInstance& inst, const std::string& id) {
  const Integer& n = inst.n;
  auto need = [](bool ok, const std::string& what) { return ok ? std::string() : what; };
  switch (inst.family) {
    case Family::Shanks:
      if (id == "1") return need(inst.basis_case == "nonmonogenic", "integral basis {1, r, (1+r+r^2)/3} required");
      break;
    case Family::Washington: {
      bool even = inst.basis_case == "even", odd = inst.basis_case == "odd";
      if (id == "1") return !even ? "even-n integral basis required" : need(n != 2, "n != 2");
      if (id == "2a") return !odd ? "odd-n integral basis required" : need(n >= 5, "n >= 5");
      if (id == "2b") return !odd ? "odd-n integral basis required" : need(n >= 0, "n >= 0");
      break;
    }
    case Family::Kishi: {
      int row = kishi_row(n);
      Integer an = n < 0 ? Integer(-n) : n;
      auto in_row = [&](int want, const char* cls) { return row == want ? std::string() : std::string(cls); };
      std::string c;
      if (id == "A") return !(c = in_row(1, "n = 0,2 (mod 6) or 4,10 (mod 18)")).empty() ? c : need(n != 0, "n != 0");
      if (id == "B1") return !(c = in_row(2, "n = 1,13 (mod 18) or 3,5 (mod 6)")).empty() ? c : need(an >= 3, "|n| >= 3");
      if (id == "B2") return !(c = in_row(2, "n = 1,13 (mod 18) or 3,5 (mod 6)")).empty() ? c : need(an != 1, "|n| != 1");
      if (id == "B3") return !(c = in_row(2, "n = 1,13 (mod 18) or 3,5 (mod 6)")).empty() ? c : need(n == -1, "n = -1");
      if (id == "C1") return !(c = in_row(3, "n = 7,25 (mod 54)")).empty() ? c : need(n <= -8, "n <= -8");
      if (id == "C2") return !(c = in_row(3, "n = 7,25 (mod 54)")).empty() ? c : need(n <= -2, "n <= -2");
      if (id == "D1") return !(c = in_row(4, "n = 16 (mod 54)")).empty() ? c : need(n >= 7 || n <= -6, "n >= 7 or n <= -6");
      if (id == "D2") return !(c = in_row(4, "n = 16 (mod 54)")).empty() ? c : need(n >= 5 || n <= -2, "n >= 5 or n <= -2");
      if (id == "E") return !(c = in_row(5, "n = 34,52 (mod 54)")).empty() ? c : need(an >= 6, "|n| >= 6");
      if (id == "F") return in_row(6, "n = 43 (mod 54)");
      break;
    }
  }
  throw Error(ErrorKind::InvalidSpec, "unknown case '" + id + "' for family " + to_string(inst.family));
}

}  // namespace

std::vector<std::string> admissible_cases(const FamilyInstance& inst) {
  std::vector<std::string> out;
  if (!inst.integral_basis) return out;
  for (const auto& id : family_cases(inst.family))
    if (case_condition(inst, id).empty()) out.push_back(id);
  return out;
}

FamilyGoodBasis family_good_basis(const FamilyInstance& inst, const std::string& id) {
  std::string bad = case_condition(inst, id);
  if (!inst.integral_basis) family_integral_basis(inst);  // throws GateFailed
  if (!bad.empty())
    throw Error(ErrorKind::ConditionOutOfRange,
                to_string(inst.family) + " case " + id + " at n=" + inst.n.get_str() + " needs " + bad);

  const FieldPtr& F = inst.field;
  const Integer& n = inst.n;
  Rational N(n);
  auto e = [&](const Rational& c0, const Rational& c1, const Rational& c2) { return F->element(c0, c1, c2); };
  FamilyGoodBasis out{id, {F->one(), F->one(), F->one()}, std::nullopt};

  switch (inst.family) {
    case Family::Shanks: {
      Rational q(shanks_q(n));
      Rational n2 = N * N;
      out.basis = {e(Rational(1, 3), Rational(1, 3), Rational(1, 3)), e(0, 1, 0), e(0, 1, 1)};
      out.expected_gram = GramMatrix3::equal_diagonal((n2 + 3 * N + 3) * q / 9, -(n2 + 9 * N + 9) * q / 27,
                                                      (n2 - 3 * N - 9) * q / 27, Rational(2, 3) * q);
      break;
    }
    case Family::Washington: {
      Rational d = N - 1, d2 = 2 * N - 2;
      Rational a = N * N - 3 * N + 3, b = N * N + 3;
      FieldElement mixed = e(1 / d2, Rational(1, 2), (N - 2) / d2);
      FieldElement half = e(0, Rational(1, 2), Rational(1, 2));
      if (id == "1") {
        out.basis = {e(0, 1, 0), e(-1 / d, -1, 1 / d), e(0, 0, 1)};
        Rational u = N * d * d * a * b;
        out.expected_gram = GramMatrix3::equal_diagonal(d * d * a * (N * N - N + 3) * b, u, -u, u);
      } else if (id == "2a") {
        out.basis = {e(0, 0, 1), mixed, half};
        Rational c = a * b;
        out.expected_gram = GramMatrix3::equal_diagonal(
            c * (N * N * N * N - 5 * N * N * N + 10 * N * N - 11 * N + 1) / 16,
            c * (N * N - 2 * N - 1) * (N * N - 4 * N + 7) / 32,
            c * (N * N * N * N - 8 * N * N * N + 16 * N * N - 16 * N - 1) / 32,
            c * d * (N * N * N - 11 * N * N + 19 * N - 1) / 64);
      } else {
        out.basis = {mixed, e(1 / d2, 1, -1 / d2), half};
        Rational c = (N * N - 4 * N + 7) * a * b;
        Rational u = c * (N - 3) * d / 64;
        out.expected_gram = GramMatrix3::equal_diagonal(c * (N * N - 2 * N + 3) / 32, u, u, u);
      }
      break;
    }
    case Family::Kishi: {
      Rational D = N * N + 1;
      Rational s = n > 0 ? 1 : -1;
      Vec3 th = kishi_theta(n);
      FieldElement theta = e(th[0], th[1], th[2]);
      FieldElement r = e(0, 1, 0), r2 = e(0, 0, 1), half = e(0, Rational(1, 2), Rational(1, 2));
      if (id == "A") {
        out.basis = {e(1 / D, (N * N + N + 2) / D, N / D), r, r2};
      } else if (id == "B1") {
        out.basis = {-s * e(1 / (2 * D), (2 * N * N + N + 3) / (2 * D), N / (2 * D)), half, s * r};
      } else if (id == "B2") {
        out.basis = {e(-s / (2 * D), -s * (N * N + N + 2) / (2 * D), (N * N - s * N + 1) / (2 * D)), half, -s * r2};
      } else if (id == "B3") {
        out.basis = {e(-1 / (2 * D), -(N * N + N + 2) / (2 * D), (N * N - N + 1) / (2 * D)), half, -r2};
      } else if (id == "C1") {
        out.basis = {theta / 6, half, r2};
      } else if (id == "C2") {
        out.basis = {theta / 6, e(-1 / (6 * D), (2 * N * N - N + 1) / (6 * D), -N / (6 * D)),
                     e(-1 / (3 * D), -(N * N + N + 2) / (3 * D), -N / (3 * D))};
      } else if (id == "D1") {
        out.basis = {e(0, Rational(-1, 3), Rational(1, 3)), r2, -(theta / 9)};
      } else if (id == "D2") {
        out.basis = {theta / 9, e(1 / (9 * D), (4 * N * N + N + 5) / (9 * D), N / (9 * D)),
                     e(1 / (3 * D), (N * N + N + 2) / (3 * D), N / (3 * D))};
      } else if (id == "E") {
        out.basis = {e(1 / (3 * D), (N * N + N + 2) / (3 * D), N / (3 * D)), r, r2};
      } else {
        out.basis = {r2, e(0, Rational(1, 6), Rational(-1, 6)), -(theta / 18)};
      }
      break;
    }
  }
  return out;
}

FieldElement washington_principal_generator(const FamilyInstance& inst) {
  if (inst.family != Family::Washington) throw Error(ErrorKind::InvalidSpec, "principal generator is for the Washington family");
  const FieldPtr& F = inst.field;
  Integer a = inst.n * inst.n - 3 * inst.n + 3;
  if (!F->discriminant() || *F->discriminant() % a != 0)
    throw Error(ErrorKind::GateFailed, "n^2 - 3n + 3 = " + a.get_str() + " does not divide a known field discriminant");
  Rational d(inst.n - 1);
  FieldElement g = F->element(-1 / d, Rational(-inst.n), 1 / d);
  if (norm(g) != Rational(-a)) throw Error(ErrorKind::GateFailed, "norm of the generator is " + to_string(norm(g)));
  return g;
}

}  // namespace wrtwist
