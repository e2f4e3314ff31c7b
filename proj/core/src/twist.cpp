#include "wrtwist/twist.hpp"

#include <algorithm>
#include <thread>

#include "wrtwist/errors.hpp"

namespace wrtwist {

Basis3 transform_basis(const Basis3& b, const IMat3& u) {
  auto col = [&](int j) {
    return Rational(u[0][j]) * b[0] + Rational(u[1][j]) * b[1] + Rational(u[2][j]) * b[2];
  };
  return {col(0), col(1), col(2)};
}

FieldElement alpha0_of_basis(const Basis3& b) {
  FieldElement x2 = b[0].square(), y2 = b[1].square(), z2 = b[2].square();
  auto s1 = [](const FieldElement& e) { return galois_apply(e, 1); };
  auto s2 = [](const FieldElement& e) { return galois_apply(e, 2); };
  return (s1(x2) - s1(y2)) * (s2(y2) - s2(z2)) - (s2(x2) - s2(y2)) * (s1(y2) - s1(z2));
}

GramMatrix3 gram_of_twisted_basis(const Basis3& b, const FieldElement& alpha0, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::SignMismatch, "sign must be +1 or -1");
  auto sp = sign_pattern(alpha0);
  for (int s : sp)
    if (s != sign) throw Error(ErrorKind::SignMismatch, "conjugates of alpha0 do not share the sign");
  FieldElement a = Rational(sign) * alpha0;
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) g[i][j] = g[j][i] = trace(a * b[i] * b[j]);
  return GramMatrix3::from_matrix(g);
}

TwistReport test_good_basis(const Basis3& b) {
  if (b[0].field() != b[1].field() || b[1].field() != b[2].field())
    throw Error(ErrorKind::FieldMismatch, "basis elements belong to different fields");
  if (det3(coordinate_matrix(b)) == 0) throw Error(ErrorKind::DegenerateBasis, "basis is linearly dependent");
  TwistReport r{b, alpha0_of_basis(b), 0, 0, 0, false, 0, std::nullopt, false, std::nullopt};
  auto [tr, nm] = trace_and_norm(r.alpha0);
  r.e1 = tr;
  r.e3 = nm;
  r.e2 = (tr * tr - trace(r.alpha0.square())) / 2;
  r.sign_ok = r.e1 * r.e3 > 0 && r.e2 > 0;
  if (!r.sign_ok) return r;
  r.sign = sign(r.e1);
  // Step 3 with |alpha0| = sign * alpha0; all entries are traces.
  FieldElement a = Rational(r.sign) * r.alpha0;
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) g[i][j] = g[j][i] = trace(a * b[i] * b[j]);
  r.twisted_gram = GramMatrix3::from_matrix(g);
  r.is_good = wr_gram_criterion(*r.twisted_gram);
  return r;
}

TwistReport unit_transport(const TwistReport& report, const FieldElement& u) {
  Rational n = norm(u);
  if (n != 1 && n != -1) throw Error(ErrorKind::NotAUnit, "norm of the multiplier is " + to_string(n));
  return test_good_basis({u * report.basis[0], u * report.basis[1], u * report.basis[2]});
}

IMat3 random_unimodular(std::mt19937_64& rng, int coeff_bound, int steps) {
  if (coeff_bound < 1) throw Error(ErrorKind::InvalidSpec, "coeff_bound must be positive");
  std::uniform_int_distribution<int> pos(0, 2);
  std::uniform_int_distribution<int> coef(1, coeff_bound);
  std::bernoulli_distribution neg(0.5);
  IMat3 m = iidentity3();
  for (int s = 0; s < steps; ++s) {
    int i = pos(rng), j = pos(rng);
    while (j == i) j = pos(rng);
    int c = coef(rng) * (neg(rng) ? -1 : 1);
    IMat3 e = iidentity3();
    e[i][j] = c;
    m = mul(m, e);
  }
  return m;
}

namespace {

bool gram_less(const GramMatrix3& a, const GramMatrix3& b) {
  const std::array<const Rational*, 6> x{&a.s11, &a.s22, &a.s33, &a.u, &a.v, &a.w};
  const std::array<const Rational*, 6> y{&b.s11, &b.s22, &b.s33, &b.u, &b.v, &b.w};
  for (int i = 0; i < 6; ++i) {
    if (*x[i] < *y[i]) return true;
    if (*y[i] < *x[i]) return false;
  }
  return false;
}

std::uint64_t iteration_seed(std::uint64_t master, std::size_t i) {
  std::uint64_t st = master ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(i) + 1));
  return splitmix64(st);
}

}  // namespace

std::vector<TwistReport> good_basis_search(const Basis3& b0, const SearchOptions& opts) {
  const std::size_t total = opts.iterations + 1;
  std::vector<std::optional<TwistReport>> slots(total);
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < total; i += step) {
      IMat3 u = iidentity3();
      if (i > 0) {
        std::mt19937_64 rng(iteration_seed(opts.seed, i));
        // Word lengths cycle through 1..4 so short products near B0 are sampled too.
        u = random_unimodular(rng, opts.coeff_bound, 1 + static_cast<int>((i - 1) % 4));
      }
      auto rep = test_good_basis(transform_basis(b0, u));
      if (rep.is_good) slots[i] = std::move(rep);
    }
  };
  unsigned threads = std::max(1u, opts.threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  std::vector<TwistReport> good;
  for (auto& s : slots)
    if (s) good.push_back(std::move(*s));
  std::stable_sort(good.begin(), good.end(),
                   [](const TwistReport& a, const TwistReport& b) { return gram_less(*a.twisted_gram, *b.twisted_gram); });
  std::vector<TwistReport> out;
  for (auto& r : good)
    if (out.empty() || !(*out.back().twisted_gram == *r.twisted_gram)) out.push_back(std::move(r));
  return out;
}

namespace {

GramMatrix3 trace_gram(const FieldElement& weight, const Basis3& b) {
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) g[i][j] = g[j][i] = trace(weight * b[i] * b[j]);
  return GramMatrix3::from_matrix(g);
}

bool similar_or_false(const GramMatrix3& a, const GramMatrix3& b) {
  try {
    return are_similar_wr(a, b);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotWR) return false;
    throw;
  }
}

std::string unit_assumption_status(const FieldPtr& F) {
  FieldElement r = F->rho();
  Rational n = norm(r);
  if (n != 1 && n != -1) return "not_established";
  auto s = sign_pattern(r);
  bool mixed = !(s[0] == s[1] && s[1] == s[2]);
  return mixed ? "mixed_sign_unit_found" : "not_established";
}

}  // namespace

std::optional<PrincipalLink> principal_link(const TwistReport& report, int t_max,
                                            const std::optional<FieldElement>& generator) {
  if (!report.is_good) return std::nullopt;
  const FieldPtr& F = report.alpha0.field();
  if (!F->has_integral_basis() || !F->discriminant()) return std::nullopt;
  Vec3 kc = F->integral_coords(report.alpha0);
  Integer k = 0;
  for (const auto& c : kc) {
    if (!is_integer(c)) return std::nullopt;
    mpz_gcd(k.get_mpz_t(), k.get_mpz_t(), c.get_num_mpz_t());
  }
  if (k == 0) return std::nullopt;
  FieldElement psi = Rational(report.sign) * report.alpha0 / Rational(k);
  Rational npsi = norm(psi);
  if (!is_integer(npsi) || npsi == 0) return std::nullopt;
  Integer np = abs(npsi.get_num());
  const Integer& disc = *F->discriminant();
  int t = 0;
  Integer power = 1;
  for (int e = 1; e <= t_max; ++e) {
    power *= disc;
    if (power % np == 0) {
      t = e;
      break;
    }
  }
  if (t == 0) return std::nullopt;

  PrincipalLink link{psi, k, npsi, t, false, false, std::nullopt, unit_assumption_status(F)};
  Basis3 w = F->integral_basis();
  const GramMatrix3& twist = *report.twisted_gram;
  link.verified = similar_or_false(twist, trace_gram(psi.square().square(), w));
  auto mb = minimal_basis(twist);
  link.equal_abs_offdiagonal = abs(mb.gram.u) == abs(mb.gram.v) && abs(mb.gram.v) == abs(mb.gram.w);
  if (generator) link.similar_to_generator = similar_or_false(twist, trace_gram(generator->square(), w));
  return link;
}

FieldElement poly_derivative_at_root(const FieldPtr& field) {
  const auto& c = field->poly();
  return field->element(c[1], 2 * c[2], 3);
}

OrthoResult orthogonal_twist(const FieldPtr& F) {
  if (!F->has_integral_basis() || !F->discriminant())
    throw Error(ErrorKind::InvalidSpec, "orthogonal twist needs an integral basis and the field discriminant");
  const Integer& disc = *F->discriminant();
  Basis3 w = F->integral_basis();
  FieldElement d = poly_derivative_at_root(F);
  std::array<std::pair<FieldElement, std::string>, 3> bases{
      {{d, "df'(r)"}, {galois_apply(d, 1), "sigma(df'(r))"}, {galois_apply(d, 2), "sigma^2(df'(r))"}}};

  // Unit pool r^i sigma(r)^j, |i|, |j| <= 4, by increasing |i| + |j|.
  std::vector<std::pair<FieldElement, std::string>> units{{F->one(), "1"}};
  Rational nr = norm(F->rho());
  if (nr == 1 || nr == -1) {
    FieldElement r = F->rho(), sr = galois_apply(F->rho(), 1);
    for (int tot = 1; tot <= 8; ++tot)
      for (int i = -4; i <= 4; ++i)
        for (int j = -4; j <= 4; ++j) {
          if (std::abs(i) + std::abs(j) != tot) continue;
          units.emplace_back(r.pow(i) * sr.pow(j),
                             "r^" + std::to_string(i) + "*sigma(r)^" + std::to_string(j));
        }
  }

  OrthoResult res;
  for (const auto& [base, bname] : bases) {
    Rational nb = norm(base);
    if (abs(nb) != Rational(disc)) continue;  // units do not change the norm
    for (const auto& [u, uname] : units) {
      for (int s : {1, -1}) {
        ++res.candidates_tried;
        FieldElement delta = Rational(s) * base * u;
        if (!is_totally_positive(delta)) continue;
        GramMatrix3 g = trace_gram(delta.inverse(), w);
        bool integral = true;
        for (const Rational* e : {&g.s11, &g.s22, &g.s33, &g.u, &g.v, &g.w})
          if (!is_integer(*e)) integral = false;
        if (!integral || g.det() != 1) continue;
        auto ones = enumerate_short_vectors(g, 1);
        std::vector<IVec3> frame;
        for (const auto& sv : ones) {
          if (sv.norm != 1) continue;
          bool ok = true;
          for (const auto& f : frame) {
            Rational ip = 0;
            Mat3 gm = g.matrix();
            for (int a = 0; a < 3; ++a)
              for (int b = 0; b < 3; ++b) ip += gm[a][b] * Rational(f[a] * sv.coeffs[b]);
            if (ip != 0) ok = false;
          }
          if (ok) frame.push_back(sv.coeffs);
          if (frame.size() == 3) break;
        }
        if (frame.size() != 3) continue;
        IMat3 fm;
        for (int r = 0; r < 3; ++r) fm[r] = {frame[0][r], frame[1][r], frame[2][r]};
        std::string src = (s < 0 ? "-" : "") + bname + (uname == "1" ? "" : " * " + uname);
        res.certificate = OrthoTwistCertificate{delta, src, g, fm, g.transformed(fm)};
        return res;
      }
    }
  }
  return res;
}

}  // namespace wrtwist
