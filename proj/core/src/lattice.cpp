#include "wrtwist/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wrtwist/errors.hpp"

namespace wrtwist {

GramMatrix3 GramMatrix3::from_matrix(const Mat3& m) {
  if (m[0][1] != m[1][0] || m[0][2] != m[2][0] || m[1][2] != m[2][1])
    throw Error(ErrorKind::InvalidSpec, "Gram matrix is not symmetric");
  return {m[0][0], m[1][1], m[2][2], m[0][1], m[0][2], m[1][2]};
}

Mat3 GramMatrix3::matrix() const {
  Mat3 m;
  m[0] = {s11, u, v};
  m[1] = {u, s22, w};
  m[2] = {v, w, s33};
  return m;
}

Rational GramMatrix3::at(int i, int j) const {
  if (i == j) return i == 0 ? s11 : (i == 1 ? s22 : s33);
  int a = std::min(i, j), b = std::max(i, j);
  if (a == 0 && b == 1) return u;
  if (a == 0 && b == 2) return v;
  return w;
}

Rational GramMatrix3::det() const { return det3(matrix()); }

bool GramMatrix3::is_positive_definite() const {
  return s11 > 0 && s11 * s22 - u * u > 0 && det() > 0;
}

GramMatrix3 GramMatrix3::transformed(const IMat3& t) const {
  Mat3 r = to_rational(t);
  return from_matrix(mul(transpose(r), mul(matrix(), r)));
}

GramMatrix3 GramMatrix3::scaled(const Rational& c) const { return {c * s11, c * s22, c * s33, c * u, c * v, c * w}; }

Rational GramMatrix3::min_diagonal() const { return std::min({s11, s22, s33}); }

Rational GramMatrix3::quadratic_form(const IVec3& x) const {
  Rational a0(x[0]), a1(x[1]), a2(x[2]);
  return s11 * a0 * a0 + s22 * a1 * a1 + s33 * a2 * a2 + 2 * (u * a0 * a1 + v * a0 * a2 + w * a1 * a2);
}

std::string to_string(const GramMatrix3& g) {
  std::ostringstream os;
  os << "[[" << to_string(g.s11) << ", " << to_string(g.u) << ", " << to_string(g.v) << "], [" << to_string(g.u)
     << ", " << to_string(g.s22) << ", " << to_string(g.w) << "], [" << to_string(g.v) << ", " << to_string(g.w)
     << ", " << to_string(g.s33) << "]]";
  return os.str();
}

LatticeBasis3 LatticeBasis3::from_vectors(const Mat3& rows) {
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[i][j] = rows[i][0] * rows[j][0] + rows[i][1] * rows[j][1] + rows[i][2] * rows[j][2];
  LatticeBasis3 l;
  l.gram_ = GramMatrix3::from_matrix(g);
  l.rows_ = rows;
  return l;
}

LatticeBasis3 LatticeBasis3::from_gram(const GramMatrix3& g) {
  LatticeBasis3 l;
  l.gram_ = g;
  return l;
}

LatticeBasis3 LatticeBasis3::transformed(const IMat3& t) const {
  if (rows_) {
    Mat3 r = mul(transpose(to_rational(t)), *rows_);
    return from_vectors(r);
  }
  return from_gram(gram_.transformed(t));
}

WrSlack wr_slack(const GramMatrix3& g) {
  if (!g.has_equal_diagonal()) throw Error(ErrorKind::UnequalDiagonal, "criterion needs s11 = s22 = s33");
  const Rational& s = g.s11;
  Rational half = s / 2;
  WrSlack sl;
  sl.half_bound = {half - abs(g.u), half - abs(g.v), half - abs(g.w)};
  sl.sum_bound = {s - (-g.u + g.v + g.w), s - (g.u - g.v + g.w), s - (g.u + g.v - g.w), s - (-g.u - g.v - g.w)};
  return sl;
}

bool wr_gram_criterion(const GramMatrix3& g) {
  auto sl = wr_slack(g);
  for (const auto& x : sl.half_bound)
    if (x < 0) return false;
  for (const auto& x : sl.sum_bound)
    if (x < 0) return false;
  return true;
}

TwistCoefficients twist_coefficients(const Mat3& rows) {
  const auto& x = rows[0];
  const auto& y = rows[1];
  const auto& z = rows[2];
  auto d = [&](int i) { return Rational(x[i] * x[i] - y[i] * y[i]); };
  auto e = [&](int i) { return Rational(y[i] * y[i] - z[i] * z[i]); };
  auto det2 = [&](int i, int j) { return Rational(d(i) * e(j) - d(j) * e(i)); };
  return {det2(1, 2), det2(2, 0), det2(0, 1)};
}

bool same_sign(const Rational& r, const Rational& s, const Rational& t) {
  Rational e1 = r + s + t;
  Rational e2 = r * s + s * t + t * r;
  Rational e3 = r * s * t;
  return e1 * e3 > 0 && e2 > 0;
}

namespace {

struct Gso {
  std::array<Rational, 3> b;
  std::array<std::array<Rational, 3>, 3> mu;
};

Gso gso_of(const Mat3& g) {
  Gso r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < i; ++j) {
      Rational s = g[i][j];
      for (int l = 0; l < j; ++l) s -= r.mu[j][l] * r.mu[i][l] * r.b[l];
      r.mu[i][j] = s / r.b[j];
    }
    Rational s = g[i][i];
    for (int l = 0; l < i; ++l) s -= r.mu[i][l] * r.mu[i][l] * r.b[l];
    r.b[i] = s;
  }
  return r;
}

void require_pd(const GramMatrix3& g) {
  if (!g.is_positive_definite()) throw Error(ErrorKind::DegenerateBasis, "Gram matrix is not positive definite");
}

}  // namespace

LllResult lll_reduce(const GramMatrix3& g0) {
  require_pd(g0);
  Mat3 g = g0.matrix();
  IMat3 t = iidentity3();
  const Rational delta(3, 4);
  int k = 1;
  for (int guard = 0; k < 3; ++guard) {
    if (guard > 100000) throw Error(ErrorKind::BudgetExceeded, "LLL did not terminate");
    for (int j = k - 1; j >= 0; --j) {
      Gso s = gso_of(g);
      Integer q = round_of(s.mu[k][j]);
      if (q == 0) continue;
      Rational qr(q);
      for (int c = 0; c < 3; ++c) g[k][c] -= qr * g[j][c];
      for (int r = 0; r < 3; ++r) g[r][k] -= qr * g[r][j];
      for (int r = 0; r < 3; ++r) t[r][k] -= q * t[r][j];
    }
    Gso s = gso_of(g);
    if (s.b[k] >= (delta - s.mu[k][k - 1] * s.mu[k][k - 1]) * s.b[k - 1]) {
      ++k;
    } else {
      std::swap(g[k], g[k - 1]);
      for (int r = 0; r < 3; ++r) std::swap(g[r][k], g[r][k - 1]);
      for (int r = 0; r < 3; ++r) std::swap(t[r][k], t[r][k - 1]);
      k = std::max(k - 1, 1);
    }
  }
  return {t, GramMatrix3::from_matrix(g)};
}

std::vector<ShortVector> enumerate_short_vectors(const GramMatrix3& g, const Rational& bound, std::size_t cap) {
  require_pd(g);
  if (bound <= 0) throw Error(ErrorKind::InvalidSpec, "enumeration bound must be positive");
  auto red = lll_reduce(g);
  const Mat3 gm = red.gram.matrix();
  Gso s = gso_of(gm);
  // Pruning in double on the bound-normalized form; every candidate is
  // re-checked exactly, so the margin only has to cover rounding.
  const double margin = 1.0 + std::ldexp(1.0, -20);
  double q[3], mu[3][3];
  for (int i = 0; i < 3; ++i) {
    q[i] = Rational(s.b[i] / bound).get_d();
    for (int j = 0; j < i; ++j) mu[i][j] = s.mu[i][j].get_d();
  }
  auto span = [](double rem, double qi) {
    if (rem <= 0) return 0.0;
    return std::sqrt(rem / qi) * (1.0 + 1e-12) + 1e-9;
  };
  std::vector<ShortVector> out;
  std::size_t candidates = 0;
  const double r = margin;
  // Q(x) = q0 (x0 + mu10 x1 + mu20 x2)^2 + q1 (x1 + mu21 x2)^2 + q2 x2^2.
  double h2 = span(r, q[2]);
  for (long x2 = -static_cast<long>(std::floor(h2)); x2 <= static_cast<long>(std::floor(h2)); ++x2) {
    double rem2 = r - q[2] * double(x2) * double(x2);
    if (rem2 < -1e-12) continue;
    double c1 = -mu[2][1] * x2;
    double h1 = span(rem2, q[1]);
    for (long x1 = static_cast<long>(std::ceil(c1 - h1)); x1 <= static_cast<long>(std::floor(c1 + h1)); ++x1) {
      double t1 = x1 + mu[2][1] * x2;
      double rem1 = rem2 - q[1] * t1 * t1;
      if (rem1 < -1e-12) continue;
      double c0 = -mu[1][0] * x1 - mu[2][0] * x2;
      double h0 = span(rem1, q[0]);
      for (long x0 = static_cast<long>(std::ceil(c0 - h0)); x0 <= static_cast<long>(std::floor(c0 + h0)); ++x0) {
        if (x0 == 0 && x1 == 0 && x2 == 0) continue;
        if (++candidates > cap) throw Error(ErrorKind::BudgetExceeded, "enumeration candidate cap exceeded");
        IVec3 xr{Integer(x0), Integer(x1), Integer(x2)};
        Rational n = red.gram.quadratic_form(xr);
        if (n > bound) continue;
        IVec3 xo;
        for (int i = 0; i < 3; ++i) xo[i] = red.transform[i][0] * xr[0] + red.transform[i][1] * xr[1] + red.transform[i][2] * xr[2];
        out.push_back({xo, n});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.coeffs < b.coeffs;
  });
  return out;
}

WrResult is_wr_lattice(const GramMatrix3& g, std::size_t cap) {
  require_pd(g);
  // The reduced basis gives a tighter upper bound for the first minimum than
  // the input diagonal, with the same answer.
  Rational bound = std::min(g.min_diagonal(), lll_reduce(g).gram.min_diagonal());
  auto all = enumerate_short_vectors(g, bound, cap);
  WrResult r;
  r.first_minimum = all.front().norm;
  std::vector<IVec3> rows;
  for (const auto& sv : all) {
    if (sv.norm != r.first_minimum) break;
    r.minimal_vectors.push_back(sv);
    rows.push_back(sv.coeffs);
  }
  r.is_wr = rank_of(rows) == 3;
  return r;
}

namespace {

std::optional<IMat3> first_unimodular_triple(const std::vector<ShortVector>& mv) {
  const std::size_t n = mv.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        IMat3 t;
        for (int r = 0; r < 3; ++r) t[r] = {mv[i].coeffs[r], mv[j].coeffs[r], mv[k].coeffs[r]};
        Integer d = det3(t);
        if (d == 1 || d == -1) return t;
      }
  return std::nullopt;
}

}  // namespace

MinimalBasis minimal_basis(const GramMatrix3& g, std::size_t cap) {
  auto wr = is_wr_lattice(g, cap);
  if (!wr.is_wr) throw Error(ErrorKind::NotWR, "minimal vectors do not span R^3");
  auto t = first_unimodular_triple(wr.minimal_vectors);
  if (!t) throw Error(ErrorKind::DegenerateBasis, "no unimodular triple among minimal vectors");
  return {*t, g.transformed(*t)};
}

LatticeBasis3 minimal_basis(const LatticeBasis3& l, std::size_t cap) {
  auto mb = minimal_basis(l.gram(), cap);
  return l.transformed(mb.transform);
}

std::array<Rational, 3> similarity_invariant(const GramMatrix3& g, std::size_t cap) {
  auto wr = is_wr_lattice(g, cap);
  if (!wr.is_wr) throw Error(ErrorKind::NotWR, "similarity invariant needs a WR lattice");
  const auto& mv = wr.minimal_vectors;
  const std::size_t n = mv.size();
  const Mat3 gm = g.matrix();
  auto ip = [&](const IVec3& a, const IVec3& b) {
    Rational s = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += gm[i][j] * Rational(a[i] * b[j]);
    return s;
  };
  std::vector<std::vector<Rational>> table(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i][j] = ip(mv[i].coeffs, mv[j].coeffs) / wr.first_minimum;
  std::optional<std::array<Rational, 3>> best;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        IMat3 t;
        for (int r = 0; r < 3; ++r) t[r] = {mv[i].coeffs[r], mv[j].coeffs[r], mv[k].coeffs[r]};
        Integer d = det3(t);
        if (d != 1 && d != -1) continue;
        std::array<Rational, 3> c{table[i][j], table[i][k], table[j][k]};
        if (!best || c < *best) best = c;
      }
    }
  if (!best) throw Error(ErrorKind::DegenerateBasis, "no minimal basis found");
  return *best;
}

bool are_similar_wr(const GramMatrix3& a, const GramMatrix3& b) {
  return similarity_invariant(a) == similarity_invariant(b);
}

}  // namespace wrtwist
