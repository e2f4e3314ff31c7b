#include "wrtwist/numeric.hpp"

#include <algorithm>
#include <cctype>

#include "wrtwist/errors.hpp"

namespace wrtwist {

std::string_view to_string(ErrorKind k) noexcept {
  switch (k) {
    case ErrorKind::NoRepresentation: return "NoRepresentation";
    case ErrorKind::NonIntegralPolynomial: return "NonIntegralPolynomial";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::UnequalDiagonal: return "UnequalDiagonal";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotWR: return "NotWR";
    case ErrorKind::DegenerateBasis: return "DegenerateBasis";
    case ErrorKind::SignMismatch: return "SignMismatch";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotRepresentable: return "NotRepresentable";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::GateFailed: return "GateFailed";
    case ErrorKind::ConditionOutOfRange: return "ConditionOutOfRange";
    case ErrorKind::GaloisReconstructionFailed: return "GaloisReconstructionFailed";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Integer parse_signed_int(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error(ErrorKind::ParseError, "not an integer: '" + std::string(s) + "'");
  Integer z(std::string(s), 10);
  return neg ? Integer(-z) : z;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer p = parse_signed_int(trim(s.substr(0, slash)));
    auto qs = trim(s.substr(slash + 1));
    if (!all_digits(qs)) throw Error(ErrorKind::ParseError, "bad denominator in '" + std::string(s) + "'");
    Integer q(std::string(qs), 10);
    if (q == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(s) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto ip = s.substr(0, dot);
    auto fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.remove_prefix(1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      throw Error(ErrorKind::ParseError, "bad decimal '" + std::string(s) + "'");
    std::string digits = std::string(ip) + std::string(fp);
    Integer num(digits.empty() ? std::string("0") : digits, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
    Rational r(neg ? Integer(-num) : num, den);
    r.canonicalize();
    return r;
  }
  return Rational(parse_signed_int(s));
}

int sign(const Rational& q) { return sgn(q); }
int sign(const Integer& z) { return sgn(z); }
Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Integer isqrt(const Integer& n) {
  if (n < 0) throw Error(ErrorKind::InvalidSpec, "isqrt of negative number");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

bool is_probable_prime(const Integer& n) { return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer round_of(const Rational& q) { return floor_of(q + Rational(1, 2)); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::string_view to_string(Tri t) noexcept {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

Tri tri_and(Tri a, Tri b) noexcept {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::True;
}

Factorization trial_factor(Integer n, unsigned long bound) {
  Factorization f;
  if (n < 0) n = -n;
  if (n == 0) {
    f.cofactor = 0;
    return f;
  }
  auto strip = [&](unsigned long p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    if (e) f.primes.emplace_back(Integer(p), e);
  };
  strip(2);
  strip(3);
  for (unsigned long p = 5; p <= bound; p += 6) {
    if (Integer(p) * p > n) break;
    strip(p);
    strip(p + 2);
  }
  // Anything left below bound^2 is prime.
  if (n > 1) {
    if (n <= Integer(bound) * bound || is_probable_prime(n)) {
      f.primes.emplace_back(n, 1);
      n = 1;
    }
  }
  f.cofactor = n;
  return f;
}

Tri is_squarefree(const Integer& n, unsigned long bound) {
  if (n == 0) return Tri::False;
  auto f = trial_factor(n, bound);
  for (const auto& [p, e] : f.primes)
    if (e > 1) return Tri::False;
  const Integer& c = f.cofactor;
  if (c == 1) return Tri::True;
  if (is_perfect_square(c)) return Tri::False;
  Integer b(bound);
  if (c < b * b * b) return Tri::True;
  return Tri::Unknown;
}

Integer mod_inverse(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    if (m == 1) return 0;
    throw Error(ErrorKind::DivisionByZero, "no inverse of " + a.get_str() + " mod " + m.get_str());
  }
  return r;
}

Integer crt(const std::vector<std::pair<Integer, Integer>>& residues) {
  Integer x = 0, mod = 1;
  for (const auto& [r, m] : residues) {
    Integer t = ((r - x) % m + m) % m;
    t = (t * mod_inverse(mod % m, m)) % m;
    x += mod * t;
    mod *= m;
  }
  return ((x % mod) + mod) % mod;
}

Rational best_rational(const Rational& x, const Integer& max_den) {
  // Convergents h/k of the continued fraction of x.
  Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  Rational r = x;
  Rational best = floor_of(x);
  for (int guard = 0; guard < 100000; ++guard) {
    Integer a = floor_of(r);
    Integer h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    best = Rational(h2, k2);
    best.canonicalize();
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    Rational frac = r - a;
    if (frac == 0) break;
    r = 1 / frac;
  }
  return best;
}

Rational det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Integer det3(const IMat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 mul(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Rational s = 0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

Vec3 mul(const Mat3& a, const Vec3& v) {
  Vec3 r;
  for (int i = 0; i < 3; ++i) r[i] = a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2];
  return r;
}

Mat3 identity3() {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = i == j ? 1 : 0;
  return m;
}

IMat3 iidentity3() {
  IMat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = i == j ? 1 : 0;
  return m;
}

IMat3 mul(const IMat3& a, const IMat3& b) {
  IMat3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Integer s = 0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

Mat3 to_rational(const IMat3& m) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = Rational(m[i][j]);
  return r;
}

Mat3 inverse3(const Mat3& m) {
  Rational d = det3(m);
  if (d == 0) throw Error(ErrorKind::DegenerateBasis, "singular 3x3 matrix");
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) / d;
    }
  return r;
}

Mat3 transpose(const Mat3& m) {
  Mat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

int rank_of(const std::vector<IVec3>& rows) {
  std::vector<std::array<Rational, 3>> a;
  for (const auto& r : rows) a.push_back({Rational(r[0]), Rational(r[1]), Rational(r[2])});
  int rank = 0;
  for (int col = 0; col < 3 && rank < static_cast<int>(a.size()); ++col) {
    int piv = -1;
    for (int i = rank; i < static_cast<int>(a.size()); ++i)
      if (a[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      if (i == rank || a[i][col] == 0) continue;
      Rational f = a[i][col] / a[rank][col];
      for (int j = 0; j < 3; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace wrtwist
