#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wrtwist {

using Integer = mpz_class;
using Rational = mpq_class;

// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, reduced).
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Accepts "p", "-p", "p/q" and decimal literals such as "1.25".
Rational parse_rational(std::string_view text);

int sign(const Rational& q);
int sign(const Integer& z);
Rational abs(const Rational& q);

Integer isqrt(const Integer& n);
bool is_perfect_square(const Integer& n);
bool is_probable_prime(const Integer& n);

Integer floor_of(const Rational& q);
Integer round_of(const Rational& q);  // nearest, ties toward +inf
bool is_integer(const Rational& q);

// Three-valued truth for number-theoretic gates whose answer may lie beyond
// the trial-division horizon.
enum class Tri { False, True, Unknown };
std::string_view to_string(Tri t) noexcept;
Tri tri_and(Tri a, Tri b) noexcept;

inline constexpr unsigned long kTrialBound = 1000000UL;

struct Factorization {
  std::vector<std::pair<Integer, unsigned>> primes;
  Integer cofactor{1};  // unfactored part, all prime factors > bound
};

Factorization trial_factor(Integer n, unsigned long bound = kTrialBound);

// Squarefree by trial division. A leftover cofactor below bound^3 that is not a
// perfect square has at most two distinct large prime factors.
Tri is_squarefree(const Integer& n, unsigned long bound = kTrialBound);

// Smallest non-negative x with x = r_i (mod m_i); moduli pairwise coprime.
Integer crt(const std::vector<std::pair<Integer, Integer>>& residues);

Integer mod_inverse(const Integer& a, const Integer& m);

// Continued-fraction reconstruction: the best approximation of x with
// denominator at most max_den.
Rational best_rational(const Rational& x, const Integer& max_den);

using Mat3 = std::array<std::array<Rational, 3>, 3>;
using Vec3 = std::array<Rational, 3>;
using IMat3 = std::array<std::array<Integer, 3>, 3>;
using IVec3 = std::array<Integer, 3>;

Rational det3(const Mat3& m);
Integer det3(const IMat3& m);
Mat3 mul(const Mat3& a, const Mat3& b);
Vec3 mul(const Mat3& a, const Vec3& v);
Mat3 identity3();
IMat3 iidentity3();
IMat3 mul(const IMat3& a, const IMat3& b);
Mat3 to_rational(const IMat3& m);
// Throws DegenerateBasis when singular.
Mat3 inverse3(const Mat3& m);
Mat3 transpose(const Mat3& m);
int rank_of(const std::vector<IVec3>& rows);

// 64-bit mixing used to derive independent seeds from a master seed.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

}  // namespace wrtwist
