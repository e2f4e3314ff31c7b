#pragma once

#include <optional>
#include <string>

#include "wrtwist/numeric.hpp"

namespace wrtwist {

// Closed interval with exact rational endpoints.
class Interval {
 public:
  Interval() = default;
  explicit Interval(const Rational& point) : lo_(point), hi_(point) {}
  Interval(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }
  Rational magnitude() const;  // max |t| over the interval
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool contains_zero() const { return lo_ <= 0 && hi_ >= 0; }
  // +1 / -1 when the interval excludes zero.
  std::optional<int> certain_sign() const;
  double to_double() const { return midpoint().get_d(); }

  // Widens both endpoints outward to multiples of 2^-bits.
  Interval rounded_outward(unsigned bits) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);

 private:
  Rational lo_{0};
  Rational hi_{0};
};

std::string to_string(const Interval& iv);

}  // namespace wrtwist
