#include "wrtwist/interval.hpp"

#include <algorithm>

#include "wrtwist/errors.hpp"

namespace wrtwist {

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw Error(ErrorKind::InvalidSpec, "interval with lo > hi");
}

Rational Interval::magnitude() const { return std::max(abs(lo_), abs(hi_)); }

std::optional<int> Interval::certain_sign() const {
  if (lo_ > 0) return 1;
  if (hi_ < 0) return -1;
  return std::nullopt;
}

Interval Interval::rounded_outward(unsigned bits) const {
  Integer scale = 1;
  scale <<= bits;
  Rational s(scale);
  Integer l = floor_of(lo_ * s);
  Integer h = -floor_of(-(hi_ * s));
  Interval r;
  r.lo_ = Rational(l, scale);
  r.hi_ = Rational(h, scale);
  r.lo_.canonicalize();
  r.hi_.canonicalize();
  return r;
}

Interval operator+(const Interval& a, const Interval& b) { return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_); }
Interval operator-(const Interval& a, const Interval& b) { return Interval(a.lo_ - b.hi_, a.hi_ - b.lo_); }
Interval operator-(const Interval& a) { return Interval(-a.hi_, -a.lo_); }

Interval operator*(const Interval& a, const Interval& b) {
  Rational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  return Interval(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

std::string to_string(const Interval& iv) {
  return "[" + std::to_string(iv.lo().get_d()) + ", " + std::to_string(iv.hi().get_d()) + "]";
}

}  // namespace wrtwist
