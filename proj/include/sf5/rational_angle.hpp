#pragma once

#include <algorithm>
#include <compare>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "sf5/arith.hpp"

namespace sf5 {

/// An angle measured in full turns, num/den mod 1, stored in lowest terms with
/// 0 <= num < den. R(num/den) rotates through 2*pi*num/den.
class RationalAngle {
 public:
  constexpr RationalAngle() = default;

  static constexpr RationalAngle of(i64 num, i64 den) {
    if (den == 0) throw std::invalid_argument("RationalAngle: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    num = mod(num, den);
    const i64 g = gcd(num, den);
    RationalAngle a;
    a.num_ = num / g;
    a.den_ = den / g;
    return a;
  }

  constexpr i64 num() const { return num_; }
  constexpr i64 den() const { return den_; }
  constexpr bool is_zero() const { return num_ == 0; }

  /// Order of the rotation R(num/den).
  constexpr i64 order() const { return den_; }

  constexpr RationalAngle operator+(RationalAngle o) const {
    const i64 l = den_ / gcd(den_, o.den_) * o.den_;
    return of(num_ * (l / den_) + o.num_ * (l / o.den_), l);
  }
  constexpr RationalAngle operator-() const { return of(-num_, den_); }
  constexpr RationalAngle operator-(RationalAngle o) const { return *this + (-o); }
  constexpr RationalAngle operator*(i64 k) const {
    return of(static_cast<i64>((static_cast<__int128>(num_) * mod(k, den_)) % den_), den_);
  }
  /// The representative in [0, 1) divided by k, i.e. (num/den)/k as an angle.
  constexpr RationalAngle divided(i64 k) const { return of(num_, den_ * k); }

  constexpr bool operator==(const RationalAngle&) const = default;

  double turns() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  double radians() const { return 2.0 * std::numbers::pi * turns(); }
  /// min(t, 1 - t) for t = num/den, in turns.
  double distance_to_integer() const {
    return static_cast<double>(std::min(num_, den_ - num_)) / static_cast<double>(den_);
  }

 private:
  i64 num_ = 0;
  i64 den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, RationalAngle a) {
  return os << a.num() << "/" << a.den();
}

}  // namespace sf5
