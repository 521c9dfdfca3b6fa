#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace d4walk {

/**
 * Unevaluated sum of two doubles, hi + lo with |lo| <= ulp(hi)/2.
 *
 * Gives roughly 106 bits (about 31 decimal digits) of significand. Only the
 * arithmetic needed for phase bookkeeping is provided: +, -, *, /, sqrt,
 * floor and integer powers. Transcendentals are evaluated in plain double
 * after the argument has been reduced.
 */
class DoubleDouble {
 public:
  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double x) : hi_(x), lo_(0.0) {}  // NOLINT implicit
  constexpr DoubleDouble(double hi, double lo) : hi_(hi), lo_(lo) {}
  explicit DoubleDouble(std::int64_t x);

  static DoubleDouble two_sum(double a, double b);
  static DoubleDouble two_prod(double a, double b);

  constexpr double hi() const { return hi_; }
  constexpr double lo() const { return lo_; }
  constexpr double to_double() const { return hi_ + lo_; }

  friend DoubleDouble operator+(DoubleDouble x, DoubleDouble y);
  friend DoubleDouble operator-(DoubleDouble x) { return {-x.hi_, -x.lo_}; }
  friend DoubleDouble operator-(DoubleDouble x, DoubleDouble y) { return x + (-y); }
  friend DoubleDouble operator*(DoubleDouble x, DoubleDouble y);
  friend DoubleDouble operator/(DoubleDouble x, DoubleDouble y);

  DoubleDouble& operator+=(DoubleDouble y) { return *this = *this + y; }
  DoubleDouble& operator-=(DoubleDouble y) { return *this = *this - y; }
  DoubleDouble& operator*=(DoubleDouble y) { return *this = *this * y; }
  DoubleDouble& operator/=(DoubleDouble y) { return *this = *this / y; }

  friend bool operator==(DoubleDouble x, DoubleDouble y) {
    return x.hi_ == y.hi_ && x.lo_ == y.lo_;
  }
  friend std::partial_ordering operator<=>(DoubleDouble x, DoubleDouble y) {
    if (auto c = x.hi_ <=> y.hi_; c != 0) return c;
    return x.lo_ <=> y.lo_;
  }

  // Decimal rendering with `digits` significant digits (at most ~32 useful).
  std::string to_string(int digits = 32) const;

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;
};

DoubleDouble sqrt(DoubleDouble x);
DoubleDouble abs(DoubleDouble x);
DoubleDouble floor(DoubleDouble x);
DoubleDouble round_nearest(DoubleDouble x);
DoubleDouble pow(DoubleDouble x, unsigned n);

namespace dd {
// pi to double-double precision.
inline constexpr DoubleDouble kPi{3.141592653589793116e+00, 1.224646799147353207e-16};
DoubleDouble sqrt2();
}  // namespace dd

}  // namespace d4walk
