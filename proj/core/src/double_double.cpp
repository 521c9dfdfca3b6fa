#include "d4walk/double_double.hpp"

#include <cstdio>
#include <limits>

namespace d4walk {

namespace {

DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

}  // namespace

DoubleDouble::DoubleDouble(std::int64_t x) {
  // Both halves are exactly representable; two_sum then normalizes.
  const double high = std::ldexp(static_cast<double>(x >> 32), 32);
  const double low = static_cast<double>(x & 0xffffffffLL);
  *this = two_sum(high, low);
}

DoubleDouble DoubleDouble::two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

DoubleDouble DoubleDouble::two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

DoubleDouble operator+(DoubleDouble x, DoubleDouble y) {
  DoubleDouble s = DoubleDouble::two_sum(x.hi_, y.hi_);
  DoubleDouble t = DoubleDouble::two_sum(x.lo_, y.lo_);
  double lo = s.lo_ + t.hi_;
  s = quick_two_sum(s.hi_, lo);
  lo = s.lo_ + t.lo_;
  return quick_two_sum(s.hi_, lo);
}

DoubleDouble operator*(DoubleDouble x, DoubleDouble y) {
  DoubleDouble p = DoubleDouble::two_prod(x.hi_, y.hi_);
  const double lo = p.lo_ + (x.hi_ * y.lo_ + x.lo_ * y.hi_);
  return quick_two_sum(p.hi_, lo);
}

DoubleDouble operator/(DoubleDouble x, DoubleDouble y) {
  // Long division: three quotient digits.
  const double q1 = x.hi_ / y.hi_;
  DoubleDouble r = x - DoubleDouble(q1) * y;
  const double q2 = r.hi_ / y.hi_;
  r = r - DoubleDouble(q2) * y;
  const double q3 = r.hi_ / y.hi_;
  DoubleDouble q = quick_two_sum(q1, q2);
  return q + DoubleDouble(q3);
}

DoubleDouble sqrt(DoubleDouble x) {
  if (x.hi() <= 0.0) return DoubleDouble(0.0);
  // One Newton step on the double approximation (Karp's trick).
  const double a = std::sqrt(x.hi());
  const DoubleDouble aa = DoubleDouble::two_prod(a, a);
  const double correction = (x - aa).hi() / (2.0 * a);
  return DoubleDouble::two_sum(a, correction);
}

DoubleDouble abs(DoubleDouble x) { return x.hi() < 0.0 ? -x : x; }

DoubleDouble floor(DoubleDouble x) {
  double hi = std::floor(x.hi());
  double lo = 0.0;
  if (hi == x.hi()) lo = std::floor(x.lo());
  return quick_two_sum(hi, lo);
}

DoubleDouble round_nearest(DoubleDouble x) { return floor(x + DoubleDouble(0.5)); }

DoubleDouble pow(DoubleDouble x, unsigned n) {
  DoubleDouble result(1.0);
  DoubleDouble base = x;
  while (n > 0) {
    if (n & 1U) result *= base;
    base *= base;
    n >>= 1U;
  }
  return result;
}

DoubleDouble dd::sqrt2() {
  static const DoubleDouble value = d4walk::sqrt(DoubleDouble(2.0));
  return value;
}

std::string DoubleDouble::to_string(int digits) const {
  // Digit extraction; adequate for diagnostics, not correctly rounded.
  if (!std::isfinite(hi_)) return std::to_string(hi_);
  if (hi_ == 0.0) return "0";
  DoubleDouble v = *this;
  std::string out;
  if (v.hi_ < 0) {
    out += '-';
    v = -v;
  }
  int exponent = static_cast<int>(std::floor(std::log10(v.hi_)));
  DoubleDouble scale = pow(DoubleDouble(10.0), static_cast<unsigned>(std::abs(exponent)));
  v = exponent >= 0 ? v / scale : v * scale;
  if (v.hi_ >= 10.0) {
    v = v / DoubleDouble(10.0);
    ++exponent;
  } else if (v.hi_ < 1.0) {
    v = v * DoubleDouble(10.0);
    --exponent;
  }
  std::string mantissa;
  for (int i = 0; i < digits; ++i) {
    int d = static_cast<int>(std::floor(v.hi_));
    if (d < 0) d = 0;
    if (d > 9) d = 9;
    mantissa += static_cast<char>('0' + d);
    v = (v - DoubleDouble(static_cast<double>(d))) * DoubleDouble(10.0);
  }
  out += mantissa.substr(0, 1);
  out += '.';
  out += mantissa.substr(1);
  char buf[16];
  std::snprintf(buf, sizeof buf, "e%+d", exponent);
  out += buf;
  return out;
}

}  // namespace d4walk
