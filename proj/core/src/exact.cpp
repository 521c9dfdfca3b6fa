#include "d4walk/exact.hpp"

#include <cmath>
#include <sstream>

#include "d4walk/error.hpp"

namespace d4walk {

// ---------------------------------------------------------------- BigInt

DoubleDouble to_double_double(const BigInt& x) {
  const double hi = x.convert_to<double>();
  if (!std::isfinite(hi)) return DoubleDouble(hi);
  const BigInt rest = x - BigInt(hi);
  const double lo = rest.convert_to<double>();
  return DoubleDouble::two_sum(hi, lo);
}

double to_double(const BigInt& x) { return to_double_double(x).to_double(); }

std::string to_string(const BigInt& x) { return x.str(); }

BigInt isqrt(const BigInt& x) {
  if (x < 0) throw Error(ErrorCode::InvalidArgument, "isqrt of negative value");
  return boost::multiprecision::sqrt(x);
}

bool is_perfect_square(std::int64_t x) {
  if (x < 0) return false;
  const BigInt r = isqrt(BigInt(x));
  return r * r == x;
}

SquarefreeSplit split_squarefree(std::int64_t x) {
  if (x < 1) throw Error(ErrorCode::InvalidArgument, "split_squarefree needs x >= 1");
  std::int64_t square = 1;
  std::int64_t rest = x;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    while (rest % (p * p) == 0) {
      rest /= p * p;
      square *= p;
    }
  }
  return {square, rest};
}

// ------------------------------------------------------- ExactEigenvalue

double ExactEigenvalue::value() const {
  if (coefficient == 0) return 0.0;
  return static_cast<double>(coefficient) * std::sqrt(static_cast<double>(radicand));
}

std::string ExactEigenvalue::to_string() const {
  if (coefficient == 0) return "0";
  if (radicand == 1) return std::to_string(coefficient);
  std::string out;
  if (coefficient == -1) {
    out = "-";
  } else if (coefficient != 1) {
    out = std::to_string(coefficient) + "*";
  }
  return out + "sqrt(" + std::to_string(radicand) + ")";
}

ExactEigenvalue exact_from_square(std::int64_t square, int sign) {
  if (square < 0) throw Error(ErrorCode::InvalidArgument, "negative eigenvalue square");
  if (square == 0) return {0, 0};
  const auto [s, r] = split_squarefree(square);
  return {sign < 0 ? -s : s, r};
}

std::optional<ExactEigenvalue> recognize_radical(double value, double tolerance) {
  const double sq = value * value;
  const double nearest = std::round(sq);
  if (std::abs(sq - nearest) > tolerance || nearest > 9.0e15) return std::nullopt;
  return exact_from_square(static_cast<std::int64_t>(nearest), value < 0 ? -1 : 1);
}

std::string SpectralValue::to_string() const {
  if (exact) return exact->to_string();
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

SpectralValue make_spectral_value(double value, double tolerance) {
  SpectralValue out{value, recognize_radical(value, tolerance)};
  if (out.exact) out.value = out.exact->value();
  return out;
}

// ---------------------------------------------------------- SymbolicTime

DoubleDouble SymbolicTime::to_double_double() const {
  DoubleDouble v =
      d4walk::to_double_double(numerator) * dd::kPi / d4walk::to_double_double(denominator);
  if (radicand != 1) v = v / sqrt(DoubleDouble(static_cast<std::int64_t>(radicand)));
  return v;
}

std::string SymbolicTime::to_string() const {
  if (numerator == 0) return "0";
  std::string out = numerator == 1 ? "pi" : numerator.str() + "*pi";
  const bool has_den = denominator != 1;
  const bool has_rad = radicand != 1;
  if (has_den && has_rad) {
    out += "/(" + denominator.str() + "*sqrt(" + std::to_string(radicand) + "))";
  } else if (has_den) {
    out += "/" + denominator.str();
  } else if (has_rad) {
    out += "/sqrt(" + std::to_string(radicand) + ")";
  }
  return out;
}

namespace {

// (K * sqrt(r)) / B reduced into [0, 2), K >= 0, B > 0, r squarefree.
double reduce_radical_ratio(const BigInt& k, std::int64_t r, const BigInt& b) {
  const BigInt two_b = 2 * b;
  if (r == 1) {
    const BigInt rem = k % two_b;
    return (to_double_double(rem) / to_double_double(b)).to_double();
  }
  // K sqrt(r) = M + eps with M = floor(K sqrt(r)), eps computed through the
  // conjugate so no digits are lost however large K is.
  const BigInt k2r = k * k * r;
  const BigInt m = isqrt(k2r);
  const BigInt eps_num = k2r - m * m;
  const DoubleDouble eps_den =
      to_double_double(k) * sqrt(DoubleDouble(r)) + to_double_double(m);
  const DoubleDouble eps = eps_den.hi() > 0.0 ? to_double_double(eps_num) / eps_den
                                               : DoubleDouble(0.0);
  const BigInt m_mod = m % two_b;
  double phase = ((to_double_double(m_mod) + eps) / to_double_double(b)).to_double();
  if (phase >= 2.0) phase -= 2.0;
  return phase;
}

double wrap_two(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0.0) r += 2.0;
  if (r >= 2.0) r -= 2.0;
  return r;
}

}  // namespace

double phase_over_pi(const SpectralValue& lambda, const SymbolicTime& t) {
  if (t.numerator == 0) return 0.0;
  if (lambda.exact) {
    const ExactEigenvalue& e = *lambda.exact;
    if (e.coefficient == 0) return 0.0;
    // t*lambda/pi = N c sqrt(m_l m_t) / (d m_t), with m_l m_t = s^2 r.
    const auto [s, r] = split_squarefree(e.radicand * t.radicand);
    BigInt k = t.numerator * e.coefficient * s;
    const BigInt b = t.denominator * t.radicand;
    bool negative = false;
    if (k < 0) {
      k = -k;
      negative = true;
    }
    if (b < 0) throw Error(ErrorCode::InvalidArgument, "negative time denominator");
    const double phase = reduce_radical_ratio(k, r, b);
    return negative ? wrap_two(2.0 - phase) : phase;
  }
  const DoubleDouble x = t.to_double_double() * DoubleDouble(lambda.value) / dd::kPi;
  const DoubleDouble reduced = x - DoubleDouble(2.0) * floor(x / DoubleDouble(2.0));
  return wrap_two(reduced.to_double());
}

}  // namespace d4walk
