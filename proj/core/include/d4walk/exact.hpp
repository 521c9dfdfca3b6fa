#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "d4walk/big_int.hpp"
#include "d4walk/double_double.hpp"

namespace d4walk {

// c * sqrt(m) with m squarefree; zero is {0, 0}.
struct ExactEigenvalue {
  std::int64_t coefficient = 0;
  std::int64_t radicand = 0;

  double value() const;
  std::int64_t square() const { return coefficient * coefficient * radicand; }
  std::string to_string() const;

  friend bool operator==(const ExactEigenvalue&, const ExactEigenvalue&) = default;
};

ExactEigenvalue exact_from_square(std::int64_t square, int sign);

// Recognizes `value` as +-sqrt(N) when value^2 is within `tolerance` of an
// integer N.
std::optional<ExactEigenvalue> recognize_radical(double value, double tolerance = 1e-9);

// An eigenvalue together with its exact radical form when one is known.
struct SpectralValue {
  double value = 0.0;
  std::optional<ExactEigenvalue> exact;

  std::string to_string() const;
};

SpectralValue make_spectral_value(double value, double tolerance = 1e-9);

/**
 * A time of the form numerator * pi / (denominator * sqrt(radicand)).
 *
 * Readout schedules are kept in this form until the very last step so that
 * t * lambda can be reduced modulo 2 pi exactly when lambda is a radical.
 */
struct SymbolicTime {
  BigInt numerator = 0;
  BigInt denominator = 1;
  std::int64_t radicand = 1;

  static SymbolicTime pi_multiple(BigInt n) { return {std::move(n), 1, 1}; }
  static SymbolicTime pi_over_sqrt(BigInt n, std::int64_t m) { return {std::move(n), 1, m}; }

  DoubleDouble to_double_double() const;
  double to_double() const { return to_double_double().to_double(); }
  // e.g. "41*pi/sqrt(2)", "15*pi", "3*pi/(2*sqrt(5))".
  std::string to_string() const;
};

// t * lambda / pi reduced into [0, 2). Exact integer reduction when lambda has
// an exact form; double-double otherwise.
double phase_over_pi(const SpectralValue& lambda, const SymbolicTime& t);

}  // namespace d4walk
