#include "d4walk/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace d4walk {

namespace {

constexpr int kMaxIterations = 400;
constexpr double kRelativeResidualTol = 1e-12;
constexpr double kIntegerSnapTol = 1e-9;

// Secular function in the offset variable d = x^2 - q[base], decreasing in d.
struct ShiftedSecular {
  const TreeParams& p;
  std::size_t base;

  double value(double d, double* scale = nullptr, double* slope = nullptr) const {
    double sum = 0.0;
    double abs_sum = 0.0;
    double deriv = 0.0;
    for (std::size_t i = 0; i < p.t(); ++i) {
      const double gap = static_cast<double>(p.q[base] - p.q[i]) + d;
      const double term = static_cast<double>(p.a[i]) / gap;
      sum += term;
      abs_sum += std::abs(term);
      deriv -= term / gap;
    }
    if (scale) *scale = 1.0 + abs_sum;
    if (slope) *slope = deriv;
    return sum - 1.0;
  }
};

double solve_interval(const TreeParams& p, std::size_t base, double upper) {
  const ShiftedSecular h{p, base};
  double lo = 0.0;
  double hi = upper;
  // Bracketing phase: the sign change inside (0, upper) is guaranteed.
  int iter = 0;
  while (hi - lo > 1e-6 * hi && iter < kMaxIterations) {
    const double mid = 0.5 * (lo + hi);
    if (h.value(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++iter;
  }
  // Safeguarded Newton polish.
  double d = 0.5 * (lo + hi);
  for (; iter < kMaxIterations; ++iter) {
    double slope = 0.0;
    const double f = h.value(d, nullptr, &slope);
    if (f > 0.0) {
      lo = d;
    } else if (f < 0.0) {
      hi = d;
    } else {
      break;
    }
    double next = d - f / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - d) <= 4.0 * std::numeric_limits<double>::epsilon() * d ||
        next == lo || next == hi) {
      d = next;
      break;
    }
    d = next;
  }
  double scale = 1.0;
  const double residual = h.value(d, &scale);
  if (iter >= kMaxIterations || std::abs(residual) > kRelativeResidualTol * scale) {
    throw Error(ErrorCode::RootNotConverged,
                "secular root in interval " + std::to_string(base) +
                    " did not converge (residual " + std::to_string(residual) + ")");
  }
  return d;
}

}  // namespace

double secular_residual(const TreeParams& p, double x2) {
  double sum = 0.0;
  for (std::size_t j = 0; j < p.t(); ++j) {
    sum += static_cast<double>(p.a[j]) / (x2 - static_cast<double>(p.q[j]));
  }
  return sum - 1.0;
}

SupportEigenvalues support_eigenvalues(const TreeParams& p) {
  validate_params(p);
  SupportEigenvalues out;
  out.includes_zero = p.q.front() >= 1;
  std::int64_t total_a = 0;
  for (auto a : p.a) total_a += a;

  for (std::size_t j = 0; j < p.t(); ++j) {
    const double upper = j + 1 < p.t() ? static_cast<double>(p.q[j + 1] - p.q[j])
                                       : static_cast<double>(total_a);
    const double d = solve_interval(p, j, upper);
    double x2 = static_cast<double>(p.q[j]) + d;
    const double nearest = std::round(x2);
    SpectralValue lambda;
    if (std::abs(x2 - nearest) <= kIntegerSnapTol) {
      x2 = nearest;
      lambda.exact = exact_from_square(static_cast<std::int64_t>(nearest), +1);
      lambda.value = lambda.exact->value();
    } else {
      lambda.value = std::sqrt(x2);
    }
    out.lambdas.push_back(lambda);
    out.lambda_sq.push_back(x2);
  }
  return out;
}

std::int64_t SpectrumMultiset::total() const {
  std::int64_t n = 0;
  for (const auto& e : entries) n += e.multiplicity;
  return n;
}

SpectrumMultiset full_spectrum(const TreeParams& p) {
  const SupportEigenvalues support = support_eigenvalues(p);
  SpectrumMultiset out;
  auto negate = [](SpectralValue v) {
    v.value = -v.value;
    if (v.exact) v.exact->coefficient = -v.exact->coefficient;
    return v;
  };
  for (const auto& lambda : support.lambdas) {
    out.entries.push_back({lambda, 1});
    out.entries.push_back({negate(lambda), 1});
  }
  for (std::size_t j = 0; j < p.t(); ++j) {
    if (p.q[j] >= 1 && p.a[j] >= 2) {
      SpectralValue root{std::sqrt(static_cast<double>(p.q[j])), exact_from_square(p.q[j], +1)};
      root.value = root.exact->value();
      out.entries.push_back({root, p.a[j] - 1});
      out.entries.push_back({negate(root), p.a[j] - 1});
    }
  }
  std::int64_t zero = 0;
  if (p.q.front() >= 1) {
    zero = 1;
    for (std::size_t j = 0; j < p.t(); ++j) zero += p.a[j] * (p.q[j] - 1);
  } else {
    zero = p.a.front() - 1;
    for (std::size_t j = 1; j < p.t(); ++j) zero += p.a[j] * (p.q[j] - 1);
  }
  if (zero > 0) out.entries.push_back({SpectralValue{0.0, ExactEigenvalue{0, 0}}, zero});
  std::sort(out.entries.begin(), out.entries.end(),
            [](const SpectrumEntry& x, const SpectrumEntry& y) { return x.value.value < y.value.value; });
  return out;
}

std::vector<double> stems_from_spectrum(std::span<const double> q,
                                        std::span<const double> lambda_sq) {
  if (q.empty() || q.size() != lambda_sq.size()) {
    throw Error(ErrorCode::InterlacingViolated, "q and lambda^2 must be non-empty and equal length");
  }
  if (q[0] < 0.0) throw Error(ErrorCode::InterlacingViolated, "q_1 must be >= 0");
  for (std::size_t j = 0; j < q.size(); ++j) {
    const bool below = q[j] < lambda_sq[j];
    const bool above = j + 1 == q.size() || lambda_sq[j] < q[j + 1];
    if (!below || !above) {
      throw Error(ErrorCode::InterlacingViolated, "ordering fails at index " + std::to_string(j));
    }
  }
  std::vector<double> a(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    double num = 1.0;
    double den = 1.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      num *= lambda_sq[i] - q[j];
      if (i != j) den *= q[i] - q[j];
    }
    a[j] = num / den;
  }
  return a;
}

}  // namespace d4walk
