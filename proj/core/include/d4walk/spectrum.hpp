#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "d4walk/exact.hpp"
#include "d4walk/tree_model.hpp"

namespace d4walk {

/// Positive eigenvalues in the support of the centre: the roots of
/// sum_j a_j / (x^2 - q_j) = 1, one per interlacing interval.
struct SupportEigenvalues {
  std::vector<SpectralValue> lambdas;  // ascending, all > 0
  std::vector<double> lambda_sq;       // lambdas squared (snapped to integers when exact)
  bool includes_zero = false;          // q_1 >= 1
};

SupportEigenvalues support_eigenvalues(const TreeParams& p);

// sum_j a_j / (x2 - q_j) - 1.
double secular_residual(const TreeParams& p, double x2);

struct SpectrumEntry {
  SpectralValue value;
  std::int64_t multiplicity = 0;
};

struct SpectrumMultiset {
  std::vector<SpectrumEntry> entries;  // ascending by value
  std::int64_t total() const;
};

SpectrumMultiset full_spectrum(const TreeParams& p);

/// Inverse problem: the stem counts a_j for which the given squares are the
/// support eigenvalues. Requires 0 <= q_1 < l_1 < q_2 < ... < q_t < l_t.
std::vector<double> stems_from_spectrum(std::span<const double> q,
                                        std::span<const double> lambda_sq);

}  // namespace d4walk
