#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "d4walk/cospectrality.hpp"
#include "d4walk/decomposition.hpp"
#include "d4walk/exact.hpp"

namespace d4walk {

using Complex = std::complex<double>;

struct TransferRecord {
  double time = 0.0;
  Complex amplitude;
  double fidelity = 0.0;
  std::optional<double> sensitivity;  // empty when the pair is not strongly cospectral
};

/**
 * U(t)_{x,y} = sum_lambda exp(i t lambda) (E_lambda)_{x,y} for one vertex pair.
 *
 * The projection entries are read from the decomposition once; after that
 * every evaluation is O(#eigenvalues). Symbolic times go through
 * phase_over_pi, so t * lambda is reduced before any trigonometry.
 */
class TransferKernel {
 public:
  TransferKernel(const SpectralDecomposition& d, Vertex x, Vertex y);
  static TransferKernel for_tree(const TreeParams& p, Vertex x, Vertex y,
                                 ProjectionMethod method = ProjectionMethod::Auto);

  Vertex x() const { return data_.x; }
  Vertex y() const { return data_.y; }
  const ProjectionData& data() const { return data_; }
  const std::optional<SignPartition>& partition() const { return partition_; }
  bool strongly_cospectral() const { return partition_.has_value(); }

  Complex amplitude(double t) const;
  Complex amplitude(const SymbolicTime& t) const;
  double fidelity(double t) const { return std::norm(amplitude(t)); }
  double fidelity(const SymbolicTime& t) const { return std::norm(amplitude(t)); }

  // df/dt as the sum over sigma+ x sigma+, sigma- x sigma- and sigma+ x sigma-.
  // Throws NotStronglyCospectral.
  double sensitivity(double t) const;
  double sensitivity(const SymbolicTime& t) const;

  TransferRecord record(double t) const;

 private:
  struct Term {
    double lambda;
    double weight;  // s_lambda
  };
  double sensitivity_from_phases(const std::vector<double>& plus_phase,
                                 const std::vector<double>& minus_phase) const;

  ProjectionData data_;
  std::optional<SignPartition> partition_;
  std::vector<Term> plus_;
  std::vector<Term> minus_;
  std::vector<SpectralValue> plus_values_;
  std::vector<SpectralValue> minus_values_;
};

Complex amplitude(const TreeParams& p, Vertex x, Vertex y, double t);
double fidelity(const TreeParams& p, Vertex x, Vertex y, double t);
double sensitivity(const TreeParams& p, Vertex x, Vertex y, double t);

// exp(i t A) through V diag(exp(i t lambda)) V^T. Shares no code with the
// kernel beyond Eigen.
Eigen::MatrixXcd dense_unitary_oracle(const Eigen::MatrixXd& a, double t);

// t0 + i (t1 - t0) / steps for i in [0, steps).
std::vector<double> uniform_grid(double t0, double t1, int steps);

std::vector<TransferRecord> scan(const TransferKernel& kernel, std::span<const double> grid);

}  // namespace d4walk
