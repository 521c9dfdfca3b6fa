#include "d4walk/evolution.hpp"

#include <cmath>
#include <numbers>

namespace d4walk {

TransferKernel::TransferKernel(const SpectralDecomposition& d, Vertex x, Vertex y)
    : data_(projection_data(d, x, y)) {
  partition_ = try_sign_partition(d, x, y);
  if (!partition_) return;
  for (std::size_t g = 0; g < d.groups().size(); ++g) {
    if (d.column_norm(g, x) <= kSupportTolerance) continue;
    const auto& value = d.groups()[g].value;
    const Term term{value.value, data_.entries[g].s_x};
    if (d.relation_defect(g, x, y, +1) < kSignTolerance) {
      plus_.push_back(term);
      plus_values_.push_back(value);
    } else {
      minus_.push_back(term);
      minus_values_.push_back(value);
    }
  }
}

TransferKernel TransferKernel::for_tree(const TreeParams& p, Vertex x, Vertex y,
                                        ProjectionMethod method) {
  const LabeledTree tree(p);
  const Vertex both[] = {x, y};
  return TransferKernel(SpectralDecomposition::of_tree(tree, both, method), x, y);
}

Complex TransferKernel::amplitude(double t) const {
  Complex sum = 0.0;
  for (const auto& e : data_.entries) {
    if (e.cross == 0.0) continue;
    const double phase = t * e.eigenvalue.value;
    sum += e.cross * Complex(std::cos(phase), std::sin(phase));
  }
  return sum;
}

Complex TransferKernel::amplitude(const SymbolicTime& t) const {
  Complex sum = 0.0;
  for (const auto& e : data_.entries) {
    if (e.cross == 0.0) continue;
    const double phase = std::numbers::pi * phase_over_pi(e.eigenvalue, t);
    sum += e.cross * Complex(std::cos(phase), std::sin(phase));
  }
  return sum;
}

// Angles are passed as t*lambda (radians). For symbolic times they are the
// reduced phases, so differences stay small whatever the size of t.
double TransferKernel::sensitivity_from_phases(const std::vector<double>& plus_phase,
                                               const std::vector<double>& minus_phase) const {
  double same = 0.0;
  for (std::size_t j = 0; j < plus_.size(); ++j) {
    for (std::size_t l = 0; l < plus_.size(); ++l) {
      same += plus_[j].weight * plus_[l].weight * plus_[l].lambda *
              std::sin(plus_phase[j] - plus_phase[l]);
    }
  }
  for (std::size_t j = 0; j < minus_.size(); ++j) {
    for (std::size_t l = 0; l < minus_.size(); ++l) {
      same += minus_[j].weight * minus_[l].weight * minus_[l].lambda *
              std::sin(minus_phase[j] - minus_phase[l]);
    }
  }
  double cross = 0.0;
  for (std::size_t j = 0; j < plus_.size(); ++j) {
    for (std::size_t l = 0; l < minus_.size(); ++l) {
      cross += plus_[j].weight * minus_[l].weight * (plus_[j].lambda - minus_[l].lambda) *
               std::sin(plus_phase[j] - minus_phase[l]);
    }
  }
  return 2.0 * (same + cross);
}

double TransferKernel::sensitivity(double t) const {
  if (!partition_) throw Error(ErrorCode::NotStronglyCospectral, "sensitivity needs a cospectral pair");
  std::vector<double> plus_phase;
  std::vector<double> minus_phase;
  for (const auto& term : plus_) plus_phase.push_back(t * term.lambda);
  for (const auto& term : minus_) minus_phase.push_back(t * term.lambda);
  return sensitivity_from_phases(plus_phase, minus_phase);
}

double TransferKernel::sensitivity(const SymbolicTime& t) const {
  if (!partition_) throw Error(ErrorCode::NotStronglyCospectral, "sensitivity needs a cospectral pair");
  std::vector<double> plus_phase;
  std::vector<double> minus_phase;
  for (const auto& v : plus_values_) {
    plus_phase.push_back(std::numbers::pi * phase_over_pi(v, t));
  }
  for (const auto& v : minus_values_) {
    minus_phase.push_back(std::numbers::pi * phase_over_pi(v, t));
  }
  return sensitivity_from_phases(plus_phase, minus_phase);
}

TransferRecord TransferKernel::record(double t) const {
  TransferRecord r;
  r.time = t;
  r.amplitude = amplitude(t);
  r.fidelity = std::norm(r.amplitude);
  if (partition_) r.sensitivity = sensitivity(t);
  return r;
}

Complex amplitude(const TreeParams& p, Vertex x, Vertex y, double t) {
  return TransferKernel::for_tree(p, x, y).amplitude(t);
}

double fidelity(const TreeParams& p, Vertex x, Vertex y, double t) {
  return TransferKernel::for_tree(p, x, y).fidelity(t);
}

double sensitivity(const TreeParams& p, Vertex x, Vertex y, double t) {
  return TransferKernel::for_tree(p, x, y).sensitivity(t);
}

Eigen::MatrixXcd dense_unitary_oracle(const Eigen::MatrixXd& a, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  const Eigen::MatrixXcd v = solver.eigenvectors().cast<Complex>();
  Eigen::VectorXcd phases(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double theta = t * solver.eigenvalues()(i);
    phases(i) = Complex(std::cos(theta), std::sin(theta));
  }
  return v * phases.asDiagonal() * v.transpose();
}

std::vector<double> uniform_grid(double t0, double t1, int steps) {
  if (steps < 0) throw Error(ErrorCode::InvalidArgument, "steps must be >= 0");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) grid.push_back(t0 + i * (t1 - t0) / steps);
  return grid;
}

std::vector<TransferRecord> scan(const TransferKernel& kernel, std::span<const double> grid) {
  std::vector<TransferRecord> out;
  out.reserve(grid.size());
  for (double t : grid) out.push_back(kernel.record(t));
  return out;
}

}  // namespace d4walk
