#include "d4walk/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "d4walk/spectrum.hpp"

namespace d4walk {

namespace {

constexpr double kSnapTolerance = 1e-6;

std::vector<EigenGroup> group_by_tolerance(const Eigen::VectorXd& values,
                                           const Eigen::MatrixXd& vectors, double tolerance) {
  std::vector<EigenGroup> groups;
  const Eigen::Index m = values.size();
  Eigen::Index start = 0;
  while (start < m) {
    Eigen::Index end = start + 1;
    while (end < m && values(end) - values(end - 1) <= tolerance) ++end;
    const double mean = values.segment(start, end - start).mean();
    groups.push_back({make_spectral_value(mean), vectors.middleCols(start, end - start)});
    start = end;
  }
  return groups;
}

// Assigns each eigenvector to the nearest analytic eigenvalue and merges.
std::vector<EigenGroup> group_by_snapping(const Eigen::VectorXd& values,
                                          const Eigen::MatrixXd& vectors,
                                          const std::vector<SpectrumEntry>& analytic) {
  std::vector<std::vector<Eigen::Index>> members(analytic.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < analytic.size(); ++k) {
      const double dist = std::abs(values(i) - analytic[k].value.value);
      if (dist < best_dist) {
        best_dist = dist;
        best = k;
      }
    }
    if (best_dist > kSnapTolerance) {
      throw Error(ErrorCode::InvalidArgument,
                  "numeric eigenvalue " + std::to_string(values(i)) +
                      " has no analytic counterpart");
    }
    members[best].push_back(i);
  }
  std::vector<EigenGroup> groups;
  for (std::size_t k = 0; k < analytic.size(); ++k) {
    if (members[k].empty()) continue;
    Eigen::MatrixXd basis(vectors.rows(), static_cast<Eigen::Index>(members[k].size()));
    for (std::size_t c = 0; c < members[k].size(); ++c) {
      basis.col(static_cast<Eigen::Index>(c)) = vectors.col(members[k][c]);
    }
    groups.push_back({analytic[k].value, std::move(basis)});
  }
  return groups;
}

struct Quotient {
  Eigen::MatrixXd matrix;     // symmetrized quotient
  std::vector<int> cell_of;   // vertex -> cell
  std::vector<int> cell_size;
};

Quotient equitable_quotient(const std::vector<std::vector<Vertex>>& lists,
                            std::span<const Vertex> distinguished) {
  const auto n = lists.size();
  std::vector<int> color(n, 0);
  int next = 1;
  for (Vertex d : distinguished) {
    if (d < 0 || static_cast<std::size_t>(d) >= n) {
      throw Error(ErrorCode::VertexOutOfRange, std::to_string(d));
    }
    if (color[d] == 0) color[d] = next++;
  }
  int count = -1;
  while (true) {
    std::map<std::pair<int, std::vector<int>>, int> ids;
    std::vector<int> refined(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<int> around;
      around.reserve(lists[v].size());
      for (Vertex w : lists[v]) around.push_back(color[w]);
      std::sort(around.begin(), around.end());
      auto [it, inserted] =
          ids.try_emplace({color[v], std::move(around)}, static_cast<int>(ids.size()));
      refined[v] = it->second;
    }
    const int new_count = static_cast<int>(ids.size());
    color = std::move(refined);
    if (new_count == count) break;
    count = new_count;
  }

  Quotient out;
  out.cell_of = color;
  out.cell_size.assign(static_cast<std::size_t>(count), 0);
  std::vector<int> representative(static_cast<std::size_t>(count), -1);
  for (std::size_t v = 0; v < n; ++v) {
    ++out.cell_size[color[v]];
    if (representative[color[v]] < 0) representative[color[v]] = static_cast<int>(v);
  }
  out.matrix = Eigen::MatrixXd::Zero(count, count);
  for (int i = 0; i < count; ++i) {
    for (Vertex w : lists[representative[i]]) out.matrix(i, color[w]) += 1.0;
  }
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      out.matrix(i, j) *= std::sqrt(static_cast<double>(out.cell_size[i]) / out.cell_size[j]);
    }
  }
  out.matrix = (0.5 * (out.matrix + out.matrix.transpose())).eval();
  return out;
}

}  // namespace

SpectralDecomposition SpectralDecomposition::dense(const Eigen::MatrixXd& symmetric,
                                                   double tolerance) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
  SpectralDecomposition out;
  out.vertex_count_ = static_cast<int>(symmetric.rows());
  out.dimension_ = out.vertex_count_;
  out.rows_.resize(static_cast<std::size_t>(out.vertex_count_));
  for (int v = 0; v < out.vertex_count_; ++v) out.rows_[v] = v;
  out.groups_ = group_by_tolerance(solver.eigenvalues(), solver.eigenvectors(), tolerance);
  return out;
}

SpectralDecomposition SpectralDecomposition::quotient(
    const std::vector<std::vector<Vertex>>& lists, std::span<const Vertex> distinguished) {
  const Quotient q = equitable_quotient(lists, distinguished);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(q.matrix);
  SpectralDecomposition out;
  out.quotient_ = true;
  out.vertex_count_ = static_cast<int>(lists.size());
  out.dimension_ = static_cast<int>(q.matrix.rows());
  out.rows_.assign(lists.size(), -1);
  for (std::size_t v = 0; v < lists.size(); ++v) {
    if (q.cell_size[q.cell_of[v]] == 1) out.rows_[v] = q.cell_of[v];
  }
  out.groups_ = group_by_tolerance(solver.eigenvalues(), solver.eigenvectors(),
                                   kGroupingTolerance);
  return out;
}

void snap_to_spectrum(SpectralDecomposition& d, const TreeParams& p) {
  const SpectrumMultiset analytic = full_spectrum(p);
  Eigen::VectorXd values;
  Eigen::Index total = 0;
  for (const auto& g : d.groups_) total += g.basis.cols();
  values.resize(total);
  Eigen::MatrixXd vectors(d.dimension_, total);
  Eigen::Index col = 0;
  for (const auto& g : d.groups_) {
    for (Eigen::Index c = 0; c < g.basis.cols(); ++c, ++col) {
      values(col) = g.value.value;
      vectors.col(col) = g.basis.col(c);
    }
  }
  d.groups_ = group_by_snapping(values, vectors, analytic.entries);
}

SpectralDecomposition SpectralDecomposition::of_tree(const LabeledTree& tree,
                                                     std::span<const Vertex> distinguished,
                                                     ProjectionMethod method) {
  if (method == ProjectionMethod::Auto) {
    method = tree.n() <= kDenseVertexLimit ? ProjectionMethod::Dense : ProjectionMethod::Quotient;
  }
  SpectralDecomposition out;
  if (method == ProjectionMethod::Dense) {
    out = dense(adjacency_matrix(tree), kGroupingTolerance);
  } else {
    if (distinguished.empty()) {
      throw Error(ErrorCode::InvalidArgument, "quotient decomposition needs distinguished vertices");
    }
    out = quotient(tree.adjacency_lists(), distinguished);
  }
  snap_to_spectrum(out, tree.params());
  return out;
}

bool SpectralDecomposition::covers(Vertex v) const {
  return v >= 0 && v < vertex_count_ && rows_[v] >= 0;
}

int SpectralDecomposition::row(Vertex v) const {
  if (v < 0 || v >= vertex_count_) throw Error(ErrorCode::VertexOutOfRange, std::to_string(v));
  if (rows_[v] < 0) {
    throw Error(ErrorCode::VertexOutOfRange,
                "vertex " + std::to_string(v) + " is not a singleton cell of the quotient");
  }
  return rows_[v];
}

double SpectralDecomposition::entry(std::size_t group, Vertex x, Vertex y) const {
  const auto& b = groups_.at(group).basis;
  return b.row(row(x)).dot(b.row(row(y)));
}

double SpectralDecomposition::column_norm(std::size_t group, Vertex x) const {
  return groups_.at(group).basis.row(row(x)).norm();
}

double SpectralDecomposition::relation_defect(std::size_t group, Vertex x, Vertex y,
                                              int sign) const {
  const auto& b = groups_.at(group).basis;
  return (b.row(row(x)) - static_cast<double>(sign) * b.row(row(y))).norm();
}

ProjectionData projection_data(const SpectralDecomposition& decomposition, Vertex x, Vertex y) {
  ProjectionData out{x, y, {}};
  const auto& groups = decomposition.groups();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    out.entries.push_back({groups[g].value, decomposition.entry(g, x, x),
                           decomposition.entry(g, y, y), decomposition.entry(g, x, y)});
  }
  return out;
}

ProjectionData projection_data(const TreeParams& p, Vertex x, Vertex y, ProjectionMethod method) {
  const LabeledTree tree(p);
  const Vertex pair[] = {x, y};
  return projection_data(SpectralDecomposition::of_tree(tree, pair, method), x, y);
}

}  // namespace d4walk
