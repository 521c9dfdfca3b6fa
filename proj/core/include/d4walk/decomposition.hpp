#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "d4walk/exact.hpp"
#include "d4walk/tree_model.hpp"

namespace d4walk {

// One eigenvalue and an orthonormal basis of its eigenspace, expressed in the
// decomposition's working coordinates (vertices for the dense route, cells of
// an equitable partition for the quotient route).
struct EigenGroup {
  SpectralValue value;
  Eigen::MatrixXd basis;
};

enum class ProjectionMethod {
  Dense,     // full eigendecomposition of the adjacency matrix
  Quotient,  // equitable-partition quotient around the distinguished vertices
  Auto,      // Dense up to kDenseVertexLimit vertices, Quotient beyond
};

inline constexpr int kDenseVertexLimit = 2500;
inline constexpr double kGroupingTolerance = 1e-9;

/**
 * Spectral decomposition A = sum_lambda lambda E_lambda, grouped by distinct
 * eigenvalue. This is the oracle that every projection entry, support and
 * sign relation is read from.
 *
 * The quotient route uses the coarsest equitable partition in which each
 * distinguished vertex is its own cell. Its span is A-invariant and contains
 * e_x for every distinguished x, so E_lambda e_x and (E_lambda)_{x,y} are
 * exact there; only distinguished vertices may be queried.
 */
class SpectralDecomposition {
 public:
  // Dense decomposition of an arbitrary symmetric matrix (oracle-only graphs
  // enter here). Eigenvalues closer than `tolerance` share a group.
  static SpectralDecomposition dense(const Eigen::MatrixXd& symmetric,
                                     double tolerance = kGroupingTolerance);

  // Decomposition of a diameter-4 tree; eigenvalues are snapped to the
  // analytic spectrum (with exact radical forms where available).
  static SpectralDecomposition of_tree(const LabeledTree& tree,
                                       std::span<const Vertex> distinguished = {},
                                       ProjectionMethod method = ProjectionMethod::Auto);

  // Quotient decomposition for an arbitrary graph given by adjacency lists.
  static SpectralDecomposition quotient(const std::vector<std::vector<Vertex>>& lists,
                                        std::span<const Vertex> distinguished);

  int vertex_count() const { return vertex_count_; }
  int working_dimension() const { return dimension_; }
  bool is_quotient() const { return quotient_; }
  const std::vector<EigenGroup>& groups() const { return groups_; }

  bool covers(Vertex v) const;
  // (E_g)_{x,y}
  double entry(std::size_t group, Vertex x, Vertex y) const;
  // || E_g e_x ||
  double column_norm(std::size_t group, Vertex x) const;
  // || E_g (e_x - sign * e_y) ||
  double relation_defect(std::size_t group, Vertex x, Vertex y, int sign) const;

 private:
  SpectralDecomposition() = default;
  int row(Vertex v) const;

  int vertex_count_ = 0;
  int dimension_ = 0;
  bool quotient_ = false;
  std::vector<int> rows_;  // vertex -> working row, -1 if not covered
  std::vector<EigenGroup> groups_;

  friend void snap_to_spectrum(SpectralDecomposition&, const TreeParams&);
};

struct ProjectionEntry {
  SpectralValue eigenvalue;
  double s_x = 0.0;    // (E)_{x,x}
  double s_y = 0.0;    // (E)_{y,y}
  double cross = 0.0;  // (E)_{x,y}
};

struct ProjectionData {
  Vertex x = 0;
  Vertex y = 0;
  std::vector<ProjectionEntry> entries;  // ascending by eigenvalue
};

ProjectionData projection_data(const SpectralDecomposition& decomposition, Vertex x, Vertex y);
ProjectionData projection_data(const TreeParams& p, Vertex x, Vertex y,
                               ProjectionMethod method = ProjectionMethod::Auto);

}  // namespace d4walk
