#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "d4walk/error.hpp"

namespace d4walk {

using Vertex = int;

/**
 * Parameterization of a diameter-4 tree: a centre v, and for each class j
 * there are a[j] stems adjacent to v, each carrying q[j] leaves.
 *
 * A leaf hanging directly off the centre is a stem with q = 0.
 */
struct TreeParams {
  std::vector<std::int64_t> q;
  std::vector<std::int64_t> a;

  std::size_t t() const { return q.size(); }
  friend bool operator==(const TreeParams&, const TreeParams&) = default;
};

// First violated invariant, or nullopt when the parameters are valid.
std::optional<Error> check_params(const TreeParams& p);
// Throws the error reported by check_params.
void validate_params(const TreeParams& p);

std::int64_t vertex_count(const TreeParams& p);

enum class Role { Centre, Stem, Leaf };

struct VertexRole {
  Role role = Role::Centre;
  int cls = -1;  // class index j for stems and leaves, -1 for the centre
  friend bool operator==(const VertexRole&, const VertexRole&) = default;
};

struct StemEntry {
  Vertex id;
  int cls;
};

struct LeafEntry {
  Vertex id;
  Vertex parent;
};

/**
 * Explicit tree with deterministic numbering: centre = 0, then stems grouped
 * by ascending class, then leaves grouped by stem.
 */
class LabeledTree {
 public:
  explicit LabeledTree(const TreeParams& p);

  int n() const { return static_cast<int>(neighbours_.size()); }
  Vertex centre() const { return 0; }
  const TreeParams& params() const { return params_; }
  std::span<const StemEntry> stems() const { return stems_; }
  std::span<const LeafEntry> leaves() const { return leaves_; }
  std::span<const Vertex> neighbours(Vertex v) const { return neighbours_.at(v); }
  const std::vector<std::vector<Vertex>>& adjacency_lists() const { return neighbours_; }

  VertexRole role(Vertex v) const;
  int degree(Vertex v) const { return static_cast<int>(neighbours_.at(v).size()); }

  // Stems of class j, in id order.
  std::vector<Vertex> stems_of_class(int j) const;
  // Leaves of stem s, in id order.
  std::vector<Vertex> leaves_of(Vertex stem) const;
  // Class counts and leaf counts read back from the structure.
  TreeParams recover_params() const;

 private:
  TreeParams params_;
  std::vector<StemEntry> stems_;
  std::vector<LeafEntry> leaves_;
  std::vector<std::vector<Vertex>> neighbours_;
  std::vector<VertexRole> roles_;
};

LabeledTree build_tree(const TreeParams& p);

Eigen::MatrixXd adjacency_matrix(const LabeledTree& tree);
Eigen::MatrixXd adjacency_matrix(const std::vector<std::vector<Vertex>>& lists);

// Oracle-only graphs. These bypass diameter validation and may only be fed to
// the dense decomposition and the evolution oracle.
std::vector<std::vector<Vertex>> path_graph(int n);

// BFS distances from `source`.
std::vector<int> bfs_distances(const std::vector<std::vector<Vertex>>& lists, Vertex source);

}  // namespace d4walk
