#include "d4walk/tree_model.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

namespace d4walk {

std::optional<Error> check_params(const TreeParams& p) {
  if (p.q.empty() || p.q.size() != p.a.size()) {
    return Error(ErrorCode::InvalidShape, "q and a must be non-empty and of equal length");
  }
  if (p.q.front() < 0) return Error(ErrorCode::NegativeQ, "q[0] must be >= 0");
  for (std::size_t j = 1; j < p.q.size(); ++j) {
    if (p.q[j] <= p.q[j - 1]) {
      return Error(ErrorCode::NonIncreasingQ,
                   "q must be strictly increasing (q[" + std::to_string(j) + "])");
    }
  }
  for (std::size_t j = 0; j < p.a.size(); ++j) {
    if (p.a[j] < 1) {
      return Error(ErrorCode::NonPositiveA, "a[" + std::to_string(j) + "] must be >= 1");
    }
  }
  std::int64_t leafed_stems = 0;
  for (std::size_t j = 0; j < p.q.size(); ++j) {
    if (p.q[j] >= 1) leafed_stems += p.a[j];
  }
  if (leafed_stems < 2) {
    return Error(ErrorCode::DiameterNot4, "fewer than two stems carry leaves");
  }
  if (vertex_count(p) > std::numeric_limits<int>::max()) {
    return Error(ErrorCode::InvalidShape, "tree too large");
  }
  return std::nullopt;
}

void validate_params(const TreeParams& p) {
  if (auto err = check_params(p)) throw *err;
}

std::int64_t vertex_count(const TreeParams& p) {
  std::int64_t n = 1;
  for (std::size_t j = 0; j < p.q.size(); ++j) n += p.a[j] * (p.q[j] + 1);
  return n;
}

LabeledTree::LabeledTree(const TreeParams& p) : params_(p) {
  validate_params(p);
  const auto n = static_cast<std::size_t>(vertex_count(p));
  neighbours_.resize(n);
  roles_.resize(n);
  roles_[0] = {Role::Centre, -1};

  Vertex next = 1;
  for (std::size_t j = 0; j < p.t(); ++j) {
    for (std::int64_t i = 0; i < p.a[j]; ++i) {
      stems_.push_back({next, static_cast<int>(j)});
      roles_[next] = {Role::Stem, static_cast<int>(j)};
      neighbours_[0].push_back(next);
      neighbours_[next].push_back(0);
      ++next;
    }
  }
  for (const StemEntry& stem : stems_) {
    for (std::int64_t i = 0; i < p.q[stem.cls]; ++i) {
      leaves_.push_back({next, stem.id});
      roles_[next] = {Role::Leaf, stem.cls};
      neighbours_[stem.id].push_back(next);
      neighbours_[next].push_back(stem.id);
      ++next;
    }
  }
}

VertexRole LabeledTree::role(Vertex v) const {
  if (v < 0 || v >= n()) throw Error(ErrorCode::VertexOutOfRange, std::to_string(v));
  return roles_[v];
}

std::vector<Vertex> LabeledTree::stems_of_class(int j) const {
  std::vector<Vertex> out;
  for (const StemEntry& s : stems_) {
    if (s.cls == j) out.push_back(s.id);
  }
  return out;
}

std::vector<Vertex> LabeledTree::leaves_of(Vertex stem) const {
  std::vector<Vertex> out;
  for (Vertex w : neighbours(stem)) {
    if (roles_[w].role == Role::Leaf) out.push_back(w);
  }
  return out;
}

TreeParams LabeledTree::recover_params() const {
  // Group stems by their leaf count; classes come out sorted by q.
  std::vector<std::pair<std::int64_t, std::int64_t>> counts;
  for (Vertex s : neighbours(centre())) {
    const auto leaves = static_cast<std::int64_t>(neighbours(s).size()) - 1;
    auto it = std::find_if(counts.begin(), counts.end(),
                           [&](const auto& c) { return c.first == leaves; });
    if (it == counts.end()) {
      counts.emplace_back(leaves, 1);
    } else {
      ++it->second;
    }
  }
  std::sort(counts.begin(), counts.end());
  TreeParams out;
  for (const auto& [q, a] : counts) {
    out.q.push_back(q);
    out.a.push_back(a);
  }
  return out;
}

LabeledTree build_tree(const TreeParams& p) { return LabeledTree(p); }

Eigen::MatrixXd adjacency_matrix(const std::vector<std::vector<Vertex>>& lists) {
  const auto n = static_cast<Eigen::Index>(lists.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index v = 0; v < n; ++v) {
    for (Vertex w : lists[v]) a(v, w) = 1.0;
  }
  return a;
}

Eigen::MatrixXd adjacency_matrix(const LabeledTree& tree) {
  return adjacency_matrix(tree.adjacency_lists());
}

std::vector<std::vector<Vertex>> path_graph(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "path needs at least one vertex");
  std::vector<std::vector<Vertex>> lists(static_cast<std::size_t>(n));
  for (int v = 0; v + 1 < n; ++v) {
    lists[v].push_back(v + 1);
    lists[v + 1].push_back(v);
  }
  return lists;
}

std::vector<int> bfs_distances(const std::vector<std::vector<Vertex>>& lists, Vertex source) {
  std::vector<int> dist(lists.size(), -1);
  std::queue<Vertex> frontier;
  dist.at(source) = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const Vertex v = frontier.front();
    frontier.pop();
    for (Vertex w : lists[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

}  // namespace d4walk
