#include <doctest.h>

#include <algorithm>
#include <random>

#include "d4walk/tree_model.hpp"

using namespace d4walk;

namespace {

ErrorCode code_of(const TreeParams& p) {
  const auto err = check_params(p);
  REQUIRE(err);
  return err->code();
}

TreeParams random_params(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> t_dist(1, 4), q_dist(0, 12), a_dist(1, 6);
  while (true) {
    std::vector<std::int64_t> qs;
    const int t = t_dist(rng);
    while (static_cast<int>(qs.size()) < t) {
      const int q = q_dist(rng);
      if (std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
    }
    std::sort(qs.begin(), qs.end());
    TreeParams p{qs, {}};
    for (int j = 0; j < t; ++j) p.a.push_back(a_dist(rng));
    if (!check_params(p)) return p;
  }
}

}  // namespace

TEST_SUITE("tree_model") {
  TEST_CASE("validation") {
    CHECK_FALSE(check_params({{0, 2}, {9, 8}}));
    CHECK(code_of({{0}, {5}}) == ErrorCode::DiameterNot4);
    CHECK(code_of({{2, 0}, {1, 1}}) == ErrorCode::NonIncreasingQ);
    CHECK(code_of({{1, 2}, {1, 0}}) == ErrorCode::NonPositiveA);
    CHECK(code_of({{-1, 2}, {1, 1}}) == ErrorCode::NegativeQ);
    CHECK(code_of({{1, 2}, {1}}) == ErrorCode::InvalidShape);
    CHECK(code_of({{}, {}}) == ErrorCode::InvalidShape);
    CHECK(code_of({{0, 3}, {4, 1}}) == ErrorCode::DiameterNot4);
    CHECK_THROWS_AS(validate_params({{0}, {5}}), Error);
  }

  TEST_CASE("vertex counts") {
    CHECK(vertex_count({{1}, {2}}) == 5);
    CHECK(vertex_count({{0, 2}, {9, 8}}) == 34);
    CHECK(vertex_count({{0, 2, 22}, {99, 96, 42}}) == 1354);
    CHECK(LabeledTree({{0, 2, 22}, {99, 96, 42}}).n() == 1354);
  }

  TEST_CASE("P5 is a path under relabeling") {
    const LabeledTree t({{1}, {2}});
    // path order: leaf - stem - centre - stem - leaf
    const std::vector<Vertex> order = {t.leaves()[0].id, t.leaves()[0].parent, 0,
                                       t.leaves()[1].parent, t.leaves()[1].id};
    const Eigen::MatrixXd a = adjacency_matrix(t);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        CHECK(a(order[i], order[j]) == (std::abs(i - j) == 1 ? 1.0 : 0.0));
      }
    }
  }

  TEST_CASE("numbering and roles") {
    const LabeledTree t({{0, 2}, {9, 8}});
    CHECK(t.degree(0) == 17);
    CHECK(t.role(0).role == Role::Centre);
    for (int v = 1; v <= 9; ++v) CHECK(t.role(v) == VertexRole{Role::Stem, 0});
    for (int v = 10; v <= 17; ++v) CHECK(t.role(v) == VertexRole{Role::Stem, 1});
    CHECK(t.role(18) == VertexRole{Role::Leaf, 1});
    CHECK(t.leaves_of(10) == std::vector<Vertex>{18, 19});
    CHECK(t.stems_of_class(1).size() == 8);
    CHECK_THROWS_AS(t.role(34), Error);
  }

  TEST_CASE("random trees: structure invariants and round trip") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const TreeParams p = random_params(rng);
      const LabeledTree t(p);
      const Eigen::MatrixXd a = adjacency_matrix(t);
      CHECK(a == a.transpose());
      CHECK(a.trace() == 0.0);
      CHECK(a.sum() == 2.0 * (t.n() - 1));
      CHECK(t.n() == vertex_count(p));
      CHECK(t.recover_params() == p);

      // connected, eccentricity 4 from a deepest leaf
      const auto from_centre = bfs_distances(t.adjacency_lists(), 0);
      CHECK(std::all_of(from_centre.begin(), from_centre.end(), [](int d) { return d >= 0; }));
      const auto deepest = static_cast<Vertex>(
          std::max_element(from_centre.begin(), from_centre.end()) - from_centre.begin());
      const auto d = bfs_distances(t.adjacency_lists(), deepest);
      CHECK(*std::max_element(d.begin(), d.end()) == 4);

      // bipartite: every edge joins different parity of depth
      for (Vertex v = 0; v < t.n(); ++v) {
        for (Vertex w : t.neighbours(v)) CHECK((from_centre[v] + from_centre[w]) % 2 == 1);
      }
    }
  }

  TEST_CASE("path graph oracle helper") {
    const auto lists = path_graph(3);
    CHECK(adjacency_matrix(lists).sum() == 4.0);
    CHECK_THROWS_AS(path_graph(0), Error);
  }
}
