#include <doctest.h>

#include <cmath>
#include <random>

#include "d4walk/cospectrality.hpp"
#include "d4walk/decomposition.hpp"
#include "oracles.hpp"

using namespace d4walk;

namespace {

double entry_for(const ProjectionData& pd, double lambda) {
  for (const auto& e : pd.entries) {
    if (std::abs(e.eigenvalue.value - lambda) < 1e-9) return e.s_x;
  }
  return 0.0;
}

}  // namespace

TEST_SUITE("decomposition") {
  TEST_CASE("P3 end vertices") {
    const auto d = SpectralDecomposition::dense(adjacency_matrix(path_graph(3)));
    const auto pd = projection_data(d, 0, 2);
    REQUIRE(pd.entries.size() == 3);
    CHECK(entry_for(pd, -std::sqrt(2.0)) == doctest::Approx(0.25));
    CHECK(entry_for(pd, 0.0) == doctest::Approx(0.5));
    CHECK(entry_for(pd, std::sqrt(2.0)) == doctest::Approx(0.25));
    CHECK(pd.entries[1].cross == doctest::Approx(-0.5));
  }

  TEST_CASE("type (c) k = 3 weights") {
    const TreeParams p{{0, 2}, {9, 8}};
    const auto fam = recognize_family(p);
    REQUIRE(fam);
    const auto pd = projection_data(p, fam->x, fam->y);
    CHECK(entry_for(pd, 3.0 * std::sqrt(2.0)) == doctest::Approx(1.0 / 544.0).epsilon(1e-12));
    CHECK(entry_for(pd, -3.0 * std::sqrt(2.0)) == doctest::Approx(1.0 / 544.0).epsilon(1e-12));
  }

  TEST_CASE("dense and quotient agree") {
    std::mt19937_64 rng(21);
    const std::vector<TreeParams> cases = {
        {{1}, {2}}, {{0, 2}, {9, 8}}, {{1, 3}, {2, 1}}, {{0, 1, 4}, {3, 2, 2}}, {{1, 5}, {2, 3}}};
    for (const auto& p : cases) {
      const LabeledTree tree(p);
      for (const auto& pair : classified_pairs(tree)) {
        const Vertex xy[] = {pair.x, pair.y};
        const auto dense = SpectralDecomposition::of_tree(tree, xy, ProjectionMethod::Dense);
        const auto quot = SpectralDecomposition::of_tree(tree, xy, ProjectionMethod::Quotient);
        CHECK(quot.is_quotient());
        CHECK(quot.working_dimension() <= tree.n());
        const auto a = projection_data(dense, pair.x, pair.y);
        const auto b = projection_data(quot, pair.x, pair.y);
        // groups with zero weight on the pair may be missing from one side
        for (const auto& e : a.entries) {
          double s = 0.0, c = 0.0;
          for (const auto& f : b.entries) {
            if (std::abs(f.eigenvalue.value - e.eigenvalue.value) < 1e-9) {
              s = f.s_x;
              c = f.cross;
            }
          }
          CHECK(std::abs(s - e.s_x) < 1e-10);
          CHECK(std::abs(c - e.cross) < 1e-10);
        }
      }
    }
  }

  TEST_CASE("projection data invariants") {
    std::mt19937_64 rng(3);
    const std::vector<TreeParams> cases = {
        {{1}, {2}}, {{0, 2}, {9, 8}}, {{2, 3}, {1, 4}}, {{0, 2, 22}, {99, 96, 42}}};
    for (const auto& p : cases) {
      const LabeledTree tree(p);
      std::uniform_int_distribution<int> pick(0, tree.n() - 1);
      for (int trial = 0; trial < 5; ++trial) {
        const Vertex x = pick(rng), y = pick(rng);
        const Vertex xy[] = {x, y};
        const auto d = SpectralDecomposition::of_tree(tree, xy, ProjectionMethod::Quotient);
        const auto pd = projection_data(d, x, y);
        double sx = 0.0, sy = 0.0, cross = 0.0;
        for (const auto& e : pd.entries) {
          sx += e.s_x;
          sy += e.s_y;
          cross += e.cross;
          CHECK(e.s_x >= -1e-12);
          CHECK(e.cross * e.cross <= e.s_x * e.s_y + 1e-12);
        }
        CHECK(sx == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(sy == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(cross - (x == y ? 1.0 : 0.0)) < 1e-10);
      }
    }
  }

  TEST_CASE("quotient rejects vertices outside its cells") {
    const LabeledTree tree({{0, 2}, {9, 8}});
    const Vertex xy[] = {1, 2};
    const auto d = SpectralDecomposition::of_tree(tree, xy, ProjectionMethod::Quotient);
    CHECK(d.covers(1));
    CHECK_FALSE(d.covers(5));
    CHECK_THROWS_AS(d.entry(0, 5, 1), Error);
    CHECK_THROWS_AS(SpectralDecomposition::of_tree(tree, {}, ProjectionMethod::Quotient), Error);
  }

  TEST_CASE("dense decomposition reproduces the matrix") {
    const auto a = adjacency_matrix(LabeledTree({{1, 3}, {2, 2}}));
    const auto d = SpectralDecomposition::dense(a);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(a.rows(), a.cols());
    for (const auto& g : d.groups()) sum += g.value.value * g.basis * g.basis.transpose();
    CHECK((sum - a).norm() < 1e-10);
  }
}
