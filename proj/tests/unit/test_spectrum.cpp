#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "d4walk/decomposition.hpp"
#include "d4walk/spectrum.hpp"

using namespace d4walk;

namespace {

TreeParams random_params(std::mt19937_64& rng, int t_max, int q_max, int a_max) {
  std::uniform_int_distribution<int> t_dist(1, t_max), q_dist(0, q_max), a_dist(1, a_max);
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

std::vector<double> expand(const SpectrumMultiset& s) {
  std::vector<double> out;
  for (const auto& e : s.entries) out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), e.value.value);
  return out;
}

std::int64_t multiplicity_of(const SpectrumMultiset& s, double v) {
  for (const auto& e : s.entries) {
    if (std::abs(e.value.value - v) < 1e-9) return e.multiplicity;
  }
  return 0;
}

}  // namespace

TEST_SUITE("spectrum") {
  TEST_CASE("support eigenvalues of the worked examples") {
    const auto p5 = support_eigenvalues({{1}, {2}});
    REQUIRE(p5.lambdas.size() == 1);
    CHECK(p5.lambdas[0].value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(p5.lambdas[0].exact->to_string() == "sqrt(3)");
    CHECK(p5.includes_zero);

    const auto k3 = support_eigenvalues({{0, 2}, {9, 8}});
    CHECK_FALSE(k3.includes_zero);
    CHECK(k3.lambdas[0].exact->to_string() == "1");
    CHECK(k3.lambdas[1].exact->to_string() == "3*sqrt(2)");

    const auto ex = support_eigenvalues({{0, 2, 22}, {99, 96, 42}});
    CHECK(ex.lambda_sq == std::vector<double>{1.0, 18.0, 242.0});
    CHECK(ex.lambdas[2].exact->to_string() == "11*sqrt(2)");
  }

  TEST_CASE("non-integer roots stay numeric") {
    const auto s = support_eigenvalues({{0, 3}, {1, 2}});
    for (std::size_t j = 0; j < s.lambdas.size(); ++j) {
      CHECK(std::abs(secular_residual({{0, 3}, {1, 2}}, s.lambda_sq[j])) < 1e-12);
    }
  }

  TEST_CASE("full spectrum of the worked examples") {
    const auto k3 = full_spectrum({{0, 2}, {9, 8}});
    CHECK(k3.total() == 34);
    CHECK(multiplicity_of(k3, 0.0) == 16);
    CHECK(multiplicity_of(k3, std::sqrt(2.0)) == 7);
    CHECK(multiplicity_of(k3, -std::sqrt(2.0)) == 7);
    CHECK(multiplicity_of(k3, 1.0) == 1);
    CHECK(multiplicity_of(k3, 3.0 * std::sqrt(2.0)) == 1);

    const auto p5 = full_spectrum({{1}, {2}});
    CHECK(p5.total() == 5);
    CHECK(expand(p5).size() == 5);

    const auto ex = full_spectrum({{0, 2, 22}, {99, 96, 42}});
    CHECK(ex.total() == 1354);
    CHECK(multiplicity_of(ex, 0.0) == 1076);
    CHECK(multiplicity_of(ex, std::sqrt(2.0)) == 95);
    CHECK(multiplicity_of(ex, std::sqrt(22.0)) == 41);
    CHECK(multiplicity_of(ex, -std::sqrt(22.0)) == 41);
    CHECK(multiplicity_of(ex, 11.0 * std::sqrt(2.0)) == 1);
  }

  TEST_CASE("Cauchy inversion") {
    const double q1[] = {0, 2, 22}, l1[] = {1, 18, 242};
    const auto a1 = stems_from_spectrum(q1, l1);
    CHECK(a1[0] == doctest::Approx(99));
    CHECK(a1[1] == doctest::Approx(96));
    CHECK(a1[2] == doctest::Approx(42));
    const double q2[] = {0, 2}, l2[] = {1, 18};
    const auto a2 = stems_from_spectrum(q2, l2);
    CHECK(a2[0] == doctest::Approx(9));
    CHECK(a2[1] == doctest::Approx(8));
    const double q3[] = {1}, l3[] = {3};
    CHECK(stems_from_spectrum(q3, l3)[0] == doctest::Approx(2));

    const double bad_q[] = {0, 2}, bad_l[] = {3, 18};
    CHECK_THROWS_AS(stems_from_spectrum(bad_q, bad_l), Error);
    const double bad_l2[] = {1, 2};
    CHECK_THROWS_AS(stems_from_spectrum(bad_q, bad_l2), Error);
  }

  TEST_CASE("interlacing and roundtrip on 500 random parameter sets") {
    std::mt19937_64 rng(5);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
      const TreeParams p = random_params(rng, 5, 50, 50);
      const auto s = support_eigenvalues(p);
      REQUIRE(s.lambda_sq.size() == p.t());
      for (std::size_t j = 0; j < p.t(); ++j) {
        CHECK(static_cast<double>(p.q[j]) < s.lambda_sq[j]);
        if (j + 1 < p.t()) CHECK(s.lambda_sq[j] < static_cast<double>(p.q[j + 1]));
      }
      std::vector<double> q(p.q.begin(), p.q.end());
      const auto a = stems_from_spectrum(q, s.lambda_sq);
      for (std::size_t j = 0; j < a.size(); ++j) {
        worst = std::max(worst, std::abs(a[j] - static_cast<double>(p.a[j])));
      }
    }
    CHECK(worst < 1e-9);
  }

  TEST_CASE("full spectrum matches the dense solver for n <= 200") {
    std::mt19937_64 rng(9);
    int checked = 0;
    while (checked < 60) {
      const TreeParams p = random_params(rng, 4, 12, 6);
      if (vertex_count(p) > 200) continue;
      const auto analytic = expand(full_spectrum(p));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency_matrix(LabeledTree(p)),
                                                        Eigen::EigenvaluesOnly);
      REQUIRE(static_cast<Eigen::Index>(analytic.size()) == es.eigenvalues().size());
      for (std::size_t i = 0; i < analytic.size(); ++i) {
        CHECK(std::abs(analytic[i] - es.eigenvalues()(static_cast<Eigen::Index>(i))) < 1e-8);
      }
      // symmetric about zero
      const auto full = full_spectrum(p);
      for (const auto& e : full.entries) CHECK(multiplicity_of(full, -e.value.value) == e.multiplicity);
      ++checked;
    }
  }

  TEST_CASE("support of the centre is exactly the secular roots (plus 0 in case 1)") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
      const TreeParams p = random_params(rng, 3, 6, 4);
      const LabeledTree tree(p);
      const auto d = SpectralDecomposition::of_tree(tree, {}, ProjectionMethod::Dense);
      const auto s = support_eigenvalues(p);
      for (std::size_t g = 0; g < d.groups().size(); ++g) {
        const double lambda = d.groups()[g].value.value;
        const bool in_support = d.entry(g, 0, 0) > 1e-10;
        bool expected = s.includes_zero && std::abs(lambda) < 1e-9;
        for (const auto& l : s.lambdas) expected = expected || std::abs(std::abs(lambda) - l.value) < 1e-9;
        CHECK(in_support == expected);
      }
    }
  }
}
