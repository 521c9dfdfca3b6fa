// One PASS/FAIL line per acceptance criterion. With an argument, runs only
// that criterion ("1" .. "10", "3a", "3b"); exit status is nonzero if any
// line printed FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "d4walk/cospectrality.hpp"
#include "d4walk/evolution.hpp"
#include "d4walk/readout.hpp"
#include "d4walk/spectrum.hpp"
#include "d4walk/verification.hpp"
#include "frozen_values.hpp"
#include "oracles.hpp"

using namespace d4walk;

namespace {

struct Line {
  std::string id;
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void note(const std::string& text) { std::printf("  note: %s\n", text.c_str()); }

std::mt19937_64& rng() {
  static std::mt19937_64 r(20240611);
  return r;
}

// Valid parameters with at most `n_max` vertices.
TreeParams random_tree(int n_max, int t_max = 3, int q_max = 6, int a_max = 4) {
  std::uniform_int_distribution<int> t_dist(1, t_max), q_dist(0, q_max), a_dist(1, a_max);
  while (true) {
    std::set<std::int64_t> qs;
    const int t = t_dist(rng());
    while (static_cast<int>(qs.size()) < t) qs.insert(q_dist(rng()));
    TreeParams p{{qs.begin(), qs.end()}, {}};
    for (int j = 0; j < t; ++j) p.a.push_back(a_dist(rng()));
    if (!check_params(p) && vertex_count(p) <= n_max) return p;
  }
}

std::pair<Vertex, Vertex> family_pair(const TreeParams& p) {
  const auto fam = recognize_family(p);
  if (!fam) throw std::runtime_error("not a family member");
  return {fam->x, fam->y};
}

// ------------------------------------------------------------------ 1
std::vector<Line> criterion_1() {
  const TreeParams p = type_c_params(3);
  const auto [x, y] = family_pair(p);
  const auto k = TransferKernel::for_tree(p, x, y, ProjectionMethod::Dense);
  const double f7 = k.fidelity(SymbolicTime::pi_over_sqrt(7, 2));
  const double f41 = k.fidelity(SymbolicTime::pi_over_sqrt(41, 2));
  const double f51 = k.fidelity(SymbolicTime::pi_over_sqrt(51, 2));
  const double best = std::max(f41, f51);

  const int ns[] = {3, 5};
  const auto s = schedule_type_c(3, ns);
  note(fmt("f(41pi/sqrt2) = %.15f, f(51pi/sqrt2) = %.15f; the schedule time is alpha_5 = 41, 51 is a misprint",
           f41, f51));
  note(fmt("n=3: 2k^2-1 form %.15f, 2(k^2-1) form %.15f, direct %.15f; the 2k^2-1 denominator is the right one",
           s.records[0].predicted_fidelity, *s.records[0].alternate_fidelity, f7));
  const bool pass = std::abs(f7 - 0.99853) <= 5e-4 && std::abs(best - 0.99995) <= 5e-5 &&
                    std::abs(f7 - frozen::kTypeCK3At7) < 1e-12;
  return {{"1", pass, fmt("f(7pi/sqrt2) = %.9f, max(f(41pi/sqrt2), f(51pi/sqrt2)) = %.9f", f7, best)}};
}

// ------------------------------------------------------------------ 2
std::vector<Line> criterion_2() {
  const TreeParams p{{0, 2, 22}, {99, 96, 42}};
  const auto [x, y] = family_pair(p);
  const LabeledTree tree(p);
  const auto d = SpectralDecomposition::of_tree(tree, {}, ProjectionMethod::Dense);
  const auto pd = projection_data(d, x, y);
  const double lambdas[] = {0.0, 1.0, std::sqrt(2.0), 3 * std::sqrt(2.0), 11 * std::sqrt(2.0)};
  const double want[] = {-0.5, 21.0 / 4097, 95.0 / 192, 1.0 / 15232, 11.0 / 647808};
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    double c = 0.0;
    for (const auto& e : pd.entries) {
      if (std::abs(std::abs(e.eigenvalue.value) - lambdas[i]) < 1e-9) c += e.cross;
    }
    worst = std::max(worst, std::abs(c - want[i]));
  }
  const TransferKernel k(d, x, y);
  const double f7 = k.fidelity(SymbolicTime::pi_over_sqrt(7, 2));
  const double f41 = k.fidelity(SymbolicTime::pi_over_sqrt(41, 2));
  const bool pass = tree.n() == 1354 && worst < 1e-10 && std::abs(f7 - 0.999873) <= 1e-5 &&
                    std::abs(f41 - 0.999996) <= 1e-5;
  return {{"2", pass,
           fmt("n = %d, max coefficient error %.2e, f(7pi/sqrt2) = %.9f, f(41pi/sqrt2) = %.9f", tree.n(),
               worst, f7, f41)}};
}

// ------------------------------------------------------------------ 3
Line coupled_line(const char* id, int n, double target) {
  const auto c = coupled_q2_schedule(n);
  const TreeParams p = dist4_params(c.q2);
  const auto [x, y] = family_pair(p);
  const auto k = TransferKernel::for_tree(p, x, y);
  const double f = k.fidelity(c.time);
  const bool pass = std::abs(f - target) <= 1e-3;
  return {id, pass,
          fmt("n=%d q2=%lld (%lld vertices) f(%s) = %.9f, target %.4f +- 1e-3, |U| = %.6f", n,
              static_cast<long long>(c.q2), static_cast<long long>(vertex_count(p)),
              c.time.to_string().c_str(), f, target, std::sqrt(f))};
}

std::vector<Line> criterion_3a() { return {coupled_line("3a", 2, 0.9759)}; }

std::vector<Line> criterion_3b() {
  auto line = coupled_line("3b", 3, 0.9979);
  if (!line.pass) note("the stated 0.9979 matches |U| at 17pi; the fidelity |U|^2 is 0.995749");
  return {line};
}

// ------------------------------------------------------------------ 4
std::vector<Line> criterion_4() {
  std::uniform_real_distribution<double> time(0.0, 50.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const TreeParams p = random_tree(60);
    const LabeledTree tree(p);
    const auto a = adjacency_matrix(tree);
    std::uniform_int_distribution<Vertex> v(0, tree.n() - 1);
    const Vertex x = v(rng()), y = v(rng());
    const Vertex xy[] = {x, y};
    const auto k = TransferKernel(SpectralDecomposition::of_tree(tree, xy), x, y);
    for (int j = 0; j < 5; ++j) {
      const double t = time(rng());
      const auto u = oracle::taylor_unitary(a, t);
      worst = std::max(worst, std::abs(k.amplitude(t) - u(x, y)));
    }
  }
  return {{"4", worst < 1e-9, fmt("250 samples, max |amplitude - exp(itA)_xy| = %.2e", worst)}};
}

// ------------------------------------------------------------------ 5
std::vector<Line> criterion_5() {
  std::uniform_real_distribution<double> time(0.1, 40.0);
  double worst = 0.0;
  int samples = 0;
  while (samples < 100) {
    const TreeParams p = random_tree(60);
    const auto pairs = strongly_cospectral_pairs(p);
    if (pairs.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    const auto& pr = pairs[pick(rng())];
    const auto k = TransferKernel::for_tree(p, pr.x, pr.y);
    const double t = time(rng());
    const double h = 1e-6;
    const double fd = (k.fidelity(t + h) - k.fidelity(t - h)) / (2 * h);
    const double s = k.sensitivity(t);
    // relative, with a floor where both are tiny
    worst = std::max(worst, std::abs(s - fd) / std::max(std::abs(fd), 1e-2));
    ++samples;
  }
  const auto d = SpectralDecomposition::dense(adjacency_matrix(path_graph(3)));
  const TransferKernel p3(d, 0, 2);
  double p3_worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double t = 0.05 * i;
    p3_worst = std::max(p3_worst, std::abs(p3.sensitivity(t) - oracle::p3_sensitivity(t)));
    p3_worst = std::max(p3_worst, std::abs(p3.fidelity(t) - oracle::p3_fidelity(t)));
  }
  return {{"5", worst < 1e-4 && p3_worst < 1e-10,
           fmt("100 samples, max relative error %.2e; P3 closed form max error %.2e", worst, p3_worst)}};
}

// ------------------------------------------------------------------ 6
std::vector<Line> criterion_6() {
  const int ns[] = {1, 3, 5, 7, 9};
  const auto s = schedule_type_c(3, ns);
  const auto k = TransferKernel::for_tree(s.params, s.x, s.y, ProjectionMethod::Dense);
  bool decreasing = true;
  double prev = INFINITY, last = 0.0, worst = 0.0;
  std::string series;
  for (const auto& r : s.records) {
    const double sens = k.sensitivity(r.time);
    const double mag = std::abs(sens);
    decreasing = decreasing && mag < prev;
    prev = mag;
    last = mag;
    worst = std::max(worst, std::abs(*r.predicted_sensitivity - sens));
    series += fmt(" %.3e", sens);
  }
  return {{"6", decreasing && last < 1e-3 && worst < 1e-8,
           fmt("df/dt at n=1..9:%s; closed form vs sum max error %.2e", series.c_str(), worst)}};
}

// ------------------------------------------------------------------ 7
std::vector<Line> criterion_7() {
  int trees = 0, mismatches = 0, largest = 0;
  for (const auto& p : sweep_params(3, 4, 3)) {
    const LabeledTree tree(p);
    largest = std::max(largest, tree.n());
    const auto brute = oracle::cospectral_pairs(adjacency_matrix(tree));
    std::set<std::pair<int, int>> want(brute.begin(), brute.end()), got;
    for (const auto& pr : classified_pairs(tree)) got.insert({std::min(pr.x, pr.y), std::max(pr.x, pr.y)});
    if (got != want) ++mismatches;
    ++trees;
  }
  return {{"7", mismatches == 0,
           fmt("%d trees (n <= %d), %d mismatches", trees, largest, mismatches)}};
}

// ------------------------------------------------------------------ 8
std::vector<Line> criterion_8() {
  int interlace_fail = 0;
  double roundtrip = 0.0;
  for (int i = 0; i < 500; ++i) {
    const TreeParams p = random_tree(1 << 20, 5, 50, 50);
    const auto s = support_eigenvalues(p);
    for (std::size_t j = 0; j < p.t(); ++j) {
      if (!(static_cast<double>(p.q[j]) < s.lambda_sq[j])) ++interlace_fail;
      if (j + 1 < p.t() && !(s.lambda_sq[j] < static_cast<double>(p.q[j + 1]))) ++interlace_fail;
    }
    const std::vector<double> q(p.q.begin(), p.q.end());
    const auto a = stems_from_spectrum(q, s.lambda_sq);
    for (std::size_t j = 0; j < a.size(); ++j) {
      roundtrip = std::max(roundtrip, std::abs(a[j] - static_cast<double>(p.a[j])));
    }
  }
  double spectrum = 0.0;
  int compared = 0;
  for (int i = 0; i < 100; ++i) {
    const TreeParams p = random_tree(200, 4, 12, 8);
    std::vector<double> analytic;
    for (const auto& e : full_spectrum(p).entries) {
      analytic.insert(analytic.end(), static_cast<std::size_t>(e.multiplicity), e.value.value);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency_matrix(LabeledTree(p)), Eigen::EigenvaluesOnly);
    if (static_cast<Eigen::Index>(analytic.size()) != es.eigenvalues().size()) {
      spectrum = INFINITY;
      continue;
    }
    for (std::size_t j = 0; j < analytic.size(); ++j) {
      spectrum = std::max(spectrum, std::abs(analytic[j] - es.eigenvalues()(static_cast<Eigen::Index>(j))));
    }
    ++compared;
  }
  return {{"8", interlace_fail == 0 && roundtrip < 1e-9 && spectrum < 1e-8,
           fmt("interlacing violations %d/500 sets, roundtrip max %.2e, spectrum max %.2e over %d trees",
               interlace_fail, roundtrip, spectrum, compared)}};
}

// ------------------------------------------------------------------ 9
std::vector<Line> criterion_9() {
  const auto pc = pell_convergents(5);
  const bool pell = pc[2].alpha == 7 && pc[2].beta == 5 && pc[4].alpha == 41 && pc[4].beta == 29;
  const auto q1 = q_readout_sequence(1, 1);
  const bool q1ok = q1[1].N == 26 && q1[1].D == 15;
  int parity_fail = 0;
  for (std::int64_t q = 1; q <= 20; ++q) {
    for (const auto& st : q_readout_sequence(q, 15)) {
      const bool n_even = st.N % 2 == 0, d_even = st.D % 2 == 0;
      if (q % 2 == 1 ? !(n_even && !d_even) : !(!n_even && d_even)) ++parity_fail;
    }
  }
  double worst = 0.0;
  auto against_direct = [&](const ReadoutSchedule& s) {
    const auto k = TransferKernel::for_tree(s.params, s.x, s.y);
    for (const auto& r : s.records) worst = std::max(worst, std::abs(r.predicted_fidelity - k.fidelity(r.time)));
  };
  for (std::int64_t q = 1; q <= 6; ++q) against_direct(schedule_q_readout(q, 6));
  const int ns[] = {1, 3, 5, 7, 9};
  against_direct(schedule_t3(make_t3_family(3, 11, 22), ns));
  against_direct(schedule_p5_leaf(6));
  return {{"9", pell && q1ok && parity_fail == 0 && worst < 1e-9,
           fmt("Pell %s, (N1,D1) %s, parity violations %d, schedule max discrepancy %.2e",
               pell ? "ok" : "wrong", q1ok ? "ok" : "wrong", parity_fail, worst)}};
}

// ------------------------------------------------------------------ 10
std::vector<Line> criterion_10() {
  struct Target {
    TransferKernel kernel;
    std::vector<SpectralValue> plus, minus;
  };
  std::vector<Target> targets;
  for (const TreeParams& p : {TreeParams{{1}, {2}}, dist4_params(26)}) {
    const auto pair = p.q.size() == 1 ? std::pair<Vertex, Vertex>{1, 2} : family_pair(p);
    auto k = TransferKernel::for_tree(p, pair.first, pair.second);
    const auto part = *k.partition();
    targets.push_back({std::move(k), part.sigma_plus, part.sigma_minus});
  }
  const auto steps = q_readout_sequence(1, 4);
  const std::int64_t best_r = dist4_search_readout(26, 0.1, 10000).r;
  std::uniform_real_distribution<double> eps_dist(0.01, 0.49), jitter(-2e-3, 2e-3), wide(0.0, 500.0);
  std::uniform_int_distribution<int> coin(0, 3), ell(0, 4), r_dist(0, 200);
  int certified = 0, violations = 0, per_target[2] = {0, 0};
  double margin = INFINITY;
  for (int i = 0; i < 200; ++i) {
    const bool p5 = i % 2 == 0;
    const Target& tg = targets[p5 ? 0 : 1];
    double tau;
    if (coin(rng()) == 0) {
      tau = wide(rng());
    } else if (p5) {
      tau = steps[static_cast<std::size_t>(ell(rng()))].D.convert_to<double>() / 2 + jitter(rng());
    } else {
      // half the time near the best aligned readout, otherwise near a random odd multiple
      const std::int64_t r = coin(rng()) < 2 ? best_r : r_dist(rng());
      tau = (2.0 * static_cast<double>(r) + 1.0) / 2 + jitter(rng());
    }
    const double eps = eps_dist(rng());
    const auto c = certified_lower_bound(tg.plus, tg.minus, DoubleDouble(tau), eps);
    if (!c.certified) continue;
    ++certified;
    ++per_target[p5 ? 0 : 1];
    const double f = tg.kernel.fidelity(2 * M_PI * tau);
    margin = std::min(margin, f - c.bound);
    if (f < c.bound) ++violations;
  }
  return {{"10", violations == 0 && certified > 0,
           fmt("200 probes, %d certified (P5 stems %d, q2=26 leaves %d), %d violations, smallest margin %.3e",
               certified, per_target[0], per_target[1], violations, margin)}};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<std::vector<Line>()>>> all = {
      {"1", criterion_1}, {"2", criterion_2}, {"3a", criterion_3a}, {"3b", criterion_3b},
      {"4", criterion_4}, {"5", criterion_5}, {"6", criterion_6},   {"7", criterion_7},
      {"8", criterion_8}, {"9", criterion_9}, {"10", criterion_10}};
  const std::string only = argc > 1 ? argv[1] : "";
  bool ok = true, matched = false;
  for (const auto& [id, run] : all) {
    if (!only.empty() && id != only && !(only == "3" && id.front() == '3')) continue;
    matched = true;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& line : run()) {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::printf("%s criterion %s: %s (%.2fs)\n", line.pass ? "PASS" : "FAIL", line.id.c_str(),
                  line.detail.c_str(), secs);
      ok = ok && line.pass;
    }
    std::fflush(stdout);
  }
  if (!matched) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return ok ? 0 : 1;
}
