#include "d4walk/readout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "d4walk/evolution.hpp"

namespace d4walk {

namespace {

using std::numbers::pi;

// 1 - cos(x) without cancellation for small x.
double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

DoubleDouble dd_value(const SpectralValue& v) {
  if (!v.exact) return DoubleDouble(v.value);
  const auto& e = *v.exact;
  if (e.coefficient == 0) return DoubleDouble(0.0);
  DoubleDouble r = DoubleDouble(e.coefficient);
  if (e.radicand != 1) r = r * sqrt(DoubleDouble(e.radicand));
  return r;
}

DoubleDouble distance_to_integer(DoubleDouble x) { return abs(x - round_nearest(x)); }

void require_odd_list(std::span<const int> n_list) {
  for (int n : n_list) {
    if (n < 1 || n % 2 == 0) {
      throw Error(ErrorCode::ParityViolation, "n must be a positive odd integer, got " +
                                                   std::to_string(n));
    }
  }
}

int max_of(std::span<const int> n_list) {
  return n_list.empty() ? 1 : *std::max_element(n_list.begin(), n_list.end());
}

std::pair<Vertex, Vertex> leaves_of_first_stem(const TreeParams& p, int cls) {
  const LabeledTree tree(p);
  const auto leaves = tree.leaves_of(tree.stems_of_class(cls).front());
  return {leaves[0], leaves[1]};
}

}  // namespace

// ------------------------------------------------------------ Pell

DoubleDouble pell_defect(const BigInt& alpha, const BigInt& beta) {
  const BigInt num = 2 * beta * beta - alpha * alpha;
  const DoubleDouble den = to_double_double(beta) * dd::sqrt2() + to_double_double(alpha);
  return to_double_double(num) / den;
}

std::vector<PellConvergent> pell_convergents(int n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
  std::vector<PellConvergent> out;
  BigInt a0 = 1, b0 = 1, a1 = 3, b1 = 2;
  for (int n = 1; n <= n_max; ++n) {
    out.push_back({n, a0, b0, pell_defect(a0, b0)});
    BigInt a2 = 2 * a1 + a0;
    BigInt b2 = 2 * b1 + b0;
    a0 = std::move(a1);
    b0 = std::move(b1);
    a1 = std::move(a2);
    b1 = std::move(b2);
  }
  return out;
}

// ------------------------------------------------------------ type (c)

TreeParams type_c_params(std::int64_t k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "k must be >= 2");
  return {{0, 2}, {k * k, k * k - 1}};
}

double type_c_general_fidelity(std::int64_t k, const BigInt& mu, const BigInt& nu) {
  const double delta = pell_defect(mu, nu).to_double();
  const double c = 1.0 / (2.0 * static_cast<double>(k * k - 1));
  const double g = 1.0 - c * one_minus_cos(delta * pi / std::numbers::sqrt2);
  return g * g;
}

ReadoutSchedule schedule_type_c(std::int64_t k, std::span<const int> n_list) {
  if (k < 3 || k % 2 == 0) {
    throw Error(ErrorCode::ParityViolation, "k must be odd and > 1, got " + std::to_string(k));
  }
  require_odd_list(n_list);
  ReadoutSchedule out;
  out.family = "type_c";
  out.params = type_c_params(k);
  std::tie(out.x, out.y) = leaves_of_first_stem(out.params, 1);
  const auto pell = pell_convergents(max_of(n_list));
  const double kk = static_cast<double>(k * k);
  for (int n : n_list) {
    const PellConvergent& c = pell[n - 1];
    const double gamma = (c.delta / dd::sqrt2()).to_double();
    const double g = 1.0 - one_minus_cos(gamma * pi) / (2.0 * kk - 1.0);
    ReadoutRecord r;
    r.index = n;
    r.time = SymbolicTime::pi_over_sqrt(c.alpha, 2);
    r.predicted_fidelity = g * g;
    r.predicted_sensitivity = 2.0 * std::sin(gamma * pi) * (2.0 * kk - 2.0 + std::cos(gamma * pi)) /
                              ((2.0 * kk - 1.0) * (2.0 * kk - 1.0));
    r.alternate_fidelity = type_c_general_fidelity(k, c.alpha, c.beta);
    out.records.push_back(std::move(r));
  }
  return out;
}

// ------------------------------------------------------------ t = 3

std::vector<int> t3_failed_conditions(std::int64_t k2, std::int64_t k3, std::int64_t q3) {
  if (!(2 < k2 && k2 < k3)) throw Error(ErrorCode::InvalidArgument, "need 2 < k2 < k3");
  const std::int64_t K2 = k2 * k2;
  const std::int64_t K3 = k3 * k3;
  std::vector<int> failed;
  if (!(2 * K2 < q3 && q3 < 2 * K3)) failed.push_back(1);
  const bool ii = q3 > 0 && (2 * K2 * K3) % q3 == 0;
  const bool iii = q3 > 2 && (2 * (K2 - 1) * (K3 - 1)) % (q3 - 2) == 0;
  if (!ii) failed.push_back(2);
  if (!iii) failed.push_back(3);
  if (ii && iii) {
    const std::int64_t a1 = 2 * K2 * K3 / q3;
    const std::int64_t a2 = 2 * (K2 - 1) * (K3 - 1) / (q3 - 2);
    const std::int64_t a3 = (q3 - 1) * (a1 - a2 - 1);
    if (a1 < 1 || a2 < 1 || a3 < 1) failed.push_back(4);
  }
  return failed;
}

T3Family make_t3_family(std::int64_t k2, std::int64_t k3, std::int64_t q3) {
  const auto failed = t3_failed_conditions(k2, k3, q3);
  if (!failed.empty()) {
    std::string list;
    for (int c : failed) {
      static constexpr const char* kNames[] = {"", "i", "ii", "iii", "iv"};
      if (!list.empty()) list += ",";
      list += kNames[c];
    }
    throw Error(ErrorCode::ConditionsViolated,
                "k2=" + std::to_string(k2) + " k3=" + std::to_string(k3) +
                    " q3=" + std::to_string(q3) + " fails " + list);
  }
  T3Family f{k2, k3, q3, 0, 0, 0};
  f.a1 = 2 * k2 * k2 * k3 * k3 / q3;
  f.a2 = 2 * (k2 * k2 - 1) * (k3 * k3 - 1) / (q3 - 2);
  f.a3 = (q3 - 1) * (f.a1 - f.a2 - 1);
  return f;
}

std::vector<T3Family> search_t3(std::int64_t k2, std::int64_t k3) {
  std::vector<T3Family> out;
  for (std::int64_t q3 = 2 * k2 * k2 + 1; q3 < 2 * k3 * k3; ++q3) {
    if (t3_failed_conditions(k2, k3, q3).empty()) out.push_back(make_t3_family(k2, k3, q3));
  }
  return out;
}

ReadoutSchedule schedule_t3(const T3Family& fam, std::span<const int> n_list) {
  make_t3_family(fam.k2, fam.k3, fam.q3);
  if (fam.k2 % 2 == 0 || fam.k3 % 2 == 0) {
    throw Error(ErrorCode::EvenK, "k2 and k3 must both be odd; no PGST otherwise");
  }
  require_odd_list(n_list);
  ReadoutSchedule out;
  out.family = "t3";
  out.params = fam.params();
  std::tie(out.x, out.y) = leaves_of_first_stem(out.params, 1);
  const auto pell = pell_convergents(max_of(n_list));
  const double c = static_cast<double>(fam.q3 - 1) /
                   (static_cast<double>(2 * fam.k2 * fam.k2 - 1) *
                    static_cast<double>(2 * fam.k3 * fam.k3 - 1));
  for (int n : n_list) {
    const double gamma = (pell[n - 1].delta / dd::sqrt2()).to_double();
    const double g = 1.0 - c * one_minus_cos(gamma * pi);
    ReadoutRecord r;
    r.index = n;
    r.time = SymbolicTime::pi_over_sqrt(pell[n - 1].alpha, 2);
    r.predicted_fidelity = g * g;
    r.predicted_sensitivity = 2.0 * c * std::sin(gamma * pi) * g;
    out.records.push_back(std::move(r));
  }
  return out;
}

// ------------------------------------------------------------ stem readout

std::vector<QReadoutStep> q_readout_sequence(std::int64_t q, int ell_max) {
  if (q < 1) throw Error(ErrorCode::InvalidArgument, "q must be >= 1");
  if (ell_max < 0) throw Error(ErrorCode::InvalidArgument, "ell_max must be >= 0");
  const BigInt m11 = 2 * q + 1, m12 = q, m21 = 2, m22 = 1;
  BigInt x1 = q + 1, x2 = 1, y1 = q, y2 = 1;
  auto step = [&](BigInt& u, BigInt& v) {
    BigInt nu = m11 * u + m12 * v;
    BigInt nv = m21 * u + m22 * v;
    u = std::move(nu);
    v = std::move(nv);
  };

  const DoubleDouble qd(q);
  const DoubleDouble r2 = DoubleDouble(1.0) / (qd + DoubleDouble(1.0) + sqrt(qd * (qd + 2.0)));
  const DoubleDouble ratio_minus_one = sqrt((qd + 2.0) / qd) - 1.0;
  const double sqrt_q2 = std::sqrt(static_cast<double>(q + 2));

  std::vector<QReadoutStep> out;
  DoubleDouble r2_pow = 1.0;  // r2^(2l)
  for (int ell = 0; ell <= ell_max; ++ell) {
    QReadoutStep s;
    s.q = q;
    s.ell = ell;
    s.N = x1;
    s.D = y1;
    const bool n_even = (s.N % 2) == 0;
    const bool d_even = (s.D % 2) == 0;
    if ((q % 2 == 1 && !(n_even && !d_even)) || (q % 2 == 0 && !(!n_even && d_even))) {
      throw Error(ErrorCode::ParityViolation, "N/D parity invariant broken at l=" +
                                                  std::to_string(ell));
    }
    s.delta = r2_pow * (r2 - 1.0) * ratio_minus_one / DoubleDouble(2.0);
    s.tau = SymbolicTime::pi_over_sqrt(s.D, q);
    const double dpi = s.delta.to_double() * pi;
    const double h = 1.0 + std::cos(dpi);
    s.predicted_fidelity = 0.25 * h * h;
    s.predicted_sensitivity = -std::sin(dpi) * h * sqrt_q2 / 2.0;
    out.push_back(std::move(s));

    step(x1, x2);
    step(x1, x2);
    step(y1, y2);
    step(y1, y2);
    r2_pow = r2_pow * r2 * r2;
  }
  return out;
}

ReadoutSchedule schedule_q_readout(std::int64_t q, int ell_max) {
  ReadoutSchedule out;
  out.family = "q_readout";
  out.params = {{q}, {2}};
  const LabeledTree tree(out.params);
  out.x = tree.stems()[0].id;
  out.y = tree.stems()[1].id;
  for (const auto& s : q_readout_sequence(q, ell_max)) {
    ReadoutRecord r;
    r.index = s.ell;
    r.time = s.tau;
    r.predicted_fidelity = s.predicted_fidelity;
    r.predicted_sensitivity = s.predicted_sensitivity;
    out.records.push_back(std::move(r));
  }
  return out;
}

P5LeafReadout p5_leaf_fidelity(int ell) {
  const auto seq = q_readout_sequence(1, ell);
  const QReadoutStep& s = seq.back();
  const double dpi = s.delta.to_double() * pi;
  const double v = 5.0 / 6.0 + std::cos(dpi) / 6.0;
  return {ell, SymbolicTime::pi_multiple(s.D), v * v,
          -std::sqrt(3.0) * std::sin(dpi) * (5.0 + std::cos(dpi)) / 18.0};
}

ReadoutSchedule schedule_p5_leaf(int ell_max) {
  if (ell_max < 0) throw Error(ErrorCode::InvalidArgument, "ell_max must be >= 0");
  ReadoutSchedule out;
  out.family = "p5_leaf";
  out.params = {{1}, {2}};
  const LabeledTree tree(out.params);
  out.x = tree.leaves()[0].id;
  out.y = tree.leaves()[1].id;
  for (int ell = 0; ell <= ell_max; ++ell) {
    const auto p = p5_leaf_fidelity(ell);
    ReadoutRecord r;
    r.index = ell;
    r.time = p.time;
    r.predicted_fidelity = p.predicted;
    r.predicted_sensitivity = p.predicted_sensitivity;
    out.records.push_back(std::move(r));
  }
  return out;
}

// ------------------------------------------------------------ distance 4

TreeParams dist4_params(std::int64_t q2) {
  if (q2 < 3) throw Error(ErrorCode::InvalidArgument, "q2 must be >= 3");
  return {{1, q2}, {2, q2 - 2}};
}

namespace {

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw Error(ErrorCode::EpsilonRange, "epsilon must lie in (0, 1/2)");
  }
}

}  // namespace

Dist4Analysis dist4_analyze(std::int64_t q2, double epsilon) {
  dist4_params(q2);
  require_epsilon(epsilon);
  Dist4Analysis out;
  out.q2 = q2;
  out.a2 = q2 - 2;
  out.epsilon = epsilon;
  for (std::int64_t sq : {std::int64_t{1}, std::int64_t{2}, 2 * q2 - 1}) {
    const ExactEigenvalue e = exact_from_square(sq, +1);
    out.support.push_back({e.value(), e});
    const ExactEigenvalue n = exact_from_square(sq, -1);
    out.support.push_back({n.value(), n});
  }
  out.support.push_back({0.0, ExactEigenvalue{0, 0}});
  std::sort(out.support.begin(), out.support.end(),
            [](const SpectralValue& a, const SpectralValue& b) { return a.value < b.value; });
  out.pgst = !is_perfect_square(2 * q2 - 1);
  const double m = static_cast<double>(2 * q2 - 1);
  out.fm_r_bound = std::ldexp(1.0, 23) * std::pow(3.0, 11) * std::pow(pi, 3) * std::pow(m, 7) /
                   std::pow(epsilon, 3);
  out.fm_time_bound = 2.0 * pi * out.fm_r_bound + pi;
  return out;
}

Dist4Readout dist4_search_readout(std::int64_t q2, double epsilon, std::int64_t r_max) {
  const TreeParams p = dist4_params(q2);
  require_epsilon(epsilon);
  if (is_perfect_square(2 * q2 - 1)) {
    throw Error(ErrorCode::NoPgst, "2*q2-1 = " + std::to_string(2 * q2 - 1) +
                                       " is a perfect square");
  }
  if (r_max < 0) throw Error(ErrorCode::InvalidArgument, "r_max must be >= 0");
  const DoubleDouble half_root2 = dd::sqrt2() / DoubleDouble(2.0);
  const DoubleDouble half_root_m = sqrt(DoubleDouble(2 * q2 - 1)) / DoubleDouble(2.0);
  Dist4Readout best;
  double best_err = std::numeric_limits<double>::infinity();
  for (std::int64_t r = 0; r <= r_max; ++r) {
    const DoubleDouble odd(2 * r + 1);
    const double e1 = distance_to_integer(odd * half_root2).to_double();
    const double e2 = distance_to_integer(odd * half_root_m).to_double();
    const double err = std::max(e1, e2);
    if (err < best_err) {
      best_err = err;
      best.r = r;
    }
  }
  best.time = SymbolicTime::pi_multiple(2 * best.r + 1);
  best.max_phase_error = best_err;
  best.epsilon_prime = 2.0 * pi * best_err;
  best.certified = best.epsilon_prime < 0.5;
  best.certified_bound = best.certified ? 1.0 - 2.0 * best.epsilon_prime : 0.0;
  best.target_met = best.epsilon_prime <= epsilon;

  const LabeledTree tree(p);
  const auto stems = tree.stems_of_class(0);
  const Vertex x = tree.leaves_of(stems[0])[0];
  const Vertex y = tree.leaves_of(stems[1])[0];
  best.achieved_fidelity = TransferKernel::for_tree(p, x, y).fidelity(best.time);
  return best;
}

CoupledQ2 coupled_q2_schedule(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  const auto pell = pell_convergents(n + 1);
  const BigInt s = pell[n - 1].beta + pell[n].beta;
  const BigInt q2 = (s * s + 3) / 2;
  if (q2 > BigInt(std::numeric_limits<std::int64_t>::max() / 4)) {
    throw Error(ErrorCode::InvalidArgument, "n too large for 64-bit q2");
  }
  CoupledQ2 out;
  out.n = n;
  out.s = static_cast<std::int64_t>(s);
  out.q2 = static_cast<std::int64_t>(q2);
  out.time = SymbolicTime::pi_multiple(s);

  // cos(sqrt2 t0) and cos(sqrt(2 q2 - 1) t0) in their reduced forms.
  const DoubleDouble root2_minus_one_n = abs(pell[n - 1].delta);
  const double arg1 = ((DoubleDouble(2.0) - dd::sqrt2()) * root2_minus_one_n).to_double() * pi;
  const DoubleDouble sd(out.s);
  const DoubleDouble den = sd * sqrt(sd * sd + 2.0) + sd * sd + 1.0;
  const double arg2 = pi / den.to_double();

  const double Q = static_cast<double>(out.q2);
  const double value = 1.0 - (Q - 2.0) / (4.0 * Q - 6.0) * one_minus_cos(arg1) -
                       1.0 / ((4.0 * Q - 2.0) * (2.0 * Q - 3.0)) * one_minus_cos(arg2);
  out.predicted_fidelity = value * value;
  return out;
}

// ------------------------------------------------------------ certification

CertifiedBound certified_lower_bound(std::span<const SpectralValue> sigma_plus,
                                     std::span<const SpectralValue> sigma_minus,
                                     DoubleDouble tau, double epsilon) {
  require_epsilon(epsilon);
  double worst = 0.0;
  for (const auto& v : sigma_plus) {
    worst = std::max(worst, distance_to_integer(tau * dd_value(v)).to_double());
  }
  for (const auto& v : sigma_minus) {
    worst = std::max(worst, distance_to_integer(tau * dd_value(v) - 0.5).to_double());
  }
  CertifiedBound out;
  out.max_defect = worst;
  out.certified = worst < epsilon / (2.0 * pi);
  out.bound = out.certified ? 1.0 - 2.0 * epsilon : 0.0;
  return out;
}

}  // namespace d4walk
