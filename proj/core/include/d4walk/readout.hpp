#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "d4walk/big_int.hpp"
#include "d4walk/cospectrality.hpp"
#include "d4walk/double_double.hpp"
#include "d4walk/exact.hpp"
#include "d4walk/tree_model.hpp"

namespace d4walk {

// ------------------------------------------------------------ Pell

// alpha_n / beta_n -> sqrt(2); delta = beta sqrt(2) - alpha = (-1)^(n+1) (sqrt(2)-1)^n.
struct PellConvergent {
  int n = 0;
  BigInt alpha;
  BigInt beta;
  DoubleDouble delta;
};

std::vector<PellConvergent> pell_convergents(int n_max);

// beta sqrt(2) - alpha evaluated from the integers alone (via the conjugate).
DoubleDouble pell_defect(const BigInt& alpha, const BigInt& beta);

// ------------------------------------------------------------ schedules

struct ReadoutRecord {
  std::int64_t index = 0;  // n or l
  SymbolicTime time;
  double predicted_fidelity = 0.0;
  std::optional<double> predicted_sensitivity;
  // type_c only: the general-approximant form with the 2(k^2-1) denominator.
  std::optional<double> alternate_fidelity;
};

struct ReadoutSchedule {
  std::string family;
  TreeParams params;
  Vertex x = 0;
  Vertex y = 0;
  std::vector<ReadoutRecord> records;
};

TreeParams type_c_params(std::int64_t k);
// k odd > 1, every n odd; otherwise ParityViolation.
ReadoutSchedule schedule_type_c(std::int64_t k, std::span<const int> n_list);
// (1 - (1 / (2(k^2-1))) (1 - cos(delta pi / sqrt 2)))^2 with delta = nu sqrt 2 - mu,
// for any odd approximant mu/nu supplied by the caller.
double type_c_general_fidelity(std::int64_t k, const BigInt& mu, const BigInt& nu);

struct T3Family {
  std::int64_t k2 = 0;
  std::int64_t k3 = 0;
  std::int64_t q3 = 0;
  std::int64_t a1 = 0;
  std::int64_t a2 = 0;
  std::int64_t a3 = 0;

  TreeParams params() const { return {{0, 2, q3}, {a1, a2, a3}}; }
};

// Failing conditions by number (1..4); empty when all hold.
std::vector<int> t3_failed_conditions(std::int64_t k2, std::int64_t k3, std::int64_t q3);
// Throws ConditionsViolated naming the failing conditions.
T3Family make_t3_family(std::int64_t k2, std::int64_t k3, std::int64_t q3);
std::vector<T3Family> search_t3(std::int64_t k2, std::int64_t k3);
// Throws EvenK when k2 or k3 is even, ParityViolation for an even n.
ReadoutSchedule schedule_t3(const T3Family& fam, std::span<const int> n_list);

struct QReadoutStep {
  std::int64_t q = 0;
  int ell = 0;
  BigInt N;
  BigInt D;
  DoubleDouble delta;
  SymbolicTime tau;  // D pi / sqrt(q)
  double predicted_fidelity = 0.0;
  double predicted_sensitivity = 0.0;
};

std::vector<QReadoutStep> q_readout_sequence(std::int64_t q, int ell_max);
ReadoutSchedule schedule_q_readout(std::int64_t q, int ell_max);

struct P5LeafReadout {
  int ell = 0;
  SymbolicTime time;
  double predicted = 0.0;
  double predicted_sensitivity = 0.0;
};

P5LeafReadout p5_leaf_fidelity(int ell);
ReadoutSchedule schedule_p5_leaf(int ell_max);

// ------------------------------------------------------------ distance 4

TreeParams dist4_params(std::int64_t q2);

struct Dist4Analysis {
  std::int64_t q2 = 0;
  std::int64_t a2 = 0;
  std::vector<SpectralValue> support;
  bool pgst = false;
  double epsilon = 0.0;
  double fm_r_bound = 0.0;
  double fm_time_bound = 0.0;
};

Dist4Analysis dist4_analyze(std::int64_t q2, double epsilon);

struct Dist4Readout {
  std::int64_t r = 0;
  SymbolicTime time;          // (2r + 1) pi
  double max_phase_error = 0.0;
  double epsilon_prime = 0.0;  // 2 pi * max_phase_error
  bool certified = false;      // epsilon_prime < 1/2
  double certified_bound = 0.0;
  bool target_met = false;     // epsilon_prime <= requested epsilon
  double achieved_fidelity = 0.0;
};

Dist4Readout dist4_search_readout(std::int64_t q2, double epsilon, std::int64_t r_max);

struct CoupledQ2 {
  int n = 0;
  std::int64_t s = 0;  // beta_n + beta_(n+1)
  std::int64_t q2 = 0;
  SymbolicTime time;
  double predicted_fidelity = 0.0;
};

CoupledQ2 coupled_q2_schedule(int n);

// ------------------------------------------------------------ certification

struct CertifiedBound {
  bool certified = false;
  double bound = 0.0;        // 1 - 2 epsilon when certified
  double max_defect = 0.0;   // worst distance to the required lattice
};

// Checks |tau lambda - n| < eps / 2pi on sigma+ and |tau lambda - n - 1/2| <
// eps / 2pi on sigma-; a certificate applies at time 2 pi tau.
CertifiedBound certified_lower_bound(std::span<const SpectralValue> sigma_plus,
                                     std::span<const SpectralValue> sigma_minus,
                                     DoubleDouble tau, double epsilon);

}  // namespace d4walk
