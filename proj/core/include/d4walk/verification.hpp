#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "d4walk/cospectrality.hpp"
#include "d4walk/decomposition.hpp"
#include "d4walk/tree_model.hpp"

namespace d4walk {

// Every valid parameter set with t <= t_max, q_j <= q_max, a_j <= a_max.
std::vector<TreeParams> sweep_params(int t_max, int q_max, int a_max);

// Pairs {x < y} passing the eigenprojection test E e_x = +-E e_y for all
// eigenvalues, found by checking every vertex pair.
std::vector<std::pair<Vertex, Vertex>> brute_force_cospectral_pairs(const SpectralDecomposition& d);

enum class VerifyScope { Quick, Full };

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

// `inject_fault` names a check whose measured error is deliberately
// corrupted; used to exercise the failure path.
VerificationReport run_verification(VerifyScope scope, std::string_view inject_fault = {});

std::vector<std::string> verification_check_names(VerifyScope scope);

}  // namespace d4walk
