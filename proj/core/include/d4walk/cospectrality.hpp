#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "d4walk/decomposition.hpp"
#include "d4walk/exact.hpp"
#include "d4walk/tree_model.hpp"

namespace d4walk {

enum class PairKind {
  A,  // the two stems of a class with a_j = 2
  B,  // the leaves of the two stems of the class (q_j, a_j) = (1, 2)
  C,  // the two leaves of a 2-leaf stem, when q_1 = 0
};

std::string_view to_string(PairKind kind);

struct SignPartition {
  std::vector<SpectralValue> sigma_plus;   // E e_x = E e_y
  std::vector<SpectralValue> sigma_minus;  // E e_x = -E e_y
};

struct CospectralPair {
  Vertex x = 0;
  Vertex y = 0;
  PairKind kind = PairKind::A;
  int cls = -1;  // the stem class the pair hangs off
  SignPartition partition;
};

inline constexpr double kSupportTolerance = 1e-9;
inline constexpr double kSignTolerance = 1e-9;

// Pairs given by the classification, without partitions. Cheap.
std::vector<CospectralPair> classified_pairs(const LabeledTree& tree);

// Classification plus sign partitions read from the spectral oracle.
std::vector<CospectralPair> strongly_cospectral_pairs(const TreeParams& p);
std::vector<CospectralPair> strongly_cospectral_pairs(const LabeledTree& tree,
                                                      const SpectralDecomposition& d);

// Eigenvalues lambda with ||E_lambda e_x|| > kSupportTolerance.
std::vector<SpectralValue> eigenvalue_support(const SpectralDecomposition& d, Vertex x);
std::vector<SpectralValue> eigenvalue_support(const TreeParams& p, Vertex x);

// Throws NotStronglyCospectral when some support eigenvalue satisfies neither
// sign relation (or the supports differ).
SignPartition sign_partition(const SpectralDecomposition& d, Vertex x, Vertex y);
SignPartition sign_partition(const TreeParams& p, Vertex x, Vertex y);

// Non-throwing variant used by brute-force sweeps.
std::optional<SignPartition> try_sign_partition(const SpectralDecomposition& d, Vertex x,
                                                Vertex y);

// ------------------------------------------------------------ families

enum class Family { TypeC, T3, Dist4 };

std::string_view to_string(Family family);

// A tree recognized as a member of one of the analysed families, with its
// designated transfer pair.
struct FamilyMatch {
  Family family = Family::TypeC;
  std::int64_t k = 0;   // TypeC: a = (k^2, k^2 - 1)
  std::int64_t k2 = 0;  // T3
  std::int64_t k3 = 0;  // T3
  std::int64_t q3 = 0;  // T3
  std::int64_t q2 = 0;  // Dist4: q = (1, q2), a = (2, q2 - 2)
  Vertex x = 0;
  Vertex y = 0;
};

std::optional<FamilyMatch> recognize_family(const TreeParams& p);

enum class PgstVerdict { Pgst, NoPgst, Undecided };

std::string_view to_string(PgstVerdict verdict);

PgstVerdict pgst_obstruction_check(const FamilyMatch& family);
// Throws UnknownFamily when p matches none of the families.
PgstVerdict pgst_obstruction_check(const TreeParams& p);

}  // namespace d4walk
