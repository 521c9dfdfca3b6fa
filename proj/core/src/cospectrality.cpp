#include "d4walk/cospectrality.hpp"

#include <cmath>
#include <string>

#include "d4walk/spectrum.hpp"

namespace d4walk {

std::string_view to_string(PairKind kind) {
  switch (kind) {
    case PairKind::A: return "A";
    case PairKind::B: return "B";
    case PairKind::C: return "C";
  }
  return "?";
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::TypeC: return "type_c";
    case Family::T3: return "t3";
    case Family::Dist4: return "dist4";
  }
  return "?";
}

std::string_view to_string(PgstVerdict verdict) {
  switch (verdict) {
    case PgstVerdict::Pgst: return "pgst";
    case PgstVerdict::NoPgst: return "no_pgst";
    case PgstVerdict::Undecided: return "undecided";
  }
  return "?";
}

std::vector<CospectralPair> classified_pairs(const LabeledTree& tree) {
  const TreeParams& p = tree.params();
  std::vector<CospectralPair> out;
  for (std::size_t j = 0; j < p.t(); ++j) {
    if (p.a[j] != 2) continue;
    const auto stems = tree.stems_of_class(static_cast<int>(j));
    out.push_back({stems[0], stems[1], PairKind::A, static_cast<int>(j), {}});
  }
  for (std::size_t j = 0; j < p.t(); ++j) {
    if (p.q[j] != 1 || p.a[j] != 2) continue;
    const auto stems = tree.stems_of_class(static_cast<int>(j));
    out.push_back({tree.leaves_of(stems[0])[0], tree.leaves_of(stems[1])[0], PairKind::B,
                   static_cast<int>(j), {}});
  }
  if (p.q.front() == 0) {
    for (std::size_t j = 0; j < p.t(); ++j) {
      if (p.q[j] != 2) continue;
      for (Vertex s : tree.stems_of_class(static_cast<int>(j))) {
        const auto leaves = tree.leaves_of(s);
        out.push_back({leaves[0], leaves[1], PairKind::C, static_cast<int>(j), {}});
      }
    }
  }
  return out;
}

std::vector<CospectralPair> strongly_cospectral_pairs(const LabeledTree& tree,
                                                      const SpectralDecomposition& d) {
  auto pairs = classified_pairs(tree);
  for (auto& pair : pairs) pair.partition = sign_partition(d, pair.x, pair.y);
  return pairs;
}

std::vector<CospectralPair> strongly_cospectral_pairs(const TreeParams& p) {
  const LabeledTree tree(p);
  auto pairs = classified_pairs(tree);
  if (pairs.empty()) return pairs;
  if (tree.n() <= kDenseVertexLimit) {
    const auto d = SpectralDecomposition::of_tree(tree, {}, ProjectionMethod::Dense);
    for (auto& pair : pairs) pair.partition = sign_partition(d, pair.x, pair.y);
  } else {
    for (auto& pair : pairs) {
      const Vertex both[] = {pair.x, pair.y};
      const auto d = SpectralDecomposition::of_tree(tree, both, ProjectionMethod::Quotient);
      pair.partition = sign_partition(d, pair.x, pair.y);
    }
  }
  return pairs;
}

std::vector<SpectralValue> eigenvalue_support(const SpectralDecomposition& d, Vertex x) {
  std::vector<SpectralValue> out;
  for (std::size_t g = 0; g < d.groups().size(); ++g) {
    if (d.column_norm(g, x) > kSupportTolerance) out.push_back(d.groups()[g].value);
  }
  return out;
}

std::vector<SpectralValue> eigenvalue_support(const TreeParams& p, Vertex x) {
  const LabeledTree tree(p);
  const Vertex only[] = {x};
  return eigenvalue_support(SpectralDecomposition::of_tree(tree, only), x);
}

std::optional<SignPartition> try_sign_partition(const SpectralDecomposition& d, Vertex x,
                                                Vertex y) {
  SignPartition out;
  for (std::size_t g = 0; g < d.groups().size(); ++g) {
    const bool in_x = d.column_norm(g, x) > kSupportTolerance;
    const bool in_y = d.column_norm(g, y) > kSupportTolerance;
    if (!in_x && !in_y) continue;
    if (in_x != in_y) return std::nullopt;
    if (d.relation_defect(g, x, y, +1) < kSignTolerance) {
      out.sigma_plus.push_back(d.groups()[g].value);
    } else if (d.relation_defect(g, x, y, -1) < kSignTolerance) {
      out.sigma_minus.push_back(d.groups()[g].value);
    } else {
      return std::nullopt;
    }
  }
  return out;
}

SignPartition sign_partition(const SpectralDecomposition& d, Vertex x, Vertex y) {
  auto out = try_sign_partition(d, x, y);
  if (!out) {
    throw Error(ErrorCode::NotStronglyCospectral,
                "vertices " + std::to_string(x) + " and " + std::to_string(y));
  }
  return *out;
}

SignPartition sign_partition(const TreeParams& p, Vertex x, Vertex y) {
  const LabeledTree tree(p);
  const Vertex both[] = {x, y};
  return sign_partition(SpectralDecomposition::of_tree(tree, both), x, y);
}

// ------------------------------------------------------------ families

namespace {

std::int64_t exact_isqrt(std::int64_t v) {
  if (v < 0) return -1;
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v ? r : -1;
}

std::pair<Vertex, Vertex> leaves_of_first_stem(const LabeledTree& tree, int cls) {
  const auto leaves = tree.leaves_of(tree.stems_of_class(cls).front());
  return {leaves[0], leaves[1]};
}

// k with lambda^2 = 2k^2, or -1.
std::int64_t root2_multiple(double lambda_sq) {
  const double nearest = std::round(lambda_sq);
  if (std::abs(lambda_sq - nearest) > 1e-9) return -1;
  const auto v = static_cast<std::int64_t>(nearest);
  if (v % 2 != 0) return -1;
  return exact_isqrt(v / 2);
}

}  // namespace

std::optional<FamilyMatch> recognize_family(const TreeParams& p) {
  if (check_params(p)) return std::nullopt;
  FamilyMatch m;
  if (p.t() == 2 && p.q[0] == 0 && p.q[1] == 2) {
    const std::int64_t k = exact_isqrt(p.a[0]);
    if (k >= 2 && p.a[1] == k * k - 1) {
      m.family = Family::TypeC;
      m.k = k;
      const LabeledTree tree(p);
      std::tie(m.x, m.y) = leaves_of_first_stem(tree, 1);
      return m;
    }
  }
  if (p.t() == 2 && p.q[0] == 1 && p.a[0] == 2 && p.q[1] >= 3 && p.a[1] == p.q[1] - 2) {
    m.family = Family::Dist4;
    m.q2 = p.q[1];
    const LabeledTree tree(p);
    const auto stems = tree.stems_of_class(0);
    m.x = tree.leaves_of(stems[0])[0];
    m.y = tree.leaves_of(stems[1])[0];
    return m;
  }
  if (p.t() == 3 && p.q[0] == 0 && p.q[1] == 2) {
    const SupportEigenvalues s = support_eigenvalues(p);
    if (std::abs(s.lambda_sq[0] - 1.0) <= 1e-9) {
      const std::int64_t k2 = root2_multiple(s.lambda_sq[1]);
      const std::int64_t k3 = root2_multiple(s.lambda_sq[2]);
      if (k2 > 2 && k3 > k2) {
        m.family = Family::T3;
        m.k2 = k2;
        m.k3 = k3;
        m.q3 = p.q[2];
        const LabeledTree tree(p);
        std::tie(m.x, m.y) = leaves_of_first_stem(tree, 1);
        return m;
      }
    }
  }
  return std::nullopt;
}

PgstVerdict pgst_obstruction_check(const FamilyMatch& family) {
  switch (family.family) {
    case Family::TypeC:
      return family.k % 2 != 0 ? PgstVerdict::Pgst : PgstVerdict::Undecided;
    case Family::T3:
      return family.k2 % 2 != 0 && family.k3 % 2 != 0 ? PgstVerdict::Pgst : PgstVerdict::NoPgst;
    case Family::Dist4:
      if (family.q2 < 3) throw Error(ErrorCode::InvalidArgument, "q2 must be >= 3");
      return is_perfect_square(2 * family.q2 - 1) ? PgstVerdict::NoPgst : PgstVerdict::Pgst;
  }
  return PgstVerdict::Undecided;
}

PgstVerdict pgst_obstruction_check(const TreeParams& p) {
  const auto match = recognize_family(p);
  if (!match) throw Error(ErrorCode::UnknownFamily, "parameters match no analysed family");
  return pgst_obstruction_check(*match);
}

}  // namespace d4walk
