#pragma once
// MDS verification: rank computation over GF(2^w) on the coefficient matrix
// of a node subset, the all-subsets checker, and the seeded coefficient
// search that makes a candidate rotation structure MDS.
//
// Subset checks exploit structure where possible. Dropping the identity
// bands of the present systematic nodes reduces a k-subset to a square
// block matrix of lambda-scaled permutations, one block row per engaged
// parity. Whenever those permutations pairwise commute (true for cyclic
// shifts and for the per-coordinate shifts of permutation codes), the block
// matrix is nonsingular iff its block determinant -- a short sum of scaled
// permutations, computable in the commutative subring they generate -- is an
// invertible L x L matrix. That turns a (kL)^3 elimination into an L^3 one.
// Non-commuting inputs fall back to plain sparse elimination.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "progec/code.hpp"

namespace progec {

struct CoefficientMatrix {
  int rows = 0, cols = 0;
  using Row = std::vector<std::pair<int, Symbol>>;  // (column, value), sorted
  std::vector<Row> data;
  struct Band {
    NodeId node;
    int row_begin;
  };
  std::vector<Band> provenance;
};

// Stacked coefficient matrix of a node subset (global ids): identity bands
// for systematic nodes, scaled permutation bands for parities. Columns are
// the kL data blocks, node-major.
inline CoefficientMatrix coefficient_matrix(const CodeSpec& s, const std::vector<int>& subset) {
  if (subset.empty()) throw std::invalid_argument("coefficient_matrix: empty subset");
  CoefficientMatrix M;
  M.rows = int(subset.size()) * s.L;
  M.cols = s.k * s.L;
  M.data.reserve(M.rows);
  for (int g : subset) {
    if (g < 0 || g >= s.n) throw std::out_of_range("coefficient_matrix: bad node id");
    M.provenance.push_back({node_from_global(g, s.k), int(M.data.size())});
    if (g < s.k) {
      for (int t = 0; t < s.L; ++t) M.data.push_back({{g * s.L + t, Symbol(1)}});
    } else {
      const int j = g - s.k;
      for (int t = 0; t < s.L; ++t) {
        CoefficientMatrix::Row row;
        row.reserve(s.k);
        for (int i = 0; i < s.k; ++i)
          row.push_back({i * s.L + s.rotations[j][i][t], s.lambdas[j][i]});
        M.data.push_back(std::move(row));
      }
    }
  }
  return M;
}

namespace detail {

// a ^= f * p over sparse rows
inline CoefficientMatrix::Row axpy(const FieldContext& F, const CoefficientMatrix::Row& a,
                                   const CoefficientMatrix::Row& p, Symbol f) {
  CoefficientMatrix::Row out;
  out.reserve(a.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < p.size()) {
    if (j == p.size() || (i < a.size() && a[i].first < p[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || p[j].first < a[i].first) {
      out.push_back({p[j].first, F.mul(f, p[j].second)});
      ++j;
    } else {
      Symbol v = a[i].second ^ F.mul(f, p[j].second);
      if (v) out.push_back({a[i].first, v});
      ++i;
      ++j;
    }
  }
  return out;
}

// Elimination core. Pivot rule: columns in ascending order, pivot is the
// first still-active row with a nonzero in the column. With require_full
// set, bails out as soon as some column cannot produce a pivot (only valid
// for square inputs, where full rank needs a pivot in every column).
inline int eliminate(const FieldContext& F, std::vector<CoefficientMatrix::Row>& rows, int cols,
                     bool require_full) {
  std::vector<int> alive(rows.size());
  std::iota(alive.begin(), alive.end(), 0);
  int rank = 0;
  for (int c = 0; c < cols && !alive.empty(); ++c) {
    int pos = -1;
    for (std::size_t idx = 0; idx < alive.size(); ++idx) {
      const auto& r = rows[alive[idx]];
      if (!r.empty() && r.front().first == c) {
        pos = int(idx);
        break;
      }
    }
    if (pos < 0) {
      if (require_full) return rank;
      continue;
    }
    const int prow = alive[pos];
    alive.erase(alive.begin() + pos);
    ++rank;
    const Symbol pinv = F.inv(rows[prow].front().second);
    for (int idx : alive) {
      auto& r = rows[idx];
      if (!r.empty() && r.front().first == c)
        r = axpy(F, r, rows[prow], F.mul(r.front().second, pinv));
    }
  }
  return rank;
}

inline bool commute(const Perm& a, const Perm& b) {
  for (std::size_t t = 0; t < a.size(); ++t)
    if (a[b[t]] != b[a[t]]) return false;
  return true;
}

inline Perm compose(const Perm& a, const Perm& b) {  // row t of product reads b[a[t]]
  Perm c(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) c[t] = b[a[t]];
  return c;
}

// Full column rank of the block matrix [lambda_{j,i} P_{j,i}] indexed by
// engaged parities j (rows) and missing systematic nodes i (columns).
inline bool parity_block_full_rank(const CodeSpec& s, const std::vector<int>& parities,
                                   const std::vector<int>& missing) {
  const auto& F = s.field();
  const int pi = int(parities.size());
  const int L = s.L;

  bool commuting = pi == int(missing.size());  // block determinant needs a square system
  for (int a = 0; a < pi * pi && commuting; ++a)
    for (int b = a + 1; b < pi * pi && commuting; ++b) {
      const Perm& pa = s.rotations[parities[a / pi]][missing[a % pi]];
      const Perm& pb = s.rotations[parities[b / pi]][missing[b % pi]];
      if (!commute(pa, pb)) commuting = false;
    }

  if (commuting) {
    // Block determinant: sum over assignments of parities to missing nodes.
    std::map<Perm, Symbol> det;
    std::vector<int> tau(pi);
    std::iota(tau.begin(), tau.end(), 0);
    do {
      Symbol coeff = 1;
      Perm prod(L);
      std::iota(prod.begin(), prod.end(), 0);
      for (int r = 0; r < pi; ++r) {
        coeff = F.mul(coeff, s.lambdas[parities[r]][missing[tau[r]]]);
        prod = compose(prod, s.rotations[parities[r]][missing[tau[r]]]);
      }
      det[prod] ^= coeff;
    } while (std::next_permutation(tau.begin(), tau.end()));

    std::erase_if(det, [](const auto& e) { return e.second == 0; });
    if (det.empty()) return false;
    if (det.size() == 1) return true;  // a scaled permutation is invertible

    std::vector<CoefficientMatrix::Row> rows(L);
    for (int t = 0; t < L; ++t) {
      for (const auto& [perm, coeff] : det) rows[t].push_back({perm[t], coeff});
      std::sort(rows[t].begin(), rows[t].end());
      CoefficientMatrix::Row merged;
      for (const auto& e : rows[t]) {
        if (!merged.empty() && merged.back().first == e.first)
          merged.back().second ^= e.second;
        else
          merged.push_back(e);
      }
      std::erase_if(merged, [](const auto& e) { return e.second == 0; });
      rows[t] = std::move(merged);
    }
    return eliminate(F, rows, L, true) == L;
  }

  // General fallback: eliminate the stacked system over the missing columns.
  const int cols = int(missing.size()) * L;
  std::vector<CoefficientMatrix::Row> rows;
  rows.reserve(std::size_t(pi) * L);
  for (int j : parities)
    for (int t = 0; t < L; ++t) {
      CoefficientMatrix::Row row;
      row.reserve(missing.size());
      for (int c = 0; c < int(missing.size()); ++c) {
        Symbol l = s.lambdas[j][missing[c]];
        if (l) row.push_back({c * L + s.rotations[j][missing[c]][t], l});
      }
      std::sort(row.begin(), row.end());
      rows.push_back(std::move(row));
    }
  return eliminate(s.field(), rows, cols, true) == cols;
}

}  // namespace detail

// Row rank of a coefficient matrix.
inline int rank_gf(const FieldContext& F, CoefficientMatrix M) {
  for (auto& row : M.data) std::erase_if(row, [](const auto& e) { return e.second == 0; });
  return detail::eliminate(F, M.data, M.cols, false);
}

// Whether the given node subset (global ids) spans all kL data blocks.
inline bool subset_recoverable(const CodeSpec& s, const std::vector<int>& subset) {
  std::vector<char> present(s.k, 0);
  std::vector<int> parities;
  for (int g : subset) {
    if (g < 0 || g >= s.n) throw std::out_of_range("subset_recoverable: bad node id");
    if (g < s.k)
      present[g] = 1;
    else
      parities.push_back(g - s.k);
  }
  std::vector<int> missing;
  for (int i = 0; i < s.k; ++i)
    if (!present[i]) missing.push_back(i);
  if (missing.size() > parities.size()) return false;
  if (missing.empty()) return true;
  return detail::parity_block_full_rank(s, parities, missing);
}

struct MdsReport {
  bool ok = true;
  std::vector<int> failing;  // global node ids of the first failing k-subset

  std::string failing_names(int k) const {
    std::string out = "{";
    for (std::size_t i = 0; i < failing.size(); ++i) {
      if (i) out += ",";
      out += to_string(node_from_global(failing[i], k));
    }
    return out + "}";
  }
};

// Check every k-subset; report the lexicographically first failure.
inline MdsReport is_mds(const CodeSpec& s) {
  std::vector<int> subset(s.k);
  std::iota(subset.begin(), subset.end(), 0);
  while (true) {
    if (!subset_recoverable(s, subset)) return {false, subset};
    int pos = s.k - 1;
    while (pos >= 0 && subset[pos] == s.n - s.k + pos) --pos;
    if (pos < 0) return {};
    ++subset[pos];
    for (int i = pos + 1; i < s.k; ++i) subset[i] = subset[i - 1] + 1;
  }
}

// Seeded random search for a coefficient table making the rotation structure
// MDS. Candidates are drawn uniformly from the nonzero elements; each is
// checked in full, with the previous failing subset retried first as a cheap
// reject. Returns nothing when the budget is spent, which also covers
// structures that no coefficient choice can fix.
inline std::optional<LambdaTable> assign_lambdas(int n, int k, int L,
                                                 const std::vector<RotationTable>& rotations,
                                                 int w, std::uint64_t seed, int budget) {
  if (budget < 1) throw std::invalid_argument("assign_lambdas: budget must be >= 1");
  CodeSpec s;
  s.kind = CodeKind::rotation;
  s.n = n;
  s.k = k;
  s.L = L;
  s.w = w;
  s.poly = make_field(w).poly();
  s.rotations = rotations;
  s.lambdas.assign(n - k, std::vector<Symbol>(k, 1));
  validate_spec(s);

  const std::uint64_t nonzero = (std::uint64_t(1) << w) - 1;
  std::mt19937_64 rng(seed);
  std::optional<std::vector<int>> last_fail;
  for (int c = 0; c < budget; ++c) {
    for (auto& row : s.lambdas)
      for (auto& l : row) l = Symbol(1 + rng() % nonzero);
    if (last_fail && !subset_recoverable(s, *last_fail)) continue;
    MdsReport rep = is_mds(s);
    if (rep.ok) return s.lambdas;
    last_fail = rep.failing;
  }
  return std::nullopt;
}

// Permutation code with coefficients chosen automatically: the small default
// base (2, 3, ..., k+1) nearly always verifies; otherwise fall back to the
// seeded search over full tables.
inline CodeSpec build_permutation_code(int n, int k, int w, std::uint64_t seed = 1,
                                       int budget = 1000) {
  std::vector<Symbol> base(k);
  for (int i = 0; i < k; ++i) base[i] = Symbol(i + 2);
  CodeSpec s = build_permutation_code_with(n, k, w, base);
  if (is_mds(s).ok) return s;
  auto lambdas = assign_lambdas(n, k, s.L, s.rotations, w, seed, budget);
  if (!lambdas) throw std::runtime_error("permutation code: no MDS coefficients found");
  s.lambdas = *lambdas;
  return s;
}

}  // namespace progec
