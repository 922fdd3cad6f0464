#pragma once
// Code descriptions as explicit linear maps over blocks, plus the two
// constructions used throughout: rotation codes (parity j is a sum of
// lambda-scaled cyclic shifts of the systematic vectors) and permutation
// codes (block indices read as base-(n-k) digit vectors, parity j shifting
// coordinate i by j-1). A systematic Reed-Solomon baseline with identity
// rotations rounds out the set for bandwidth comparisons.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "progec/gf.hpp"

namespace progec {

enum class CodeKind { rotation, permutation, reed_solomon };

inline const char* to_string(CodeKind kind) {
  switch (kind) {
    case CodeKind::rotation: return "rotation";
    case CodeKind::permutation: return "permutation";
    default: return "reed_solomon";
  }
}

using Perm = std::vector<int>;            // perm[t] = source block read by row t
using LambdaTable = std::vector<std::vector<Symbol>>;  // [m][k]
using RotationTable = std::vector<Perm>;  // flattened below as [m][k]

struct CodeSpec {
  CodeKind kind = CodeKind::rotation;
  int n = 0, k = 0, L = 0, w = 0;
  std::uint64_t poly = 0;
  LambdaTable lambdas;                     // lambdas[j][i], all nonzero
  std::vector<RotationTable> rotations;    // rotations[j][i][t]

  int m() const { return n - k; }
  const FieldContext& field() const { return make_field(w); }
};

enum class NodeRole { systematic, parity };

struct NodeId {
  NodeRole role = NodeRole::systematic;
  int index = 0;  // 0-based within the role

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

inline std::string to_string(const NodeId& id) {
  return (id.role == NodeRole::systematic ? "s" : "p") + std::to_string(id.index + 1);
}

struct NodeVector {
  NodeId id;
  std::vector<Block> blocks;  // exactly L
};

// Nodes in one flat order: systematic 0..k-1, then parities k..n-1.
inline int global_node_id(const NodeId& id, int k) {
  return id.role == NodeRole::systematic ? id.index : k + id.index;
}

inline NodeId node_from_global(int g, int k) {
  return g < k ? NodeId{NodeRole::systematic, g} : NodeId{NodeRole::parity, g - k};
}

inline bool is_permutation(const Perm& p, int L) {
  if (int(p.size()) != L) return false;
  std::vector<char> seen(L, 0);
  for (int v : p) {
    if (v < 0 || v >= L || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

// Cyclic shift: row t reads block (t + l) mod L.
inline Perm rotation_perm(int l, int L) {
  if (L <= 0 || l < 0 || l >= L) throw std::invalid_argument("rotation_perm: shift out of range");
  Perm p(L);
  for (int t = 0; t < L; ++t) p[t] = (t + l) % L;
  return p;
}

inline Perm inverse_perm(const Perm& p) {
  Perm inv(p.size());
  for (int t = 0; t < int(p.size()); ++t) inv[p[t]] = t;
  return inv;
}

inline void validate_spec(const CodeSpec& s) {
  if (s.k < 1 || s.n <= s.k) throw std::invalid_argument("spec: need n > k >= 1");
  if (s.w != 8 && s.w != 16 && s.w != 32) throw std::invalid_argument("spec: unsupported w");
  if (std::uint64_t(s.n) >= (std::uint64_t(1) << s.w) - 1)
    throw std::invalid_argument("spec: n must be below 2^w - 1");
  if (s.L < 1) throw std::invalid_argument("spec: L must be positive");
  if (s.poly != make_field(s.w).poly()) throw std::invalid_argument("spec: unsupported polynomial");
  const int m = s.m();
  if (int(s.lambdas.size()) != m || int(s.rotations.size()) != m)
    throw std::invalid_argument("spec: coefficient/rotation tables need n-k rows");
  for (int j = 0; j < m; ++j) {
    if (int(s.lambdas[j].size()) != s.k || int(s.rotations[j].size()) != s.k)
      throw std::invalid_argument("spec: coefficient/rotation rows need k entries");
    for (int i = 0; i < s.k; ++i) {
      Symbol l = s.lambdas[j][i];
      if (l == 0 || l > make_field(s.w).max_element())
        throw std::invalid_argument("spec: coefficients must be nonzero field elements");
      if (!is_permutation(s.rotations[j][i], s.L))
        throw std::invalid_argument("spec: rotation entry is not a permutation of 0..L-1");
    }
  }
  if (s.kind == CodeKind::permutation) {
    std::int64_t want = 1;
    for (int i = 0; i < s.k; ++i) want *= m;
    if (want != s.L) throw std::invalid_argument("spec: permutation code needs L = (n-k)^k");
  }
}

inline CodeSpec build_rotation_code(int n, int k, int L, std::vector<RotationTable> rotations,
                                    LambdaTable lambdas, int w) {
  CodeSpec s;
  s.kind = CodeKind::rotation;
  s.n = n;
  s.k = k;
  s.L = L;
  s.w = w;
  s.poly = make_field(w).poly();
  s.lambdas = std::move(lambdas);
  s.rotations = std::move(rotations);
  validate_spec(s);
  return s;
}

// Convenience: rotation code given the m x k table of cyclic shift amounts.
inline CodeSpec build_rotation_code_shifts(int n, int k, int L,
                                           const std::vector<std::vector<int>>& shifts,
                                           LambdaTable lambdas, int w) {
  std::vector<RotationTable> rot;
  rot.reserve(shifts.size());
  for (const auto& row : shifts) {
    RotationTable r;
    r.reserve(row.size());
    for (int l : row) r.push_back(rotation_perm(l, L));
    rot.push_back(std::move(r));
  }
  return build_rotation_code(n, k, L, std::move(rot), std::move(lambdas), w);
}

// ---- permutation-code indexing -------------------------------------------
// Block index t <-> digit vector x in {0..r-1}^k with t = sum_i x_i r^(k-i):
// coordinate 0 is the most significant digit.

inline std::vector<int> digits_of(int t, int r, int k) {
  std::vector<int> x(k);
  for (int i = k - 1; i >= 0; --i) {
    x[i] = t % r;
    t /= r;
  }
  return x;
}

inline int index_of(const std::vector<int>& x, int r) {
  int t = 0;
  for (int d : x) t = t * r + d;
  return t;
}

// Rotation tables of the permutation code: parity j (0-based) row t reads
// systematic node i at t with digit i incremented by j mod r.
inline std::vector<RotationTable> permutation_rotations(int r, int k) {
  std::int64_t L64 = 1;
  for (int i = 0; i < k; ++i) L64 *= r;
  if (L64 > (1 << 22)) throw std::invalid_argument("permutation code: (n-k)^k too large");
  const int L = int(L64);
  std::vector<RotationTable> rot(r, RotationTable(k, Perm(L)));
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < k; ++i)
      for (int t = 0; t < L; ++t) {
        auto x = digits_of(t, r, k);
        x[i] = (x[i] + j) % r;
        rot[j][i][t] = index_of(x, r);
      }
  return rot;
}

// Permutation code with explicit per-node base coefficients; parity j uses
// base[i]^(j+1), matching the power structure of the construction tables.
inline CodeSpec build_permutation_code_with(int n, int k, int w, const std::vector<Symbol>& base) {
  const int r = n - k;
  if (r < 1 || k < 1) throw std::invalid_argument("permutation code: need n > k >= 1");
  if (int(base.size()) != k) throw std::invalid_argument("permutation code: need k base coefficients");
  const auto& F = make_field(w);
  CodeSpec s;
  s.kind = CodeKind::permutation;
  s.n = n;
  s.k = k;
  s.w = w;
  s.poly = F.poly();
  s.rotations = permutation_rotations(r, k);
  s.L = int(s.rotations[0][0].size());
  s.lambdas.assign(r, std::vector<Symbol>(k));
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < k; ++i) s.lambdas[j][i] = F.pow(base[i], j + 1);
  validate_spec(s);
  return s;
}

// Systematic MDS baseline: identity rotations, Cauchy coefficients
// 1 / (x_j + y_i) over disjoint evaluation sets, so every k x k minor is
// invertible regardless of (n, k).
inline CodeSpec build_rs_code(int n, int k, int L, int w) {
  const auto& F = make_field(w);
  const int m = n - k;
  if (k < 1 || m < 1) throw std::invalid_argument("rs: need n > k >= 1");
  if (std::uint64_t(n) >= (std::uint64_t(1) << w) - 1)
    throw std::invalid_argument("rs: n must be below 2^w - 1");
  CodeSpec s;
  s.kind = CodeKind::reed_solomon;
  s.n = n;
  s.k = k;
  s.L = L;
  s.w = w;
  s.poly = F.poly();
  s.lambdas.assign(m, std::vector<Symbol>(k));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < k; ++i)
      s.lambdas[j][i] = F.inv(Symbol(j) ^ Symbol(m + i));
  s.rotations.assign(m, RotationTable(k, rotation_perm(0, L)));
  validate_spec(s);
  return s;
}

struct EqTerm {
  int sys_index;  // systematic node i
  int block;      // block row read from that node
  Symbol coeff;
};

// The k terms of parity j's row: p_j(row) = sum_i coeff * a_i(block).
inline std::vector<EqTerm> parity_equation(const CodeSpec& s, int j, int row) {
  if (j < 0 || j >= s.m() || row < 0 || row >= s.L)
    throw std::out_of_range("parity_equation: index out of range");
  std::vector<EqTerm> eq;
  eq.reserve(s.k);
  for (int i = 0; i < s.k; ++i)
    eq.push_back({i, s.rotations[j][i][row], s.lambdas[j][i]});
  return eq;
}

inline std::vector<NodeVector> encode(const CodeSpec& s, const std::vector<NodeVector>& sys) {
  if (int(sys.size()) != s.k) throw std::invalid_argument("encode: need k systematic nodes");
  std::size_t sym = 0;
  for (const auto& node : sys) {
    if (int(node.blocks.size()) != s.L) throw std::invalid_argument("encode: need L blocks per node");
    for (const auto& b : node.blocks) {
      if (sym == 0) sym = b.size();
      if (b.size() != sym || sym == 0)
        throw std::invalid_argument("encode: blocks must share a positive symbol count");
    }
  }
  const auto& F = s.field();
  std::vector<NodeVector> parity(s.m());
  for (int j = 0; j < s.m(); ++j) {
    parity[j].id = {NodeRole::parity, j};
    parity[j].blocks.assign(s.L, Block(sym, 0));
    for (int t = 0; t < s.L; ++t)
      for (int i = 0; i < s.k; ++i)
        block_scale_add(F, parity[j].blocks[t], s.lambdas[j][i],
                        sys[i].blocks[s.rotations[j][i][t]]);
  }
  return parity;
}

}  // namespace progec
