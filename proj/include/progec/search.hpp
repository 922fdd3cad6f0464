#pragma once
// Structure search over cyclic-shift codes: enumerate shift tables, assign
// workable coefficients, profile repair bandwidth, and keep the codes whose
// average bandwidth falls strictly as more parities participate.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "progec/mds.hpp"
#include "progec/repair.hpp"

namespace progec {

struct SearchConfig {
  int n = 0, k = 0, L = 0, w = 8;
  bool symmetry = true;             // pin first parity row and first data column to shift 0
  long long exact_cap = 1'000'000;  // exhaustive planning while p^L stays under this
  std::uint64_t lambda_seed = 1;    // per-candidate seed = lambda_seed + candidate index
  int lambda_budget = 200;
  std::size_t max_results = 0;      // 0 keeps every surviving code
};

// Lexicographic mixed-radix stream of shift tables. Free cells run row-major
// over (parity row, data column); with symmetry on, only rows >= 1 and
// columns >= 1 are free and the space shrinks to L^((k-1)(m-1)).
class CandidateSpace {
 public:
  explicit CandidateSpace(const SearchConfig& cfg)
      : k_(cfg.k), m_(cfg.n - cfg.k), L_(cfg.L), symmetry_(cfg.symmetry) {
    if (k_ < 1 || m_ < 1 || L_ < 1) throw std::invalid_argument("search: need n > k >= 1, L >= 1");
    const int free_cells = symmetry_ ? (k_ - 1) * (m_ - 1) : k_ * m_;
    const long long limit = ((long long)1 << 62) / L_;
    size_ = 1;
    for (int c = 0; c < free_cells; ++c) {
      if (size_ > limit)
        throw std::invalid_argument("search: candidate space too large to index");
      size_ *= L_;
    }
  }

  long long size() const { return size_; }

  // Shift table of the idx-th candidate; fixed cells are zero.
  std::vector<std::vector<int>> shifts_at(long long idx) const {
    if (idx < 0 || idx >= size_) throw std::out_of_range("search: candidate index");
    std::vector<std::vector<int>> shifts(m_, std::vector<int>(k_, 0));
    const int j0 = symmetry_ ? 1 : 0, i0 = symmetry_ ? 1 : 0;
    for (int j = m_ - 1; j >= j0; --j)
      for (int i = k_ - 1; i >= i0; --i) {
        shifts[j][i] = int(idx % L_);
        idx /= L_;
      }
    return shifts;
  }

 private:
  int k_, m_, L_;
  bool symmetry_;
  long long size_;
};

inline CandidateSpace enumerate_candidates(const SearchConfig& cfg) { return CandidateSpace(cfg); }

struct ScoredCode {
  long long index = 0;  // position in the candidate stream
  CodeSpec spec;
  BandwidthProfile profile;
};

namespace detail {

// Smaller average bandwidth at the largest subset wins; earlier subset sizes
// break ties in descending order.
inline bool better_profile(const BandwidthProfile& a, const BandwidthProfile& b) {
  for (std::size_t i = a.gamma_bar.size(); i-- > 0;) {
    if (a.gamma_bar[i] != b.gamma_bar[i]) return a.gamma_bar[i] < b.gamma_bar[i];
  }
  return false;
}

inline std::vector<std::vector<int>> shift_table_of(const CodeSpec& s) {
  std::vector<std::vector<int>> shifts(s.m(), std::vector<int>(s.k));
  for (int j = 0; j < s.m(); ++j)
    for (int i = 0; i < s.k; ++i) {
      const Perm& p = s.rotations[j][i];
      shifts[j][i] = p[0];
      if (p != rotation_perm(p[0], s.L))
        throw std::invalid_argument("dedupe: rotations are not cyclic shifts");
    }
  return shifts;
}

// Canonical form under relabeling parity rows and adding one common offset
// to every shift: the lexicographically smallest flattened table reachable.
inline std::vector<int> canonical_shift_key(const CodeSpec& s) {
  auto shifts = shift_table_of(s);
  const int m = s.m(), k = s.k, L = s.L;
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> best;
  do {
    for (int delta = 0; delta < L; ++delta) {
      std::vector<int> flat;
      flat.reserve(std::size_t(m) * k);
      for (int j : order)
        for (int i = 0; i < k; ++i) flat.push_back((shifts[j][i] + delta) % L);
      if (best.empty() || flat < best) best = std::move(flat);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace detail

// Evaluate every candidate: coefficients must verify as MDS within budget,
// the bandwidth profile must decrease strictly, and survivors are ranked
// best-profile-first (ties keep stream order). Deterministic for a fixed
// config. Profiles are exact whenever m^L fits under exact_cap; beyond that
// candidates are profiled greedily and carry method = greedy as the flag.
inline std::vector<ScoredCode> search_rotation_codes(const SearchConfig& cfg) {
  CandidateSpace space(cfg);
  const int m = cfg.n - cfg.k;
  long long worst = 1;
  bool exact = true;
  for (int p = 0; p < cfg.L && exact; ++p) {
    worst *= m;
    if (worst > cfg.exact_cap) exact = false;
  }

  std::vector<ScoredCode> out;
  for (long long idx = 0; idx < space.size(); ++idx) {
    auto shifts = space.shifts_at(idx);
    std::vector<RotationTable> rot(m);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < cfg.k; ++i) rot[j].push_back(rotation_perm(shifts[j][i], cfg.L));
    auto lambdas = assign_lambdas(cfg.n, cfg.k, cfg.L, rot, cfg.w, cfg.lambda_seed + idx,
                                  cfg.lambda_budget);
    if (!lambdas) continue;
    ScoredCode sc;
    sc.index = idx;
    sc.spec = build_rotation_code(cfg.n, cfg.k, cfg.L, std::move(rot), std::move(*lambdas), cfg.w);
    sc.profile = bandwidth_profile(sc.spec, exact ? PlanMethod::exact : PlanMethod::greedy,
                                   cfg.exact_cap);
    if (!check_progressive(sc.profile).progressive) continue;
    out.push_back(std::move(sc));
  }

  std::stable_sort(out.begin(), out.end(), [](const ScoredCode& a, const ScoredCode& b) {
    return detail::better_profile(a.profile, b.profile);
  });
  if (cfg.max_results && out.size() > cfg.max_results) out.resize(cfg.max_results);
  return out;
}

// Collapse results that are the same code up to relabeling parity nodes or
// re-indexing all rows by a common shift; of each class the entry with the
// lexicographically smallest raw shift table survives, in ranked position.
inline std::vector<ScoredCode> dedupe_equivalent(const std::vector<ScoredCode>& results) {
  std::vector<ScoredCode> out;
  std::map<std::vector<int>, std::size_t> kept;  // canonical key -> position in out
  for (const auto& r : results) {
    auto key = detail::canonical_shift_key(r.spec);
    auto [it, fresh] = kept.emplace(std::move(key), out.size());
    if (fresh) {
      out.push_back(r);
    } else {
      auto& held = out[it->second];
      if (detail::shift_table_of(r.spec) < detail::shift_table_of(held.spec)) held = r;
    }
  }
  return out;
}

}  // namespace progec
