#pragma once
// Single-failure repair planning and execution.
//
// Every parity block contains exactly one block of the failed systematic
// node, so a repair plan is a choice, per lost block, of one covering parity
// equation; the objective is the cardinality of the union of all referenced
// blocks. The exact planner enumerates the whole choice space when it is
// small and otherwise runs a depth-first branch-and-bound over the same
// lexicographic order. Its admissible bound is union-size plus the number of
// still-unassigned lost blocks: each of those brings at least its own parity
// block, because distinct lost blocks never share a parity row.
//
// Permutation codes additionally get the structural two-phase planner whose
// cost is the closed form gamma(p) = kL - (L/(n-k))(p-1)(k-1), independent
// of which parities participate.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/rational.hpp>

#include "progec/code.hpp"

namespace progec {

using Rational = boost::rational<long long>;

enum class PlanMethod { exact, greedy, two_phase, reencode };

inline const char* to_string(PlanMethod m) {
  switch (m) {
    case PlanMethod::exact: return "exact";
    case PlanMethod::greedy: return "greedy";
    case PlanMethod::two_phase: return "two_phase";
    default: return "reencode";
  }
}

struct DownloadRef {
  NodeId node;
  int row = 0;
  friend bool operator==(const DownloadRef&, const DownloadRef&) = default;
  friend auto operator<=>(const DownloadRef&, const DownloadRef&) = default;
};

struct SourceRef {
  NodeId node;
  int row = 0;
  Symbol coeff = 1;
};

// One linear solve: target = target_coeff^-1 * sum(coeff * source block).
struct DecodeStep {
  int target_row = 0;
  Symbol target_coeff = 1;
  std::vector<SourceRef> sources;
};

struct RepairPlan {
  NodeId failed;
  std::vector<NodeId> helpers;
  std::vector<DownloadRef> downloads;  // sorted, duplicate-free
  std::vector<DecodeStep> steps;       // one per lost block, by target row
  long long cost = 0;                  // |downloads|
  PlanMethod method = PlanMethod::exact;
};

namespace detail {

struct Equation {
  int parity;                // parity node index j
  int parity_row;            // row read from parity j
  std::vector<int> blocks;   // flat ids (global_node * L + row), parity first
};

// equations[y][c]: the c-th candidate equation covering lost block y
inline std::vector<std::vector<Equation>> candidate_equations(const CodeSpec& s, int failed,
                                                              const std::vector<int>& subset) {
  std::vector<std::vector<Equation>> eqs(s.L);
  for (int j : subset) {
    if (s.lambdas[j][failed] == 0) continue;  // cannot see the failed node
    Perm inv = inverse_perm(s.rotations[j][failed]);
    for (int y = 0; y < s.L; ++y) {
      Equation e;
      e.parity = j;
      e.parity_row = inv[y];
      e.blocks.push_back((s.k + j) * s.L + e.parity_row);
      for (int i = 0; i < s.k; ++i)
        if (i != failed) e.blocks.push_back(i * s.L + s.rotations[j][i][e.parity_row]);
      eqs[y].push_back(std::move(e));
    }
  }
  for (int y = 0; y < s.L; ++y)
    if (eqs[y].empty())
      throw std::runtime_error("repair: no parity equation covers a lost block");
  return eqs;
}

inline void check_repair_args(const CodeSpec& s, int failed, const std::vector<int>& subset) {
  if (failed < 0 || failed >= s.k) throw std::out_of_range("repair: bad systematic index");
  if (subset.empty()) throw std::invalid_argument("repair: need at least one parity node");
  for (int j : subset)
    if (j < 0 || j >= s.m()) throw std::out_of_range("repair: bad parity index");
  for (std::size_t i = 1; i < subset.size(); ++i)
    if (subset[i] <= subset[i - 1])
      throw std::invalid_argument("repair: parity subset must be strictly increasing");
}

// Assemble the final plan from one chosen equation per lost block.
inline RepairPlan assemble(const CodeSpec& s, int failed,
                           const std::vector<std::vector<Equation>>& eqs,
                           const std::vector<int>& choice, PlanMethod method) {
  RepairPlan plan;
  plan.failed = {NodeRole::systematic, failed};
  plan.method = method;

  std::vector<DownloadRef> dl;
  for (int y = 0; y < s.L; ++y) {
    const Equation& e = eqs[y][choice[y]];
    const int j = e.parity;
    DecodeStep step;
    step.target_row = y;
    step.target_coeff = s.lambdas[j][failed];
    step.sources.push_back({{NodeRole::parity, j}, e.parity_row, 1});
    for (int i = 0; i < s.k; ++i)
      if (i != failed)
        step.sources.push_back({{NodeRole::systematic, i}, s.rotations[j][i][e.parity_row],
                                s.lambdas[j][i]});
    for (const auto& src : step.sources) dl.push_back({src.node, src.row});
    plan.steps.push_back(std::move(step));
  }
  std::sort(dl.begin(), dl.end());
  dl.erase(std::unique(dl.begin(), dl.end()), dl.end());
  plan.downloads = std::move(dl);
  plan.cost = (long long)plan.downloads.size();
  for (const auto& d : plan.downloads)
    if (plan.helpers.empty() || plan.helpers.back() != d.node) plan.helpers.push_back(d.node);
  return plan;
}

}  // namespace detail

// Minimal-download plan. The choice space p^L is searched exhaustively while
// it fits under `cap`; larger instances run the pruned depth-first search
// seeded with the greedy solution. Both walks share one lexicographic order
// (lost blocks ascending, candidate parities ascending), so results are
// deterministic and, in cost, provably minimal either way.
inline RepairPlan plan_repair_exact(const CodeSpec& s, int failed, const std::vector<int>& subset,
                                    long long cap = 1'000'000);

inline RepairPlan plan_repair_greedy(const CodeSpec& s, int failed,
                                     const std::vector<int>& subset) {
  detail::check_repair_args(s, failed, subset);
  auto eqs = detail::candidate_equations(s, failed, subset);
  std::vector<char> in_union(std::size_t(s.n) * s.L, 0);
  std::vector<int> choice(s.L, 0);
  for (int y = 0; y < s.L; ++y) {
    int best_c = 0, best_new = -1;
    for (int c = 0; c < int(eqs[y].size()); ++c) {
      int fresh = 0;
      for (int b : eqs[y][c].blocks) fresh += !in_union[b];
      if (best_new < 0 || fresh < best_new) {
        best_new = fresh;
        best_c = c;
      }
    }
    choice[y] = best_c;
    for (int b : eqs[y][best_c].blocks) in_union[b] = 1;
  }
  return detail::assemble(s, failed, eqs, choice, PlanMethod::greedy);
}

inline RepairPlan plan_repair_exact(const CodeSpec& s, int failed, const std::vector<int>& subset,
                                    long long cap) {
  detail::check_repair_args(s, failed, subset);
  if (cap < 1) throw std::invalid_argument("repair: cap must be positive");
  auto eqs = detail::candidate_equations(s, failed, subset);

  // p^L saturated at cap+1
  long long space = 1;
  for (int y = 0; y < s.L && space <= cap; ++y) {
    space *= (long long)eqs[y].size();
    if (space < 0) space = cap + 1;
  }
  const bool prune = space > cap;

  long long best_cost;
  std::vector<int> best_choice(s.L, 0);
  if (prune) {
    // seed the bound with the greedy plan (recorded choice indices included)
    RepairPlan seed = plan_repair_greedy(s, failed, subset);
    best_cost = seed.cost;
    for (int y = 0; y < s.L; ++y) {
      const int j = seed.steps[y].sources[0].node.index;
      for (int c = 0; c < int(eqs[y].size()); ++c)
        if (eqs[y][c].parity == j) {
          best_choice[y] = c;
          break;
        }
    }
  } else {
    best_cost = (long long)s.n * s.L + 1;  // beaten by any real plan
  }

  std::vector<char> in_union(std::size_t(s.n) * s.L, 0);
  std::vector<int> choice(s.L, 0);
  std::vector<std::vector<int>> added(s.L);
  long long size = 0;

  // Iterative depth-first walk over lost blocks, candidates in ascending
  // parity order, with undo on backtrack. Strict (<) improvement keeps the
  // lexicographically first minimizer; the bound below never cuts a branch
  // that could still improve, so pruning changes nothing but the work done.
  int y = 0;
  while (true) {
    if (y == s.L) {
      if (size < best_cost) {
        best_cost = size;
        best_choice = choice;
      }
    } else if (choice[y] < int(eqs[y].size()) &&
               !(prune && size + (s.L - y) >= best_cost)) {
      auto& add = added[y];
      add.clear();
      for (int b : eqs[y][choice[y]].blocks)
        if (!in_union[b]) {
          in_union[b] = 1;
          add.push_back(b);
        }
      size += (long long)add.size();
      ++y;
      continue;
    } else {
      choice[y] = 0;  // exhausted or cut: rewind this level
    }
    --y;
    if (y < 0) break;
    for (int b : added[y]) in_union[b] = 0;
    size -= (long long)added[y].size();
    ++choice[y];
  }

  return detail::assemble(s, failed, eqs, best_choice, PlanMethod::exact);
}

// Structural two-phase plan for permutation codes. Phase 1 reads every row
// whose failed-coordinate digit is zero from the survivors and the selected
// parities, recovering the lost blocks whose digit lies in the engaged
// residues. Phase 2 re-reads through the lowest selected parity for each
// remaining block. The two download sets are disjoint by construction.
inline RepairPlan plan_repair_permutation(const CodeSpec& s, int failed,
                                          const std::vector<int>& subset) {
  if (s.kind != CodeKind::permutation)
    throw std::invalid_argument("two-phase repair needs a permutation code");
  detail::check_repair_args(s, failed, subset);
  const int r = s.m();
  const auto digit = [&](int t) { return digits_of(t, r, s.k)[failed]; };

  RepairPlan plan;
  plan.failed = {NodeRole::systematic, failed};
  plan.method = PlanMethod::two_phase;

  std::vector<DownloadRef> dl;
  std::vector<char> engaged(r, 0);  // parity j recovers the digit-j residue
  for (int j : subset) engaged[j] = 1;

  // phase 1
  for (int t = 0; t < s.L; ++t) {
    if (digit(t) != 0) continue;
    for (int i = 0; i < s.k; ++i)
      if (i != failed) dl.push_back({{NodeRole::systematic, i}, t});
    for (int j : subset) {
      dl.push_back({{NodeRole::parity, j}, t});
      DecodeStep step;
      step.target_row = s.rotations[j][failed][t];
      step.target_coeff = s.lambdas[j][failed];
      step.sources.push_back({{NodeRole::parity, j}, t, 1});
      for (int i = 0; i < s.k; ++i)
        if (i != failed)
          step.sources.push_back({{NodeRole::systematic, i}, s.rotations[j][i][t],
                                  s.lambdas[j][i]});
      plan.steps.push_back(std::move(step));
    }
  }

  // phase 2 through the lowest engaged parity
  const int jstar = subset.front();
  Perm inv = inverse_perm(s.rotations[jstar][failed]);
  for (int y = 0; y < s.L; ++y) {
    if (engaged[digit(y)]) continue;
    const int t = inv[y];
    DecodeStep step;
    step.target_row = y;
    step.target_coeff = s.lambdas[jstar][failed];
    step.sources.push_back({{NodeRole::parity, jstar}, t, 1});
    dl.push_back({{NodeRole::parity, jstar}, t});
    for (int i = 0; i < s.k; ++i)
      if (i != failed) {
        const int row = s.rotations[jstar][i][t];
        step.sources.push_back({{NodeRole::systematic, i}, row, s.lambdas[jstar][i]});
        dl.push_back({{NodeRole::systematic, i}, row});
      }
    plan.steps.push_back(std::move(step));
  }

  std::sort(dl.begin(), dl.end());
  dl.erase(std::unique(dl.begin(), dl.end()), dl.end());
  plan.downloads = std::move(dl);
  plan.cost = (long long)plan.downloads.size();
  for (const auto& d : plan.downloads)
    if (plan.helpers.empty() || plan.helpers.back() != d.node) plan.helpers.push_back(d.node);
  std::sort(plan.steps.begin(), plan.steps.end(),
            [](const DecodeStep& a, const DecodeStep& b) { return a.target_row < b.target_row; });
  return plan;
}

// Parity failure: download any k nodes and re-encode. The recovery schemes
// above address systematic failures; a lost parity is simply recomputed from
// the k systematic nodes at cost kL.
inline RepairPlan plan_parity_rebuild(const CodeSpec& s, int failed_parity) {
  if (failed_parity < 0 || failed_parity >= s.m())
    throw std::out_of_range("repair: bad parity index");
  RepairPlan plan;
  plan.failed = {NodeRole::parity, failed_parity};
  plan.method = PlanMethod::reencode;
  for (int i = 0; i < s.k; ++i) {
    plan.helpers.push_back({NodeRole::systematic, i});
    for (int t = 0; t < s.L; ++t) plan.downloads.push_back({{NodeRole::systematic, i}, t});
  }
  std::sort(plan.downloads.begin(), plan.downloads.end());
  for (int t = 0; t < s.L; ++t) {
    DecodeStep step;
    step.target_row = t;
    step.target_coeff = 1;
    for (const auto& term : parity_equation(s, failed_parity, t))
      step.sources.push_back({{NodeRole::systematic, term.sys_index}, term.block, term.coeff});
    plan.steps.push_back(std::move(step));
  }
  plan.cost = (long long)plan.downloads.size();
  return plan;
}

using BlockFetch = std::function<Block(const NodeId&, int)>;

// Run a plan's decode steps against fetched blocks. Reads exactly the
// blocks in plan.downloads; a step referencing anything else is a planner
// bug and throws.
inline std::vector<Block> execute_plan(const CodeSpec& s, const BlockFetch& fetch,
                                       const RepairPlan& plan) {
  const auto& F = s.field();
  std::map<std::pair<int, int>, Block> have;
  std::size_t sym = 0;
  for (const auto& d : plan.downloads) {
    Block b = fetch(d.node, d.row);
    if (sym == 0) sym = b.size();
    if (b.size() != sym || sym == 0)
      throw std::runtime_error("repair: inconsistent block sizes");
    have.emplace(std::make_pair(global_node_id(d.node, s.k), d.row), std::move(b));
  }

  std::vector<Block> out(s.L);
  std::vector<char> done(s.L, 0);
  for (const auto& step : plan.steps) {
    if (step.target_row < 0 || step.target_row >= s.L || done[step.target_row])
      throw std::logic_error("repair: bad or duplicate decode target");
    if (step.target_coeff == 0) throw std::logic_error("repair: singular decode step");
    Block acc(sym, 0);
    for (const auto& src : step.sources) {
      auto it = have.find({global_node_id(src.node, s.k), src.row});
      if (it == have.end())
        throw std::logic_error("repair: step reads a block outside the download set");
      block_scale_add(F, acc, src.coeff, it->second);
    }
    if (step.target_coeff != 1) F.scale_inplace(acc.data(), acc.size(), F.inv(step.target_coeff));
    out[step.target_row] = std::move(acc);
    done[step.target_row] = 1;
  }
  for (char d : done)
    if (!d) throw std::logic_error("repair: plan leaves a block unrecovered");
  return out;
}

// Convenience overload over in-memory nodes ordered systematic-then-parity.
inline std::vector<Block> execute_plan(const CodeSpec& s, const std::vector<NodeVector>& nodes,
                                       const RepairPlan& plan) {
  return execute_plan(
      s,
      [&](const NodeId& id, int row) -> Block {
        return nodes.at(global_node_id(id, s.k)).blocks.at(row);
      },
      plan);
}

// Closed-form two-phase cost, independent of the parity choice.
inline long long gamma_permutation(int n, int k, int p) {
  const int r = n - k;
  if (r < 1 || k < 1) throw std::invalid_argument("gamma: need n > k >= 1");
  if (p < 1 || p > r) throw std::out_of_range("gamma: p out of range");
  long long L = 1;
  for (int i = 0; i < k; ++i) L *= r;
  return k * L - (L / r) * (p - 1) * (k - 1);
}

// Cut-set bound L(p+k-1)/p on the blocks any exact repair must move.
inline Rational gamma_lower_bound(long long L, int k, int p) {
  if (p < 1) throw std::invalid_argument("gamma bound: p must be >= 1");
  return Rational(L * (p + k - 1), p);
}

struct ProfileCell {
  int failed;
  std::vector<int> subset;
  long long cost;
};

struct BandwidthProfile {
  int n = 0, k = 0;
  PlanMethod method = PlanMethod::exact;
  std::vector<Rational> gamma_bar;             // [p-1], p = 1..n-k
  std::vector<std::vector<ProfileCell>> cells;  // per p, lexicographic
};

// Average download cost over every (failed systematic node, parity subset)
// pair, grouped by subset size.
inline BandwidthProfile bandwidth_profile(const CodeSpec& s, PlanMethod method,
                                          long long cap = 1'000'000) {
  BandwidthProfile prof;
  prof.n = s.n;
  prof.k = s.k;
  prof.method = method;
  const int m = s.m();
  prof.gamma_bar.resize(m);
  prof.cells.resize(m);
  for (int p = 1; p <= m; ++p) {
    std::vector<int> subset(p);
    std::iota(subset.begin(), subset.end(), 0);
    long long total = 0, count = 0;
    while (true) {
      for (int f = 0; f < s.k; ++f) {
        RepairPlan plan;
        switch (method) {
          case PlanMethod::exact: plan = plan_repair_exact(s, f, subset, cap); break;
          case PlanMethod::greedy: plan = plan_repair_greedy(s, f, subset); break;
          case PlanMethod::two_phase: plan = plan_repair_permutation(s, f, subset); break;
          default: throw std::invalid_argument("profile: unsupported planner");
        }
        prof.cells[p - 1].push_back({f, subset, plan.cost});
        total += plan.cost;
        ++count;
      }
      int pos = p - 1;
      while (pos >= 0 && subset[pos] == m - p + pos) --pos;
      if (pos < 0) break;
      ++subset[pos];
      for (int i = pos + 1; i < p; ++i) subset[i] = subset[i - 1] + 1;
    }
    prof.gamma_bar[p - 1] = Rational(total, count);
  }
  return prof;
}

struct ProgressiveReport {
  bool progressive = true;
  int p = 0, p_next = 0;  // first adjacent pair where the average fails to drop
};

// Strict decrease of the average bandwidth in p.
inline ProgressiveReport check_progressive(const BandwidthProfile& prof) {
  for (std::size_t i = 0; i + 1 < prof.gamma_bar.size(); ++i)
    if (!(prof.gamma_bar[i] > prof.gamma_bar[i + 1]))
      return {false, int(i + 1), int(i + 2)};
  return {};
}

}  // namespace progec
