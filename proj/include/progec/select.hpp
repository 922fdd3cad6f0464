#pragma once
// Helper selection: given per-parity accessing costs and a bandwidth curve
// gamma(p), choose how many (and which) parity nodes to engage so that the
// weighted total of accessing cost and repair bandwidth is minimal. Because
// gamma depends only on the count p, an optimal set is always a prefix of
// the cost-sorted order, so the fast path just scans p = 1..m. The
// brute-force oracle checks every subset and is kept for validation and for
// cost models where gamma does depend on the exact subset.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace progec {

using CostRow = std::vector<double>;     // accessing cost per parity node
using CostMatrix = std::vector<CostRow>; // one row per repaired node

struct Weights {
  double access = 0.5;     // weight on accessing cost
  double bandwidth = 0.5;  // weight on repair bandwidth
};

enum class Normalization {
  raw,        // native units: cost units + block counts
  normalized  // accessing / sum(costs), bandwidth / gamma(1)
};

struct SelectionResult {
  int p_star = 0;             // engaged parity count
  std::vector<int> selected;  // engaged node indices, ascending
  double accessing = 0;       // raw accessing cost of the selected set
  double objective = 0;       // value of the minimized total
  std::vector<double> trace;  // objective at each p = 1..m
};

namespace detail {

inline void check_selection_args(const CostRow& costs, const Weights& w) {
  if (costs.empty()) throw std::invalid_argument("select: empty cost row");
  for (double c : costs)
    if (!(c >= 0)) throw std::invalid_argument("select: costs must be nonnegative");
  if (!(w.access >= 0) || !(w.bandwidth >= 0) || w.access + w.bandwidth <= 0)
    throw std::invalid_argument("select: weights must be nonnegative and not both zero");
}

struct Scale {
  double access = 1, bandwidth = 1;
};

inline Scale normalization_scale(const CostRow& costs, const std::function<double(int)>& gamma,
                                 Normalization norm) {
  if (norm == Normalization::raw) return {};
  Scale s;
  const double total = std::accumulate(costs.begin(), costs.end(), 0.0);
  const double g1 = gamma(1);
  if (total > 0) s.access = total;
  if (g1 > 0) s.bandwidth = g1;
  return s;
}

// Shared by the fast path and the oracle so their objectives agree exactly.
inline double objective_value(double accessing, double bandwidth, const Weights& w,
                              const Scale& s) {
  return w.access * (accessing / s.access) + w.bandwidth * (bandwidth / s.bandwidth);
}

// Cost order: ascending, ties by lower node index.
inline std::vector<int> cost_order(const CostRow& costs) {
  std::vector<int> order(costs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return costs[a] < costs[b]; });
  return order;
}

}  // namespace detail

// Objective at each prefix length p = 1..m of the cost-sorted order.
inline std::vector<double> cost_curve(const CostRow& costs,
                                      const std::function<double(int)>& gamma, const Weights& w,
                                      Normalization norm) {
  detail::check_selection_args(costs, w);
  const auto scale = detail::normalization_scale(costs, gamma, norm);
  const auto order = detail::cost_order(costs);
  std::vector<double> curve;
  double acc = 0;
  for (std::size_t p = 1; p <= costs.size(); ++p) {
    acc += costs[order[p - 1]];
    curve.push_back(detail::objective_value(acc, gamma(int(p)), w, scale));
  }
  return curve;
}

// O(m log m) optimizer: scan prefixes of the cost-sorted order and keep the
// first minimum (smaller p wins ties).
inline SelectionResult select_helpers(const CostRow& costs,
                                      const std::function<double(int)>& gamma, const Weights& w,
                                      Normalization norm = Normalization::normalized) {
  detail::check_selection_args(costs, w);
  const auto scale = detail::normalization_scale(costs, gamma, norm);
  const auto order = detail::cost_order(costs);

  SelectionResult res;
  double acc = 0, best_acc = 0;
  for (std::size_t p = 1; p <= costs.size(); ++p) {
    acc += costs[order[p - 1]];
    const double obj = detail::objective_value(acc, gamma(int(p)), w, scale);
    res.trace.push_back(obj);
    if (res.p_star == 0 || obj < res.objective) {
      res.p_star = int(p);
      res.objective = obj;
      best_acc = acc;
    }
  }
  res.accessing = best_acc;
  res.selected.assign(order.begin(), order.begin() + res.p_star);
  std::sort(res.selected.begin(), res.selected.end());
  return res;
}

// Exhaustive oracle over every nonempty subset, bandwidth evaluated on the
// actual subset. Ties prefer fewer nodes, then the lexicographically first
// set. m <= 20.
inline SelectionResult select_helpers_bruteforce(
    const CostRow& costs, const std::function<double(const std::vector<int>&)>& gamma_set,
    const std::function<double(int)>& gamma_count, const Weights& w, Normalization norm) {
  detail::check_selection_args(costs, w);
  const int m = int(costs.size());
  if (m > 20) throw std::invalid_argument("select: brute force capped at 20 nodes");
  const auto scale = detail::normalization_scale(costs, gamma_count, norm);

  SelectionResult res;
  std::vector<int> subset;
  // sizes ascending, sets in lexicographic order within a size
  for (int p = 1; p <= m; ++p) {
    subset.resize(p);
    std::iota(subset.begin(), subset.end(), 0);
    while (true) {
      double acc = 0;
      for (int j : subset) acc += costs[j];
      const double obj = detail::objective_value(acc, gamma_set(subset), w, scale);
      if (res.p_star == 0 || obj < res.objective) {
        res.p_star = p;
        res.objective = obj;
        res.accessing = acc;
        res.selected = subset;
      }
      int pos = p - 1;
      while (pos >= 0 && subset[pos] == m - p + pos) --pos;
      if (pos < 0) break;
      ++subset[pos];
      for (int i = pos + 1; i < p; ++i) subset[i] = subset[i - 1] + 1;
    }
  }

  // trace mirrors the fast path for plotting
  res.trace = cost_curve(costs, gamma_count, w, norm);
  return res;
}

inline SelectionResult select_helpers_bruteforce(const CostRow& costs,
                                                 const std::function<double(int)>& gamma,
                                                 const Weights& w,
                                                 Normalization norm = Normalization::normalized) {
  return select_helpers_bruteforce(
      costs, [&](const std::vector<int>& s) { return gamma(int(s.size())); }, gamma, w, norm);
}

}  // namespace progec
