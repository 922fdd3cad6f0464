#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "progec/repair.hpp"
#include "progec/select.hpp"

using namespace progec;

namespace {

std::function<double(int)> gamma_of(int n, int k) {
  return [n, k](int p) { return double(gamma_permutation(n, k, p)); };
}

}  // namespace

TEST_CASE("seven hops, heavy tail: engage the two nearest parities") {
  CostRow costs = {1, 2, 3, 4, 5, 6, 7};
  Weights w{0.5, 0.5};
  auto res = select_helpers(costs, gamma_of(10, 3), w, Normalization::normalized);
  CHECK(res.p_star == 2);
  CHECK(res.selected == std::vector<int>{0, 1});
  CHECK(res.accessing == 3.0);
  REQUIRE(res.trace.size() == 7);
  for (double t : res.trace) CHECK(res.objective <= t);

  auto oracle = select_helpers_bruteforce(costs, gamma_of(10, 3), w, Normalization::normalized);
  CHECK(oracle.p_star == 2);
  CHECK(oracle.selected == res.selected);
  CHECK(oracle.objective == res.objective);  // bit-for-bit: same formula, integer sums
}

TEST_CASE("degenerate weights") {
  CostRow costs = {3, 1, 2};
  auto gamma = gamma_of(5, 2);

  SECTION("bandwidth ignored: cheapest single parity") {
    auto res = select_helpers(costs, gamma, {1, 0}, Normalization::normalized);
    CHECK(res.p_star == 1);
    CHECK(res.selected == std::vector<int>{1});
    // accessing-only trace never decreases
    CHECK(std::is_sorted(res.trace.begin(), res.trace.end()));
  }
  SECTION("accessing ignored: everyone participates") {
    auto res = select_helpers(costs, gamma, {0, 1}, Normalization::normalized);
    CHECK(res.p_star == 3);
    CHECK(res.selected == std::vector<int>{0, 1, 2});
    for (int p = 1; p <= 3; ++p) CHECK(res.trace[p - 1] == gamma(p) / gamma(1));
  }
  SECTION("equal costs, accessing ignored: full set by tie-break") {
    auto res = select_helpers_bruteforce({2, 2, 2}, gamma, {0, 1}, Normalization::normalized);
    CHECK(res.selected == std::vector<int>{0, 1, 2});
  }
}

TEST_CASE("raw mode keeps native units") {
  CostRow costs = {2, 1};
  auto gamma = [](int p) { return p == 1 ? 4.0 : 3.0; };
  auto res = select_helpers(costs, gamma, {0.25, 0.75}, Normalization::raw);
  REQUIRE(res.trace.size() == 2);
  CHECK(res.trace[0] == 0.25 * 1 + 0.75 * 4);
  CHECK(res.trace[1] == 0.25 * 3 + 0.75 * 3);
  CHECK(res.p_star == 2);
  CHECK(res.objective == 3.0);
  CHECK(cost_curve(costs, gamma, {0.25, 0.75}, Normalization::raw) == res.trace);
}

TEST_CASE("sorted-prefix selection matches exhaustive search on a thousand instances") {
  std::mt19937_64 rng(0xA11CE5ULL);
  for (int inst = 0; inst < 1000; ++inst) {
    const int m = 1 + int(rng() % 8);
    CostRow costs(m);
    for (auto& c : costs) c = double(rng() % 100);  // integer-valued: sums stay exact
    // strictly decreasing integer bandwidth curve
    std::vector<double> g(m);
    double v = 1000 + double(rng() % 500);
    for (int p = 0; p < m; ++p) {
      g[p] = v;
      v -= 1 + double(rng() % 50);
    }
    auto gamma = [&](int p) { return g[p - 1]; };
    const double w1 = double(rng() % 1000) / 999.0;
    Weights w{w1, 1 - w1};
    const auto norm = (rng() & 1) ? Normalization::normalized : Normalization::raw;

    auto fast = select_helpers(costs, gamma, w, norm);
    auto full = select_helpers_bruteforce(costs, gamma, w, norm);
    CAPTURE(inst, m, w1);
    REQUIRE(fast.objective == full.objective);
    REQUIRE(int(fast.selected.size()) == fast.p_star);

    // selected set is a prefix of the cost order
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return costs[a] < costs[b]; });
    std::vector<int> prefix(order.begin(), order.begin() + fast.p_star);
    std::sort(prefix.begin(), prefix.end());
    REQUIRE(fast.selected == prefix);
  }
}

TEST_CASE("rescaling both weights moves nothing") {
  CostRow costs = {1, 2, 3, 4, 5, 6, 7};
  auto gamma = gamma_of(10, 3);
  auto base = select_helpers(costs, gamma, {0.5, 0.5}, Normalization::normalized);
  for (double scale : {2.0, 10.0, 0.25}) {
    auto res = select_helpers(costs, gamma, {0.5 * scale, 0.5 * scale},
                              Normalization::normalized);
    CHECK(res.p_star == base.p_star);
    CHECK(res.selected == base.selected);
  }
}

TEST_CASE("selection argument validation") {
  auto gamma = gamma_of(5, 2);
  CHECK_THROWS_AS(select_helpers({}, gamma, {0.5, 0.5}, Normalization::raw),
                  std::invalid_argument);
  CHECK_THROWS_AS(select_helpers({1, -2}, gamma, {0.5, 0.5}, Normalization::raw),
                  std::invalid_argument);
  CHECK_THROWS_AS(select_helpers({1, 2}, gamma, {0, 0}, Normalization::raw),
                  std::invalid_argument);
  CHECK_THROWS_AS(select_helpers({1, 2}, gamma, {-1, 2}, Normalization::raw),
                  std::invalid_argument);
  CHECK_THROWS_AS(select_helpers_bruteforce(CostRow(21, 1.0), gamma, {0.5, 0.5},
                                            Normalization::raw),
                  std::invalid_argument);
  CHECK(select_helpers_bruteforce({5}, gamma, {0.5, 0.5}, Normalization::raw).selected ==
        std::vector<int>{0});
}

TEST_CASE("subset-aware bandwidth can beat any sorted prefix") {
  // On the reference (6,3) rotation code the repair bandwidth depends on
  // which parities join, not just how many: {p1,p2} needs 8 blocks while
  // {p1,p3} and {p2,p3} need 9. The prefix scan cannot see that; the
  // subset-aware oracle can, and the gap is strict for these costs.
  auto s = fixtures::code63();
  auto bandwidth = [&](const std::vector<int>& subset) {
    return double(plan_repair_exact(s, 0, subset).cost);
  };
  auto best_of_size = [&](int p) {  // count-only stand-in for the fast path
    return p == 1 ? 12.0 : 8.0;
  };
  CostRow costs = {2, 1, 1};
  Weights w{0.25, 0.75};

  auto oracle = select_helpers_bruteforce(costs, bandwidth, best_of_size, w, Normalization::raw);
  CHECK(oracle.selected == std::vector<int>{0, 1});
  CHECK(oracle.objective == 0.25 * 3 + 0.75 * 8);  // 6.75, dyadic so exact

  // true objective of every sorted-cost prefix: {1}, {1,2}, {0,1,2}
  const double prefix_best =
      std::min({0.25 * 1 + 0.75 * bandwidth({1}), 0.25 * 2 + 0.75 * bandwidth({1, 2}),
                0.25 * 4 + 0.75 * bandwidth({0, 1, 2})});
  CHECK(prefix_best == 7.0);
  CHECK(oracle.objective < prefix_best);
}
