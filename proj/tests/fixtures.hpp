#pragma once
// Shared test fixtures: the canonical (6,3) rotation code, small permutation
// codes, and helpers for random codewords.

#include <random>
#include <vector>

#include "progec/code.hpp"

namespace fixtures {

using namespace progec;

// (6,3), L=4 over GF(2^8): parity 1 is the plain sum; parities 2 and 3 mix
// shifted copies with coefficient rows (1,2,3) and (1,4,5).
inline CodeSpec code63() {
  return build_rotation_code_shifts(
      6, 3, 4, {{0, 0, 0}, {0, 1, 3}, {0, 2, 1}},
      {{1, 1, 1}, {1, 2, 3}, {1, 4, 5}}, 8);
}

inline CodeSpec perm52() { return build_permutation_code_with(5, 2, 8, {2, 3}); }
inline CodeSpec perm42() { return build_permutation_code_with(4, 2, 8, {2, 3}); }

inline std::vector<NodeVector> random_data(const CodeSpec& s, std::size_t sym, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<NodeVector> sys(s.k);
  for (int i = 0; i < s.k; ++i) {
    sys[i].id = {NodeRole::systematic, i};
    sys[i].blocks.assign(s.L, Block(sym));
    for (auto& b : sys[i].blocks)
      for (auto& v : b) v = Symbol(rng()) & s.field().max_element();
  }
  return sys;
}

// All n node contents: systematic data followed by encoded parities.
inline std::vector<NodeVector> random_codeword(const CodeSpec& s, std::size_t sym,
                                               std::uint64_t seed) {
  auto nodes = random_data(s, sym, seed);
  auto parity = encode(s, nodes);
  nodes.insert(nodes.end(), parity.begin(), parity.end());
  return nodes;
}

}  // namespace fixtures
