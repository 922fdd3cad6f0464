#pragma once
// CodeSpec <-> JSON. The document stores rotations as explicit index arrays,
// so any permutation (not just cyclic shifts) round-trips losslessly.

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "progec/code.hpp"

namespace progec {

inline nlohmann::json to_json(const CodeSpec& s) {
  nlohmann::json j;
  j["kind"] = to_string(s.kind);
  j["n"] = s.n;
  j["k"] = s.k;
  j["L"] = s.L;
  j["w"] = s.w;
  j["poly"] = s.poly;
  j["lambdas"] = s.lambdas;
  j["rotations"] = s.rotations;
  return j;
}

inline CodeSpec spec_from_json(const nlohmann::json& j) {
  CodeSpec s;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rotation")
    s.kind = CodeKind::rotation;
  else if (kind == "permutation")
    s.kind = CodeKind::permutation;
  else if (kind == "reed_solomon")
    s.kind = CodeKind::reed_solomon;
  else
    throw std::invalid_argument("spec: unknown kind '" + kind + "'");
  s.n = j.at("n").get<int>();
  s.k = j.at("k").get<int>();
  s.L = j.at("L").get<int>();
  s.w = j.at("w").get<int>();
  s.poly = j.at("poly").get<std::uint64_t>();
  s.lambdas = j.at("lambdas").get<LambdaTable>();
  s.rotations = j.at("rotations").get<std::vector<RotationTable>>();
  validate_spec(s);
  return s;
}

inline void save_spec(const CodeSpec& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(s).dump(1) << '\n';
}

inline CodeSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  nlohmann::json j;
  in >> j;
  return spec_from_json(j);
}

// Stable identity of a spec (FNV-1a over the canonical dump); shard headers
// carry it so mismatched spec/shard pairings are caught early.
inline std::uint64_t spec_hash(const CodeSpec& s) {
  const std::string dump = to_json(s).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace progec
