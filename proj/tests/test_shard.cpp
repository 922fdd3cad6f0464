#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "progec/shard.hpp"

using namespace progec;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir(const std::string& tag) : path(fs::temp_directory_path() / ("progec_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

fs::path write_random_file(const fs::path& dir, std::size_t bytes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<unsigned char> data(bytes);
  for (auto& b : data) b = (unsigned char)rng();
  auto p = dir / "input.bin";
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(data.data()), data.size());
  return p;
}

std::vector<unsigned char> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("header round trips through its byte layout") {
  ShardHeader h;
  h.w = 16;
  h.node = {NodeRole::parity, 2};
  h.n = 6, h.k = 3, h.L = 4;
  h.s = 12345;
  h.orig_len = 999999;
  h.spec_hash = 0xDEADBEEFCAFEF00DULL;

  std::stringstream ss;
  write_shard_header(ss, h);
  CHECK(ss.str().size() == shard_header_bytes());
  auto back = read_shard_header(ss);
  CHECK(back.w == h.w);
  CHECK(back.node == h.node);
  CHECK(back.n == h.n);
  CHECK(back.k == h.k);
  CHECK(back.L == h.L);
  CHECK(back.s == h.s);
  CHECK(back.orig_len == h.orig_len);
  CHECK(back.spec_hash == h.spec_hash);

  std::stringstream bad("nope");
  CHECK_THROWS_AS(read_shard_header(bad), std::runtime_error);
}

TEST_CASE("symbol packing is little-endian with zero fill") {
  std::vector<unsigned char> bytes = {0x01, 0x02, 0x03};
  CHECK(bytes_to_symbols(bytes, 8, 4) == std::vector<Symbol>{1, 2, 3, 0});
  CHECK(bytes_to_symbols(bytes, 16, 2) == std::vector<Symbol>{0x0201, 0x0003});
  CHECK(bytes_to_symbols(bytes, 32, 1) == std::vector<Symbol>{0x00030201});
  std::vector<unsigned char> out;
  append_symbol_bytes(out, 0x0201, 16);
  CHECK(out == std::vector<unsigned char>{0x01, 0x02});
}

TEST_CASE("encode fans a file out into checkable shards") {
  TempDir tmp("encode");
  auto s = fixtures::perm52();
  auto input = write_random_file(tmp.path, 10 * 1024 + 7, 11);  // deliberately unaligned
  auto res = encode_file(s, input, tmp.path / "shards");
  REQUIRE(res.shards.size() == 5);
  CHECK(res.orig_len == 10 * 1024 + 7);
  // s = ceil(bytes / (k L sym)) with k=2, L=9, 1-byte symbols
  CHECK(res.s == (10 * 1024 + 7 + 17) / 18);

  for (const auto& p : res.shards) {
    auto h = read_shard_header(p);
    CHECK(h.spec_hash == spec_hash(s));
    CHECK(h.s == res.s);
    CHECK(fs::file_size(p) == shard_header_bytes() + 9 * res.s);
  }

  // parity payloads satisfy the defining equations, via read_shard
  std::vector<NodeVector> nodes;
  for (const auto& p : res.shards) nodes.push_back(read_shard(p, s));
  auto parity = encode(s, {nodes.begin(), nodes.begin() + 2});
  for (int j = 0; j < 3; ++j) CHECK(parity[j].blocks == nodes[2 + j].blocks);

  // and the file reassembles byte-identically
  decode_file(s, tmp.path / "shards", tmp.path / "roundtrip.bin");
  CHECK(slurp(tmp.path / "roundtrip.bin") == slurp(input));
}

TEST_CASE("empty input still produces one zero block per row") {
  TempDir tmp("empty");
  auto s = fixtures::perm42();
  std::ofstream(tmp.path / "empty.bin").close();
  auto res = encode_file(s, tmp.path / "empty.bin", tmp.path / "shards");
  CHECK(res.s == 1);
  for (const auto& p : res.shards) {
    auto node = read_shard(p, s);
    for (const auto& b : node.blocks) {
      REQUIRE(b.size() == 1);
      CHECK(b[0] == 0);
    }
  }
  decode_file(s, tmp.path / "shards", tmp.path / "back.bin");
  CHECK(fs::file_size(tmp.path / "back.bin") == 0);
}

TEST_CASE("repair rebuilds byte-identical shards") {
  TempDir tmp("repair");
  auto input = write_random_file(tmp.path, 4096, 77);

  auto run = [&](const CodeSpec& s, const std::string& tag) {
    const auto dir = tmp.path / tag;
    auto res = encode_file(s, input, dir);
    for (int g = 0; g < s.n; ++g) {
      const NodeId id = node_from_global(g, s.k);
      const auto shard = dir / shard_filename(id);
      const auto original = slurp(shard);
      fs::remove(shard);
      std::vector<int> parities(s.m());
      std::iota(parities.begin(), parities.end(), 0);
      auto rep = repair_file(s, dir, id, parities);
      CAPTURE(tag, g);
      CHECK(slurp(shard) == original);
      CHECK(rep.blocks_read == std::uint64_t(rep.plan.cost));
      CHECK(rep.bytes_read == rep.blocks_read * res.s * symbol_bytes(s.w));
    }
  };

  run(fixtures::code63(), "rot8");
  run(fixtures::perm52(), "perm8");
  run(build_rs_code(6, 3, 4, 16), "rs16");
  run(build_rs_code(4, 2, 3, 32), "rs32");
}

TEST_CASE("repair honours explicit planner choices and smaller subsets") {
  TempDir tmp("methods");
  auto s = fixtures::perm52();
  auto input = write_random_file(tmp.path, 2000, 5);
  auto dir = tmp.path / "shards";
  encode_file(s, input, dir);
  const auto shard = dir / shard_filename({NodeRole::systematic, 0});
  const auto original = slurp(shard);

  for (auto method : {PlanMethod::two_phase, PlanMethod::exact, PlanMethod::greedy})
    for (const std::vector<int>& subset :
         {std::vector<int>{0}, std::vector<int>{1, 2}, std::vector<int>{0, 1, 2}}) {
      fs::remove(shard);
      auto rep = repair_file(s, dir, {NodeRole::systematic, 0}, subset, method);
      CHECK(rep.plan.method == method);
      CHECK(slurp(shard) == original);
    }
}

TEST_CASE("shards from another spec or tampered bytes are refused") {
  TempDir tmp("corrupt");
  auto s = fixtures::perm42();
  auto input = write_random_file(tmp.path, 512, 3);
  auto dir = tmp.path / "shards";
  encode_file(s, input, dir);

  SECTION("hash mismatch") {
    auto other = fixtures::perm52();
    CHECK_THROWS_WITH(read_shard(dir / "s1.shard", other),
                      Catch::Matchers::ContainsSubstring("hash"));
  }
  SECTION("tampered header") {
    auto p = dir / "s2.shard";
    auto bytes = slurp(p);
    bytes[48] ^= 0xFF;  // inside the hash field
    std::ofstream(p, std::ios::binary).write(reinterpret_cast<char*>(bytes.data()), bytes.size());
    CHECK_THROWS_AS(repair_file(s, dir, {NodeRole::systematic, 0}, {0, 1}), std::runtime_error);
  }
  SECTION("missing helper shard") {
    fs::remove(dir / "p1.shard");
    CHECK_THROWS_AS(repair_file(s, dir, {NodeRole::systematic, 0}, {0, 1}), std::runtime_error);
  }
}

TEST_CASE("wide symbols survive ragged padding") {
  TempDir tmp("wide");
  for (int w : {16, 32}) {
    auto s = build_rs_code(4, 2, 5, w);
    auto input = write_random_file(tmp.path, 1001, 100 + w);  // not a multiple of anything
    auto dir = tmp.path / ("w" + std::to_string(w));
    encode_file(s, input, dir);
    decode_file(s, dir, tmp.path / "out.bin");
    CHECK(slurp(tmp.path / "out.bin") == slurp(input));
  }
}
