#pragma once
// Node shards on disk: a fixed little-endian header binding the shard to a
// code spec (by hash) and a payload of L blocks x s symbols. The original
// byte length travels in the header so zero padding is reversible.

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "progec/repair.hpp"
#include "progec/serialize.hpp"

namespace progec {

struct ShardHeader {
  static constexpr std::array<char, 4> kMagic = {'P', 'G', 'E', 'C'};
  static constexpr std::uint32_t kVersion = 1;

  std::uint32_t w = 0;
  NodeId node;
  std::uint32_t n = 0, k = 0, L = 0;
  std::uint64_t s = 0;         // symbols per block
  std::uint64_t orig_len = 0;  // file bytes before padding
  std::uint64_t spec_hash = 0;
};

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = char((v >> (8 * i)) & 0xFF);
  os.write(b, 4);
}

inline void put_u64(std::ostream& os, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = char((v >> (8 * i)) & 0xFF);
  os.write(b, 8);
}

inline std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
  return v;
}

inline std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
  return v;
}

}  // namespace detail

inline constexpr std::size_t shard_header_bytes() { return 4 + 7 * 4 + 3 * 8; }

inline void write_shard_header(std::ostream& os, const ShardHeader& h) {
  os.write(h.kMagic.data(), 4);
  detail::put_u32(os, h.kVersion);
  detail::put_u32(os, h.w);
  detail::put_u32(os, h.node.role == NodeRole::parity ? 1 : 0);
  detail::put_u32(os, std::uint32_t(h.node.index));
  detail::put_u32(os, h.n);
  detail::put_u32(os, h.k);
  detail::put_u32(os, h.L);
  detail::put_u64(os, h.s);
  detail::put_u64(os, h.orig_len);
  detail::put_u64(os, h.spec_hash);
}

inline ShardHeader read_shard_header(std::istream& is) {
  std::array<char, 4> magic{};
  is.read(magic.data(), 4);
  if (!is || magic != ShardHeader::kMagic) throw std::runtime_error("shard: bad magic");
  if (detail::get_u32(is) != ShardHeader::kVersion)
    throw std::runtime_error("shard: unsupported version");
  ShardHeader h;
  h.w = detail::get_u32(is);
  const std::uint32_t role = detail::get_u32(is);
  h.node.role = role ? NodeRole::parity : NodeRole::systematic;
  h.node.index = int(detail::get_u32(is));
  h.n = detail::get_u32(is);
  h.k = detail::get_u32(is);
  h.L = detail::get_u32(is);
  h.s = detail::get_u64(is);
  h.orig_len = detail::get_u64(is);
  h.spec_hash = detail::get_u64(is);
  if (!is) throw std::runtime_error("shard: truncated header");
  return h;
}

// Reject a shard whose header disagrees with the spec it is used under.
inline void check_shard_header(const ShardHeader& h, const CodeSpec& s) {
  if (h.spec_hash != spec_hash(s)) throw std::runtime_error("shard: spec hash mismatch");
  if (int(h.w) != s.w || int(h.n) != s.n || int(h.k) != s.k || int(h.L) != s.L)
    throw std::runtime_error("shard: geometry mismatch");
}

inline std::string shard_filename(const NodeId& id) { return to_string(id) + ".shard"; }

// ---- symbol packing --------------------------------------------------------

inline std::size_t symbol_bytes(int w) { return std::size_t(w) / 8; }

// Little-endian bytes -> symbols; trailing partial symbol is zero-extended.
inline std::vector<Symbol> bytes_to_symbols(const std::vector<unsigned char>& bytes, int w,
                                            std::size_t count) {
  const std::size_t sb = symbol_bytes(w);
  std::vector<Symbol> out(count, 0);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t b = 0; b < sb; ++b) {
      const std::size_t pos = i * sb + b;
      if (pos < bytes.size()) out[i] |= Symbol(bytes[pos]) << (8 * b);
    }
  return out;
}

inline void append_symbol_bytes(std::vector<unsigned char>& out, Symbol v, int w) {
  for (std::size_t b = 0; b < symbol_bytes(w); ++b)
    out.push_back((unsigned char)((v >> (8 * b)) & 0xFF));
}

// ---- whole-file encode -----------------------------------------------------

struct EncodeResult {
  std::uint64_t s = 0;          // symbols per block
  std::uint64_t orig_len = 0;   // input bytes
  std::vector<std::filesystem::path> shards;  // systematic then parity
};

inline EncodeResult encode_file(const CodeSpec& spec, const std::filesystem::path& input,
                                const std::filesystem::path& out_dir) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw std::runtime_error("encode: cannot open " + input.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  in.close();

  const std::size_t sb = symbol_bytes(spec.w);
  const std::uint64_t stripe = std::uint64_t(spec.k) * spec.L * sb;
  const std::uint64_t s = bytes.empty() ? 1 : (bytes.size() + stripe - 1) / stripe;

  // node-major layout: node i, block t holds symbols [(i L + t) s, ...)
  auto data = bytes_to_symbols(bytes, spec.w, std::size_t(spec.k) * spec.L * s);
  std::vector<NodeVector> nodes(spec.k);
  std::size_t at = 0;
  for (int i = 0; i < spec.k; ++i) {
    nodes[i].id = {NodeRole::systematic, i};
    nodes[i].blocks.resize(spec.L);
    for (int t = 0; t < spec.L; ++t) {
      nodes[i].blocks[t].assign(data.begin() + at, data.begin() + at + s);
      at += s;
    }
  }
  auto parity = encode(spec, nodes);
  nodes.insert(nodes.end(), std::make_move_iterator(parity.begin()),
               std::make_move_iterator(parity.end()));

  std::filesystem::create_directories(out_dir);
  EncodeResult res;
  res.s = s;
  res.orig_len = bytes.size();
  for (const auto& node : nodes) {
    ShardHeader h;
    h.w = spec.w;
    h.node = node.id;
    h.n = spec.n;
    h.k = spec.k;
    h.L = spec.L;
    h.s = s;
    h.orig_len = bytes.size();
    h.spec_hash = spec_hash(spec);
    const auto path = out_dir / shard_filename(node.id);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("encode: cannot write " + path.string());
    write_shard_header(out, h);
    std::vector<unsigned char> payload;
    payload.reserve(std::size_t(spec.L) * s * sb);
    for (const auto& block : node.blocks)
      for (Symbol v : block) append_symbol_bytes(payload, v, spec.w);
    out.write(reinterpret_cast<const char*>(payload.data()), payload.size());
    if (!out) throw std::runtime_error("encode: short write on " + path.string());
    res.shards.push_back(path);
  }
  return res;
}

// ---- shard reading ---------------------------------------------------------

inline ShardHeader read_shard_header(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("shard: cannot open " + path.string());
  return read_shard_header(in);
}

inline NodeVector read_shard(const std::filesystem::path& path, const CodeSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("shard: cannot open " + path.string());
  ShardHeader h = read_shard_header(in);
  check_shard_header(h, spec);
  NodeVector node;
  node.id = h.node;
  node.blocks.assign(h.L, Block(h.s));
  const std::size_t sb = symbol_bytes(spec.w);
  std::vector<unsigned char> buf(std::size_t(h.s) * sb);
  for (auto& block : node.blocks) {
    in.read(reinterpret_cast<char*>(buf.data()), buf.size());
    if (!in) throw std::runtime_error("shard: truncated payload in " + path.string());
    block = bytes_to_symbols(buf, spec.w, h.s);
  }
  return node;
}

// Random access into shard payloads with per-node open-file reuse; verifies
// each header once on first touch.
class ShardStore {
 public:
  ShardStore(std::filesystem::path dir, const CodeSpec& spec)
      : dir_(std::move(dir)), spec_(spec) {}

  Block fetch(const NodeId& id, int row) {
    auto& slot = open_[global_node_id(id, spec_.k)];
    if (!slot.stream.is_open()) {
      const auto path = dir_ / shard_filename(id);
      slot.stream.open(path, std::ios::binary);
      if (!slot.stream) throw std::runtime_error("shard: cannot open " + path.string());
      slot.header = read_shard_header(slot.stream);
      check_shard_header(slot.header, spec_);
      if (slot.header.node != id) throw std::runtime_error("shard: node mismatch in " + path.string());
    }
    const std::size_t sb = symbol_bytes(spec_.w);
    const std::uint64_t off = shard_header_bytes() + std::uint64_t(row) * slot.header.s * sb;
    slot.stream.seekg(off);
    std::vector<unsigned char> buf(std::size_t(slot.header.s) * sb);
    slot.stream.read(reinterpret_cast<char*>(buf.data()), buf.size());
    if (!slot.stream) throw std::runtime_error("shard: truncated read");
    return bytes_to_symbols(buf, spec_.w, slot.header.s);
  }

  // header of any present shard (for s / orig_len)
  ShardHeader probe(const NodeId& id) {
    fetch(id, 0);
    return open_[global_node_id(id, spec_.k)].header;
  }

 private:
  struct Slot {
    std::ifstream stream;
    ShardHeader header;
  };
  std::filesystem::path dir_;
  CodeSpec spec_;
  std::map<int, Slot> open_;
};

struct RepairFileResult {
  RepairPlan plan;
  std::uint64_t blocks_read = 0;
  std::uint64_t bytes_read = 0;
  std::filesystem::path shard;
};

// Plan and execute the repair of one node from the shards in `dir`, writing
// the reconstructed shard back. With no explicit method, systematic failures
// use the structural two-phase plan on permutation codes and the exact
// planner otherwise; parity failures are always re-encoded from the k
// systematic shards.
inline RepairFileResult repair_file(const CodeSpec& spec, const std::filesystem::path& dir,
                                    const NodeId& failed, const std::vector<int>& parities,
                                    std::optional<PlanMethod> method = {},
                                    long long cap = 1'000'000) {
  RepairFileResult res;
  if (failed.role == NodeRole::parity) {
    res.plan = plan_parity_rebuild(spec, failed.index);
  } else {
    const PlanMethod pick = method.value_or(
        spec.kind == CodeKind::permutation ? PlanMethod::two_phase : PlanMethod::exact);
    switch (pick) {
      case PlanMethod::two_phase:
        res.plan = plan_repair_permutation(spec, failed.index, parities);
        break;
      case PlanMethod::greedy:
        res.plan = plan_repair_greedy(spec, failed.index, parities);
        break;
      case PlanMethod::exact:
        res.plan = plan_repair_exact(spec, failed.index, parities, cap);
        break;
      default:
        throw std::invalid_argument("repair: reencode applies to parity failures only");
    }
  }

  ShardStore store(dir, spec);
  auto blocks = execute_plan(
      spec, [&](const NodeId& id, int row) { return store.fetch(id, row); }, res.plan);

  const ShardHeader ref = store.probe(res.plan.downloads.front().node);
  ShardHeader h = ref;
  h.node = failed;
  const auto path = dir / shard_filename(failed);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("repair: cannot write " + path.string());
  write_shard_header(out, h);
  std::vector<unsigned char> payload;
  payload.reserve(std::size_t(spec.L) * ref.s * symbol_bytes(spec.w));
  for (const auto& block : blocks)
    for (Symbol v : block) append_symbol_bytes(payload, v, spec.w);
  out.write(reinterpret_cast<const char*>(payload.data()), payload.size());
  if (!out) throw std::runtime_error("repair: short write on " + path.string());

  res.blocks_read = std::uint64_t(res.plan.cost);
  res.bytes_read = res.blocks_read * ref.s * symbol_bytes(spec.w);
  res.shard = path;
  return res;
}

// Reassemble the original file from the k systematic shards.
inline void decode_file(const CodeSpec& spec, const std::filesystem::path& dir,
                        const std::filesystem::path& output) {
  std::vector<unsigned char> bytes;
  std::uint64_t orig = 0;
  for (int i = 0; i < spec.k; ++i) {
    auto node = read_shard(dir / shard_filename({NodeRole::systematic, i}), spec);
    orig = read_shard_header(dir / shard_filename({NodeRole::systematic, i})).orig_len;
    for (const auto& block : node.blocks)
      for (Symbol v : block) append_symbol_bytes(bytes, v, spec.w);
  }
  bytes.resize(orig);
  std::ofstream out(output, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("decode: cannot write " + output.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

}  // namespace progec
