#pragma once
// Recovery benchmark: encode a random file once per field width, then time
// repairs across participation levels. Every trial is verified byte-exact
// against the pre-failure shard before its timing counts; throughput is
// recovered payload bytes over wall time.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <vector>

#include "progec/mds.hpp"
#include "progec/shard.hpp"

namespace progec {

struct BenchConfig {
  int n = 10, k = 3;
  std::vector<int> widths = {8, 16, 32};
  std::uint64_t size_bytes = 1 << 20;
  int trials = 3;
  std::uint64_t seed = 1;
  std::filesystem::path dir;  // scratch space, created if missing
};

struct BenchRow {
  int w = 0, p = 0;
  long long blocks_read = 0;
  std::uint64_t bytes_read = 0;
  double seconds = 0;  // mean per repair
  double mbps = 0;     // recovered MB per second
  bool verified = false;
  int trials = 0;
};

inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  namespace fs = std::filesystem;
  std::vector<BenchRow> rows;
  if (cfg.trials <= 0) return rows;
  fs::create_directories(cfg.dir);

  const auto input = cfg.dir / "input.bin";
  {
    std::mt19937_64 rng(cfg.seed);
    std::vector<unsigned char> data(cfg.size_bytes);
    for (auto& b : data) b = (unsigned char)rng();
    std::ofstream out(input, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(data.data()), data.size());
    if (!out) throw std::runtime_error("bench: cannot write scratch input");
  }

  for (int w : cfg.widths) {
    auto spec = build_permutation_code(cfg.n, cfg.k, w, cfg.seed);
    const auto dir = cfg.dir / ("w" + std::to_string(w));
    encode_file(spec, input, dir);
    std::mt19937_64 rng(cfg.seed ^ (std::uint64_t(w) << 32));

    for (int p = 1; p <= spec.m(); ++p) {
      BenchRow row;
      row.w = w;
      row.p = p;
      row.trials = cfg.trials;
      row.verified = true;
      double total_sec = 0;
      std::uint64_t recovered_bytes = 0;
      for (int t = 0; t < cfg.trials; ++t) {
        const NodeId failed{NodeRole::systematic, int(rng() % cfg.k)};
        std::vector<int> all(spec.m());
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<int> subset(all.begin(), all.begin() + p);
        std::sort(subset.begin(), subset.end());

        const auto shard = dir / shard_filename(failed);
        std::vector<unsigned char> original;
        {
          std::ifstream in(shard, std::ios::binary);
          original.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        }
        fs::remove(shard);

        const auto start = std::chrono::steady_clock::now();
        auto rep = repair_file(spec, dir, failed, subset);
        const auto stop = std::chrono::steady_clock::now();

        std::vector<unsigned char> rebuilt;
        {
          std::ifstream in(shard, std::ios::binary);
          rebuilt.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        }
        if (rebuilt != original) row.verified = false;

        total_sec += std::chrono::duration<double>(stop - start).count();
        recovered_bytes += rebuilt.size() - shard_header_bytes();
        row.blocks_read = rep.blocks_read;
        row.bytes_read = rep.bytes_read;
      }
      row.seconds = total_sec / cfg.trials;
      row.mbps = row.seconds > 0
                     ? (double(recovered_bytes) / cfg.trials) / (1024.0 * 1024.0) / row.seconds
                     : 0;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace progec
