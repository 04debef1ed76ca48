#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mltc/multilayer.hpp"
#include "mltc/shard.hpp"

namespace mltc {

/// Everything needed to rebuild a code deterministically.
struct CodeConfig {
  int n = 0;
  int k = 0;
  int d = 0;
  AlgebraKind mode = AlgebraKind::Gf8;
  int p = 0;  // ring modulus, ring mode only
  std::uint64_t seed = 1;
  int layers = 0;
  std::optional<Symbol> forced_coupling;  // every coefficient set to this value

  Algebra algebra() const;
  int w_or_p() const;
  /// Throws SelectionError / ParameterError like MultiLayerCode::build.
  MultiLayerCode build(const VerifyOptions& opts = {}) const;
};

std::string mode_name(AlgebraKind mode);
AlgebraKind parse_mode(const std::string& name);

struct EncodeResult {
  int alpha = 0;
  std::uint64_t stripes = 0;
  std::uint64_t data_length = 0;
  std::uint64_t padding_bytes = 0;
  std::vector<std::filesystem::path> shards;
  std::string fingerprint;
};

struct DecodeResult {
  std::vector<int> nodes;  // shards used
  bool grouped = false;    // group-peeling path taken
  std::uint64_t bytes = 0;
};

struct RepairTrace {
  int failed = 0;
  std::vector<int> helpers;
  std::vector<std::uint64_t> symbols_per_helper;  // per stripe
  std::uint64_t total_symbols = 0;                // per stripe
  std::uint64_t baseline_symbols = 0;             // k alpha
  double savings = 0;                             // 1 - total / baseline
  bool optimal = false;
  std::uint64_t stripes = 0;
  int symbol_bytes = 0;
  std::uint64_t bytes_read = 0;  // measured, headers included
  std::filesystem::path output;
};

std::string shard_file_name(int node);

/// Splits a file into n shards plus manifest.json under out_dir.
EncodeResult encode_file(const std::filesystem::path& input, const std::filesystem::path& out_dir,
                         const CodeConfig& config);

/// Rebuilds the original file from any k intact shards.
DecodeResult decode_file(const std::filesystem::path& dir, const std::filesystem::path& output);

/// Rebuilds one shard, reading only the planned rows of each helper.
/// output defaults to the shard's own path in dir.
RepairTrace repair_shard(const std::filesystem::path& dir, int node,
                         const std::optional<std::filesystem::path>& output = std::nullopt);

/// Code configuration recorded in a shard directory.
CodeConfig load_config(const std::filesystem::path& dir);

}  // namespace mltc
