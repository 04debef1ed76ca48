#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mltc/algebra.hpp"

namespace mltc {

/// Fixed 44-byte little-endian shard header.
///
///   0  magic "MLTC"        20 alpha        u32
///   4  version      u16    24 seed         u64
///   6  mode         u8     32 data_length  u64
///   7  w_or_p       u8     40 crc32        u32 over bytes 0..39
///   8  n, k, d, layers, node (1-based), reserved   u16 each
struct ShardHeader {
  static constexpr std::size_t kSize = 44;
  static constexpr std::uint16_t kVersion = 1;

  std::uint16_t version = kVersion;
  AlgebraKind mode = AlgebraKind::Gf8;
  std::uint8_t w_or_p = 8;
  std::uint16_t n = 0;
  std::uint16_t k = 0;
  std::uint16_t d = 0;
  std::uint16_t layers = 0;
  std::uint16_t node = 0;  // 0-based here, stored 1-based
  std::uint32_t alpha = 0;
  std::uint64_t seed = 0;
  std::uint64_t data_length = 0;

  std::array<std::uint8_t, kSize> serialize() const;
  /// Throws IntegrityError on bad magic, version or checksum.
  static ShardHeader parse(std::span<const std::uint8_t> bytes);

  friend bool operator==(const ShardHeader&, const ShardHeader&) = default;
};

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes);

/// Reads `count` symbols of `bits` bits each from a little-endian bit stream
/// starting at bit `offset`. Bits past the end of the stream read as zero.
void unpack_bits(std::span<const std::uint8_t> stream, std::uint64_t offset, int bits, std::span<Symbol> out);
/// Inverse of unpack_bits; bits past the end of the stream are dropped.
void pack_bits(std::span<const Symbol> symbols, int bits, std::uint64_t offset, std::span<std::uint8_t> stream);

/// Fixed-width little-endian symbol storage (symbol_bytes per symbol).
Symbol load_symbol(const std::uint8_t* p, int symbol_bytes);
void store_symbol(std::uint8_t* p, int symbol_bytes, Symbol s);

}  // namespace mltc
