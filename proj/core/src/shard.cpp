#include "mltc/shard.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>

#include "mltc/errors.hpp"

namespace mltc {

namespace {

template <class T>
void put(std::uint8_t* p, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) p[i] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(v) >> (8 * i));
}

template <class T>
T get(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return static_cast<T>(v);
}

}  // namespace

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
  uLong c = crc32(0L, Z_NULL, 0);
  std::size_t done = 0;
  while (done < bytes.size()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - done, 1u << 30));
    c = crc32(c, bytes.data() + done, chunk);
    done += chunk;
  }
  return static_cast<std::uint32_t>(c);
}

std::array<std::uint8_t, ShardHeader::kSize> ShardHeader::serialize() const {
  std::array<std::uint8_t, kSize> b{};
  std::memcpy(b.data(), "MLTC", 4);
  put<std::uint16_t>(b.data() + 4, version);
  b[6] = static_cast<std::uint8_t>(mode);
  b[7] = w_or_p;
  put<std::uint16_t>(b.data() + 8, n);
  put<std::uint16_t>(b.data() + 10, k);
  put<std::uint16_t>(b.data() + 12, d);
  put<std::uint16_t>(b.data() + 14, layers);
  put<std::uint16_t>(b.data() + 16, static_cast<std::uint16_t>(node + 1));
  put<std::uint16_t>(b.data() + 18, 0);
  put<std::uint32_t>(b.data() + 20, alpha);
  put<std::uint64_t>(b.data() + 24, seed);
  put<std::uint64_t>(b.data() + 32, data_length);
  put<std::uint32_t>(b.data() + 40, crc32_of({b.data(), 40}));
  return b;
}

ShardHeader ShardHeader::parse(std::span<const std::uint8_t> b) {
  if (b.size() < kSize) throw IntegrityError("shard header truncated");
  if (std::memcmp(b.data(), "MLTC", 4) != 0) throw IntegrityError("not a shard file (bad magic)");
  if (get<std::uint32_t>(b.data() + 40) != crc32_of(b.subspan(0, 40))) throw IntegrityError("shard header checksum mismatch");
  ShardHeader h;
  h.version = get<std::uint16_t>(b.data() + 4);
  if (h.version != kVersion) throw IntegrityError("unsupported shard version " + std::to_string(h.version));
  if (b[6] > 2) throw IntegrityError("unknown symbol mode in shard header");
  h.mode = static_cast<AlgebraKind>(b[6]);
  h.w_or_p = b[7];
  h.n = get<std::uint16_t>(b.data() + 8);
  h.k = get<std::uint16_t>(b.data() + 10);
  h.d = get<std::uint16_t>(b.data() + 12);
  h.layers = get<std::uint16_t>(b.data() + 14);
  const auto node1 = get<std::uint16_t>(b.data() + 16);
  if (node1 == 0 || node1 > h.n) throw IntegrityError("shard header node index out of range");
  h.node = static_cast<std::uint16_t>(node1 - 1);
  h.alpha = get<std::uint32_t>(b.data() + 20);
  h.seed = get<std::uint64_t>(b.data() + 24);
  h.data_length = get<std::uint64_t>(b.data() + 32);
  return h;
}

void unpack_bits(std::span<const std::uint8_t> stream, std::uint64_t offset, int bits, std::span<Symbol> out) {
  if (bits % 8 == 0 && offset % 8 == 0) {
    const int nb = bits / 8;
    std::size_t pos = offset / 8;
    for (auto& s : out) {
      Symbol v = 0;
      for (int i = 0; i < nb; ++i, ++pos)
        if (pos < stream.size()) v |= static_cast<Symbol>(stream[pos]) << (8 * i);
      s = v;
    }
    return;
  }
  const std::uint64_t total = stream.size() * 8ull;
  for (auto& s : out) {
    Symbol v = 0;
    for (int i = 0; i < bits; ++i, ++offset)
      if (offset < total && (stream[offset / 8] >> (offset % 8)) & 1u) v |= Symbol{1} << i;
    s = v;
  }
}

void pack_bits(std::span<const Symbol> symbols, int bits, std::uint64_t offset, std::span<std::uint8_t> stream) {
  if (bits % 8 == 0 && offset % 8 == 0) {
    const int nb = bits / 8;
    std::size_t pos = offset / 8;
    for (Symbol s : symbols)
      for (int i = 0; i < nb; ++i, ++pos)
        if (pos < stream.size()) stream[pos] = static_cast<std::uint8_t>(s >> (8 * i));
    return;
  }
  const std::uint64_t total = stream.size() * 8ull;
  for (Symbol s : symbols)
    for (int i = 0; i < bits; ++i, ++offset) {
      if (offset >= total) continue;
      const auto bit = static_cast<std::uint8_t>(1u << (offset % 8));
      if ((s >> i) & 1u)
        stream[offset / 8] |= bit;
      else
        stream[offset / 8] &= static_cast<std::uint8_t>(~bit);
    }
}

Symbol load_symbol(const std::uint8_t* p, int symbol_bytes) {
  Symbol v = 0;
  for (int i = 0; i < symbol_bytes; ++i) v |= static_cast<Symbol>(p[i]) << (8 * i);
  return v;
}

void store_symbol(std::uint8_t* p, int symbol_bytes, Symbol s) {
  for (int i = 0; i < symbol_bytes; ++i) p[i] = static_cast<std::uint8_t>(s >> (8 * i));
}

}  // namespace mltc
