#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include <unistd.h>

#include "doctest.h"
#include "mltc/errors.hpp"
#include "mltc/shard.hpp"
#include "mltc/storage.hpp"

using namespace mltc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path = fs::temp_directory_path() / ("mltc_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::vector<std::uint8_t> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::vector<std::uint8_t>& b) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
}

std::vector<std::uint8_t> random_bytes(std::mt19937& rng, std::size_t n) {
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(rng());
  return v;
}

}  // namespace

TEST_CASE("shard header round trip and corruption") {
  ShardHeader h;
  h.mode = AlgebraKind::Ring;
  h.w_or_p = 11;
  h.n = 7;
  h.k = 4;
  h.d = 5;
  h.layers = 2;
  h.node = 6;
  h.alpha = 4;
  h.seed = 0x0123456789abcdefULL;
  h.data_length = 123456789;
  auto bytes = h.serialize();
  CHECK(bytes[0] == 'M');
  CHECK(bytes[3] == 'C');
  CHECK(bytes[16] == 7);  // node stored 1-based
  CHECK(ShardHeader::parse(bytes) == h);
  bytes[9] ^= 1;
  CHECK_THROWS_AS(ShardHeader::parse(bytes), IntegrityError);
  bytes = h.serialize();
  bytes[0] = 'X';
  CHECK_THROWS_AS(ShardHeader::parse(bytes), IntegrityError);
  CHECK_THROWS_AS(ShardHeader::parse(std::span(bytes).first(20)), IntegrityError);
}

TEST_CASE("crc32 check value") {
  const std::string s = "123456789";
  CHECK(crc32_of({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}) == 0xCBF43926u);
}

TEST_CASE("bit packing round trips for every width") {
  std::mt19937 rng(50);
  for (int bits : {4, 8, 10, 16}) {
    CAPTURE(bits);
    std::vector<Symbol> sym(37);
    for (auto& s : sym) s = rng() & ((1u << bits) - 1);
    std::vector<std::uint8_t> stream((37 * bits + 7) / 8 + 3, 0);
    pack_bits(sym, bits, 5, stream);
    std::vector<Symbol> back(37);
    unpack_bits(stream, 5, bits, back);
    CHECK(back == sym);
  }
  const std::vector<std::uint8_t> one{0xAB};
  std::vector<Symbol> out(3);
  unpack_bits(one, 0, 4, out);
  CHECK(out == std::vector<Symbol>{0xB, 0xA, 0});
}

TEST_CASE("encode and decode files with n - k shards lost") {
  std::mt19937 rng(51);
  for (auto cfg : {CodeConfig{8, 5, 6, AlgebraKind::Gf8, 0, 3}, CodeConfig{6, 4, 5, AlgebraKind::Gf16, 0, 4},
                   CodeConfig{6, 4, 5, AlgebraKind::Ring, 5, 5}}) {
    CAPTURE(mode_name(cfg.mode));
    for (std::size_t size : {std::size_t{0}, std::size_t{1}, std::size_t{999}, std::size_t{40000}}) {
      TempDir tmp("enc");
      const auto data = random_bytes(rng, size);
      spit(tmp.path / "in.bin", data);
      const auto res = encode_file(tmp.path / "in.bin", tmp.path / "shards", cfg);
      CHECK(res.shards.size() == static_cast<std::size_t>(cfg.n));
      CHECK(fs::exists(tmp.path / "shards" / "manifest.json"));
      CHECK(fs::exists(tmp.path / "shards" / "shard_001.mltc"));

      std::vector<int> order(static_cast<std::size_t>(cfg.n));
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      for (int i = 0; i < cfg.n - cfg.k; ++i) fs::remove(tmp.path / "shards" / shard_file_name(order[static_cast<std::size_t>(i)]));
      const auto dr = decode_file(tmp.path / "shards", tmp.path / "out.bin");
      CHECK(dr.bytes == size);
      CHECK(slurp(tmp.path / "out.bin") == data);

      fs::remove(tmp.path / "shards" / shard_file_name(order[static_cast<std::size_t>(cfg.n - cfg.k)]));
      CHECK_THROWS_AS(decode_file(tmp.path / "shards", tmp.path / "out2.bin"), InsufficientShards);
    }
  }
}

TEST_CASE("corrupt shards are skipped by decode") {
  std::mt19937 rng(52);
  TempDir tmp("corrupt");
  const auto data = random_bytes(rng, 5000);
  spit(tmp.path / "in.bin", data);
  encode_file(tmp.path / "in.bin", tmp.path / "s", CodeConfig{8, 5, 6});
  for (int h : {0, 3}) {
    auto b = slurp(tmp.path / "s" / shard_file_name(h));
    b[100] ^= 0x40;
    spit(tmp.path / "s" / shard_file_name(h), b);
  }
  fs::remove(tmp.path / "s" / shard_file_name(7));
  CHECK(decode_file(tmp.path / "s", tmp.path / "out.bin").nodes.size() == 5);
  CHECK(slurp(tmp.path / "out.bin") == data);
  auto b = slurp(tmp.path / "s" / shard_file_name(5));
  b[60] ^= 1;
  spit(tmp.path / "s" / shard_file_name(5), b);
  try {
    decode_file(tmp.path / "s", tmp.path / "out.bin");
    FAIL("expected InsufficientShards");
  } catch (const InsufficientShards& e) {
    CHECK(std::string(e.what()).find("short by 1") != std::string::npos);
  }
}

TEST_CASE("repair rebuilds shards bit for bit and reads only planned rows") {
  std::mt19937 rng(53);
  for (auto cfg : {CodeConfig{8, 5, 6}, CodeConfig{9, 6, 7, AlgebraKind::Gf16}, CodeConfig{6, 4, 5, AlgebraKind::Ring, 5}}) {
    CAPTURE(cfg.n);
    TempDir tmp("rep");
    spit(tmp.path / "in.bin", random_bytes(rng, 7777));
    const auto enc = encode_file(tmp.path / "in.bin", tmp.path / "s", cfg);
    const MultiLayerCode code = cfg.build();
    for (int x = 0; x < cfg.n; ++x) {
      const fs::path file = tmp.path / "s" / shard_file_name(x);
      const auto original = slurp(file);
      fs::remove(file);
      const auto tr = repair_shard(tmp.path / "s", x);
      CHECK(slurp(file) == original);
      const auto plan = code.plan_repair(x);
      CHECK(tr.helpers == plan.helpers);
      CHECK(tr.optimal == plan.optimal);
      CHECK(tr.total_symbols == plan.symbols_read());
      const std::uint64_t sw = static_cast<std::uint64_t>(code.algebra().symbol_bytes());
      CHECK(tr.bytes_read == plan.helpers.size() * ShardHeader::kSize +
                                 plan.helpers.size() * plan.rows.size() * enc.stripes * sw);
    }
  }
}

TEST_CASE("repair reports missing helpers") {
  std::mt19937 rng(54);
  TempDir tmp("miss");
  spit(tmp.path / "in.bin", random_bytes(rng, 300));
  encode_file(tmp.path / "in.bin", tmp.path / "s", CodeConfig{8, 5, 6});
  fs::remove(tmp.path / "s" / shard_file_name(0));
  fs::remove(tmp.path / "s" / shard_file_name(1));
  try {
    repair_shard(tmp.path / "s", 0);
    FAIL("expected InsufficientShards");
  } catch (const InsufficientShards& e) {
    CHECK(std::string(e.what()).find("missing {2}") != std::string::npos);
  }
  CHECK_THROWS_AS(repair_shard(tmp.path / "s", 8), ParameterError);
}

TEST_CASE("encode refuses codes that fail the MDS check") {
  std::mt19937 rng(55);
  TempDir tmp("forced");
  spit(tmp.path / "in.bin", random_bytes(rng, 100));
  CodeConfig cfg{8, 5, 6};
  cfg.forced_coupling = 1;
  CHECK_THROWS_AS(encode_file(tmp.path / "in.bin", tmp.path / "s", cfg), IntegrityError);
  CHECK_FALSE(fs::exists(tmp.path / "s" / "manifest.json"));
}

TEST_CASE("load_config reads back the manifest") {
  std::mt19937 rng(56);
  TempDir tmp("cfg");
  spit(tmp.path / "in.bin", random_bytes(rng, 10));
  CodeConfig cfg{7, 4, 5, AlgebraKind::Ring, 11, 9};
  encode_file(tmp.path / "in.bin", tmp.path / "s", cfg);
  const auto back = load_config(tmp.path / "s");
  CHECK(back.n == 7);
  CHECK(back.k == 4);
  CHECK(back.d == 5);
  CHECK(back.mode == AlgebraKind::Ring);
  CHECK(back.p == 11);
  CHECK(back.seed == 9);
  CHECK(parse_mode("gf16") == AlgebraKind::Gf16);
  CHECK_THROWS_AS(parse_mode("gf32"), ParameterError);
}

TEST_CASE("randomized headers round trip") {
  std::mt19937_64 rng(57);
  for (int i = 0; i < 1000; ++i) {
    ShardHeader h;
    h.mode = static_cast<AlgebraKind>(rng() % 3);
    h.w_or_p = static_cast<std::uint8_t>(rng());
    h.n = static_cast<std::uint16_t>(1 + rng() % 65535);
    h.k = static_cast<std::uint16_t>(rng());
    h.d = static_cast<std::uint16_t>(rng());
    h.layers = static_cast<std::uint16_t>(rng());
    h.node = static_cast<std::uint16_t>(rng() % h.n);
    h.alpha = static_cast<std::uint32_t>(rng());
    h.seed = rng();
    h.data_length = rng();
    REQUIRE(ShardHeader::parse(h.serialize()) == h);
  }
}

TEST_CASE("encode, drop any n - k shards, decode: 100 files per parameter set") {
  std::mt19937 rng(58);
  for (auto cfg : {CodeConfig{6, 4, 5}, CodeConfig{8, 5, 6}, CodeConfig{9, 6, 7}, CodeConfig{11, 6, 8, AlgebraKind::Gf8, 0, 1, 1}}) {
    CAPTURE(cfg.n);
    TempDir tmp("grid");
    for (int trial = 0; trial < 100; ++trial) {
      const auto data = random_bytes(rng, rng() % 3000);
      spit(tmp.path / "in.bin", data);
      const fs::path dir = tmp.path / ("s" + std::to_string(trial));
      encode_file(tmp.path / "in.bin", dir, cfg);
      std::vector<int> order(static_cast<std::size_t>(cfg.n));
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      for (int i = 0; i < cfg.n - cfg.k; ++i) fs::remove(dir / shard_file_name(order[static_cast<std::size_t>(i)]));
      decode_file(dir, tmp.path / "out.bin");
      REQUIRE(slurp(tmp.path / "out.bin") == data);
      fs::remove_all(dir);
    }
  }
}
