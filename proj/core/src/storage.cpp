#include "mltc/storage.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>

#include "json.hpp"
#include "mltc/errors.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace mltc {

namespace {

constexpr const char* kManifest = "manifest.json";
constexpr std::size_t kGroupedSearchCap = 20'000;

std::vector<std::uint8_t> read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_atomic(const fs::path& p, std::span<const std::uint8_t> bytes) {
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, p);
}

void write_atomic(const fs::path& p, const std::string& text) {
  write_atomic(p, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string join1(const std::vector<int>& v) {
  std::string s;
  for (int h : v) s += (s.empty() ? "" : ",") + std::to_string(h + 1);
  return "{" + s + "}";
}

json read_manifest(const fs::path& dir) {
  const fs::path p = dir / kManifest;
  if (!fs::exists(p)) throw IntegrityError("no " + std::string(kManifest) + " in " + dir.string());
  std::ifstream in(p);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IntegrityError("unreadable manifest: " + std::string(e.what()));
  }
}

ShardHeader header_for(const CodeConfig& c, const MultiLayerCode& code, int node, std::uint64_t length) {
  ShardHeader h;
  h.mode = c.mode;
  h.w_or_p = static_cast<std::uint8_t>(c.w_or_p());
  h.n = static_cast<std::uint16_t>(c.n);
  h.k = static_cast<std::uint16_t>(c.k);
  h.d = static_cast<std::uint16_t>(c.d);
  h.layers = static_cast<std::uint16_t>(code.params().layers);
  h.node = static_cast<std::uint16_t>(node);
  h.alpha = static_cast<std::uint32_t>(code.params().alpha);
  h.seed = c.seed;
  h.data_length = length;
  return h;
}

void check_header(const ShardHeader& got, const ShardHeader& want, const fs::path& file) {
  ShardHeader a = got, b = want;
  if (!(a == b)) throw IntegrityError(file.string() + " does not belong to this shard set");
}

MultiLayerCode build_checked(const CodeConfig& config, const json& manifest) {
  MultiLayerCode code = config.build();
  if (!code.mds_verified()) throw IntegrityError("rebuilt coefficients fail the MDS check");
  if (manifest.value("fingerprint", "") != code.fingerprint())
    throw IntegrityError("rebuilt code fingerprint " + code.fingerprint() + " does not match the manifest");
  return code;
}

std::uint32_t manifest_crc(const json& m, int node) {
  for (const auto& s : m.at("shards"))
    if (s.at("node").get<int>() == node + 1) return s.at("crc32").get<std::uint32_t>();
  throw IntegrityError("manifest has no entry for node " + std::to_string(node + 1));
}

}  // namespace

std::string mode_name(AlgebraKind mode) {
  switch (mode) {
    case AlgebraKind::Gf8:
      return "gf8";
    case AlgebraKind::Gf16:
      return "gf16";
    case AlgebraKind::Ring:
      return "ring";
  }
  return "?";
}

AlgebraKind parse_mode(const std::string& name) {
  if (name == "gf8") return AlgebraKind::Gf8;
  if (name == "gf16") return AlgebraKind::Gf16;
  if (name == "ring") return AlgebraKind::Ring;
  throw ParameterError("unknown mode '" + name + "' (expected gf8, gf16 or ring)");
}

Algebra CodeConfig::algebra() const {
  switch (mode) {
    case AlgebraKind::Gf8:
      return Algebra::gf(8);
    case AlgebraKind::Gf16:
      return Algebra::gf(16);
    case AlgebraKind::Ring:
      return Algebra::ring(p);
  }
  throw ParameterError("unknown mode");
}

int CodeConfig::w_or_p() const {
  return mode == AlgebraKind::Ring ? p : (mode == AlgebraKind::Gf16 ? 16 : 8);
}

MultiLayerCode CodeConfig::build(const VerifyOptions& opts) const {
  BuildOptions b;
  b.layers = layers;
  b.verify_options = opts;
  if (forced_coupling) {
    const CodeParams cp = derive_params(n, k, d, layers);
    b.coupling = CouplingSet{cp.eta, std::vector<Symbol>(static_cast<std::size_t>(cp.eta * cp.layers), *forced_coupling)};
  }
  return MultiLayerCode::build(algebra(), n, k, d, seed, b);
}

std::string shard_file_name(int node) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "shard_%03d.mltc", node + 1);
  return buf;
}

CodeConfig load_config(const fs::path& dir) {
  const json m = read_manifest(dir);
  CodeConfig c;
  try {
    c.n = m.at("n").get<int>();
    c.k = m.at("k").get<int>();
    c.d = m.at("d").get<int>();
    c.mode = parse_mode(m.at("mode").get<std::string>());
    c.p = c.mode == AlgebraKind::Ring ? m.at("w_or_p").get<int>() : 0;
    c.seed = m.at("seed").get<std::uint64_t>();
    c.layers = m.at("layers").get<int>();
  } catch (const json::exception& e) {
    throw IntegrityError("incomplete manifest: " + std::string(e.what()));
  }
  return c;
}

EncodeResult encode_file(const fs::path& input, const fs::path& out_dir, const CodeConfig& config) {
  const MultiLayerCode code = config.build();
  if (!code.mds_verified()) {
    const auto& rep = code.mds_report();
    std::string why = rep && rep->first_failure ? " (nodes " + join1(*rep->first_failure) + " cannot decode)" : "";
    throw IntegrityError("coefficients fail the MDS check" + why);
  }
  const CodeParams& p = code.params();
  const Algebra& alg = code.algebra();
  const std::vector<std::uint8_t> data = read_all(input);

  const int bits = alg.symbol_bits();
  const int sw = alg.symbol_bytes();
  const auto ka = static_cast<std::uint64_t>(p.k) * static_cast<std::uint64_t>(p.alpha);
  const std::uint64_t stripe_bits = ka * static_cast<std::uint64_t>(bits);
  const std::uint64_t stripes = (data.size() * 8 + stripe_bits - 1) / stripe_bits;
  const std::uint64_t row_bytes = stripes * static_cast<std::uint64_t>(sw);

  std::vector<std::vector<std::uint8_t>> shards(static_cast<std::size_t>(p.n));
  for (int h = 0; h < p.n; ++h) {
    const auto hdr = header_for(config, code, h, data.size()).serialize();
    shards[static_cast<std::size_t>(h)].assign(hdr.begin(), hdr.end());
    shards[static_cast<std::size_t>(h)].resize(ShardHeader::kSize + row_bytes * static_cast<std::uint64_t>(p.alpha));
  }
  std::vector<Symbol> msg(ka);
  for (std::uint64_t s = 0; s < stripes; ++s) {
    unpack_bits(data, s * stripe_bits, bits, msg);
    const CodewordArray arr = code.encode(msg);
    for (int h = 0; h < p.n; ++h) {
      std::uint8_t* base = shards[static_cast<std::size_t>(h)].data() + ShardHeader::kSize;
      for (int f = 0; f < p.alpha; ++f) store_symbol(base + static_cast<std::uint64_t>(f) * row_bytes + s * sw, sw, arr.at(h, f));
    }
  }

  fs::create_directories(out_dir);
  EncodeResult res;
  res.alpha = p.alpha;
  res.stripes = stripes;
  res.data_length = data.size();
  res.padding_bytes = (stripes * stripe_bits + 7) / 8 - data.size();
  res.fingerprint = code.fingerprint();
  json m;
  m["format"] = 1;
  m["mode"] = mode_name(config.mode);
  m["w_or_p"] = config.w_or_p();
  m["n"] = p.n;
  m["k"] = p.k;
  m["d"] = p.d;
  m["layers"] = p.layers;
  m["alpha"] = p.alpha;
  m["seed"] = config.seed;
  m["construction"] = to_string(code.generator().construction);
  m["data_length"] = data.size();
  m["padding_bits"] = stripes * stripe_bits - data.size() * 8;
  m["stripes"] = stripes;
  m["symbol_bytes"] = sw;
  m["fingerprint"] = res.fingerprint;
  m["shards"] = json::array();
  for (int h = 0; h < p.n; ++h) {
    const fs::path file = out_dir / shard_file_name(h);
    const auto& bytes = shards[static_cast<std::size_t>(h)];
    write_atomic(file, bytes);
    res.shards.push_back(file);
    m["shards"].push_back({{"node", h + 1}, {"file", shard_file_name(h)}, {"bytes", bytes.size()}, {"crc32", crc32_of(bytes)}});
  }
  write_atomic(out_dir / kManifest, m.dump(2) + "\n");
  return res;
}

DecodeResult decode_file(const fs::path& dir, const fs::path& output) {
  const json m = read_manifest(dir);
  const CodeConfig config = load_config(dir);
  const MultiLayerCode code = build_checked(config, m);
  const CodeParams& p = code.params();
  const Algebra& alg = code.algebra();
  const std::uint64_t length = m.at("data_length").get<std::uint64_t>();
  const std::uint64_t stripes = m.at("stripes").get<std::uint64_t>();
  const int sw = alg.symbol_bytes();
  const std::uint64_t row_bytes = stripes * static_cast<std::uint64_t>(sw);

  std::map<int, std::vector<std::uint8_t>> good;
  std::vector<int> bad;
  for (int h = 0; h < p.n; ++h) {
    const fs::path file = dir / shard_file_name(h);
    if (!fs::exists(file)) continue;
    auto bytes = read_all(file);
    try {
      check_header(ShardHeader::parse(bytes), header_for(config, code, h, length), file);
      if (crc32_of(bytes) != manifest_crc(m, h)) throw IntegrityError("checksum mismatch");
      if (bytes.size() != ShardHeader::kSize + row_bytes * static_cast<std::uint64_t>(p.alpha))
        throw IntegrityError("payload size mismatch");
    } catch (const IntegrityError&) {
      bad.push_back(h);
      continue;
    }
    good.emplace(h, std::move(bytes));
  }
  if (good.size() < static_cast<std::size_t>(p.k)) {
    std::string msg = "decode needs " + std::to_string(p.k) + " intact shards, found " + std::to_string(good.size()) +
                      " (short by " + std::to_string(p.k - static_cast<int>(good.size())) + ")";
    if (!bad.empty()) msg += "; corrupt: " + join1(bad);
    throw InsufficientShards(msg);
  }

  std::vector<int> avail;
  for (const auto& [h, b] : good) avail.push_back(h);
  std::vector<int> nodes(avail.begin(), avail.begin() + p.k);
  {
    std::vector<std::size_t> idx(static_cast<std::size_t>(p.k));
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t tries = 0; tries < kGroupedSearchCap; ++tries) {
      std::vector<int> cand;
      for (auto i : idx) cand.push_back(avail[i]);
      if (is_grouped_subset(p, cand)) {
        nodes = cand;
        break;
      }
      std::size_t i = idx.size();
      while (i > 0 && idx[i - 1] == avail.size() - idx.size() + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t q = i; q < idx.size(); ++q) idx[q] = idx[q - 1] + 1;
    }
  }

  const Decoder dec(code, nodes);
  const auto ka = static_cast<std::size_t>(p.k) * static_cast<std::size_t>(p.alpha);
  const int bits = alg.symbol_bits();
  std::vector<std::uint8_t> out(length, 0);
  std::vector<std::vector<Symbol>> contents(nodes.size(), std::vector<Symbol>(static_cast<std::size_t>(p.alpha)));
  std::vector<std::span<const Symbol>> views(contents.begin(), contents.end());
  std::vector<Symbol> msg(ka);
  for (std::uint64_t s = 0; s < stripes; ++s) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const std::uint8_t* base = good.at(nodes[i]).data() + ShardHeader::kSize;
      for (int f = 0; f < p.alpha; ++f)
        contents[i][static_cast<std::size_t>(f)] = load_symbol(base + static_cast<std::uint64_t>(f) * row_bytes + s * sw, sw);
    }
    dec.decode(views, msg);
    pack_bits(msg, bits, s * ka * static_cast<std::uint64_t>(bits), out);
  }
  if (output.has_parent_path()) fs::create_directories(output.parent_path());
  write_atomic(output, out);
  return {nodes, dec.grouped(), length};
}

RepairTrace repair_shard(const fs::path& dir, int node, const std::optional<fs::path>& output) {
  const json m = read_manifest(dir);
  const CodeConfig config = load_config(dir);
  if (node < 0 || node >= config.n) throw ParameterError("node must be in [1, " + std::to_string(config.n) + "]");
  const MultiLayerCode code = build_checked(config, m);
  const CodeParams& p = code.params();
  const Algebra& alg = code.algebra();
  const std::uint64_t length = m.at("data_length").get<std::uint64_t>();
  const std::uint64_t stripes = m.at("stripes").get<std::uint64_t>();
  const int sw = alg.symbol_bytes();
  const std::uint64_t row_bytes = stripes * static_cast<std::uint64_t>(sw);

  const RepairPlan plan = code.plan_repair(node);
  std::vector<int> missing;
  for (int h : plan.helpers)
    if (!fs::exists(dir / shard_file_name(h))) missing.push_back(h);
  if (!missing.empty())
    throw InsufficientShards("repair of node " + std::to_string(node + 1) + " needs helpers " + join1(plan.helpers) +
                             "; missing " + join1(missing));

  RepairTrace tr;
  tr.failed = node;
  tr.helpers = plan.helpers;
  tr.optimal = plan.optimal;
  tr.stripes = stripes;
  tr.symbol_bytes = sw;

  // rows[i][x * stripes + s]: helper i, planned row x, stripe s
  const std::size_t nr = plan.rows.size();
  std::vector<std::vector<std::uint8_t>> raw(plan.helpers.size(), std::vector<std::uint8_t>(nr * row_bytes));
  for (std::size_t i = 0; i < plan.helpers.size(); ++i) {
    const int h = plan.helpers[i];
    const fs::path file = dir / shard_file_name(h);
    std::ifstream in(file, std::ios::binary);
    if (!in) throw InsufficientShards("cannot open helper " + file.string());
    std::array<std::uint8_t, ShardHeader::kSize> hb{};
    in.read(reinterpret_cast<char*>(hb.data()), hb.size());
    if (!in) throw IntegrityError(file.string() + ": truncated header");
    tr.bytes_read += hb.size();
    check_header(ShardHeader::parse(hb), header_for(config, code, h, length), file);
    for (std::size_t x = 0; x < nr; ++x) {
      in.seekg(static_cast<std::streamoff>(ShardHeader::kSize + static_cast<std::uint64_t>(plan.rows[x]) * row_bytes));
      in.read(reinterpret_cast<char*>(raw[i].data() + x * row_bytes), static_cast<std::streamsize>(row_bytes));
      if (!in) throw IntegrityError(file.string() + ": truncated payload");
      tr.bytes_read += row_bytes;
    }
    tr.symbols_per_helper.push_back(nr);
  }
  tr.total_symbols = std::accumulate(tr.symbols_per_helper.begin(), tr.symbols_per_helper.end(), std::uint64_t{0});
  tr.baseline_symbols = static_cast<std::uint64_t>(p.k) * static_cast<std::uint64_t>(p.alpha);
  tr.savings = 1.0 - static_cast<double>(tr.total_symbols) / static_cast<double>(tr.baseline_symbols);

  const Repairer rep(code, plan);
  std::vector<std::uint8_t> shard;
  {
    const auto hdr = header_for(config, code, node, length).serialize();
    shard.assign(hdr.begin(), hdr.end());
    shard.resize(ShardHeader::kSize + row_bytes * static_cast<std::uint64_t>(p.alpha));
  }
  std::vector<std::vector<Symbol>> reads(plan.helpers.size(), std::vector<Symbol>(nr));
  std::vector<std::span<const Symbol>> views(reads.begin(), reads.end());
  std::vector<Symbol> out(static_cast<std::size_t>(p.alpha));
  for (std::uint64_t s = 0; s < stripes; ++s) {
    for (std::size_t i = 0; i < reads.size(); ++i)
      for (std::size_t x = 0; x < nr; ++x) reads[i][x] = load_symbol(raw[i].data() + x * row_bytes + s * sw, sw);
    rep.repair(views, out);
    std::uint8_t* base = shard.data() + ShardHeader::kSize;
    for (int f = 0; f < p.alpha; ++f) store_symbol(base + static_cast<std::uint64_t>(f) * row_bytes + s * sw, sw, out[static_cast<std::size_t>(f)]);
  }
  if (crc32_of(shard) != manifest_crc(m, node))
    throw IntegrityError("rebuilt shard " + std::to_string(node + 1) + " does not match its recorded checksum");
  tr.output = output.value_or(dir / shard_file_name(node));
  write_atomic(tr.output, shard);
  return tr;
}

}  // namespace mltc
