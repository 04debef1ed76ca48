#include "mltc/multilayer.hpp"

#include <algorithm>
#include <bitset>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "mltc/errors.hpp"

namespace mltc {

namespace {

using NodeMask = std::bitset<256>;

constexpr std::uint64_t kSearchNodeCap = 2'000'000;
constexpr std::size_t kProviderComboCap = 20'000;

int ipow(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::string join_nodes(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
  return s + "}";
}

std::vector<int> mask_nodes(const NodeMask& m, int n) {
  std::vector<int> v;
  for (int h = 0; h < n; ++h)
    if (m[static_cast<std::size_t>(h)]) v.push_back(h);
  return v;
}

// Column indices of the given nodes in a generator with alpha rows per node.
std::vector<std::size_t> node_columns(const std::vector<int>& nodes, int alpha) {
  std::vector<std::size_t> cols;
  cols.reserve(nodes.size() * static_cast<std::size_t>(alpha));
  for (int h : nodes)
    for (int f = 0; f < alpha; ++f) cols.push_back(static_cast<std::size_t>(h) * alpha + f);
  return cols;
}

// Least-size union of closure units covering `need` nodes outside the set.
struct HelperSearch {
  const std::vector<NodeMask>& units;
  const NodeMask& outside;
  int need;
  std::size_t lower_bound;
  std::size_t best_size = SIZE_MAX;
  NodeMask best;
  std::uint64_t visited = 0;

  bool done() const { return best_size <= lower_bound || visited >= kSearchNodeCap; }

  void run(std::size_t idx, const NodeMask& cur) {
    ++visited;
    const std::size_t size = cur.count();
    const int have = static_cast<int>((cur & outside).count());
    if (have >= need) {
      if (size < best_size) {
        best_size = size;
        best = cur;
      }
      return;
    }
    if (size + static_cast<std::size_t>(need - have) >= best_size) return;
    for (std::size_t i = idx; i < units.size() && !done(); ++i) run(i + 1, cur | units[i]);
  }
};

}  // namespace

struct MultiLayerCode::Cache {
  std::once_flag once;
  Matrix generator;
};

std::string RepairStep::describe() const {
  switch (kind) {
    case Kind::Peel:
      return "peel layer " + std::to_string(layer) + " group " + std::to_string(group + 1) + " " + join_nodes(nodes);
    case Kind::Decode:
      return "decode layer-" + std::to_string(layer) + " instance from " + join_nodes(nodes);
    case Kind::Recombine:
      return "recombine with group " + std::to_string(group + 1) + " of layer " + std::to_string(layer) + " " +
             join_nodes(nodes);
    case Kind::FullDecode:
      return "full decode from " + join_nodes(nodes);
  }
  return {};
}

MultiLayerCode::MultiLayerCode(const Algebra& alg, const CodeParams& params, GeneratorSpec gen,
                               CouplingSet coupling, std::uint64_t seed)
    : alg_(alg),
      params_(params),
      gen_(std::move(gen)),
      coupling_(std::move(coupling)),
      seed_(seed),
      cache_(std::make_shared<Cache>()) {
  if (gen_.n != params_.n || gen_.k != params_.k) throw ParameterError("generator does not match parameters");
  if (coupling_.eta != params_.eta || coupling_.layers() < params_.layers)
    throw ParameterError("coupling set needs eta coefficients per layer");
  coupling_.values.resize(static_cast<std::size_t>(params_.eta * params_.layers));
}

MultiLayerCode MultiLayerCode::build(const Algebra& alg, int n, int k, int d, std::uint64_t seed,
                                     const BuildOptions& opts) {
  const CodeParams p = derive_params(n, k, d, opts.layers);
  const Construction c = opts.construction.value_or(alg.is_ring() ? Construction::Evenodd : Construction::Cauchy);
  GeneratorSpec gen = make_generator(alg, n, k, c, seed, opts.points);
  std::mt19937_64 rng(seed);
  if (opts.coupling) {
    MultiLayerCode code(alg, p, std::move(gen), *opts.coupling, seed);
    if (opts.verify) code.report_ = verify_mds(code, opts.verify_options);
    return code;
  }
  if (!opts.verify) return MultiLayerCode(alg, p, std::move(gen), draw_coupling(alg, p, rng), seed);
  Selection sel = select_coefficients(alg, p, gen, rng, opts.max_attempts, opts.verify_options);
  MultiLayerCode code(alg, p, std::move(gen), std::move(sel.coupling), seed);
  code.report_ = sel.report;
  code.attempts_ = sel.attempts;
  return code;
}

MultiLayerCode MultiLayerCode::prefix(int layers) const {
  CouplingSet e = coupling_;
  e.values.resize(static_cast<std::size_t>(params_.eta * layers));
  return MultiLayerCode(alg_, derive_params(params_.n, params_.k, params_.d, layers), gen_, std::move(e), seed_);
}

CodewordArray MultiLayerCode::encode(std::span<const Symbol> data) const {
  CodewordArray arr = encode_base_rows(alg_, gen_, params_.alpha, data);
  for (int l = 1; l <= params_.layers; ++l) transform_layer(alg_, arr, layer(l), coupling_);
  return arr;
}

const Matrix& MultiLayerCode::generator_matrix() const {
  std::call_once(cache_->once, [this] {
    const int ka = params_.k * params_.alpha;
    Matrix g(static_cast<std::size_t>(ka), static_cast<std::size_t>(params_.n * params_.alpha));
    std::vector<Symbol> unit(static_cast<std::size_t>(ka), 0);
    for (int i = 0; i < ka; ++i) {
      unit[static_cast<std::size_t>(i)] = 1;
      const CodewordArray cw = encode(unit);
      std::copy(cw.symbols.begin(), cw.symbols.end(), g.row(static_cast<std::size_t>(i)).begin());
      unit[static_cast<std::size_t>(i)] = 0;
    }
    cache_->generator = std::move(g);
  });
  return cache_->generator;
}

std::string MultiLayerCode::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFF;
      h *= 0x100000001b3ull;
    }
  };
  mix(static_cast<std::uint64_t>(alg_.kind()));
  mix(static_cast<std::uint64_t>(alg_.parameter()));
  mix(static_cast<std::uint64_t>(params_.n));
  mix(static_cast<std::uint64_t>(params_.k));
  mix(static_cast<std::uint64_t>(params_.d));
  mix(static_cast<std::uint64_t>(params_.layers));
  for (int i = 0; i < gen_.k; ++i)
    for (int j = 0; j < gen_.n - gen_.k; ++j) mix(gen_.parity.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  for (Symbol e : coupling_.values) mix(e);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Symbol> MultiLayerCode::decode(const std::map<int, std::vector<Symbol>>& present) const {
  if (present.size() < static_cast<std::size_t>(params_.k))
    throw InsufficientShards("decode needs " + std::to_string(params_.k) + " nodes, got " +
                             std::to_string(present.size()));
  std::vector<int> nodes;
  std::vector<std::span<const Symbol>> contents;
  for (const auto& [h, v] : present) {
    if (nodes.size() == static_cast<std::size_t>(params_.k)) break;
    if (v.size() != static_cast<std::size_t>(params_.alpha))
      throw ParameterError("node " + std::to_string(h) + " must hold alpha symbols");
    nodes.push_back(h);
    contents.emplace_back(v);
  }
  Decoder dec(*this, nodes);
  std::vector<Symbol> data(static_cast<std::size_t>(params_.k * params_.alpha));
  dec.decode(contents, data);
  return data;
}

RepairPlan MultiLayerCode::plan_repair(int failed) const {
  const CodeParams& p = params_;
  if (failed < 0 || failed >= p.n) throw ParameterError("node index out of range");
  RepairPlan plan;
  plan.failed = failed;
  plan.address = owner(p, failed);

  if (!plan.address) {
    for (int h = 0; h < p.n && static_cast<int>(plan.helpers.size()) < p.k; ++h)
      if (h != failed) plan.helpers.push_back(h);
    plan.rows.resize(static_cast<std::size_t>(p.alpha));
    std::iota(plan.rows.begin(), plan.rows.end(), 0);
    plan.providers = plan.helpers;
    plan.conventional = true;
    plan.steps.push_back({RepairStep::Kind::FullDecode, 0, 0, plan.helpers});
    return plan;
  }

  const int L = p.layers;
  const int ell = plan.address->layer;
  const int j = plan.address->group;
  const int o = plan.address->offset;
  const LayerParams own = layer(ell);

  for (int f = 0; f < p.alpha; ++f)
    if (row_digit(p, f, ell) == o) plan.rows.push_back(f);

  // Helpers in a later layer drag their whole group of that layer along.
  auto closure = [&](NodeMask m) {
    for (bool grew = true; grew;) {
      grew = false;
      for (int mu = ell + 1; mu <= L; ++mu) {
        const LayerParams lp = layer(mu);
        for (int g = 0; g < p.eta; ++g) {
          const auto members = lp.group_nodes(g);
          const bool touched = std::any_of(members.begin(), members.end(), [&](int h) { return m[static_cast<std::size_t>(h)]; });
          if (!touched) continue;
          for (int h : members)
            if (!m[static_cast<std::size_t>(h)]) {
              m.set(static_cast<std::size_t>(h));
              grew = true;
            }
        }
      }
    }
    return m;
  };

  NodeMask base, same, outside;
  for (int a = 0; a < p.t; ++a)
    if (a != o) base.set(static_cast<std::size_t>(own.node(j, a)));
  for (int g = 0; g < p.eta; ++g)
    if (g != j) {
      base.set(static_cast<std::size_t>(own.node(g, o)));
      same.set(static_cast<std::size_t>(own.node(g, o)));
    }
  for (int h = 0; h < p.n; ++h)
    if (!own.contains(h)) outside.set(static_cast<std::size_t>(h));

  const NodeMask h0 = closure(base);
  const int need = p.k - static_cast<int>(same.count());
  std::vector<NodeMask> units;
  for (int c = 0; c < p.n; ++c) {
    if (!outside[static_cast<std::size_t>(c)] || h0[static_cast<std::size_t>(c)]) continue;
    NodeMask single;
    single.set(static_cast<std::size_t>(c));
    const NodeMask u = closure(single) & ~h0;
    if (std::find(units.begin(), units.end(), u) == units.end()) units.push_back(u);
  }
  const int have0 = static_cast<int>((h0 & outside).count());
  HelperSearch search{units, outside, need,
                      h0.count() + static_cast<std::size_t>(std::max(0, need - have0)), SIZE_MAX, {}, 0};
  search.run(0, h0);
  if (search.best_size == SIZE_MAX)
    throw PlanError("no helper set can repair node " + std::to_string(failed + 1));

  plan.helpers = mask_nodes(search.best, p.n);
  plan.optimal = static_cast<int>(plan.helpers.size()) == p.d;

  // Pick providers; prefer a choice whose earlier-layer groups are whole,
  // so the instance can be decoded row by row from base codewords.
  const std::vector<int> same_nodes = mask_nodes(same, p.n);
  const std::vector<int> pool = mask_nodes(search.best & outside, p.n);
  auto whole_earlier = [&](const std::vector<int>& prov) {
    NodeMask m;
    for (int h : prov) m.set(static_cast<std::size_t>(h));
    for (int mu = 1; mu < ell; ++mu) {
      const LayerParams lp = layer(mu);
      for (int g = 0; g < p.eta; ++g) {
        int c = 0;
        for (int h : lp.group_nodes(g)) c += m[static_cast<std::size_t>(h)] ? 1 : 0;
        if (c != 0 && c != p.t) return false;
      }
    }
    return true;
  };
  std::vector<int> chosen;
  {
    const std::size_t r = static_cast<std::size_t>(need);
    std::vector<std::size_t> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    std::size_t tries = 0;
    while (true) {
      std::vector<int> prov = same_nodes;
      for (std::size_t i : idx) prov.push_back(pool[i]);
      if (whole_earlier(prov)) {
        chosen = prov;
        break;
      }
      if (++tries >= kProviderComboCap) break;
      std::size_t i = r;
      while (i > 0 && idx[i - 1] == pool.size() - r + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t q = i; q < r; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  if (!chosen.empty()) {
    plan.path = DecodePath::Base;
  } else {
    plan.path = DecodePath::Subcode;
    chosen = same_nodes;
    chosen.insert(chosen.end(), pool.begin(), pool.begin() + need);
  }
  std::sort(chosen.begin(), chosen.end());
  plan.providers = chosen;

  for (int mu = L; mu > ell; --mu) {
    const LayerParams lp = layer(mu);
    for (int g = 0; g < p.eta; ++g) {
      const auto members = lp.group_nodes(g);
      if (search.best[static_cast<std::size_t>(members[0])]) plan.steps.push_back({RepairStep::Kind::Peel, mu, g, members});
    }
  }
  if (plan.path == DecodePath::Base) {
    for (int mu = ell - 1; mu >= 1; --mu) {
      const LayerParams lp = layer(mu);
      for (int g = 0; g < p.eta; ++g) {
        const auto members = lp.group_nodes(g);
        if (std::binary_search(plan.providers.begin(), plan.providers.end(), members[0]))
          plan.steps.push_back({RepairStep::Kind::Peel, mu, g, members});
      }
    }
  }
  plan.steps.push_back({RepairStep::Kind::Decode, plan.path == DecodePath::Base ? 0 : ell - 1, 0, plan.providers});
  std::vector<int> mates;
  for (int a = 0; a < p.t; ++a)
    if (a != o) mates.push_back(own.node(j, a));
  plan.steps.push_back({RepairStep::Kind::Recombine, ell, j, mates});
  return plan;
}

std::vector<Symbol> MultiLayerCode::repair(const RepairPlan& plan,
                                           const std::map<int, std::vector<Symbol>>& helper_rows) const {
  Repairer rep(*this, plan);
  std::vector<std::span<const Symbol>> reads;
  for (int h : plan.helpers) {
    auto it = helper_rows.find(h);
    if (it == helper_rows.end()) throw PlanError("missing reads for helper " + std::to_string(h + 1));
    if (it->second.size() != plan.rows.size())
      throw PlanError("helper " + std::to_string(h + 1) + " must supply one symbol per planned row");
    reads.emplace_back(it->second);
  }
  std::vector<Symbol> out(static_cast<std::size_t>(params_.alpha));
  rep.repair(reads, out);
  return out;
}

// ---------------------------------------------------------------------------

Decoder::Decoder(const MultiLayerCode& code, std::vector<int> nodes, Path path)
    : code_(&code), nodes_(std::move(nodes)) {
  const CodeParams& p = code.params();
  if (nodes_.size() != static_cast<std::size_t>(p.k))
    throw InsufficientShards("decode needs exactly " + std::to_string(p.k) + " nodes");
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) throw ParameterError("duplicate node");
  for (int h : nodes_)
    if (h < 0 || h >= p.n) throw ParameterError("node index out of range");
  grouped_ = is_grouped_subset(p, nodes_);
  if (path == Path::Grouped && !grouped_) throw ParameterError("nodes do not form whole groups in every layer");
  if (path == Path::Grouped || (path == Path::Auto && grouped_)) {
    base_.emplace(code.algebra(), code.generator(), nodes_);
    return;
  }
  grouped_ = false;
  const auto cols = node_columns(nodes_, p.alpha);
  auto inv = invert(code.algebra(), code.generator_matrix().select_columns(cols));
  if (!inv) throw MdsViolation("nodes " + join_nodes(nodes_) + " cannot recover the data");
  inverse_ = std::move(*inv);
}

void Decoder::decode(std::span<const std::span<const Symbol>> contents, std::span<Symbol> data) const {
  const CodeParams& p = code_->params();
  const auto a = static_cast<std::size_t>(p.alpha);
  if (contents.size() != nodes_.size()) throw ParameterError("one content vector per node expected");
  for (const auto& c : contents)
    if (c.size() != a) throw ParameterError("node content must hold alpha symbols");
  if (data.size() != static_cast<std::size_t>(p.k) * a) throw ParameterError("data buffer has the wrong size");

  if (!base_) {
    std::vector<Symbol> y;
    y.reserve(nodes_.size() * a);
    for (const auto& c : contents) y.insert(y.end(), c.begin(), c.end());
    multiply_vector(code_->algebra(), y, inverse_, data);
    return;
  }
  CodewordArray arr(p.n, p.alpha);
  for (std::size_t i = 0; i < nodes_.size(); ++i) std::copy(contents[i].begin(), contents[i].end(), arr.node(nodes_[i]).begin());
  for (int mu = p.layers; mu >= 1; --mu) {
    const LayerParams lp = code_->layer(mu);
    for (int g = 0; g < p.eta; ++g)
      if (std::binary_search(nodes_.begin(), nodes_.end(), lp.node(g, 0)))
        untransform_group(code_->algebra(), arr, lp, g, code_->coupling().at(mu, g));
  }
  std::vector<Symbol> vals(nodes_.size());
  const auto k = static_cast<std::size_t>(p.k);
  for (int f = 0; f < p.alpha; ++f) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) vals[i] = arr.at(nodes_[i], f);
    base_->decode(vals, data.subspan(static_cast<std::size_t>(f) * k, k));
  }
}

// ---------------------------------------------------------------------------

Repairer::Repairer(const MultiLayerCode& code, RepairPlan plan) : code_(&code), plan_(std::move(plan)) {
  const CodeParams& p = code.params();
  const Algebra& alg = code.algebra();
  helper_pos_.assign(static_cast<std::size_t>(p.n), -1);
  for (std::size_t i = 0; i < plan_.helpers.size(); ++i) {
    const int h = plan_.helpers[i];
    if (h < 0 || h >= p.n || h == plan_.failed) throw PlanError("invalid helper in plan");
    helper_pos_[static_cast<std::size_t>(h)] = static_cast<int>(i);
  }

  if (plan_.conventional || !plan_.address) {
    if (plan_.rows.size() != static_cast<std::size_t>(p.alpha) || plan_.helpers.size() < static_cast<std::size_t>(p.k))
      throw PlanError("conventional repair reads all rows of k helpers");
    std::vector<int> prov(plan_.helpers.begin(), plan_.helpers.begin() + p.k);
    const Matrix& g = code.generator_matrix();
    auto inv = invert(alg, g.select_columns(node_columns(prov, p.alpha)));
    if (!inv) throw MdsViolation("helpers " + join_nodes(prov) + " cannot recover the data");
    solve_ = multiply(alg, *inv, g.select_columns(node_columns({plan_.failed}, p.alpha)));
    return;
  }

  const NodeAddress addr = *plan_.address;
  if (owner(p, plan_.failed) != plan_.address) throw PlanError("plan address does not match the code");
  for (int f : plan_.rows)
    if (row_digit(p, f, addr.layer) != addr.offset) throw PlanError("plan rows do not match the failed node");
  if (plan_.rows.size() != static_cast<std::size_t>(p.alpha / p.t)) throw PlanError("plan rows do not match the failed node");
  for (int h : plan_.providers)
    if (helper_pos_[static_cast<std::size_t>(h)] < 0) throw PlanError("provider is not a helper");
  if (plan_.providers.size() != static_cast<std::size_t>(p.k)) throw PlanError("plan needs k providers");

  const LayerParams own = code.layer(addr.layer);
  for (int a = 0; a < p.t; ++a) {
    const int h = own.node(addr.group, a);
    if (a != addr.offset && helper_pos_[static_cast<std::size_t>(h)] < 0)
      throw PlanError("group helper " + std::to_string(h + 1) + " missing from plan");
    targets_.push_back(h);
  }
  for (int h : plan_.helpers)
    if (!own.contains(h) && !std::binary_search(plan_.providers.begin(), plan_.providers.end(), h))
      targets_.push_back(h);

  for (int mu = p.layers; mu > addr.layer; --mu) {
    const LayerParams lp = code.layer(mu);
    for (int g = 0; g < p.eta; ++g) {
      int c = 0;
      for (int h : lp.group_nodes(g)) c += helper_pos_[static_cast<std::size_t>(h)] >= 0 ? 1 : 0;
      if (c == 0) continue;
      if (c != p.t) throw PlanError("later-layer group " + std::to_string(g + 1) + " of layer " + std::to_string(mu) +
                                    " is only partly among the helpers");
      peel_.emplace_back(mu, g);
    }
  }

  if (plan_.path == DecodePath::Base) {
    for (int mu = addr.layer - 1; mu >= 1; --mu) {
      const LayerParams lp = code.layer(mu);
      for (int g = 0; g < p.eta; ++g) {
        int c = 0;
        for (int h : lp.group_nodes(g)) c += std::binary_search(plan_.providers.begin(), plan_.providers.end(), h) ? 1 : 0;
        if (c == 0) continue;
        if (c != p.t) throw PlanError("base-path providers split an earlier-layer group");
        base_peel_.emplace_back(mu, g);
      }
    }
    base_.emplace(alg, code.generator(), plan_.providers);
    return;
  }

  const MultiLayerCode sub = code.prefix(addr.layer - 1);
  const int m = sub.params().alpha;
  const Matrix& g = sub.generator_matrix();
  auto inv = invert(alg, g.select_columns(node_columns(plan_.providers, m)));
  if (!inv) throw MdsViolation("providers " + join_nodes(plan_.providers) + " cannot decode the layer-" +
                               std::to_string(addr.layer - 1) + " instance");
  solve_ = multiply(alg, *inv, g.select_columns(node_columns(targets_, m)));
}

void Repairer::repair_conventional(std::span<const std::span<const Symbol>> reads, std::span<Symbol> out) const {
  const CodeParams& p = code_->params();
  std::vector<Symbol> y;
  y.reserve(static_cast<std::size_t>(p.k * p.alpha));
  for (int i = 0; i < p.k; ++i) y.insert(y.end(), reads[static_cast<std::size_t>(i)].begin(), reads[static_cast<std::size_t>(i)].end());
  multiply_vector(code_->algebra(), y, solve_, out);
}

void Repairer::repair(std::span<const std::span<const Symbol>> reads, std::span<Symbol> out) const {
  const CodeParams& p = code_->params();
  const Algebra& alg = code_->algebra();
  if (reads.size() != plan_.helpers.size()) throw PlanError("one read vector per helper expected");
  for (const auto& r : reads)
    if (r.size() != plan_.rows.size()) throw PlanError("helper read has the wrong number of rows");
  if (out.size() != static_cast<std::size_t>(p.alpha)) throw ParameterError("output must hold alpha symbols");
  if (plan_.conventional || !plan_.address) return repair_conventional(reads, out);

  const NodeAddress addr = *plan_.address;
  const int nr = static_cast<int>(plan_.rows.size());
  const int inner = ipow(p.t, addr.layer - 1);  // t^{l-1}

  // Helper reads with the failed node's layer digit removed from the row index.
  CodewordArray w(p.n, nr);
  for (std::size_t i = 0; i < plan_.helpers.size(); ++i)
    std::copy(reads[i].begin(), reads[i].end(), w.node(plan_.helpers[i]).begin());

  // (a) undo later layers; their row digits sit one position lower here
  for (auto [mu, g] : peel_)
    untransform_group(alg, w, code_->layer(mu), g, code_->coupling().at(mu, g), ipow(p.t, mu - 2));

  // (b) layer-(l-1) contents of the targets at the read rows
  CodewordArray tv(static_cast<int>(targets_.size()), nr);
  if (base_) {
    CodewordArray prov = w;
    for (auto [mu, g] : base_peel_)
      untransform_group(alg, prov, code_->layer(mu), g, code_->coupling().at(mu, g));
    const auto k = static_cast<std::size_t>(p.k);
    std::vector<Symbol> vals(k), data(k);
    CodewordArray full(p.n, nr);
    for (int x = 0; x < nr; ++x) {
      for (std::size_t i = 0; i < k; ++i) vals[i] = prov.at(plan_.providers[i], x);
      base_->decode(vals, data);
      const auto cw = base_encode(alg, code_->generator(), data);
      for (int h = 0; h < p.n; ++h) full.at(h, x) = cw[static_cast<std::size_t>(h)];
    }
    for (int mu = 1; mu < addr.layer; ++mu) transform_layer(alg, full, code_->layer(mu), code_->coupling());
    for (std::size_t i = 0; i < targets_.size(); ++i)
      std::copy(full.node(targets_[i]).begin(), full.node(targets_[i]).end(), tv.node(static_cast<int>(i)).begin());
  } else {
    const auto m = static_cast<std::size_t>(inner);
    std::vector<Symbol> y(plan_.providers.size() * m), z(targets_.size() * m);
    for (int q = 0; q < nr; q += inner) {
      for (std::size_t i = 0; i < plan_.providers.size(); ++i)
        for (std::size_t x = 0; x < m; ++x) y[i * m + x] = w.at(plan_.providers[i], q + static_cast<int>(x));
      multiply_vector(alg, y, solve_, z);
      for (std::size_t i = 0; i < targets_.size(); ++i)
        for (std::size_t x = 0; x < m; ++x) tv.at(static_cast<int>(i), q + static_cast<int>(x)) = z[i * m + x];
    }
  }

  for (std::size_t i = static_cast<std::size_t>(p.t); i < targets_.size(); ++i)
    for (int x = 0; x < nr; ++x)
      if (tv.at(static_cast<int>(i), x) != w.at(targets_[i], x))
        throw IntegrityError("helper " + std::to_string(targets_[i] + 1) + " disagrees with the decoded instance");

  // (c) own block plus one completion per group mate
  const auto snr = static_cast<std::size_t>(nr);
  std::vector<Symbol> known(static_cast<std::size_t>(p.t) * snr), rd(static_cast<std::size_t>(p.t) * snr),
      blocks(static_cast<std::size_t>(p.t) * snr);
  for (int a = 0; a < p.t; ++a) {
    std::copy(tv.node(a).begin(), tv.node(a).end(), known.begin() + static_cast<std::ptrdiff_t>(a * snr));
    if (a != addr.offset)
      std::copy(w.node(targets_[static_cast<std::size_t>(a)]).begin(), w.node(targets_[static_cast<std::size_t>(a)]).end(),
                rd.begin() + static_cast<std::ptrdiff_t>(a * snr));
  }
  recombine_blocks(alg, p.t, addr.offset, code_->coupling().at(addr.layer, addr.group), tv.node(addr.offset), known, rd,
                   blocks);
  for (int a = 0; a < p.t; ++a)
    for (int x = 0; x < nr; ++x) {
      const int lo = x % inner, hi = x / inner;
      out[static_cast<std::size_t>(lo + a * inner + hi * inner * p.t)] = blocks[static_cast<std::size_t>(a) * snr + static_cast<std::size_t>(x)];
    }
}

}  // namespace mltc
