#include "mltc/layer.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "mltc/errors.hpp"

namespace mltc {

namespace {

constexpr long long kMaxAlpha = 1LL << 24;
constexpr int kMaxNodes = 256;

int ipow(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void require_coupling(Symbol e) {
  if (e == 0 || e == 1) throw DomainError("coupling coefficient must not be 0 or 1");
}

template <class Coef>
void transform_with_stride(const Algebra& alg, CodewordArray& arr, const LayerParams& layer, int stride,
                           Coef&& coef, bool forward, int only_group = -1) {
  const int t = layer.t;
  const int block = stride * t;
  if (arr.alpha % block != 0) throw ParameterError("array rows do not fit the layer");
  std::vector<Symbol> cells(static_cast<std::size_t>(t) * t);
  for (int g = 0; g < layer.eta; ++g) {
    if (only_group >= 0 && g != only_group) continue;
    const Symbol eg = coef(g);
    for (int hi = 0; hi < arr.alpha; hi += block)
      for (int lo = 0; lo < stride; ++lo) {
        const int base = hi + lo;
        for (int o = 0; o < t; ++o)
          for (int a = 0; a < t; ++a)
            cells[static_cast<std::size_t>(o * t + a)] = arr.at(layer.node(g, o), base + a * stride);
        if (forward)
          couple_tuple(alg, t, eg, cells);
        else
          decouple_tuple(alg, t, eg, cells);
        for (int o = 0; o < t; ++o)
          for (int a = 0; a < t; ++a)
            arr.at(layer.node(g, o), base + a * stride) = cells[static_cast<std::size_t>(o * t + a)];
      }
  }
}

}  // namespace

CodeParams derive_params(int n, int k, int d, int layers) {
  if (k < 1) throw ParameterError("k must be at least 1");
  if (n - k < 2) throw ParameterError("need at least two parity nodes (n - k >= 2)");
  if (n > kMaxNodes) throw ParameterError("at most " + std::to_string(kMaxNodes) + " nodes are supported");
  if (d < k + 1 || d > n - 1)
    throw ParameterError("d must satisfy k + 1 <= d <= n - 1 (got n=" + std::to_string(n) + " k=" +
                         std::to_string(k) + " d=" + std::to_string(d) + ")");
  CodeParams p;
  p.n = n;
  p.k = k;
  p.d = d;
  p.t = d - k + 1;
  p.eta = (n - k - 1) / (d - k);
  if (p.eta == 0) throw ParameterError("unsupported parameters: no group fits (eta = 0)");
  if (p.eta * p.t > n)
    throw ParameterError("unsupported parameters: eta * t = " + std::to_string(p.eta * p.t) + " exceeds n");
  p.max_layers = (n + p.set_size() - 1) / p.set_size();
  p.layers = layers == 0 ? p.max_layers : layers;
  if (p.layers < 1 || p.layers > p.max_layers)
    throw ParameterError("layer count must be in [1, " + std::to_string(p.max_layers) + "]");
  long long a = 1;
  for (int i = 0; i < p.layers; ++i) {
    a *= p.t;
    if (a > kMaxAlpha) throw ParameterError("sub-packetization too large to materialize");
  }
  p.alpha = static_cast<int>(a);
  return p;
}

std::optional<NodeAddress> LayerParams::address(int h) const {
  if (!contains(h)) return std::nullopt;
  return NodeAddress{index, (h - first) / t, (h - first) % t};
}

std::vector<int> LayerParams::nodes() const {
  std::vector<int> v(static_cast<std::size_t>(eta * t));
  for (int i = 0; i < eta * t; ++i) v[static_cast<std::size_t>(i)] = first + i;
  return v;
}

std::vector<int> LayerParams::group_nodes(int group) const {
  std::vector<int> v(static_cast<std::size_t>(t));
  for (int o = 0; o < t; ++o) v[static_cast<std::size_t>(o)] = node(group, o);
  return v;
}

int LayerParams::stride() const { return ipow(t, index - 1); }

LayerParams layer_params(const CodeParams& p, int layer) {
  if (layer < 1 || layer > p.layers) throw ParameterError("layer out of range");
  LayerParams l;
  l.index = layer;
  l.t = p.t;
  l.eta = p.eta;
  l.first = layer < p.max_layers ? (layer - 1) * p.set_size() : p.n - p.set_size();
  return l;
}

std::optional<NodeAddress> owner(const CodeParams& p, int h) {
  for (int l = p.layers; l >= 1; --l)
    if (auto a = layer_params(p, l).address(h)) return a;
  return std::nullopt;
}

int row_digit(const CodeParams& p, int f, int layer) { return (f / ipow(p.t, layer - 1)) % p.t; }

void check_coupling(const Algebra& alg, const CouplingSet& e) {
  for (Symbol v : e.values)
    if (!alg.coupling_admissible(v))
      throw DomainError("coupling coefficient " + std::to_string(v) + " is not admissible in " + alg.name());
}

std::pair<Symbol, Symbol> couple_pair(const Algebra& alg, Symbol u, Symbol v, Symbol e) {
  require_coupling(e);
  return {u ^ v, v ^ alg.mul(e, u)};
}

std::pair<Symbol, Symbol> decouple_pair(const Algebra& alg, Symbol x, Symbol y, Symbol e) {
  require_coupling(e);
  // x + y = (1 + e) u
  const Symbol u = alg.mul(x ^ y, alg.inv(e ^ 1u));
  return {u, x ^ u};
}

Symbol complete_pair(const Algebra& alg, Mix stored_form, Symbol stored, Term known_term, Symbol known,
                     Symbol e) {
  if (e == 0) throw DomainError("coupling coefficient must not be 0");
  if (known_term == Term::Scaled) return stored ^ alg.mul(e ^ 1u, known);
  const Symbol rest = stored ^ known;
  if (stored_form == Mix::Plain) return known ^ alg.mul(e, rest);
  return known ^ alg.mul(rest, alg.inv(e));
}

void couple_tuple(const Algebra& alg, int t, Symbol e, std::span<Symbol> cells) {
  for (int o = 1; o < t; ++o)
    for (int a = 0; a < o; ++a) {
      Symbol& x = cells[static_cast<std::size_t>(o * t + a)];
      Symbol& y = cells[static_cast<std::size_t>(a * t + o)];
      const Symbol u = x, v = y;
      x = u ^ v;
      y = v ^ alg.mul(e, u);
    }
}

void decouple_tuple(const Algebra& alg, int t, Symbol e, std::span<Symbol> cells) {
  const Symbol inv = alg.inv(e ^ 1u);
  for (int o = 1; o < t; ++o)
    for (int a = 0; a < o; ++a) {
      Symbol& x = cells[static_cast<std::size_t>(o * t + a)];
      Symbol& y = cells[static_cast<std::size_t>(a * t + o)];
      const Symbol u = alg.mul(x ^ y, inv);
      y = x ^ u;
      x = u;
    }
}

void transform_layer(const Algebra& alg, CodewordArray& arr, const LayerParams& layer, const CouplingSet& e,
                     int stride) {
  transform_with_stride(alg, arr, layer, stride == 0 ? layer.stride() : stride,
                        [&](int g) { return e.at(layer.index, g); }, true);
}

void untransform_group(const Algebra& alg, CodewordArray& arr, const LayerParams& layer, int group, Symbol e,
                       int stride) {
  transform_with_stride(alg, arr, layer, stride == 0 ? layer.stride() : stride, [e](int) { return e; }, false,
                        group);
}

CodewordArray encode_base_rows(const Algebra& alg, const GeneratorSpec& gen, int alpha,
                               std::span<const Symbol> data) {
  const auto k = static_cast<std::size_t>(gen.k);
  if (data.size() != k * static_cast<std::size_t>(alpha))
    throw ParameterError("expected " + std::to_string(k * static_cast<std::size_t>(alpha)) + " data symbols, got " +
                         std::to_string(data.size()));
  CodewordArray arr(gen.n, alpha);
  for (int f = 0; f < alpha; ++f) {
    const auto cw = base_encode(alg, gen, data.subspan(static_cast<std::size_t>(f) * k, k));
    for (int h = 0; h < gen.n; ++h) arr.at(h, f) = cw[static_cast<std::size_t>(h)];
  }
  return arr;
}

CodewordArray apply_layer(const Algebra& alg, std::span<const CodewordArray> instances, const LayerParams& layer,
                          const CouplingSet& e) {
  if (instances.size() != static_cast<std::size_t>(layer.t))
    throw ParameterError("apply_layer needs exactly t instances");
  const int n = instances[0].n;
  const int m = instances[0].alpha;
  for (const auto& in : instances)
    if (in.n != n || in.alpha != m) throw ParameterError("instances differ in shape");
  CodewordArray out(n, m * layer.t);
  for (int a = 0; a < layer.t; ++a)
    for (int h = 0; h < n; ++h)
      for (int x = 0; x < m; ++x) out.at(h, a * m + x) = instances[static_cast<std::size_t>(a)].at(h, x);
  transform_with_stride(alg, out, layer, m, [&](int g) { return e.at(layer.index, g); }, true);
  return out;
}

void recombine_blocks(const Algebra& alg, int t, int offset, Symbol e, std::span<const Symbol> own,
                      std::span<const Symbol> known, std::span<const Symbol> reads, std::span<Symbol> out) {
  const std::size_t m = own.size();
  for (int a = 0; a < t; ++a) {
    auto dst = out.subspan(static_cast<std::size_t>(a) * m, m);
    if (a == offset) {
      std::copy(own.begin(), own.end(), dst.begin());
      continue;
    }
    auto kn = known.subspan(static_cast<std::size_t>(a) * m, m);
    auto rd = reads.subspan(static_cast<std::size_t>(a) * m, m);
    for (std::size_t x = 0; x < m; ++x)
      dst[x] = a > offset ? complete_pair(alg, Mix::Plain, rd[x], Term::Scaled, kn[x], e)
                          : complete_pair(alg, Mix::Scaled, rd[x], Term::Unit, kn[x], e);
  }
}

std::vector<Symbol> repair_transformed_node(const Algebra& alg, const GeneratorSpec& gen, const CodeParams& p,
                                            const CouplingSet& e, int failed, const std::map<int, Symbol>& reads) {
  if (p.layers != 1) throw PlanError("repair_transformed_node works on single-layer codes");
  const LayerParams layer = layer_params(p, 1);
  const auto addr = layer.address(failed);
  if (!addr) throw PlanError("node " + std::to_string(failed) + " is not transformed by this layer");
  const int o = addr->offset;

  std::set<int> mates, same, outside;
  for (int a = 0; a < p.t; ++a)
    if (a != o) mates.insert(layer.node(addr->group, a));
  for (int g = 0; g < p.eta; ++g)
    if (g != addr->group) same.insert(layer.node(g, o));
  for (const auto& [h, v] : reads) {
    (void)v;
    if (h == failed) throw PlanError("failed node cannot help");
    if (!layer.contains(h)) outside.insert(h);
    else if (!mates.count(h) && !same.count(h))
      throw PlanError("helper " + std::to_string(h) + " is in the set but not a valid helper");
  }
  for (int h : mates)
    if (!reads.count(h)) throw PlanError("missing group helper " + std::to_string(h));
  for (int h : same)
    if (!reads.count(h)) throw PlanError("missing same-offset helper " + std::to_string(h));
  if (static_cast<int>(outside.size()) != p.k - p.eta + 1)
    throw PlanError("need exactly " + std::to_string(p.k - p.eta + 1) + " helpers outside the set");

  std::vector<int> providers(same.begin(), same.end());
  providers.insert(providers.end(), outside.begin(), outside.end());
  std::vector<Symbol> vals;
  for (int h : providers) vals.push_back(reads.at(h));
  const auto data = base_decode(alg, gen, providers, vals);
  const auto cw = base_encode(alg, gen, data);

  const auto t = static_cast<std::size_t>(p.t);
  std::vector<Symbol> known(t), rd(t), out(t);
  for (int a = 0; a < p.t; ++a) {
    const int h = layer.node(addr->group, a);
    known[static_cast<std::size_t>(a)] = cw[static_cast<std::size_t>(h)];
    if (a != o) rd[static_cast<std::size_t>(a)] = reads.at(h);
  }
  const Symbol own = cw[static_cast<std::size_t>(failed)];
  recombine_blocks(alg, p.t, o, e.at(1, addr->group), std::span<const Symbol>(&own, 1), known, rd, out);
  return out;
}

std::vector<Symbol> systematic_message(const Algebra& alg, const CodeParams& p, const CouplingSet& e,
                                       std::span<const Symbol> data) {
  if (p.layers != 1) throw ParameterError("systematic layout is defined for single-layer codes only");
  if (p.set_size() > p.k) throw ParameterError("systematic layout needs eta * t <= k");
  const auto k = static_cast<std::size_t>(p.k);
  if (data.size() != k * static_cast<std::size_t>(p.t)) throw ParameterError("expected t * k data symbols");
  std::vector<Symbol> msg(data.begin(), data.end());
  const LayerParams layer = layer_params(p, 1);
  std::vector<Symbol> cells(static_cast<std::size_t>(p.t * p.t));
  for (int g = 0; g < p.eta; ++g) {
    for (int o = 0; o < p.t; ++o)
      for (int a = 0; a < p.t; ++a)
        cells[static_cast<std::size_t>(o * p.t + a)] = data[static_cast<std::size_t>(a) * k + static_cast<std::size_t>(layer.node(g, o))];
    decouple_tuple(alg, p.t, e.at(1, g), cells);
    for (int o = 0; o < p.t; ++o)
      for (int a = 0; a < p.t; ++a)
        msg[static_cast<std::size_t>(a) * k + static_cast<std::size_t>(layer.node(g, o))] = cells[static_cast<std::size_t>(o * p.t + a)];
  }
  return msg;
}

CodewordArray systematic_layout(const Algebra& alg, const GeneratorSpec& gen, const CodeParams& p,
                                const CouplingSet& e, std::span<const Symbol> data) {
  const auto msg = systematic_message(alg, p, e, data);
  CodewordArray arr = encode_base_rows(alg, gen, p.alpha, msg);
  transform_layer(alg, arr, layer_params(p, 1), e);
  return arr;
}

}  // namespace mltc
