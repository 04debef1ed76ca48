#include "mltc/base_code.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "mltc/errors.hpp"

namespace mltc {

namespace {

constexpr int kVandermondeRetries = 64;

Symbol power(const Algebra& alg, Symbol a, int e) {
  Symbol r = 1;
  for (int i = 0; i < e; ++i) r = alg.mul(r, a);
  return r;
}

Matrix vandermonde_parity(const Algebra& alg, std::span<const Symbol> points, int r) {
  Matrix p(points.size(), static_cast<std::size_t>(r));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (int j = 0; j < r; ++j) p.at(i, static_cast<std::size_t>(j)) = power(alg, points[i], j);
  return p;
}

// Calls f on each s-subset of [0, n).
template <class F>
bool for_each_subset(int n, int s, F&& f) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(s));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!f(std::span<const std::size_t>(idx))) return false;
    int i = s - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == static_cast<std::size_t>(n - s + i)) --i;
    if (i < 0) return true;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < s; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

std::string to_string(Construction c) {
  switch (c) {
    case Construction::Cauchy:
      return "cauchy";
    case Construction::Vandermonde:
      return "vandermonde";
    case Construction::Evenodd:
      return "evenodd";
  }
  return "unknown";
}

Matrix GeneratorSpec::full() const {
  Matrix g(static_cast<std::size_t>(k), static_cast<std::size_t>(n));
  for (int i = 0; i < k; ++i)
    for (int h = 0; h < n; ++h) g.at(static_cast<std::size_t>(i), static_cast<std::size_t>(h)) = at(i, h);
  return g;
}

bool parity_superregular(const Algebra& alg, const Matrix& parity) {
  const int k = static_cast<int>(parity.rows());
  const int r = static_cast<int>(parity.cols());
  for (int s = 1; s <= std::min(k, r); ++s) {
    const bool ok = for_each_subset(r, s, [&](std::span<const std::size_t> cols) {
      const Matrix sub = parity.select_columns(cols);
      return for_each_subset(k, s, [&](std::span<const std::size_t> rows) {
        return is_invertible(alg, sub.select_rows(rows));
      });
    });
    if (!ok) return false;
  }
  return true;
}

GeneratorSpec make_generator(const Algebra& alg, int n, int k, Construction construction,
                             std::uint64_t seed, std::vector<Symbol> points) {
  if (k < 1 || k >= n) throw ParameterError("need 1 <= k < n");
  const int r = n - k;
  GeneratorSpec g;
  g.n = n;
  g.k = k;
  g.construction = construction;
  g.parity = Matrix(static_cast<std::size_t>(k), static_cast<std::size_t>(r));

  switch (construction) {
    case Construction::Cauchy: {
      if (static_cast<std::uint64_t>(n) > alg.element_count())
        throw ConstructionError("Cauchy generator needs n <= " + std::to_string(alg.element_count()) +
                                " in " + alg.name());
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < r; ++j) {
          const auto inv = alg.try_inv(static_cast<Symbol>(i) ^ static_cast<Symbol>(k + j));
          if (!inv) throw ConstructionError("Cauchy entry not invertible in " + alg.name());
          g.parity.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = *inv;
        }
      if (alg.is_ring() && !parity_superregular(alg, g.parity))
        throw ConstructionError("Cauchy parity block is not super-regular in " + alg.name());
      break;
    }
    case Construction::Vandermonde: {
      if (static_cast<std::uint64_t>(k) >= alg.element_count())
        throw ConstructionError("field too small for " + std::to_string(k) + " distinct nonzero points");
      const bool fixed = !points.empty();
      if (fixed && points.size() != static_cast<std::size_t>(k))
        throw ParameterError("need exactly k Vandermonde points");
      if (!fixed) {
        points.resize(static_cast<std::size_t>(k));
        std::iota(points.begin(), points.end(), Symbol{1});
      }
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<Symbol> draw(1, alg.mask());
      for (int attempt = 0;; ++attempt) {
        g.parity = vandermonde_parity(alg, points, r);
        if (parity_superregular(alg, g.parity)) break;
        if (fixed || attempt >= kVandermondeRetries)
          throw ConstructionError("Vandermonde parity block has a singular square sub-matrix");
        for (auto& p : points) {
          do p = draw(rng);
          while (std::count(points.begin(), points.end(), p) > 1);
        }
      }
      g.points = points;
      break;
    }
    case Construction::Evenodd: {
      if (!alg.is_ring()) throw ParameterError("EVENODD generator needs ring mode");
      const auto& ring = alg.binary_ring();
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < r; ++j)
          g.parity.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
              ring.x_power(static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(j));
      break;
    }
  }
  return g;
}

std::vector<Symbol> base_encode(const Algebra& alg, const GeneratorSpec& gen,
                                std::span<const Symbol> data) {
  if (data.size() != static_cast<std::size_t>(gen.k))
    throw ParameterError("base_encode expects " + std::to_string(gen.k) + " symbols");
  std::vector<Symbol> out(static_cast<std::size_t>(gen.n));
  std::copy(data.begin(), data.end(), out.begin());
  multiply_vector(alg, data, gen.parity, std::span<Symbol>(out).subspan(static_cast<std::size_t>(gen.k)));
  return out;
}

BaseDecoder::BaseDecoder(const Algebra& alg, const GeneratorSpec& gen, std::vector<int> nodes)
    : alg_(alg), nodes_(std::move(nodes)) {
  if (nodes_.size() != static_cast<std::size_t>(gen.k))
    throw ParameterError("base decode needs exactly " + std::to_string(gen.k) + " nodes");
  Matrix sub(static_cast<std::size_t>(gen.k), static_cast<std::size_t>(gen.k));
  for (int i = 0; i < gen.k; ++i)
    for (std::size_t c = 0; c < nodes_.size(); ++c) {
      if (nodes_[c] < 0 || nodes_[c] >= gen.n) throw ParameterError("node index out of range");
      sub.at(static_cast<std::size_t>(i), c) = gen.at(i, nodes_[c]);
    }
  auto inv = invert(alg_, sub);
  if (!inv) throw MdsViolation("base generator restricted to the chosen nodes is singular");
  inverse_ = std::move(*inv);
}

void BaseDecoder::decode(std::span<const Symbol> values, std::span<Symbol> data) const {
  multiply_vector(alg_, values, inverse_, data);
}

std::vector<Symbol> base_decode(const Algebra& alg, const GeneratorSpec& gen,
                                std::span<const int> nodes, std::span<const Symbol> values) {
  if (values.size() != nodes.size()) throw ParameterError("node/value count mismatch");
  std::vector<int> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParameterError("duplicate node in base_decode");
  BaseDecoder dec(alg, gen, std::vector<int>(nodes.begin(), nodes.end()));
  std::vector<Symbol> data(static_cast<std::size_t>(gen.k));
  dec.decode(values, data);
  return data;
}

}  // namespace mltc
