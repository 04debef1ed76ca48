#include <map>
#include <random>

#include <benchmark/benchmark.h>

#include "mltc/evenodd.hpp"
#include "mltc/multilayer.hpp"
#include "mltc/verify.hpp"

using namespace mltc;

namespace {

std::vector<Symbol> random_symbols(std::size_t count, Symbol mask, unsigned seed = 1) {
  std::mt19937 rng(seed);
  std::vector<Symbol> v(count);
  for (auto& s : v) s = rng() & mask;
  return v;
}

const MultiLayerCode& code_for(int n, int k, int d) {
  static std::map<std::tuple<int, int, int>, MultiLayerCode> cache;
  auto it = cache.find({n, k, d});
  if (it == cache.end()) it = cache.emplace(std::tuple{n, k, d}, MultiLayerCode::build(Algebra::gf(8), n, k, d, 1)).first;
  return it->second;
}

void BM_GfMul(benchmark::State& state) {
  const Algebra f = Algebra::gf(static_cast<int>(state.range(0)));
  const auto a = random_symbols(4096, f.mask(), 1), b = random_symbols(4096, f.mask(), 2);
  for (auto _ : state) {
    Symbol acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc ^= f.mul(a[i], b[i]);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}
BENCHMARK(BM_GfMul)->Arg(8)->Arg(16);

void BM_RingMul(benchmark::State& state) {
  const Algebra r = Algebra::ring(static_cast<int>(state.range(0)));
  const auto a = random_symbols(4096, r.mask(), 1), b = random_symbols(4096, r.mask(), 2);
  for (auto _ : state) {
    Symbol acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc ^= r.mul(a[i], b[i]);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}
BENCHMARK(BM_RingMul)->Arg(5)->Arg(11);

void BM_Encode(benchmark::State& state) {
  const auto& code = code_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                              static_cast<int>(state.range(2)));
  const auto data = random_symbols(static_cast<std::size_t>(code.params().k * code.params().alpha), 0xFF);
  for (auto _ : state) benchmark::DoNotOptimize(code.encode(data));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(data.size()));
}
BENCHMARK(BM_Encode)->Args({8, 5, 6})->Args({14, 10, 11})->Args({11, 6, 8});

void BM_Repair(benchmark::State& state) {
  const auto& code = code_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                              static_cast<int>(state.range(2)));
  const auto arr = code.encode(random_symbols(static_cast<std::size_t>(code.params().k * code.params().alpha), 0xFF));
  const Repairer rep(code, code.plan_repair(0));
  std::vector<std::vector<Symbol>> reads;
  for (int h : rep.plan().helpers) {
    reads.emplace_back();
    for (int f : rep.plan().rows) reads.back().push_back(arr.at(h, f));
  }
  std::vector<std::span<const Symbol>> views(reads.begin(), reads.end());
  std::vector<Symbol> out(static_cast<std::size_t>(code.params().alpha));
  for (auto _ : state) {
    rep.repair(views, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Repair)->Args({8, 5, 6})->Args({14, 10, 11})->Args({11, 6, 8});

void BM_Decode(benchmark::State& state) {
  const auto& code = code_for(8, 5, 6);
  const auto arr = code.encode(random_symbols(20, 0xFF));
  const std::vector<int> nodes{1, 3, 4, 6, 7};
  const Decoder dec(code, nodes);
  std::vector<std::span<const Symbol>> views;
  for (int h : nodes) views.push_back(arr.node(h));
  std::vector<Symbol> data(20);
  for (auto _ : state) {
    dec.decode(views, data);
    benchmark::DoNotOptimize(data.data());
  }
}
BENCHMARK(BM_Decode);

void BM_VerifyMds(benchmark::State& state) {
  const auto code = MultiLayerCode::build(Algebra::gf(8), 11, 6, 8, 1, BuildOptions{.layers = 1, .verify = false});
  VerifyOptions vo;
  vo.threads = 1;
  vo.skip_grouped = false;
  for (auto _ : state) benchmark::DoNotOptimize(verify_mds(code, vo));
}
BENCHMARK(BM_VerifyMds)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
