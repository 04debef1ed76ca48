#include <map>
#include <random>

#include "doctest.h"
#include "mltc/errors.hpp"
#include "mltc/layer.hpp"

using namespace mltc;

namespace {

CouplingSet couplings(const CodeParams& p, Symbol first = 7) {
  CouplingSet e;
  e.eta = p.eta;
  for (int i = 0; i < p.eta * p.layers; ++i) e.values.push_back(first + static_cast<Symbol>(i) * 13);
  return e;
}

std::vector<Symbol> random_symbols(std::mt19937& rng, std::size_t n) {
  std::vector<Symbol> v(n);
  for (auto& s : v) s = rng() & 0xFF;
  return v;
}

}  // namespace

TEST_CASE("derive_params") {
  auto p = derive_params(8, 5, 6);
  CHECK(p.t == 2);
  CHECK(p.eta == 2);
  CHECK(p.layers == 2);
  CHECK(p.alpha == 4);
  p = derive_params(11, 6, 8);
  CHECK(p.t == 3);
  CHECK(p.eta == 2);
  CHECK(p.layers == 2);
  CHECK(p.alpha == 9);
  p = derive_params(14, 10, 11);
  CHECK(p.t == 2);
  CHECK(p.eta == 3);
  CHECK(p.layers == 3);
  CHECK(p.alpha == 8);
  p = derive_params(11, 6, 8, 1);
  CHECK(p.layers == 1);
  CHECK(p.alpha == 3);
  CHECK_THROWS_AS(derive_params(5, 4, 4), ParameterError);
  CHECK_THROWS_AS(derive_params(8, 5, 5), ParameterError);
  CHECK_THROWS_AS(derive_params(8, 5, 8), ParameterError);
  CHECK_THROWS_AS(derive_params(8, 5, 6, 3), ParameterError);
}

TEST_CASE("layer sets and overlap") {
  const auto p = derive_params(7, 4, 5);  // two sets of four nodes over seven
  CHECK(layer_params(p, 1).first == 0);
  CHECK(layer_params(p, 2).first == 3);
  CHECK(owner(p, 3)->layer == 2);
  CHECK(owner(p, 3)->offset == 0);
  CHECK(owner(p, 2)->layer == 1);
  const auto q = derive_params(6, 4, 5);  // sets {0,1}, {2,3}, {4,5}
  CHECK(layer_params(q, 3).first == 4);
  CHECK(row_digit(q, 5, 1) == 1);
  CHECK(row_digit(q, 5, 2) == 0);
  CHECK(row_digit(q, 5, 3) == 1);
}

TEST_CASE("couple_pair reproduces the stored pair forms") {
  const Algebra f = Algebra::gf(8);
  const Symbol e = 0x1D, a12 = 0x35, a21 = 0xC4;
  const auto [node2, node1] = couple_pair(f, a12, a21, e);
  CHECK(node2 == (a12 ^ a21));
  CHECK(node1 == (a21 ^ f.mul(e, a12)));
  CHECK(couple_pair(f, 0, 0, e) == std::pair<Symbol, Symbol>{0, 0});
  CHECK_THROWS_AS(couple_pair(f, 1, 2, 1), DomainError);
  CHECK_THROWS_AS(couple_pair(f, 1, 2, 0), DomainError);
}

TEST_CASE("decouple_pair inverts couple_pair") {
  for (const Algebra& alg : {Algebra::gf(8), Algebra::gf(16), Algebra::ring(5), Algebra::ring(11)}) {
    std::mt19937 rng(11);
    for (int i = 0; i < 1000; ++i) {
      const Symbol u = rng() & alg.mask(), v = rng() & alg.mask();
      Symbol e;
      do e = rng() & alg.mask();
      while (!alg.coupling_admissible(e));
      const auto [x, y] = couple_pair(alg, u, v, e);
      CHECK(x == (u ^ v));
      CHECK(y == (v ^ alg.mul(e, u)));
      REQUIRE(decouple_pair(alg, x, y, e) == std::pair<Symbol, Symbol>{u, v});
    }
    CHECK(decouple_pair(alg, 0, 0, 2) == std::pair<Symbol, Symbol>{0, 0});
  }
  // Two stored pair symbols of a group give back both original symbols.
  const Algebra f = Algebra::gf(8);
  const Symbol c16 = 0x4A, c35 = 0x91, e3 = 0x57;
  const auto [u, v] = decouple_pair(f, c16 ^ c35, c35 ^ f.mul(e3, c16), e3);
  CHECK(u == c16);
  CHECK(v == c35);
}

TEST_CASE("complete_pair identities") {
  const Algebra f = Algebra::gf(8);
  std::mt19937 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const Symbol ci = rng() & 0xFF, cj = rng() & 0xFF;
    const Symbol e = 1 + rng() % 255;  // e = 1 is fine here
    const Symbol plain = ci ^ cj, scaled = ci ^ f.mul(e, cj);
    REQUIRE(complete_pair(f, Mix::Scaled, scaled, Term::Scaled, cj, e) == plain);
    REQUIRE(complete_pair(f, Mix::Scaled, scaled, Term::Unit, ci, e) == plain);
    REQUIRE(complete_pair(f, Mix::Plain, plain, Term::Scaled, cj, e) == scaled);
    REQUIRE(complete_pair(f, Mix::Plain, plain, Term::Unit, ci, e) == scaled);
  }
  // c21 + e1 c12 from the read c12 + c21 and the decoded c12
  const Symbol c12 = 0x0F, c21 = 0xA0, e1 = 0x02;
  CHECK(complete_pair(f, Mix::Plain, c12 ^ c21, Term::Scaled, c12, e1) == (c21 ^ f.mul(e1, c12)));
  CHECK_THROWS_AS(complete_pair(f, Mix::Plain, 1, Term::Unit, 1, 0), DomainError);
}

TEST_CASE("apply_layer on the (8,5) base code") {
  const Algebra f = Algebra::gf(8);
  const auto p = derive_params(8, 5, 6, 1);
  const auto gen = make_generator(f, 8, 5, Construction::Vandermonde);
  const auto e = couplings(p);
  std::mt19937 rng(13);
  const auto d0 = random_symbols(rng, 5), d1 = random_symbols(rng, 5);
  std::vector<Symbol> both(d0);
  both.insert(both.end(), d1.begin(), d1.end());
  const CodewordArray c0 = encode_base_rows(f, gen, 1, d0), c1 = encode_base_rows(f, gen, 1, d1);
  const std::vector<CodewordArray> inst{c0, c1};
  const CodewordArray arr = apply_layer(f, inst, layer_params(p, 1), e);
  CHECK(arr.symbols.size() == 8u * 2u);

  auto c = [&](int instance, int node) { return (instance == 0 ? c0 : c1).at(node, 0); };
  const Symbol e1 = e.at(1, 0), e2 = e.at(1, 1);
  CHECK(arr.at(0, 0) == c(0, 0));
  CHECK(arr.at(0, 1) == (c(1, 0) ^ f.mul(e1, c(0, 1))));
  CHECK(arr.at(1, 0) == (c(0, 1) ^ c(1, 0)));
  CHECK(arr.at(1, 1) == c(1, 1));
  CHECK(arr.at(2, 1) == (c(1, 2) ^ f.mul(e2, c(0, 3))));
  CHECK(arr.at(3, 0) == (c(0, 3) ^ c(1, 2)));
  for (int h = 4; h < 8; ++h) {
    CHECK(arr.at(h, 0) == c(0, h));
    CHECK(arr.at(h, 1) == c(1, h));
  }

  CodewordArray same = encode_base_rows(f, gen, 2, both);
  transform_layer(f, same, layer_params(p, 1), e);
  CHECK(same == arr);

  const std::vector<CodewordArray> zero(2, CodewordArray(8, 1));
  CHECK(apply_layer(f, zero, layer_params(p, 1), e) == CodewordArray(8, 2));
}

TEST_CASE("untransform_group inverts one group") {
  const Algebra f = Algebra::gf(8);
  const auto p = derive_params(11, 6, 8, 1);
  const auto gen = make_generator(f, 11, 6, Construction::Cauchy);
  const auto e = couplings(p);
  std::mt19937 rng(14);
  const auto data = random_symbols(rng, 18);
  const CodewordArray base = encode_base_rows(f, gen, 3, data);
  CodewordArray arr = base;
  transform_layer(f, arr, layer_params(p, 1), e);
  untransform_group(f, arr, layer_params(p, 1), 0, e.at(1, 0));
  untransform_group(f, arr, layer_params(p, 1), 1, e.at(1, 1));
  CHECK(arr == base);
}

TEST_CASE("repair_transformed_node on single-layer codes") {
  const Algebra f = Algebra::gf(8);
  for (auto [n, k, d] : {std::tuple{8, 5, 6}, std::tuple{11, 6, 8}, std::tuple{9, 6, 7}}) {
    const auto p = derive_params(n, k, d, 1);
    const auto gen = make_generator(f, n, k, Construction::Cauchy);
    const auto e = couplings(p);
    const LayerParams layer = layer_params(p, 1);
    std::mt19937 rng(static_cast<unsigned>(n * 100 + k));
    for (int trial = 0; trial < 5; ++trial) {
      CodewordArray arr = encode_base_rows(f, gen, p.alpha, random_symbols(rng, static_cast<std::size_t>(k * p.alpha)));
      transform_layer(f, arr, layer, e);
      for (int x : layer.nodes()) {
        const auto a = *layer.address(x);
        std::map<int, Symbol> reads;
        for (int o = 0; o < p.t; ++o)
          if (o != a.offset) reads[layer.node(a.group, o)] = arr.at(layer.node(a.group, o), a.offset);
        for (int g = 0; g < p.eta; ++g)
          if (g != a.group) reads[layer.node(g, a.offset)] = arr.at(layer.node(g, a.offset), a.offset);
        int outside = 0;
        for (int h = 0; h < n && outside < k - p.eta + 1; ++h)
          if (!layer.contains(h)) {
            reads[h] = arr.at(h, a.offset);
            ++outside;
          }
        REQUIRE(static_cast<int>(reads.size()) == d);
        const auto got = repair_transformed_node(f, gen, p, e, x, reads);
        for (int r = 0; r < p.t; ++r) REQUIRE(got[static_cast<std::size_t>(r)] == arr.at(x, r));
      }
    }
  }
}

TEST_CASE("repair_transformed_node rejects other helper sets") {
  const Algebra f = Algebra::gf(8);
  const auto p = derive_params(8, 5, 6, 1);
  const auto gen = make_generator(f, 8, 5, Construction::Cauchy);
  const auto e = couplings(p);
  std::map<int, Symbol> reads{{1, 0}, {2, 0}, {4, 0}, {5, 0}, {6, 0}, {7, 0}};
  CHECK(repair_transformed_node(f, gen, p, e, 0, reads) == std::vector<Symbol>{0, 0});
  auto wrong = reads;
  wrong.erase(2);
  wrong[3] = 0;
  CHECK_THROWS_AS(repair_transformed_node(f, gen, p, e, 0, wrong), PlanError);
  auto few = reads;
  few.erase(7);
  CHECK_THROWS_AS(repair_transformed_node(f, gen, p, e, 0, few), PlanError);
  CHECK_THROWS_AS(repair_transformed_node(f, gen, p, e, 5, reads), PlanError);
}

TEST_CASE("systematic layout of (11,6,8)") {
  const Algebra f = Algebra::gf(8);
  const auto p = derive_params(11, 6, 8, 1);
  const auto gen = make_generator(f, 11, 6, Construction::Cauchy);
  const auto e = couplings(p);
  std::mt19937 rng(15);
  CHECK(systematic_layout(f, gen, p, e, std::vector<Symbol>(18, 0)) == CodewordArray(11, 3));
  for (int trial = 0; trial < 20; ++trial) {
    const auto data = random_symbols(rng, 18);
    const CodewordArray sys = systematic_layout(f, gen, p, e, data);
    for (int h = 0; h < 6; ++h)
      for (int r = 0; r < 3; ++r) REQUIRE(sys.at(h, r) == data[static_cast<std::size_t>(r * 6 + h)]);
    CodewordArray enc = encode_base_rows(f, gen, 3, systematic_message(f, p, e, data));
    transform_layer(f, enc, layer_params(p, 1), e);
    CHECK(enc == sys);
  }
  CHECK_THROWS_AS(systematic_layout(f, gen, derive_params(11, 6, 8), e, std::vector<Symbol>(54, 0)), ParameterError);
}
