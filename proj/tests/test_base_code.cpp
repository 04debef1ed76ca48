#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "mltc/base_code.hpp"
#include "mltc/errors.hpp"

using namespace mltc;

namespace {

std::vector<Symbol> random_symbols(std::mt19937& rng, std::size_t n, Symbol mask) {
  std::vector<Symbol> v(n);
  for (auto& s : v) s = rng() & mask;
  return v;
}

template <class F>
void for_each_subset(int n, int k, F&& f) {
  std::vector<int> s(static_cast<std::size_t>(k));
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    f(s);
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

TEST_CASE("vandermonde (8,5) parity columns are 1, p_i, p_i^2") {
  const Algebra f = Algebra::gf(8);
  const auto g = make_generator(f, 8, 5, Construction::Vandermonde);
  REQUIRE(g.points.size() == 5);
  for (int i = 0; i < 5; ++i) {
    const Symbol p = g.points[static_cast<std::size_t>(i)];
    CHECK(p != 0);
    CHECK(g.at(i, 5) == 1);
    CHECK(g.at(i, 6) == p);
    CHECK(g.at(i, 7) == f.mul(p, p));
    for (int h = 0; h < 5; ++h) CHECK(g.at(i, h) == (i == h ? 1u : 0u));
  }
  CHECK(parity_superregular(f, g.parity));

  // The parities are the plain sum and the p-weighted sum.
  std::mt19937 rng(1);
  const auto data = random_symbols(rng, 5, 0xFF);
  const auto cw = base_encode(f, g, data);
  Symbol s0 = 0, s1 = 0;
  for (int i = 0; i < 5; ++i) {
    s0 ^= data[static_cast<std::size_t>(i)];
    s1 ^= f.mul(g.points[static_cast<std::size_t>(i)], data[static_cast<std::size_t>(i)]);
  }
  CHECK(cw[5] == s0);
  CHECK(cw[6] == s1);
}

TEST_CASE("explicit vandermonde points are checked") {
  const Algebra f = Algebra::gf(8);
  // p_1 = p_2 makes a 2x2 minor singular
  CHECK_THROWS_AS(make_generator(f, 8, 5, Construction::Vandermonde, 0, {1, 1, 2, 3, 4}), ConstructionError);
}

TEST_CASE("single parity column is all nonzero") {
  const Algebra f = Algebra::gf(8);
  for (auto c : {Construction::Cauchy, Construction::Vandermonde}) {
    const auto g = make_generator(f, 6, 5, c);
    for (int i = 0; i < 5; ++i) CHECK(g.at(i, 5) != 0);
  }
}

TEST_CASE("cauchy (6,4): all 15 four-subsets decode") {
  const Algebra f = Algebra::gf(8);
  const auto g = make_generator(f, 6, 4, Construction::Cauchy);
  CHECK(parity_superregular(f, g.parity));
  std::mt19937 rng(2);
  int subsets = 0;
  for_each_subset(6, 4, [&](const std::vector<int>& s) {
    ++subsets;
    const auto data = random_symbols(rng, 4, 0xFF);
    const auto cw = base_encode(f, g, data);
    std::vector<Symbol> vals;
    for (int h : s) vals.push_back(cw[static_cast<std::size_t>(h)]);
    CHECK(base_decode(f, g, s, vals) == data);
  });
  CHECK(subsets == 15);
}

TEST_CASE("encode is systematic and linear") {
  const Algebra f = Algebra::gf(16);
  const auto g = make_generator(f, 10, 6, Construction::Cauchy);
  CHECK(base_encode(f, g, std::vector<Symbol>(6, 0)) == std::vector<Symbol>(10, 0));
  for (int i = 0; i < 6; ++i) {
    std::vector<Symbol> e(6, 0);
    e[static_cast<std::size_t>(i)] = 1;
    const auto cw = base_encode(f, g, e);
    for (int h = 0; h < 10; ++h) CHECK(cw[static_cast<std::size_t>(h)] == g.at(i, h));
  }
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_symbols(rng, 6, 0xFFFF), b = random_symbols(rng, 6, 0xFFFF);
    std::vector<Symbol> ab(6);
    for (int i = 0; i < 6; ++i) ab[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] ^ b[static_cast<std::size_t>(i)];
    const auto ca = base_encode(f, g, a), cb = base_encode(f, g, b), cab = base_encode(f, g, ab);
    for (int h = 0; h < 10; ++h) CHECK(cab[static_cast<std::size_t>(h)] == (ca[static_cast<std::size_t>(h)] ^ cb[static_cast<std::size_t>(h)]));
    CHECK(std::equal(a.begin(), a.end(), ca.begin()));
  }
}

TEST_CASE("vandermonde (8,5): every five-subset round-trips") {
  const Algebra f = Algebra::gf(8);
  const auto g = make_generator(f, 8, 5, Construction::Vandermonde);
  std::mt19937 rng(4);
  int subsets = 0;
  for_each_subset(8, 5, [&](const std::vector<int>& s) {
    ++subsets;
    const auto data = random_symbols(rng, 5, 0xFF);
    const auto cw = base_encode(f, g, data);
    std::vector<Symbol> vals;
    for (int h : s) vals.push_back(cw[static_cast<std::size_t>(h)]);
    REQUIRE(base_decode(f, g, s, vals) == data);
  });
  CHECK(subsets == 56);
}

TEST_CASE("decode of nodes 3,5,6,7,8 recovers the missing systematic symbols") {
  const Algebra f = Algebra::gf(8);
  const auto g = make_generator(f, 8, 5, Construction::Vandermonde);
  std::mt19937 rng(5);
  const auto data = random_symbols(rng, 5, 0xFF);
  const auto cw = base_encode(f, g, data);
  const std::vector<int> nodes{2, 4, 5, 6, 7};
  std::vector<Symbol> vals;
  for (int h : nodes) vals.push_back(cw[static_cast<std::size_t>(h)]);
  const auto got = base_decode(f, g, nodes, vals);
  CHECK(got[0] == data[0]);
  CHECK(got[1] == data[1]);
  CHECK(got[3] == data[3]);
  // systematic read-off
  const std::vector<int> first{0, 1, 2, 3, 4};
  CHECK(base_decode(f, g, first, std::vector<Symbol>(cw.begin(), cw.begin() + 5)) == data);
}

TEST_CASE("base errors") {
  const Algebra f = Algebra::gf(8);
  CHECK_THROWS_AS(make_generator(f, 5, 5, Construction::Cauchy), ParameterError);
  CHECK_THROWS_AS(make_generator(f, 300, 5, Construction::Cauchy), ConstructionError);
  CHECK_THROWS_AS(make_generator(f, 8, 5, Construction::Evenodd), ParameterError);
  const auto g = make_generator(f, 8, 5, Construction::Cauchy);
  CHECK_THROWS_AS(base_encode(f, g, std::vector<Symbol>(4, 0)), ParameterError);
  const std::vector<int> dup{0, 0, 1, 2, 3};
  CHECK_THROWS_AS(base_decode(f, g, dup, std::vector<Symbol>(5, 0)), ParameterError);
}

TEST_CASE("evenodd generator uses x powers") {
  const Algebra r = Algebra::ring(5);
  const auto g = make_generator(r, 6, 4, Construction::Evenodd);
  for (int i = 0; i < 4; ++i) {
    CHECK(g.at(i, 4) == 1);
    CHECK(g.at(i, 5) == r.binary_ring().x_power(static_cast<std::uint64_t>(i)));
  }
}
