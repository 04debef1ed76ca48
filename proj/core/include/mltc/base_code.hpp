#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mltc/algebra.hpp"
#include "mltc/matrix.hpp"

namespace mltc {

enum class Construction : std::uint8_t { Cauchy, Vandermonde, Evenodd };

std::string to_string(Construction c);

/// Systematic generator [I_k | P] of an (n, k) MDS code.
struct GeneratorSpec {
  int n = 0;
  int k = 0;
  Construction construction = Construction::Cauchy;
  Matrix parity;               // k x (n - k)
  std::vector<Symbol> points;  // Vandermonde evaluation points, empty otherwise

  /// Entry (i, h) of the full k x n generator.
  Symbol at(int i, int h) const {
    if (h < k) return i == h ? 1 : 0;
    return parity.at(static_cast<std::size_t>(i), static_cast<std::size_t>(h - k));
  }
  Matrix full() const;
};

/// Builds the generator.
///
/// Cauchy: P[i][j] = 1 / (x_i + y_j) with x_i = i, y_j = k + j.
/// Vandermonde: parity column j is (p_1^j, ..., p_k^j); the points default to
/// 1..k and can be overridden. Every square sub-matrix of P is then checked.
/// Evenodd (ring only): P[i][j] = x^{i j}.
/// The seed only matters for Vandermonde without explicit points, where it
/// permutes the candidate points if the first choice fails the check.
GeneratorSpec make_generator(const Algebra& alg, int n, int k, Construction construction,
                             std::uint64_t seed = 0, std::vector<Symbol> points = {});

/// True when every square sub-matrix of the parity block is invertible.
bool parity_superregular(const Algebra& alg, const Matrix& parity);

/// k data symbols -> n codeword symbols.
std::vector<Symbol> base_encode(const Algebra& alg, const GeneratorSpec& gen,
                                std::span<const Symbol> data);

/// Recovers the k data symbols from exactly k (node, value) pairs.
std::vector<Symbol> base_decode(const Algebra& alg, const GeneratorSpec& gen,
                                std::span<const int> nodes, std::span<const Symbol> values);

/// Decoder bound to a fixed set of k nodes; the inverse is computed once.
class BaseDecoder {
 public:
  BaseDecoder(const Algebra& alg, const GeneratorSpec& gen, std::vector<int> nodes);

  const std::vector<int>& nodes() const { return nodes_; }
  void decode(std::span<const Symbol> values, std::span<Symbol> data) const;

 private:
  Algebra alg_;
  std::vector<int> nodes_;
  Matrix inverse_;  // k x k, data = values * inverse_
};

}  // namespace mltc
