#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mltc/algebra.hpp"
#include "mltc/base_code.hpp"
#include "mltc/layer.hpp"

namespace mltc {

class MultiLayerCode;

struct VerifyOptions {
  std::uint64_t budget = 1'000'000;  // max subsets to enumerate
  bool skip_grouped = true;          // skip subsets that are unions of whole groups in every layer
  int threads = 0;                   // 0 = hardware concurrency
};

struct MdsReport {
  std::uint64_t total_subsets = 0;
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;  // decodable by group peeling, not rank-checked
  bool complete = true;       // false when the budget cut enumeration short
  std::optional<std::vector<int>> first_failure;  // lexicographically smallest failing subset
  double elapsed_seconds = 0;

  bool pass() const { return complete && !first_failure; }
};

/// Rank-checks the k alpha x k alpha sub-generator of every k-subset.
MdsReport verify_mds(const MultiLayerCode& code, const VerifyOptions& opts = {});

/// True when, for every layer, nodes ∩ set is a union of whole groups.
bool is_grouped_subset(const CodeParams& p, const std::vector<int>& nodes);

struct Selection {
  CouplingSet coupling;
  int attempts = 0;
  MdsReport report;
};

/// One uniform draw of η admissible coefficients per layer, unverified.
CouplingSet draw_coupling(const Algebra& alg, const CodeParams& p, std::mt19937_64& rng);

/// Draws η coefficients per layer uniformly from the admissible elements and
/// keeps the first draw for which every layer prefix of the code is MDS.
/// Throws SelectionError after max_attempts failed draws.
Selection select_coefficients(const Algebra& alg, const CodeParams& p, const GeneratorSpec& gen,
                              std::mt19937_64& rng, int max_attempts = 32, const VerifyOptions& opts = {});

/// η t (t - 1) / 2 · (C(n, k) - Σ_{l=0..η} C(n - ηt, k - l t) C(η, l)).
std::uint64_t field_size_bound(int n, int k, int eta, int t);

std::uint64_t binomial(int n, int k);

}  // namespace mltc
