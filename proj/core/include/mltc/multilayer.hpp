#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mltc/algebra.hpp"
#include "mltc/base_code.hpp"
#include "mltc/layer.hpp"
#include "mltc/matrix.hpp"
#include "mltc/verify.hpp"

namespace mltc {

struct BuildOptions {
  int layers = 0;  // 0 = all layers
  std::optional<Construction> construction;  // default: cauchy for fields, evenodd for rings
  std::vector<Symbol> points;                // explicit Vandermonde points
  std::optional<CouplingSet> coupling;       // skip the random search
  bool verify = true;
  int max_attempts = 32;
  VerifyOptions verify_options;
};

struct RepairStep {
  enum class Kind { Peel, Decode, Recombine, FullDecode };
  Kind kind = Kind::Peel;
  int layer = 0;
  int group = 0;
  std::vector<int> nodes;

  std::string describe() const;
};

enum class DecodePath { Base, Subcode };

struct RepairPlan {
  int failed = 0;
  std::optional<NodeAddress> address;  // none for nodes no layer covers
  std::vector<int> helpers;            // ascending
  std::vector<int> rows;               // read from every helper, ascending
  std::vector<int> providers;          // k nodes whose instance is decoded
  bool optimal = false;                // d helpers and alpha / t rows each
  bool conventional = false;           // plain k-node decode of everything
  DecodePath path = DecodePath::Base;
  std::vector<RepairStep> steps;

  std::size_t symbols_read() const { return helpers.size() * rows.size(); }
};

class MultiLayerCode {
 public:
  /// Builds the generator, then draws and verifies coupling coefficients.
  static MultiLayerCode build(const Algebra& alg, int n, int k, int d, std::uint64_t seed,
                              const BuildOptions& opts = {});

  /// Wraps explicit components. Nothing is verified.
  MultiLayerCode(const Algebra& alg, const CodeParams& params, GeneratorSpec gen, CouplingSet coupling,
                 std::uint64_t seed = 0);

  const Algebra& algebra() const { return alg_; }
  const CodeParams& params() const { return params_; }
  const GeneratorSpec& generator() const { return gen_; }
  const CouplingSet& coupling() const { return coupling_; }
  std::uint64_t seed() const { return seed_; }
  bool mds_verified() const { return report_.has_value() && report_->pass(); }
  const std::optional<MdsReport>& mds_report() const { return report_; }
  int selection_attempts() const { return attempts_; }

  LayerParams layer(int index) const { return layer_params(params_, index); }

  /// The same code restricted to its first `layers` layers.
  MultiLayerCode prefix(int layers) const;

  /// k alpha data symbols, instance-major: data[f * k + i] feeds base row f.
  CodewordArray encode(std::span<const Symbol> data) const;

  /// Exactly k nodes, each with alpha symbols.
  std::vector<Symbol> decode(const std::map<int, std::vector<Symbol>>& present) const;

  RepairPlan plan_repair(int failed) const;

  /// helper_rows maps every plan helper to its symbols at plan.rows.
  std::vector<Symbol> repair(const RepairPlan& plan, const std::map<int, std::vector<Symbol>>& helper_rows) const;

  /// k alpha x n alpha; column h * alpha + f is node h, row f.
  const Matrix& generator_matrix() const;

  /// Short hex digest of the generator and coefficients.
  std::string fingerprint() const;

 private:
  struct Cache;

  Algebra alg_;
  CodeParams params_;
  GeneratorSpec gen_;
  CouplingSet coupling_;
  std::uint64_t seed_ = 0;
  std::optional<MdsReport> report_;
  int attempts_ = 0;
  std::shared_ptr<Cache> cache_;
};

/// Decoder bound to a fixed set of k nodes.
///
/// When the nodes form whole groups in every layer the stored symbols are
/// peeled layer by layer down to base codewords and each row is decoded
/// separately. Otherwise the dense k alpha x k alpha system is inverted once.
class Decoder {
 public:
  enum class Path { Auto, Dense, Grouped };

  Decoder(const MultiLayerCode& code, std::vector<int> nodes, Path path = Path::Auto);

  const std::vector<int>& nodes() const { return nodes_; }
  bool grouped() const { return grouped_; }

  /// contents[i] holds the alpha symbols of nodes()[i]; data gets k alpha symbols.
  void decode(std::span<const std::span<const Symbol>> contents, std::span<Symbol> data) const;

 private:
  const MultiLayerCode* code_;
  std::vector<int> nodes_;
  bool grouped_ = false;
  std::optional<BaseDecoder> base_;
  Matrix inverse_;
};

/// Executes one repair plan repeatedly (one call per stripe).
class Repairer {
 public:
  Repairer(const MultiLayerCode& code, RepairPlan plan);

  const RepairPlan& plan() const { return plan_; }

  /// reads[i] holds helper plan().helpers[i] at plan().rows; out gets alpha symbols.
  void repair(std::span<const std::span<const Symbol>> reads, std::span<Symbol> out) const;

 private:
  void repair_conventional(std::span<const std::span<const Symbol>> reads, std::span<Symbol> out) const;

  const MultiLayerCode* code_;
  RepairPlan plan_;
  std::vector<int> helper_pos_;            // node -> index in helpers, -1 if absent
  std::vector<std::pair<int, int>> peel_;  // (layer, group), top-down
  std::vector<int> targets_;               // failed node, its group (by offset), then cross-check nodes
  Matrix solve_;                           // providers -> targets
  std::optional<BaseDecoder> base_;
  std::vector<std::pair<int, int>> base_peel_;  // earlier-layer groups peeled before base decode
};

}  // namespace mltc
