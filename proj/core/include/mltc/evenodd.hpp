#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mltc/multilayer.hpp"

namespace mltc {

/// (k + r)-column binary array code over R_p.
struct ArrayCodeParams {
  int k = 0;
  int r = 0;
  int d = 0;
  int p = 0;

  int n() const { return k + r; }
};

/// EVENODD with the coupling layers on top. Every column holds alpha ring
/// symbols, i.e. (p - 1) alpha bits, and all arithmetic reduces to XORs of
/// cyclically shifted bit vectors.
class EvenoddCode {
 public:
  static EvenoddCode build(const ArrayCodeParams& params, std::uint64_t seed, BuildOptions opts = {});

  const ArrayCodeParams& array_params() const { return params_; }
  const MultiLayerCode& code() const { return code_; }
  int alpha() const { return code_.params().alpha; }
  int bits_per_symbol() const { return params_.p - 1; }

  /// k alpha information polynomials, instance-major.
  CodewordArray encode(std::span<const Symbol> info) const { return code_.encode(info); }
  std::vector<Symbol> decode(const std::map<int, std::vector<Symbol>>& present) const { return code_.decode(present); }

  RepairPlan plan_repair(int column) const { return code_.plan_repair(column); }
  std::vector<Symbol> repair(const RepairPlan& plan, const std::map<int, std::vector<Symbol>>& helper_rows) const;

  /// Bits a plan reads: symbols read times (p - 1).
  std::uint64_t bits_read(const RepairPlan& plan) const;
  /// d (p - 1) alpha / (d - k + 1).
  std::uint64_t optimal_bits() const;

 private:
  EvenoddCode(ArrayCodeParams params, MultiLayerCode code) : params_(params), code_(std::move(code)) {}

  ArrayCodeParams params_;
  MultiLayerCode code_;
};

/// Any-k check of the untransformed EVENODD generator over R_p.
MdsReport verify_evenodd_base(int k, int r, int p);

/// Any-k check of a transformed EVENODD code.
MdsReport verify_mds_ring(const EvenoddCode& code, const VerifyOptions& opts = {});

}  // namespace mltc
