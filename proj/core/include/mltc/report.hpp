#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mltc {

/// Sub-packetization and repair-traffic comparison for one (n, k, d).
struct ReportRow {
  int n = 0;
  int k = 0;
  int d = 0;
  int t = 0;
  int eta = 0;
  int layers = 0;
  std::uint64_t alpha = 0;           // t^layers
  std::uint64_t baseline_alpha = 0;  // t^ceil(n / t), one coupled pair layer per t nodes
  std::uint64_t repair_access = 0;   // d alpha / t
  std::uint64_t rs_access = 0;       // k alpha, conventional decode-and-re-encode
  double savings = 0;                // 1 - repair_access / rs_access
  bool baseline_overflow = false;
  bool plans_checked = false;        // false when alpha is too large to build the code
  std::vector<int> suboptimal_nodes; // 0-based; nodes whose best plan exceeds repair_access
  std::string note;                  // known published discrepancy, if any
};

/// Throws ParameterError for unsupported triples.
ReportRow report_row(int n, int k, int d);

/// Field-size bound together with the known discrepancy note, if any.
struct BoundRow {
  int n = 0;
  int k = 0;
  int eta = 0;
  int t = 0;
  std::uint64_t bound = 0;
  std::string note;
};

BoundRow bound_row(int n, int k, int eta, int t);

/// The parameter sets reported when none are given.
std::vector<std::vector<int>> default_report_params();

}  // namespace mltc
