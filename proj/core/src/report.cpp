#include "mltc/report.hpp"

#include "mltc/errors.hpp"
#include "mltc/layer.hpp"
#include "mltc/multilayer.hpp"
#include "mltc/verify.hpp"

namespace mltc {

namespace {

// Saturating t^e; sets overflow when the value does not fit.
std::uint64_t upow(std::uint64_t b, int e, bool& overflow) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > UINT64_MAX / b) {
      overflow = true;
      return UINT64_MAX;
    }
    r *= b;
  }
  return r;
}

}  // namespace

ReportRow report_row(int n, int k, int d) {
  const CodeParams p = derive_params(n, k, d, 1);
  ReportRow r;
  r.n = n;
  r.k = k;
  r.d = d;
  r.t = p.t;
  r.eta = p.eta;
  r.layers = p.max_layers;
  bool overflow = false;
  r.alpha = upow(static_cast<std::uint64_t>(p.t), p.max_layers, overflow);
  r.baseline_alpha = upow(static_cast<std::uint64_t>(p.t), (n + p.t - 1) / p.t, r.baseline_overflow);
  r.repair_access = static_cast<std::uint64_t>(d) * (r.alpha / static_cast<std::uint64_t>(p.t));
  r.rs_access = static_cast<std::uint64_t>(k) * r.alpha;
  r.savings = 1.0 - static_cast<double>(r.repair_access) / static_cast<double>(r.rs_access);
  // Plans only depend on the layout, so any admissible coefficients will do.
  try {
    const Algebra f = Algebra::gf(8);
    const CodeParams full = derive_params(n, k, d);
    CouplingSet cs{full.eta, std::vector<Symbol>(static_cast<std::size_t>(full.eta * full.layers), 2)};
    const MultiLayerCode code(f, full, make_generator(f, n, k, Construction::Cauchy), cs);
    for (int x = 0; x < n; ++x)
      if (!code.plan_repair(x).optimal) r.suboptimal_nodes.push_back(x);
    r.plans_checked = true;
  } catch (const ParameterError&) {
  } catch (const ConstructionError&) {
  }
  if (n == 80 && k == 71 && d == 72)
    r.note = "erratum: a published table lists alpha = 1024 here; eta = 8 gives 2^5 = 32";
  return r;
}

BoundRow bound_row(int n, int k, int eta, int t) {
  BoundRow b{n, k, eta, t, field_size_bound(n, k, eta, t), {}};
  if (n == 8 && k == 5 && eta == 2 && t == 2) b.note = "erratum: a published table lists 92; the formula gives 88";
  return b;
}

std::vector<std::vector<int>> default_report_params() {
  return {{14, 10, 11}, {12, 8, 9}, {18, 14, 15}, {18, 13, 15}, {24, 19, 21}, {80, 71, 72}};
}

}  // namespace mltc
