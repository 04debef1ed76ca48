#include "mltc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <numeric>
#include <thread>

#include "mltc/errors.hpp"
#include "mltc/multilayer.hpp"

namespace mltc {

namespace {

constexpr std::uint64_t kChunk = 16;

// Lexicographic rank -> k-subset of [0, n).
std::vector<int> unrank(std::uint64_t rank, int n, int k) {
  std::vector<int> s;
  int x = 0;
  for (int i = 0; i < k; ++i) {
    while (true) {
      const std::uint64_t c = binomial(n - x - 1, k - i - 1);
      if (rank < c) break;
      rank -= c;
      ++x;
    }
    s.push_back(x++);
  }
  return s;
}

bool next_subset(std::vector<int>& s, int n) {
  const int k = static_cast<int>(s.size());
  int i = k - 1;
  while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++s[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

std::string subset_string(const std::vector<int>& s) {
  std::string r;
  for (int h : s) r += (r.empty() ? "" : ",") + std::to_string(h + 1);
  return "{" + r + "}";
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n - k + i) / i is exact; divide first to stay in range
    const std::uint64_t g = std::gcd(r, static_cast<std::uint64_t>(i));
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i) / (static_cast<std::uint64_t>(i) / g);
    r /= g;
    if (r > std::numeric_limits<std::uint64_t>::max() / num) throw ParameterError("binomial overflow");
    r *= num;
  }
  return r;
}

bool is_grouped_subset(const CodeParams& p, const std::vector<int>& nodes) {
  std::vector<char> in(static_cast<std::size_t>(p.n), 0);
  for (int h : nodes) in[static_cast<std::size_t>(h)] = 1;
  for (int mu = 1; mu <= p.layers; ++mu) {
    const LayerParams lp = layer_params(p, mu);
    for (int g = 0; g < p.eta; ++g) {
      int c = 0;
      for (int h : lp.group_nodes(g)) c += in[static_cast<std::size_t>(h)];
      if (c != 0 && c != p.t) return false;
    }
  }
  return true;
}

MdsReport verify_mds(const MultiLayerCode& code, const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const CodeParams& p = code.params();
  MdsReport rep;
  rep.total_subsets = binomial(p.n, p.k);
  const std::uint64_t todo = std::min(rep.total_subsets, opts.budget);
  rep.complete = todo == rep.total_subsets;

  const Matrix& g = code.generator_matrix();
  const Algebra& alg = code.algebra();
  std::atomic<std::uint64_t> next{0}, checked{0}, skipped{0};
  std::atomic<std::uint64_t> first_bad{std::numeric_limits<std::uint64_t>::max()};

  auto worker = [&] {
    std::vector<std::size_t> cols;
    while (true) {
      const std::uint64_t begin = next.fetch_add(kChunk);
      if (begin >= todo || begin > first_bad.load()) return;
      const std::uint64_t end = std::min(todo, begin + kChunk);
      std::vector<int> s = unrank(begin, p.n, p.k);
      for (std::uint64_t r = begin; r < end; ++r, next_subset(s, p.n)) {
        if (opts.skip_grouped && is_grouped_subset(p, s)) {
          ++skipped;
          continue;
        }
        cols.clear();
        for (int h : s)
          for (int f = 0; f < p.alpha; ++f) cols.push_back(static_cast<std::size_t>(h) * p.alpha + f);
        ++checked;
        if (!is_invertible(alg, g.select_columns(cols))) {
          std::uint64_t cur = first_bad.load();
          while (r < cur && !first_bad.compare_exchange_weak(cur, r)) {
          }
          break;
        }
      }
    }
  };

  int threads = opts.threads > 0 ? opts.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = static_cast<int>(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(threads, 1)), 1,
                                                      std::max<std::uint64_t>(1, todo / kChunk)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  rep.checked = checked.load();
  rep.skipped = skipped.load();
  if (first_bad.load() != std::numeric_limits<std::uint64_t>::max()) rep.first_failure = unrank(first_bad.load(), p.n, p.k);
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

CouplingSet draw_coupling(const Algebra& alg, const CodeParams& p, std::mt19937_64& rng) {
  bool any = false;
  for (Symbol e = 2; e <= std::min<Symbol>(alg.mask(), 4096) && !any; ++e) any = alg.coupling_admissible(e);
  if (!any) throw SelectionError("no admissible coupling coefficient exists in " + alg.name());
  std::uniform_int_distribution<Symbol> draw(2, alg.mask());
  CouplingSet e;
  e.eta = p.eta;
  for (int i = 0; i < p.eta * p.layers; ++i) {
    Symbol v;
    do v = draw(rng);
    while (!alg.coupling_admissible(v));
    e.values.push_back(v);
  }
  return e;
}

Selection select_coefficients(const Algebra& alg, const CodeParams& p, const GeneratorSpec& gen,
                              std::mt19937_64& rng, int max_attempts, const VerifyOptions& opts) {
  if (alg.element_count() <= 2) throw SelectionError("field has no element outside {0, 1}");
  Selection sel;
  MdsReport last;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    CouplingSet e = draw_coupling(alg, p, rng);
    const MultiLayerCode code(alg, p, gen, e);
    bool ok = true;
    // Earlier prefixes are decoded during repair, so they must be MDS as well.
    for (int l = 1; l <= p.layers && ok; ++l) {
      last = verify_mds(l == p.layers ? code : code.prefix(l), opts);
      ok = last.pass();
    }
    if (ok) {
      sel.coupling = std::move(e);
      sel.attempts = attempt;
      sel.report = last;
      return sel;
    }
  }
  std::string why = last.first_failure ? " (last witness " + subset_string(*last.first_failure) + ")" : "";
  throw SelectionError("no MDS coupling found in " + std::to_string(max_attempts) + " attempts" + why);
}

std::uint64_t field_size_bound(int n, int k, int eta, int t) {
  std::uint64_t grouped = 0;
  for (int l = 0; l <= eta; ++l) grouped += binomial(n - eta * t, k - l * t) * binomial(eta, l);
  const std::uint64_t total = binomial(n, k);
  const std::uint64_t pairs = static_cast<std::uint64_t>(eta) * static_cast<std::uint64_t>(t) * (t - 1) / 2;
  return pairs * (total - grouped);
}

}  // namespace mltc
