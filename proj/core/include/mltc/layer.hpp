#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mltc/algebra.hpp"
#include "mltc/base_code.hpp"

namespace mltc {

// Indexing conventions used throughout the library:
//   nodes, groups, offsets and rows are 0-based;
//   layers are 1-based, with layer 0 standing for the untransformed base code.

/// Validated (n, k, d) and the quantities derived from it.
struct CodeParams {
  int n = 0;
  int k = 0;
  int d = 0;
  int t = 0;          // d - k + 1
  int eta = 0;        // groups per set
  int layers = 0;     // transformation layers actually applied
  int max_layers = 0; // ceil(n / (eta t))
  int alpha = 0;      // t^layers

  int r() const { return n - k; }
  int set_size() const { return eta * t; }
  /// alpha / t: rows read from each helper in an optimal repair.
  int rows_per_helper() const { return alpha / t; }
  /// d alpha / t.
  int optimal_access() const { return d * rows_per_helper(); }

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

/// Throws ParameterError for unsupported triples. layers = 0 applies the
/// full ceil(n / (eta t)) layers; a smaller count builds the prefix code
/// that only covers the first sets.
CodeParams derive_params(int n, int k, int d, int layers = 0);

/// Position of a node inside one layer's set.
struct NodeAddress {
  int layer = 0;
  int group = 0;
  int offset = 0;

  friend bool operator==(const NodeAddress&, const NodeAddress&) = default;
};

/// The ηt nodes one layer transforms. Sets before the last are consecutive;
/// the last set is anchored at n - ηt and may overlap its predecessor.
struct LayerParams {
  int index = 0;  // 1-based layer number
  int t = 0;
  int eta = 0;
  int first = 0;  // first node of the set

  int node(int group, int offset) const { return first + group * t + offset; }
  bool contains(int h) const { return h >= first && h < first + eta * t; }
  std::optional<NodeAddress> address(int h) const;
  std::vector<int> nodes() const;
  std::vector<int> group_nodes(int group) const;
  /// Rows sharing a layer tuple are f + a * stride for a in [0, t).
  int stride() const;
};

LayerParams layer_params(const CodeParams& p, int layer);

/// The layer owning h for repair: the last layer whose set contains it.
std::optional<NodeAddress> owner(const CodeParams& p, int h);

/// Base-t digit (layer - 1) of row f: the instance index of that layer.
int row_digit(const CodeParams& p, int f, int layer);

/// η coefficients per layer.
struct CouplingSet {
  int eta = 0;
  std::vector<Symbol> values;  // (layer - 1) * eta + group

  int layers() const { return eta == 0 ? 0 : static_cast<int>(values.size()) / eta; }
  Symbol at(int layer, int group) const {
    return values.at(static_cast<std::size_t>((layer - 1) * eta + group));
  }
  friend bool operator==(const CouplingSet&, const CouplingSet&) = default;
};

/// Throws DomainError if any coefficient is not admissible for alg.
void check_coupling(const Algebra& alg, const CouplingSet& e);

/// n x alpha symbols, node-major.
struct CodewordArray {
  int n = 0;
  int alpha = 0;
  std::vector<Symbol> symbols;

  CodewordArray() = default;
  CodewordArray(int n_, int alpha_)
      : n(n_), alpha(alpha_), symbols(static_cast<std::size_t>(n_) * static_cast<std::size_t>(alpha_), 0) {}

  Symbol& at(int h, int f) { return symbols[static_cast<std::size_t>(h) * alpha + f]; }
  Symbol at(int h, int f) const { return symbols[static_cast<std::size_t>(h) * alpha + f]; }
  std::span<Symbol> node(int h) { return {symbols.data() + static_cast<std::size_t>(h) * alpha, static_cast<std::size_t>(alpha)}; }
  std::span<const Symbol> node(int h) const {
    return {symbols.data() + static_cast<std::size_t>(h) * alpha, static_cast<std::size_t>(alpha)};
  }
  friend bool operator==(const CodewordArray&, const CodewordArray&) = default;
};

// Pair primitives. With u, v two symbols and e a coupling coefficient the
// stored forms are the plain sum u + v and the scaled sum v + e u.

/// (u + v, v + e u). Throws DomainError for e in {0, 1}.
std::pair<Symbol, Symbol> couple_pair(const Algebra& alg, Symbol u, Symbol v, Symbol e);
/// Inverse of couple_pair. Throws DomainError for e in {0, 1}.
std::pair<Symbol, Symbol> decouple_pair(const Algebra& alg, Symbol x, Symbol y, Symbol e);

/// Which mixture of c_i and c_j a stored symbol holds.
enum class Mix { Plain, Scaled };  // c_i + c_j, c_i + e c_j
/// Which term of the mixture is already known.
enum class Term { Unit, Scaled };  // c_i (coefficient 1), c_j (coefficient e)

/// Given one mixture and one of its terms, returns the other mixture.
/// Only e != 0 is required. Throws DomainError for e = 0.
Symbol complete_pair(const Algebra& alg, Mix stored_form, Symbol stored, Term known_term, Symbol known,
                     Symbol e);

/// Forward and inverse transform of one t x t tuple in place.
/// cells[o * t + a] is the symbol of the group member with offset o at the
/// row whose layer digit is a. couple_tuple accepts any e (e = 1 simply
/// yields a degenerate code); decouple_tuple needs e + 1 invertible.
void couple_tuple(const Algebra& alg, int t, Symbol e, std::span<Symbol> cells);
void decouple_tuple(const Algebra& alg, int t, Symbol e, std::span<Symbol> cells);

/// Applies one layer in place to every row of arr. Rows of one tuple are
/// `stride` apart (0 means layer.stride(), i.e. arr holds all alpha rows).
void transform_layer(const Algebra& alg, CodewordArray& arr, const LayerParams& layer, const CouplingSet& e,
                     int stride = 0);
/// Inverse of transform_layer restricted to one group.
void untransform_group(const Algebra& alg, CodewordArray& arr, const LayerParams& layer, int group, Symbol e,
                       int stride = 0);

/// Row f of the result is the base codeword of data[f * k, (f + 1) * k).
CodewordArray encode_base_rows(const Algebra& alg, const GeneratorSpec& gen, int alpha,
                               std::span<const Symbol> data);

/// Concatenates t instances of the previous code (instance a becomes row
/// block a of every node) and couples the layer's set.
CodewordArray apply_layer(const Algebra& alg, std::span<const CodewordArray> instances,
                          const LayerParams& layer, const CouplingSet& e);

/// Rebuilds the t blocks of a transformed node with layer offset o.
///
/// own        the node's own instance-o vector (length m)
/// known      t blocks of length m; block a holds instance o of the member with offset a
/// reads      t blocks of length m; block a holds that member's stored symbols at the rows of digit o
/// out        t blocks of length m; blocks for the node's own offset come from own
/// Blocks at index o of known and reads are ignored.
void recombine_blocks(const Algebra& alg, int t, int offset, Symbol e, std::span<const Symbol> own,
                      std::span<const Symbol> known, std::span<const Symbol> reads, std::span<Symbol> out);

/// Repairs a node of a single-layer code from d single-symbol reads.
///
/// reads maps each helper to its stored symbol at the row equal to the
/// failed node's offset. The helpers must be the failed node's group mates,
/// the same-offset nodes of the other groups, and k - η + 1 nodes outside
/// the set. Anything else is a PlanError. Returns the t stored symbols.
std::vector<Symbol> repair_transformed_node(const Algebra& alg, const GeneratorSpec& gen, const CodeParams& p,
                                            const CouplingSet& e, int failed, const std::map<int, Symbol>& reads);

/// Systematic variant of a single-layer code (requires ηt <= k).
///
/// data holds t k symbols, data[l * k + h] being row l of systematic node h.
/// The result is a codeword of the same code: it equals the ordinary
/// encoding of the message returned by systematic_message().
CodewordArray systematic_layout(const Algebra& alg, const GeneratorSpec& gen, const CodeParams& p,
                                const CouplingSet& e, std::span<const Symbol> data);
std::vector<Symbol> systematic_message(const Algebra& alg, const CodeParams& p, const CouplingSet& e,
                                       std::span<const Symbol> data);

}  // namespace mltc
