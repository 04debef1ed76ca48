#pragma once

#include <cstdint>
#include <vector>

namespace mltc {

using Symbol = std::uint32_t;

/// Arithmetic in GF(2^w) for w in {8, 16}.
///
/// Reduction polynomials are fixed so that shards are portable:
///   w = 8:  x^8 + x^4 + x^3 + x + 1        (0x11B)
///   w = 16: x^16 + x^12 + x^3 + x + 1      (0x1100B)
/// Multiplication goes through log/antilog tables over a primitive element
/// found at table-build time.
class GaloisField {
 public:
  /// Shared instance for the given width. Throws ParameterError for other widths.
  static const GaloisField& get(int width);

  int width() const { return width_; }
  std::uint32_t order() const { return order_; }
  std::uint32_t polynomial() const { return poly_; }
  Symbol generator() const { return generator_; }

  bool contains(Symbol a) const { return a < order_; }

  Symbol add(Symbol a, Symbol b) const { return a ^ b; }
  Symbol mul(Symbol a, Symbol b) const;
  /// Throws DomainError on zero.
  Symbol inv(Symbol a) const;
  Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }
  Symbol pow(Symbol a, std::uint64_t e) const;

 private:
  explicit GaloisField(int width);

  int width_;
  std::uint32_t order_;
  std::uint32_t poly_;
  Symbol generator_ = 0;
  std::vector<std::uint32_t> log_;
  std::vector<Symbol> exp_;  // doubled so log a + log b never wraps
};

/// Convenience wrappers over GaloisField::get(width).
Symbol gf_mul(Symbol a, Symbol b, int width = 8);
Symbol gf_inv(Symbol a, int width = 8);

}  // namespace mltc
