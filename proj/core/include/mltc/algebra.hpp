#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mltc/gf.hpp"
#include "mltc/ring.hpp"

namespace mltc {

/// Per-thread operation counts. Used to audit that ring-mode code paths
/// never touch field multiplication.
struct OpCounters {
  std::uint64_t gf_mul = 0;
  std::uint64_t gf_inv = 0;
  std::uint64_t ring_mul = 0;
  std::uint64_t ring_inv = 0;

  void reset() { *this = OpCounters{}; }
};

OpCounters& op_counters();

enum class AlgebraKind : std::uint8_t { Gf8 = 0, Gf16 = 1, Ring = 2 };

/// Runtime-selected symbol algebra: GF(2^8), GF(2^16) or R_p.
/// Addition is XOR in every case.
class Algebra {
 public:
  static Algebra gf(int width);
  static Algebra ring(int p);

  AlgebraKind kind() const { return kind_; }
  bool is_ring() const { return kind_ == AlgebraKind::Ring; }
  /// w for fields, p for rings.
  int parameter() const { return param_; }
  /// Bits carried by one symbol: w, or p-1.
  int symbol_bits() const { return is_ring() ? ring_.bits() : param_; }
  int symbol_bytes() const { return (symbol_bits() + 7) / 8; }
  std::uint64_t element_count() const { return std::uint64_t{1} << symbol_bits(); }
  Symbol mask() const { return static_cast<Symbol>(element_count() - 1); }
  bool contains(Symbol a) const { return (a & ~mask()) == 0; }
  std::string name() const;

  Symbol add(Symbol a, Symbol b) const { return a ^ b; }
  Symbol mul(Symbol a, Symbol b) const;
  std::optional<Symbol> try_inv(Symbol a) const;
  /// Throws DomainError for non-units.
  Symbol inv(Symbol a) const;
  bool is_unit(Symbol a) const;

  /// A coupling coefficient e must keep both e and e - 1 = e + 1 invertible.
  bool coupling_admissible(Symbol e) const;

  const BinaryRing& binary_ring() const { return ring_; }
  const GaloisField& field() const { return *gf_; }

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.kind_ == b.kind_ && a.param_ == b.param_;
  }

 private:
  Algebra(AlgebraKind kind, int param);

  AlgebraKind kind_;
  int param_;
  const GaloisField* gf_ = nullptr;
  BinaryRing ring_{3};
};

}  // namespace mltc
