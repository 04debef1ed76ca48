#pragma once

#include <cstdint>
#include <optional>

#include "mltc/gf.hpp"

namespace mltc {

/// The quotient ring R_p = F_2[x] / (1 + x + ... + x^{p-1}) for an odd prime p.
///
/// An element is a polynomial of degree <= p-2 packed into a Symbol with
/// bit i holding the coefficient of x^i. Multiplication works in
/// F_2[x]/(x^p - 1), where multiplying by x^i is a cyclic shift, and then
/// folds the x^{p-1} coefficient back with M_p(x) = 1 + x + ... + x^{p-1}.
/// Only XORs and shifts are used.
class BinaryRing {
 public:
  /// Throws ParameterError unless p is an odd prime in [3, 31].
  explicit BinaryRing(int p);

  int p() const { return p_; }
  int bits() const { return p_ - 1; }
  Symbol mask() const { return mask_; }
  bool contains(Symbol a) const { return (a & ~mask_) == 0; }

  Symbol add(Symbol a, Symbol b) const { return a ^ b; }
  Symbol mul(Symbol a, Symbol b) const;
  /// x^m reduced into the ring; m may be any non-negative integer.
  Symbol x_power(std::uint64_t m) const;
  /// Inverse via the extended Euclidean algorithm on gcd(a, M_p).
  std::optional<Symbol> try_inv(Symbol a) const;
  bool is_unit(Symbol a) const { return try_inv(a).has_value(); }
  /// True when 2 is a primitive root mod p, i.e. M_p is irreducible and R_p a field.
  bool is_field() const { return is_field_; }

 private:
  int p_;
  Symbol mask_;
  bool is_field_;
};

bool is_prime(int p);

/// Value-level ring element carrying its modulus, for the free-function API.
struct RingElement {
  Symbol bits = 0;
  int p = 0;

  friend bool operator==(const RingElement&, const RingElement&) = default;
};

/// Throws DomainError when the operands come from different rings.
RingElement ring_mul(const RingElement& a, const RingElement& b);
/// nullopt when gcd(a(x), M_p(x)) != 1.
std::optional<RingElement> ring_try_inv(const RingElement& a);

}  // namespace mltc
