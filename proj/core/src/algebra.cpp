#include "mltc/algebra.hpp"

#include "mltc/errors.hpp"

namespace mltc {

OpCounters& op_counters() {
  thread_local OpCounters counters;
  return counters;
}

Algebra::Algebra(AlgebraKind kind, int param) : kind_(kind), param_(param) {}

Algebra Algebra::gf(int width) {
  Algebra a(width == 16 ? AlgebraKind::Gf16 : AlgebraKind::Gf8, width);
  a.gf_ = &GaloisField::get(width);
  return a;
}

Algebra Algebra::ring(int p) {
  Algebra a(AlgebraKind::Ring, p);
  a.ring_ = BinaryRing(p);
  return a;
}

std::string Algebra::name() const {
  if (is_ring()) return "R_" + std::to_string(param_);
  return "GF(2^" + std::to_string(param_) + ")";
}

Symbol Algebra::mul(Symbol a, Symbol b) const {
  return is_ring() ? ring_.mul(a, b) : gf_->mul(a, b);
}

std::optional<Symbol> Algebra::try_inv(Symbol a) const {
  if (is_ring()) return ring_.try_inv(a);
  if (a == 0) return std::nullopt;
  return gf_->inv(a);
}

Symbol Algebra::inv(Symbol a) const {
  auto r = try_inv(a);
  if (!r) throw DomainError("symbol " + std::to_string(a) + " is not invertible in " + name());
  return *r;
}

bool Algebra::is_unit(Symbol a) const {
  if (!contains(a)) return false;
  return is_ring() ? ring_.is_unit(a) : a != 0;
}

bool Algebra::coupling_admissible(Symbol e) const {
  return contains(e) && e != 0 && e != 1 && is_unit(e) && is_unit(e ^ 1u);
}

}  // namespace mltc
