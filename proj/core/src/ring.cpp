#include "mltc/ring.hpp"

#include <bit>
#include <string>

#include "mltc/algebra.hpp"
#include "mltc/errors.hpp"

namespace mltc {

namespace {

int degree(std::uint64_t a) { return a == 0 ? -1 : 63 - std::countl_zero(a); }

// Carry-less product.
std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b != 0) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
  }
  return r;
}

// Polynomial remainder and quotient over F_2.
std::uint64_t poly_divmod(std::uint64_t a, std::uint64_t b, std::uint64_t* quot) {
  std::uint64_t q = 0;
  const int db = degree(b);
  for (int da = degree(a); da >= db; da = degree(a)) {
    q |= std::uint64_t{1} << (da - db);
    a ^= b << (da - db);
  }
  if (quot) *quot = q;
  return a;
}

bool two_is_primitive(int p) {
  int v = 1;
  for (int i = 1; i < p - 1; ++i) {
    v = (v * 2) % p;
    if (v == 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

BinaryRing::BinaryRing(int p) : p_(p) {
  if (p < 3 || p > 31 || !is_prime(p))
    throw ParameterError("ring modulus p must be an odd prime in [3, 31], got " + std::to_string(p));
  mask_ = static_cast<Symbol>((std::uint64_t{1} << (p - 1)) - 1);
  is_field_ = two_is_primitive(p);
}

Symbol BinaryRing::mul(Symbol a, Symbol b) const {
  ++op_counters().ring_mul;
  const std::uint64_t full = (std::uint64_t{1} << p_) - 1;  // x^p - 1 wraps within p bits
  std::uint64_t acc = 0;
  const std::uint64_t bb = b;
  for (int i = 0; a != 0; ++i, a >>= 1) {
    if (a & 1u) acc ^= ((bb << i) | (bb >> (p_ - i))) & full;
  }
  if (acc & (std::uint64_t{1} << (p_ - 1))) acc ^= full;
  return static_cast<Symbol>(acc);
}

Symbol BinaryRing::x_power(std::uint64_t m) const {
  const int e = static_cast<int>(m % static_cast<std::uint64_t>(p_));
  if (e == p_ - 1) return mask_;  // x^{p-1} = 1 + x + ... + x^{p-2}
  return Symbol{1} << e;
}

std::optional<Symbol> BinaryRing::try_inv(Symbol a) const {
  ++op_counters().ring_inv;
  if (!contains(a)) throw DomainError("element wider than R_" + std::to_string(p_));
  const std::uint64_t mp = (std::uint64_t{1} << p_) - 1;
  std::uint64_t r0 = mp, r1 = a;
  std::uint64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::uint64_t q = 0;
    const std::uint64_t r = poly_divmod(r0, r1, &q);
    r0 = r1;
    r1 = r;
    const std::uint64_t s = poly_divmod(s0 ^ clmul(q, s1), mp, nullptr);
    s0 = s1;
    s1 = s;
  }
  if (r0 != 1) return std::nullopt;
  return static_cast<Symbol>(s0);
}

RingElement ring_mul(const RingElement& a, const RingElement& b) {
  if (a.p != b.p)
    throw DomainError("ring size mismatch: R_" + std::to_string(a.p) + " vs R_" + std::to_string(b.p));
  BinaryRing r(a.p);
  return {r.mul(a.bits, b.bits), a.p};
}

std::optional<RingElement> ring_try_inv(const RingElement& a) {
  BinaryRing r(a.p);
  auto inv = r.try_inv(a.bits);
  if (!inv) return std::nullopt;
  return RingElement{*inv, a.p};
}

}  // namespace mltc
