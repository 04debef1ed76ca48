#include "mltc/gf.hpp"

#include <array>
#include <memory>
#include <mutex>

#include "mltc/algebra.hpp"
#include "mltc/errors.hpp"

namespace mltc {

namespace {

std::uint32_t poly_for(int width) {
  switch (width) {
    case 8:
      return 0x11B;
    case 16:
      return 0x1100B;
    default:
      throw ParameterError("field width must be 8 or 16, got " + std::to_string(width));
  }
}

// Shift-and-add product, used only while building tables.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, int width, std::uint32_t poly) {
  std::uint32_t r = 0;
  const std::uint32_t top = 1u << width;
  while (b != 0) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= poly;
  }
  return r;
}

}  // namespace

GaloisField::GaloisField(int width) : width_(width), order_(1u << width), poly_(poly_for(width)) {
  const std::uint32_t m = order_ - 1;
  // 0x11B is not primitive over x, so search for a generator of the cyclic group.
  for (std::uint32_t g = 2; g < order_; ++g) {
    std::uint32_t v = 1;
    std::uint32_t period = 0;
    do {
      v = slow_mul(v, g, width_, poly_);
      ++period;
    } while (v != 1 && period <= m);
    if (period == m) {
      generator_ = g;
      break;
    }
  }
  log_.assign(order_, 0);
  exp_.assign(2 * static_cast<std::size_t>(m), 0);
  std::uint32_t v = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    exp_[i] = v;
    exp_[i + m] = v;
    log_[v] = i;
    v = slow_mul(v, generator_, width_, poly_);
  }
}

const GaloisField& GaloisField::get(int width) {
  static std::once_flag once8, once16;
  static std::unique_ptr<GaloisField> f8, f16;
  if (width == 8) {
    std::call_once(once8, [] { f8.reset(new GaloisField(8)); });
    return *f8;
  }
  if (width == 16) {
    std::call_once(once16, [] { f16.reset(new GaloisField(16)); });
    return *f16;
  }
  poly_for(width);  // throws
  throw ParameterError("unreachable");
}

Symbol GaloisField::mul(Symbol a, Symbol b) const {
  ++op_counters().gf_mul;
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

Symbol GaloisField::inv(Symbol a) const {
  ++op_counters().gf_inv;
  if (a == 0) throw DomainError("zero has no inverse in GF(2^" + std::to_string(width_) + ")");
  if (a >= order_) throw DomainError("symbol outside GF(2^" + std::to_string(width_) + ")");
  return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
}

Symbol GaloisField::pow(Symbol a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * e) % (order_ - 1)];
}

Symbol gf_mul(Symbol a, Symbol b, int width) { return GaloisField::get(width).mul(a, b); }
Symbol gf_inv(Symbol a, int width) { return GaloisField::get(width).inv(a); }

}  // namespace mltc
