#pragma once

// Slow, independent reference arithmetic for the unit tests.

#include <cstdint>
#include <vector>

namespace oracle {

// Bitwise GF(2^w) product under the given reduction polynomial.
inline std::uint32_t gf_mul(std::uint32_t a, std::uint32_t b, int w, std::uint32_t poly) {
  std::uint32_t r = 0;
  for (int i = 0; i < w; ++i)
    if ((b >> i) & 1u) {
      std::uint32_t t = a;
      for (int s = 0; s < i; ++s) {
        t <<= 1;
        if (t >> w) t ^= poly;
      }
      r ^= t;
    }
  return r;
}

// Log/antilog tables built from scratch with generator 3 (primitive for 0x11B).
struct LogTable {
  std::vector<int> log = std::vector<int>(256, -1);
  std::vector<std::uint32_t> exp = std::vector<std::uint32_t>(255);
  LogTable() {
    std::uint32_t v = 1;
    for (int i = 0; i < 255; ++i) {
      exp[static_cast<std::size_t>(i)] = v;
      log[v] = i;
      v = gf_mul(v, 3, 8, 0x11B);
    }
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp[static_cast<std::size_t>((log[a] + log[b]) % 255)];
  }
};

using Poly = std::vector<int>;  // coefficient list over F_2, index = power

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] ^= a[i] & b[j];
  trim(r);
  return r;
}

// Schoolbook long division remainder.
inline Poly poly_mod(Poly a, const Poly& m) {
  trim(a);
  while (a.size() >= m.size()) {
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[i + shift] ^= m[i];
    trim(a);
  }
  return a;
}

inline Poly poly_add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] ^= b[i];
  trim(a);
  return a;
}

inline Poly poly_divide(Poly a, const Poly& m, Poly* rem) {
  trim(a);
  Poly q;
  while (a.size() >= m.size() && !a.empty()) {
    const std::size_t shift = a.size() - m.size();
    if (q.size() < shift + 1) q.resize(shift + 1, 0);
    q[shift] ^= 1;
    for (std::size_t i = 0; i < m.size(); ++i) a[i + shift] ^= m[i];
    trim(a);
  }
  trim(q);
  if (rem) *rem = a;
  return q;
}

inline Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r;
    poly_divide(a, b, &r);
    a = b;
    b = r;
  }
  return a;
}

inline Poly mp(int p) { return Poly(static_cast<std::size_t>(p), 1); }

inline Poly from_bits(std::uint32_t v) {
  Poly r;
  for (int i = 0; v >> i; ++i) r.push_back((v >> i) & 1);
  trim(r);
  return r;
}

inline std::uint32_t to_bits(const Poly& p) {
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i]) v |= 1u << i;
  return v;
}

// (a * b) mod M_p via multiply-then-long-divide.
inline std::uint32_t ring_mul(std::uint32_t a, std::uint32_t b, int p) {
  return to_bits(poly_mod(poly_mul(from_bits(a), from_bits(b)), mp(p)));
}

// x^i reduced mod M_p.
inline std::uint32_t ring_x_power(int i, int p) {
  Poly m(static_cast<std::size_t>(i) + 1, 0);
  m.back() = 1;
  return to_bits(poly_mod(m, mp(p)));
}

}  // namespace oracle
