#include "mltc/matrix.hpp"

#include <algorithm>
#include <random>
#include <utility>

#include "mltc/errors.hpp"

namespace mltc {

namespace {

constexpr int kRingPivotAttempts = 48;

void row_axpy(const Algebra& alg, std::span<Symbol> dst, std::span<const Symbol> src, Symbol f) {
  if (f == 0) return;
  if (f == 1) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
    return;
  }
  for (std::size_t i = 0; i < dst.size(); ++i)
    if (src[i] != 0) dst[i] ^= alg.mul(f, src[i]);
}

void row_scale(const Algebra& alg, std::span<Symbol> r, Symbol f) {
  if (f == 1) return;
  for (auto& v : r)
    if (v != 0) v = alg.mul(f, v);
}

// Gauss-Jordan on [a | b]; a ends as identity when invertible.
bool eliminate(const Algebra& alg, Matrix& a, Matrix* b) {
  const std::size_t n = a.rows();
  std::mt19937_64 rng(0x9E3779B97F4A7C15ull ^ n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (alg.is_unit(a.at(r, c))) {
        piv = r;
        break;
      }
    if (piv == n) {
      if (!alg.is_ring()) return false;
      bool any = false;
      for (std::size_t r = c; r < n; ++r) any = any || a.at(r, c) != 0;
      if (!any) return false;
      std::uniform_int_distribution<Symbol> draw(0, alg.mask());
      for (int attempt = 0; attempt < kRingPivotAttempts && piv == n; ++attempt) {
        std::vector<Symbol> lam(n, 0);
        Symbol head = a.at(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
          lam[r] = draw(rng);
          head ^= alg.mul(lam[r], a.at(r, c));
        }
        if (!alg.is_unit(head)) continue;
        for (std::size_t r = c + 1; r < n; ++r) {
          row_axpy(alg, a.row(c), a.row(r), lam[r]);
          if (b) row_axpy(alg, b->row(c), b->row(r), lam[r]);
        }
        piv = c;
      }
      if (piv == n) return false;
    }
    if (piv != c) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(c, j), a.at(piv, j));
      if (b)
        for (std::size_t j = 0; j < b->cols(); ++j) std::swap(b->at(c, j), b->at(piv, j));
    }
    const Symbol s = alg.inv(a.at(c, c));
    row_scale(alg, a.row(c), s);
    if (b) row_scale(alg, b->row(c), s);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const Symbol f = a.at(r, c);
      if (f == 0) continue;
      row_axpy(alg, a.row(r), a.row(c), f);
      if (b) row_axpy(alg, b->row(r), b->row(c), f);
    }
  }
  return true;
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix m(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) m.at(r, j) = at(r, cols[j]);
  return m;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix m(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) m.at(i, c) = at(rows[i], c);
  return m;
}

Matrix multiply(const Algebra& alg, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) row_axpy(alg, out.row(i), b.row(l), a.at(i, l));
  return out;
}

void multiply_vector(const Algebra& alg, std::span<const Symbol> x, const Matrix& m,
                     std::span<Symbol> out) {
  if (x.size() != m.rows() || out.size() != m.cols()) throw DomainError("vector shape mismatch");
  std::fill(out.begin(), out.end(), 0);
  for (std::size_t l = 0; l < x.size(); ++l) row_axpy(alg, out, m.row(l), x[l]);
}

std::optional<Matrix> invert(const Algebra& alg, const Matrix& m) {
  if (m.rows() != m.cols()) throw DomainError("cannot invert a non-square matrix");
  Matrix a = m;
  Matrix b = Matrix::identity(m.rows());
  if (!eliminate(alg, a, &b)) return std::nullopt;
  return b;
}

bool is_invertible(const Algebra& alg, const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  Matrix a = m;
  return eliminate(alg, a, nullptr);
}

}  // namespace mltc
