#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "abelaut/bigint.hpp"
#include "abelaut/error.hpp"

namespace abelaut {

/// Square n x n matrix of unbounded integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}

  IntMatrix(std::initializer_list<std::initializer_list<BigInt>> rows) : IntMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != n_) throw Error("IntMatrix: rows must have length " + std::to_string(n_));
      std::size_t j = 0;
      for (const auto& v : row) (*this)(i, j++) = v;
      ++i;
    }
  }

  static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows) {
    IntMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw Error("IntMatrix: matrix is not square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const noexcept { return n_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::vector<std::vector<BigInt>> rows() const {
    std::vector<std::vector<BigInt>> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i].assign(a_.begin() + i * n_, a_.begin() + (i + 1) * n_);
    return out;
  }

  bool is_zero() const {
    for (const auto& v : a_)
      if (v != 0) return false;
    return true;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < n_; ++i) {
      out += i ? ",[" : "[";
      for (std::size_t j = 0; j < n_; ++j) {
        if (j) out += ",";
        out += (*this)(i, j).str();
      }
      out += "]";
    }
    return out + "]";
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    check_dims(a, b);
    IntMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
    check_dims(a, b);
    for (std::size_t k = 0; k < a.a_.size(); ++k) a.a_[k] += b.a_[k];
    return a;
  }

  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) {
    check_dims(a, b);
    for (std::size_t k = 0; k < a.a_.size(); ++k) a.a_[k] -= b.a_[k];
    return a;
  }

  friend IntMatrix operator*(const BigInt& s, IntMatrix a) {
    for (auto& v : a.a_) v *= s;
    return a;
  }

 private:
  static void check_dims(const IntMatrix& a, const IntMatrix& b) {
    if (a.n_ != b.n_) throw Error("IntMatrix: dimension mismatch");
  }

  std::size_t n_ = 0;
  std::vector<BigInt> a_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt det_bareiss(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Determinant of m reduced modulo the prime p, in [0, p).
inline std::uint64_t det_mod_p(const IntMatrix& m, std::uint64_t p) {
  const std::size_t n = m.size();
  std::vector<std::uint64_t> a(n * n);
  const BigInt bp(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = static_cast<std::uint64_t>(floor_mod(m(i, j), bp));
  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return a[i * n + j]; };
  std::uint64_t det = 1 % p;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && at(r, k) == 0) ++r;
    if (r == n) return 0;
    if (r != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(r, j));
      det = (p - det) % p;
    }
    det = detail::mulmod_u64(det, at(k, k), p);
    const std::uint64_t inv = detail::powmod_u64(at(k, k), p - 2, p);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (at(i, k) == 0) continue;
      const std::uint64_t f = detail::mulmod_u64(at(i, k), inv, p);
      for (std::size_t j = k; j < n; ++j) at(i, j) = (at(i, j) + p - detail::mulmod_u64(f, at(k, j), p)) % p;
    }
  }
  return det;
}

/// Adjugate B of A (AB = BA = det(A) I) together with det(A).
struct Adjugate {
  IntMatrix adj;
  BigInt det;
};

/// Matrix of cofactors, transposed. Closed forms for n <= 3; minors via
/// Bareiss above that.
inline Adjugate adjugate_by_cofactors(const IntMatrix& a) {
  const std::size_t n = a.size();
  IntMatrix b(n);
  if (n == 0) return {b, 1};
  if (n == 1) {
    b(0, 0) = 1;
    return {b, a(0, 0)};
  }
  if (n == 2) {
    b(0, 0) = a(1, 1);
    b(0, 1) = -a(0, 1);
    b(1, 0) = -a(1, 0);
    b(1, 1) = a(0, 0);
    return {b, a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)};
  }
  if (n == 3) {
    b(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
    b(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
    b(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
    b(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
    b(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
    b(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
    b(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
    b(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
    b(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    BigInt det = a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0) + a(0, 2) * b(2, 0);
    return {b, det};
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1);
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = a(r, c);
        }
        ++mr;
      }
      BigInt cof = det_bareiss(std::move(minor));
      b(j, i) = ((i + j) % 2 == 0) ? cof : BigInt(-cof);
    }
  return {b, det_bareiss(a)};
}

/// Adjugate via fraction-free Gauss-Jordan on [A | I]. On completion the
/// left block is D*I with D = det(PA) and the right block is D*A^-1, which
/// equals sign(P)*adj(A). Singular inputs fall back to cofactors.
inline Adjugate adjugate(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n <= 1) return adjugate_by_cofactors(a);
  const std::size_t w = 2 * n;
  std::vector<BigInt> m(n * w, 0);
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return m[i * w + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) at(i, j) = a(i, j);
    at(i, n + i) = 1;
  }
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && at(r, k) == 0) ++r;
      if (r == n) return adjugate_by_cofactors(a);
      for (std::size_t j = 0; j < w; ++j) std::swap(at(k, j), at(r, j));
      sign = -sign;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < w; ++j) {
        if (j == k) continue;
        at(i, j) = (at(k, k) * at(i, j) - at(i, k) * at(k, j)) / prev;
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  Adjugate out{IntMatrix(n), sign * prev};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.adj(i, j) = sign * at(i, n + j);
  return out;
}

}  // namespace abelaut
