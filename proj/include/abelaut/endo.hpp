#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "abelaut/bigint.hpp"
#include "abelaut/error.hpp"
#include "abelaut/group.hpp"
#include "abelaut/matrix.hpp"
#include "abelaut/rng.hpp"

namespace abelaut {

/// Required divisor of entry (i, j): p^(e_i - e_j) when e_i > e_j, else 1.
inline BigInt rp_step(const PrimePowerGroup& g, std::size_t i, std::size_t j) {
  const unsigned ei = g.exponent(i), ej = g.exponent(j);
  return ei > ej ? g.prime_power(ei - ej) : BigInt(1);
}

inline void require_dims(const PrimePowerGroup& g, const IntMatrix& m, const char* op) {
  if (m.size() != g.rank())
    throw Error(std::string(op) + ": expected a " + std::to_string(g.rank()) + "x" + std::to_string(g.rank()) +
                " matrix, got " + std::to_string(m.size()) + "x" + std::to_string(m.size()));
}

/// First (row, col) breaking p^(e_i - e_j) | a_ij, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> find_rp_violation(const PrimePowerGroup& g,
                                                                           const IntMatrix& m) {
  require_dims(g, m, "R_p check");
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!divides(rp_step(g, i, j), m(i, j))) return std::pair{i, j};
  return std::nullopt;
}

inline bool is_in_rp(const PrimePowerGroup& g, const IntMatrix& m) { return !find_rp_violation(g, m).has_value(); }

/// An integer matrix satisfying the R_p divisibility constraint for its group.
class RpMatrix {
 public:
  RpMatrix(PrimePowerGroup group, IntMatrix m) : group_(std::move(group)), m_(std::move(m)) {
    if (auto bad = find_rp_violation(group_, m_)) {
      auto [i, j] = *bad;
      throw RpViolation(i, j,
                        "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + m_(i, j).str() +
                            " is not divisible by " + rp_step(group_, i, j).str());
    }
  }

  const PrimePowerGroup& group() const noexcept { return group_; }
  const IntMatrix& matrix() const noexcept { return m_; }

 private:
  PrimePowerGroup group_;
  IntMatrix m_;
};

/// True iff every a_ij is divisible by p^(e_i), i.e. m acts as zero.
inline bool in_kernel(const PrimePowerGroup& g, const IntMatrix& m) {
  RpMatrix checked(g, m);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (!divides(g.modulus(i), m(i, j))) return false;
  return true;
}

/// An endomorphism of H_p, stored as its canonical R_p representative:
/// entry (i, j) lies in [0, p^(e_i)). Equal endomorphisms have equal entries.
class Endo {
 public:
  /// Validates the R_p constraint, then reduces row i modulo p^(e_i).
  Endo(const PrimePowerGroup& group, const IntMatrix& m) : Endo(RpMatrix(group, m)) {}

  explicit Endo(const RpMatrix& r) : group_(r.group()), m_(r.matrix()) {
    for (std::size_t i = 0; i < m_.size(); ++i)
      for (std::size_t j = 0; j < m_.size(); ++j) m_(i, j) = floor_mod(m_(i, j), group_.modulus(i));
  }

  static Endo identity(const PrimePowerGroup& g) { return Endo(g, IntMatrix::identity(g.rank())); }
  static Endo zero(const PrimePowerGroup& g) { return Endo(g, IntMatrix(g.rank())); }

  const PrimePowerGroup& group() const noexcept { return group_; }
  const IntMatrix& matrix() const noexcept { return m_; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  std::string to_string() const { return m_.to_string(); }

  friend bool operator==(const Endo& a, const Endo& b) { return a.group_ == b.group_ && a.m_ == b.m_; }
  friend bool operator<(const Endo& a, const Endo& b) {
    const std::size_t n = a.m_.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (a.m_(i, j) != b.m_(i, j)) return a.m_(i, j) < b.m_(i, j);
    return false;
  }

 private:
  PrimePowerGroup group_;
  IntMatrix m_;
};

inline Endo canonicalize(const RpMatrix& m) { return Endo(m); }

/// psi(A) applied to integer representatives h: A h, then row i mod p^(e_i).
inline HpElement apply_lifted(const RpMatrix& m, std::span<const BigInt> h) {
  const auto& g = m.group();
  if (h.size() != g.rank()) throw GroupMismatch("apply: element has wrong length");
  std::vector<BigInt> out(g.rank(), 0);
  for (std::size_t i = 0; i < g.rank(); ++i)
    for (std::size_t j = 0; j < g.rank(); ++j) out[i] += m.matrix()(i, j) * h[j];
  return HpElement(g, std::move(out));
}

inline HpElement apply(const Endo& m, const HpElement& h) {
  require_same_group(m.group(), h.group(), "apply");
  const auto& a = m.matrix();
  const std::size_t n = a.size();
  std::vector<BigInt> out(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += a(i, j) * h[j];
  return HpElement(m.group(), std::move(out));
}

inline Endo endo_add(const Endo& a, const Endo& b) {
  require_same_group(a.group(), b.group(), "endo_add");
  return Endo(a.group(), a.matrix() + b.matrix());
}

inline Endo endo_neg(const Endo& a) { return Endo(a.group(), BigInt(-1) * a.matrix()); }

/// b first, then a: the endomorphism psi(AB).
inline Endo endo_compose(const Endo& a, const Endo& b) {
  require_same_group(a.group(), b.group(), "endo_compose");
  return Endo(a.group(), a.matrix() * b.matrix());
}

/// The endomorphism sending generator w_j to images[j]. Throws RpViolation
/// naming (i, j) when images[j] has order exceeding that of w_j.
inline Endo endo_from_generator_images(const PrimePowerGroup& g, std::span<const HpElement> images) {
  if (images.size() != g.rank())
    throw Error("endo_from_generator_images: expected " + std::to_string(g.rank()) + " images, got " +
                std::to_string(images.size()));
  IntMatrix m(g.rank());
  for (std::size_t j = 0; j < g.rank(); ++j) {
    require_same_group(g, images[j].group(), "endo_from_generator_images");
    for (std::size_t i = 0; i < g.rank(); ++i) m(i, j) = images[j][i];
  }
  if (auto bad = find_rp_violation(g, m)) {
    auto [i, j] = *bad;
    throw RpViolation(i, j,
                      "image of generator w_" + std::to_string(j + 1) + " is not a legal homomorphism target: residue " +
                          std::to_string(i + 1) + " = " + m(i, j).str() + " is not divisible by " +
                          rp_step(g, i, j).str());
  }
  return Endo(g, m);
}

/// |End(H_p)| = prod_{i,j} p^min(e_i, e_j).
inline BigInt endo_count(const PrimePowerGroup& g) {
  unsigned total = 0;
  for (unsigned ei : g.exponents())
    for (unsigned ej : g.exponents()) total += std::min(ei, ej);
  return g.prime_power(total);
}

/// Uniform draw from End(H_p): each canonical entry is uniform over the
/// multiples of p^max(0, e_i - e_j) in [0, p^(e_i)). Entries are drawn in
/// row-major order.
inline Endo random_endo(const PrimePowerGroup& g, Rng& rng) {
  const std::size_t n = g.rank();
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const BigInt step = rp_step(g, i, j);
      m(i, j) = rng.uniform_below(g.modulus(i) / step) * step;
    }
  return Endo(g, m);
}

}  // namespace abelaut
