#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "abelaut/bigint.hpp"
#include "abelaut/endo.hpp"
#include "abelaut/error.hpp"
#include "abelaut/group.hpp"
#include "abelaut/matrix.hpp"
#include "abelaut/rng.hpp"

namespace abelaut {

/// Determinant of the entrywise mod-p reduction, in [0, p).
inline std::uint64_t det_mod_p(const Endo& m) { return det_mod_p(m.matrix(), m.group().prime()); }

/// m is invertible iff its reduction mod p is invertible over F_p.
inline bool is_automorphism(const Endo& m) { return det_mod_p(m) != 0; }

/// Inverse as s * adj(A), where s = det(A)^-1 mod p^(e_n).
inline Endo invert(const Endo& m) {
  const auto& g = m.group();
  if (!is_automorphism(m))
    throw NotAnAutomorphism("invert: " + m.to_string() + " is not an automorphism of " + g.to_string() +
                            " (determinant is 0 mod " + std::to_string(g.prime()) + ")");
  const Adjugate adj = adjugate(m.matrix());
  const BigInt& top = g.modulus(g.rank() - 1);
  const auto s = mod_inverse(adj.det, top);
  if (!s) throw InvariantBreach("invert: determinant " + adj.det.str() + " has no inverse mod " + top.str());
  if (!is_in_rp(g, adj.adj)) throw InvariantBreach("invert: adjugate " + adj.adj.to_string() + " left R_p");
  Endo inv(g, *s * adj.adj);
  if (!(endo_compose(inv, m) == Endo::identity(g)) || !(endo_compose(m, inv) == Endo::identity(g)))
    throw InvariantBreach("invert: s*adj(A) is not a two-sided inverse of " + m.to_string());
  return inv;
}

/// Rejection-samples canonical endomorphisms until one is invertible.
inline Endo random_automorphism(const PrimePowerGroup& g, Rng& rng) {
  for (;;) {
    Endo m = random_endo(g, rng);
    if (is_automorphism(m)) return m;
  }
}

/// Uniform over Aut(H_p); deterministic in seed.
inline Endo random_automorphism(const PrimePowerGroup& g, std::uint64_t seed) {
  Rng rng(seed);
  return random_automorphism(g, rng);
}

/// An automorphism of a whole AbelianGroup, one invertible Endo per prime
/// component (ascending primes); acts componentwise.
class GroupAut {
 public:
  GroupAut(AbelianGroup group, std::vector<Endo> parts) : group_(std::move(group)), parts_(std::move(parts)) {
    const auto& comps = group_.components();
    if (parts_.size() != comps.size())
      throw GroupMismatch("GroupAut: expected " + std::to_string(comps.size()) + " parts, got " +
                          std::to_string(parts_.size()));
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      require_same_group(comps[i], parts_[i].group(), "GroupAut");
      if (!is_automorphism(parts_[i]))
        throw NotAnAutomorphism("GroupAut: part for p = " + std::to_string(comps[i].prime()) +
                                " is not an automorphism");
    }
  }

  static GroupAut identity(const AbelianGroup& g) {
    std::vector<Endo> parts;
    for (const auto& c : g.components()) parts.push_back(Endo::identity(c));
    return GroupAut(g, std::move(parts));
  }

  static GroupAut random(const AbelianGroup& g, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Endo> parts;
    for (const auto& c : g.components()) parts.push_back(random_automorphism(c, rng));
    return GroupAut(g, std::move(parts));
  }

  const AbelianGroup& group() const noexcept { return group_; }
  const std::vector<Endo>& parts() const noexcept { return parts_; }

  friend bool operator==(const GroupAut&, const GroupAut&) = default;

 private:
  AbelianGroup group_;
  std::vector<Endo> parts_;
};

inline GroupElement group_aut_apply(const GroupAut& a, const GroupElement& x) {
  if (!(a.group() == x.group())) throw GroupMismatch("group_aut_apply: element is from a different group");
  std::vector<HpElement> parts;
  for (std::size_t i = 0; i < a.parts().size(); ++i) parts.push_back(apply(a.parts()[i], x.parts()[i]));
  return GroupElement(a.group(), std::move(parts));
}

inline GroupAut group_aut_compose(const GroupAut& a, const GroupAut& b) {
  if (!(a.group() == b.group())) throw GroupMismatch("group_aut_compose: operands belong to different groups");
  std::vector<Endo> parts;
  for (std::size_t i = 0; i < a.parts().size(); ++i) parts.push_back(endo_compose(a.parts()[i], b.parts()[i]));
  return GroupAut(a.group(), std::move(parts));
}

inline GroupAut group_aut_invert(const GroupAut& a) {
  std::vector<Endo> parts;
  for (const auto& m : a.parts()) parts.push_back(invert(m));
  return GroupAut(a.group(), std::move(parts));
}

}  // namespace abelaut
