#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abelaut/bigint.hpp"
#include "abelaut/error.hpp"

namespace abelaut {

/// Largest prime factor accepted when factoring moduli.
inline constexpr std::uint64_t kTrialDivisionBound = 1'000'000;

/// Largest group order that enumerate_elements will materialize.
inline constexpr std::uint64_t kElementEnumerationCap = std::uint64_t{1} << 16;

/// Z/p^e_1 x ... x Z/p^e_n with 1 <= e_1 <= ... <= e_n.
///
/// Immutable; copies share the same underlying data.
class PrimePowerGroup {
 public:
  PrimePowerGroup(std::uint64_t p, std::vector<unsigned> exponents) {
    if (!is_prime(p)) throw Error("PrimePowerGroup: " + std::to_string(p) + " is not prime");
    if (exponents.empty()) throw Error("PrimePowerGroup: exponent list is empty");
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      if (exponents[i] == 0) throw Error("PrimePowerGroup: exponents must be >= 1");
      if (i > 0 && exponents[i] < exponents[i - 1])
        throw Error("PrimePowerGroup: exponents must be nondecreasing");
    }
    auto d = std::make_shared<Data>();
    d->p = p;
    d->exponents = std::move(exponents);
    d->moduli.reserve(d->exponents.size());
    unsigned total = 0;
    for (unsigned e : d->exponents) {
      d->moduli.push_back(ipow(BigInt(p), e));
      total += e;
    }
    d->exponent_sum = total;
    d->order = ipow(BigInt(p), total);
    data_ = std::move(d);
  }

  std::uint64_t prime() const noexcept { return data_->p; }
  const std::vector<unsigned>& exponents() const noexcept { return data_->exponents; }
  std::size_t rank() const noexcept { return data_->exponents.size(); }
  unsigned exponent(std::size_t i) const { return data_->exponents.at(i); }

  /// p^(e_i), the order of the i-th cyclic factor (0-based).
  const BigInt& modulus(std::size_t i) const { return data_->moduli.at(i); }
  const std::vector<BigInt>& moduli() const noexcept { return data_->moduli; }

  /// p^(e_1 + ... + e_n).
  const BigInt& order() const noexcept { return data_->order; }
  unsigned exponent_sum() const noexcept { return data_->exponent_sum; }

  /// p^k as a BigInt.
  BigInt prime_power(unsigned k) const { return ipow(BigInt(data_->p), k); }

  /// Canonical text, e.g. "Z/2 x Z/2^2".
  std::string to_string() const {
    std::string out;
    for (unsigned e : data_->exponents) {
      if (!out.empty()) out += " x ";
      out += "Z/" + std::to_string(data_->p);
      if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
  }

  friend bool operator==(const PrimePowerGroup& a, const PrimePowerGroup& b) {
    return a.data_ == b.data_ ||
           (a.data_->p == b.data_->p && a.data_->exponents == b.data_->exponents);
  }

 private:
  struct Data {
    std::uint64_t p = 0;
    std::vector<unsigned> exponents;
    std::vector<BigInt> moduli;
    unsigned exponent_sum = 0;
    BigInt order;
  };
  std::shared_ptr<const Data> data_;
};

/// A finite abelian group in primary-decomposition form: one PrimePowerGroup
/// per prime dividing the order, primes strictly ascending.
class AbelianGroup {
 public:
  AbelianGroup() = default;

  explicit AbelianGroup(std::vector<PrimePowerGroup> components) : components_(std::move(components)) {
    for (std::size_t i = 1; i < components_.size(); ++i) {
      if (components_[i].prime() <= components_[i - 1].prime())
        throw Error("AbelianGroup: component primes must be strictly ascending");
    }
  }

  const std::vector<PrimePowerGroup>& components() const noexcept { return components_; }

  const PrimePowerGroup* find(std::uint64_t p) const {
    for (const auto& c : components_)
      if (c.prime() == p) return &c;
    return nullptr;
  }

  BigInt order() const {
    BigInt n = 1;
    for (const auto& c : components_) n *= c.order();
    return n;
  }

  /// Every cyclic factor p^e in canonical order.
  std::vector<BigInt> cyclic_moduli() const {
    std::vector<BigInt> out;
    for (const auto& c : components_)
      out.insert(out.end(), c.moduli().begin(), c.moduli().end());
    return out;
  }

  std::string to_string() const {
    if (components_.empty()) return "1";
    std::string out;
    for (const auto& c : components_) {
      if (!out.empty()) out += " x ";
      out += c.to_string();
    }
    return out;
  }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::vector<PrimePowerGroup> components_;
};

/// Factor m >= 2 into (prime, multiplicity) pairs, primes ascending. Prime
/// factors above kTrialDivisionBound are rejected.
inline std::vector<std::pair<std::uint64_t, unsigned>> factor_modulus(const BigInt& m) {
  if (m < 2) throw Error("modulus must be >= 2, got " + to_string(m));
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  BigInt rest = m;
  auto strip = [&](std::uint64_t d) {
    unsigned k = 0;
    while (rest % d == 0) {
      rest /= d;
      ++k;
    }
    if (k) out.emplace_back(d, k);
  };
  strip(2);
  for (std::uint64_t d = 3; d <= kTrialDivisionBound; d += 2) {
    if (BigInt(d) * d > rest) break;
    strip(d);
  }
  if (rest > 1) {
    if (rest > kTrialDivisionBound)
      throw Error("modulus " + to_string(m) + " has a prime factor above the trial-division bound " +
                  std::to_string(kTrialDivisionBound));
    out.emplace_back(static_cast<std::uint64_t>(rest), 1);
  }
  return out;
}

/// Normalize a list of cyclic moduli into primary-decomposition form.
inline AbelianGroup group_from_moduli(std::span<const BigInt> moduli) {
  std::map<std::uint64_t, std::vector<unsigned>> by_prime;
  for (const auto& m : moduli)
    for (auto [p, k] : factor_modulus(m)) by_prime[p].push_back(k);
  std::vector<PrimePowerGroup> comps;
  for (auto& [p, exps] : by_prime) {
    std::sort(exps.begin(), exps.end());
    comps.emplace_back(p, std::move(exps));
  }
  return AbelianGroup(std::move(comps));
}

namespace detail {

inline std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

inline std::vector<std::string> split_on(const std::string& s, std::string_view seps) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string_view::npos) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

inline BigInt parse_unsigned(const std::string& s, const std::string& context) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError("malformed group spec factor '" + context + "'");
  return parse_bigint(s);
}

}  // namespace detail

/// Parse the moduli of a group spec: "4,8,3", "Z/4 x Z/8 x Z/3" or the
/// canonical "Z/2^2 x Z/2^3 x Z/3". Whitespace is ignored.
inline std::vector<BigInt> parse_moduli(std::string_view text) {
  const std::string s = detail::strip_spaces(text);
  if (s.empty()) throw ParseError("empty group spec");
  std::vector<BigInt> moduli;
  for (const auto& raw : detail::split_on(s, ",xX")) {
    std::string f = raw;
    if (f.rfind("Z/", 0) == 0) f = f.substr(2);
    if (f.empty()) throw ParseError("empty factor in group spec '" + std::string(text) + "'");
    BigInt m;
    if (auto caret = f.find('^'); caret != std::string::npos) {
      BigInt base = detail::parse_unsigned(f.substr(0, caret), raw);
      BigInt exp = detail::parse_unsigned(f.substr(caret + 1), raw);
      if (exp > 4096) throw ParseError("exponent too large in factor '" + raw + "'");
      m = ipow(base, static_cast<unsigned>(exp));
    } else {
      m = detail::parse_unsigned(f, raw);
    }
    if (m < 2) throw Error("modulus must be >= 2 in factor '" + raw + "'");
    moduli.push_back(std::move(m));
  }
  return moduli;
}

inline AbelianGroup parse_group_spec(std::string_view text) {
  const auto moduli = parse_moduli(text);
  return group_from_moduli(moduli);
}

/// An element of H_p: residues[i] in [0, p^(e_i)).
class HpElement {
 public:
  /// Reduces each value into its canonical residue.
  HpElement(PrimePowerGroup group, std::vector<BigInt> values) : group_(std::move(group)), residues_(std::move(values)) {
    if (residues_.size() != group_.rank())
      throw GroupMismatch("HpElement: expected " + std::to_string(group_.rank()) + " residues, got " +
                          std::to_string(residues_.size()));
    for (std::size_t i = 0; i < residues_.size(); ++i) residues_[i] = floor_mod(residues_[i], group_.modulus(i));
  }

  static HpElement zero(const PrimePowerGroup& g) { return HpElement(g, std::vector<BigInt>(g.rank(), 0)); }

  /// The generator w_j: 1 in slot j, 0 elsewhere.
  static HpElement generator(const PrimePowerGroup& g, std::size_t j) {
    std::vector<BigInt> v(g.rank(), 0);
    v.at(j) = 1;
    return HpElement(g, std::move(v));
  }

  const PrimePowerGroup& group() const noexcept { return group_; }
  const std::vector<BigInt>& residues() const noexcept { return residues_; }
  const BigInt& operator[](std::size_t i) const { return residues_.at(i); }

  bool is_zero() const {
    return std::all_of(residues_.begin(), residues_.end(), [](const BigInt& r) { return r == 0; });
  }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < residues_.size(); ++i) {
      if (i) out += ",";
      out += residues_[i].str();
    }
    return out + ")";
  }

  friend bool operator==(const HpElement& a, const HpElement& b) {
    return a.group_ == b.group_ && a.residues_ == b.residues_;
  }

  friend bool operator<(const HpElement& a, const HpElement& b) { return a.residues_ < b.residues_; }

 private:
  PrimePowerGroup group_;
  std::vector<BigInt> residues_;
};

inline void require_same_group(const PrimePowerGroup& a, const PrimePowerGroup& b, const char* op) {
  if (!(a == b)) throw GroupMismatch(std::string(op) + ": operands belong to " + a.to_string() + " and " + b.to_string());
}

inline HpElement hp_add(const HpElement& a, const HpElement& b) {
  require_same_group(a.group(), b.group(), "hp_add");
  std::vector<BigInt> v(a.residues());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b[i];
  return HpElement(a.group(), std::move(v));
}

inline HpElement hp_neg(const HpElement& a) {
  std::vector<BigInt> v(a.residues());
  for (auto& x : v) x = -x;
  return HpElement(a.group(), std::move(v));
}

inline HpElement hp_scalar_mul(const BigInt& k, const HpElement& a) {
  std::vector<BigInt> v(a.residues());
  for (auto& x : v) x *= k;
  return HpElement(a.group(), std::move(v));
}

/// All p^(e_1 + ... + e_n) elements in lexicographic residue order.
inline std::vector<HpElement> enumerate_elements(const PrimePowerGroup& g) {
  if (g.order() > kElementEnumerationCap)
    throw CapExceeded("enumerate_elements: group order " + g.order().str() + " exceeds cap " +
                      std::to_string(kElementEnumerationCap));
  const std::size_t n = g.rank();
  const auto total = static_cast<std::size_t>(g.order());
  std::vector<HpElement> out;
  out.reserve(total);
  std::vector<BigInt> digits(n, 0);
  for (std::size_t k = 0; k < total; ++k) {
    out.emplace_back(g, digits);
    for (std::size_t i = n; i-- > 0;) {
      if (++digits[i] < g.modulus(i)) break;
      digits[i] = 0;
    }
  }
  return out;
}

/// Parse "(1,3)" or "1,3" into raw integers (not yet reduced).
inline std::vector<BigInt> parse_residue_list(std::string_view text) {
  std::string s = detail::strip_spaces(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (s.empty()) throw ParseError("empty element list");
  std::vector<BigInt> out;
  for (const auto& part : detail::split_on(s, ",")) {
    if (part.empty()) throw ParseError("malformed element list '" + std::string(text) + "'");
    out.push_back(parse_bigint(part));
  }
  return out;
}

/// An element of a full AbelianGroup: one HpElement per prime component.
class GroupElement {
 public:
  GroupElement(AbelianGroup group, std::vector<HpElement> parts) : group_(std::move(group)), parts_(std::move(parts)) {
    const auto& comps = group_.components();
    if (parts_.size() != comps.size())
      throw GroupMismatch("GroupElement: expected " + std::to_string(comps.size()) + " parts, got " +
                          std::to_string(parts_.size()));
    for (std::size_t i = 0; i < parts_.size(); ++i) require_same_group(comps[i], parts_[i].group(), "GroupElement");
  }

  static GroupElement zero(const AbelianGroup& g) {
    std::vector<HpElement> parts;
    for (const auto& c : g.components()) parts.push_back(HpElement::zero(c));
    return GroupElement(g, std::move(parts));
  }

  /// Split a flat residue list (one per cyclic factor, canonical order).
  static GroupElement from_flat(const AbelianGroup& g, std::span<const BigInt> values) {
    std::vector<HpElement> parts;
    std::size_t at = 0;
    for (const auto& c : g.components()) {
      if (at + c.rank() > values.size()) break;
      parts.emplace_back(c, std::vector<BigInt>(values.begin() + at, values.begin() + at + c.rank()));
      at += c.rank();
    }
    if (at != values.size() || parts.size() != g.components().size())
      throw GroupMismatch("GroupElement: expected " + std::to_string(g.cyclic_moduli().size()) + " residues, got " +
                          std::to_string(values.size()));
    return GroupElement(g, std::move(parts));
  }

  const AbelianGroup& group() const noexcept { return group_; }
  const std::vector<HpElement>& parts() const noexcept { return parts_; }

  std::string to_string() const {
    std::string out = "(";
    bool first = true;
    for (const auto& p : parts_)
      for (const auto& r : p.residues()) {
        if (!first) out += ",";
        first = false;
        out += r.str();
      }
    return out + ")";
  }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  AbelianGroup group_;
  std::vector<HpElement> parts_;
};

inline GroupElement group_add(const GroupElement& a, const GroupElement& b) {
  if (!(a.group() == b.group())) throw GroupMismatch("group_add: operands belong to different groups");
  std::vector<HpElement> parts;
  for (std::size_t i = 0; i < a.parts().size(); ++i) parts.push_back(hp_add(a.parts()[i], b.parts()[i]));
  return GroupElement(a.group(), std::move(parts));
}

}  // namespace abelaut
