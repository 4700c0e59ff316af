#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "abelaut/aut.hpp"
#include "abelaut/bigint.hpp"
#include "abelaut/counting.hpp"
#include "abelaut/endo.hpp"
#include "abelaut/error.hpp"
#include "abelaut/group.hpp"

// Brute-force ground truth. Nothing in here consults the closed-form
// counting formulas; element actions are recomputed on machine integers so
// that the library's apply() is checked rather than reused.

namespace abelaut::oracle {

/// Largest group order the endomorphism-enumeration oracle accepts.
inline constexpr std::uint64_t kOrderCap = 64;

/// Largest |End(H_p)| that enumerate_endos will walk.
inline constexpr std::uint64_t kEndoCap = std::uint64_t{1} << 20;

/// Largest group order for the generating-tuple oracle.
inline constexpr std::uint64_t kGenerationOrderCap = 256;

/// Bound on (image tuples) x (group order) for the whole-group oracle.
inline constexpr std::uint64_t kWholeGroupWorkCap = std::uint64_t{1} << 27;

/// Visit every canonical endomorphism of g once, in lexicographic
/// (row-major) order of entries.
inline void for_each_endo(const PrimePowerGroup& g, const std::function<void(const Endo&)>& visit) {
  if (endo_count(g) > kEndoCap)
    throw CapExceeded("enumerate_endos: |End| = " + endo_count(g).str() + " exceeds cap " + std::to_string(kEndoCap) +
                      " for " + g.to_string());
  const std::size_t n = g.rank();
  std::vector<BigInt> step(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) step[i * n + j] = rp_step(g, i, j);
  IntMatrix m(n);
  for (;;) {
    visit(Endo(g, m));
    std::size_t k = n * n;
    for (; k-- > 0;) {
      const std::size_t i = k / n, j = k % n;
      m(i, j) += step[k];
      if (m(i, j) < g.modulus(i)) break;
      m(i, j) = 0;
    }
    if (k == static_cast<std::size_t>(-1)) return;
  }
}

inline std::vector<Endo> enumerate_endos(const PrimePowerGroup& g) {
  std::vector<Endo> out;
  for_each_endo(g, [&](const Endo& m) { out.push_back(m); });
  return out;
}

/// All elements of a product of cyclic groups Z/m_1 x ... x Z/m_r as
/// machine-integer residue vectors, indexed in mixed radix (last slot
/// fastest).
class ElementTable {
 public:
  explicit ElementTable(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
    count_ = 1;
    for (auto m : moduli_) {
      if (m < 1) throw Error("ElementTable: moduli must be positive");
      count_ *= static_cast<std::size_t>(m);
      if (count_ > kElementEnumerationCap)
        throw CapExceeded("ElementTable: group order exceeds cap " + std::to_string(kElementEnumerationCap));
    }
    const std::size_t r = moduli_.size();
    residues_.assign(count_ * r, 0);
    for (std::size_t idx = 0; idx < count_; ++idx) {
      std::size_t rest = idx;
      for (std::size_t i = r; i-- > 0;) {
        residues_[idx * r + i] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(moduli_[i]));
        rest /= static_cast<std::size_t>(moduli_[i]);
      }
    }
  }

  static ElementTable for_group(const PrimePowerGroup& g) {
    if (g.order() > kElementEnumerationCap) throw CapExceeded("ElementTable: " + g.to_string() + " is too large");
    std::vector<std::int64_t> moduli;
    for (const auto& m : g.moduli()) moduli.push_back(static_cast<std::int64_t>(m));
    return ElementTable(std::move(moduli));
  }

  std::size_t size() const noexcept { return count_; }
  std::size_t rank() const noexcept { return moduli_.size(); }
  std::int64_t modulus(std::size_t i) const { return moduli_[i]; }
  const std::int64_t* residues(std::size_t idx) const { return residues_.data() + idx * moduli_.size(); }

  /// Index of a residue vector; entries are reduced first.
  std::size_t index_of(const std::int64_t* r) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      std::int64_t v = r[i] % moduli_[i];
      if (v < 0) v += moduli_[i];
      idx = idx * static_cast<std::size_t>(moduli_[i]) + static_cast<std::size_t>(v);
    }
    return idx;
  }

 private:
  std::vector<std::int64_t> moduli_;
  std::vector<std::int64_t> residues_;
  std::size_t count_ = 0;
};

/// True iff h -> (A h mod p^e_i)_i is injective on every element, computed
/// independently of apply(). A finite map into itself is then a bijection.
inline bool acts_bijectively(const Endo& m, const ElementTable& table) {
  const std::size_t n = table.rank();
  std::vector<std::int64_t> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = static_cast<std::int64_t>(m(i, j));
  std::vector<char> seen(table.size(), 0);
  std::vector<std::int64_t> image(n);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    const std::int64_t* h = table.residues(idx);
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += a[i * n + j] * h[j];
      image[i] = acc;
    }
    const std::size_t k = table.index_of(image.data());
    if (seen[k]) return false;
    seen[k] = 1;
  }
  return true;
}

struct EndoCensus {
  BigInt endos = 0;
  BigInt bijective = 0;
  BigInt det_nonzero = 0;
  /// Endos where the determinant test and the bijectivity test disagree.
  BigInt disagreements = 0;
};

/// Walk End(H_p) once, classifying each endomorphism by both the
/// exhaustive bijectivity test and det mod p.
inline EndoCensus endo_census(const PrimePowerGroup& g) {
  if (g.order() > kOrderCap)
    throw CapExceeded("brute force: group order " + g.order().str() + " exceeds cap " + std::to_string(kOrderCap));
  const ElementTable table = ElementTable::for_group(g);
  EndoCensus c;
  for_each_endo(g, [&](const Endo& m) {
    const bool bij = acts_bijectively(m, table);
    const bool det = is_automorphism(m);
    c.endos += 1;
    if (bij) c.bijective += 1;
    if (det) c.det_nonzero += 1;
    if (bij != det) c.disagreements += 1;
  });
  return c;
}

/// Number of endomorphisms of H_p that permute the element set.
inline BigInt brute_force_aut_count(const PrimePowerGroup& g) { return endo_census(g).bijective; }

namespace detail {

/// Subset of at most 256 group elements.
struct ElementSet {
  std::array<std::uint64_t, 4> w{};

  bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  ElementSet operator&(const ElementSet& o) const {
    ElementSet r;
    for (int k = 0; k < 4; ++k) r.w[k] = w[k] & o.w[k];
    return r;
  }
  ElementSet& operator|=(const ElementSet& o) {
    for (int k = 0; k < 4; ++k) w[k] |= o.w[k];
    return *this;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < 4; ++k) {
      std::uint64_t x = w[k];
      while (x) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
  }
  friend bool operator==(const ElementSet&, const ElementSet&) = default;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept {
    std::size_t h = 0;
    for (auto x : s.w) h = h * 0x9E3779B97F4A7C15ull ^ (x + (h >> 7));
    return h;
  }
};

}  // namespace detail

/// |Aut(H_p)| counted as the number of generator-image tuples (x_1..x_n)
/// with p^(e_j) x_j = 0 whose images generate all of H_p. Such a tuple
/// defines a homomorphism, and a surjective self-map of a finite set is a
/// bijection. Counted by dynamic programming over the subgroup generated so
/// far, so groups far beyond the endomorphism-enumeration cap are reachable.
inline BigInt count_automorphisms_by_generation(const PrimePowerGroup& g) {
  using detail::ElementSet;
  if (g.order() > kGenerationOrderCap)
    throw CapExceeded("generation oracle: group order " + g.order().str() + " exceeds cap " +
                      std::to_string(kGenerationOrderCap));
  const ElementTable table = ElementTable::for_group(g);
  const std::size_t N = table.size(), n = table.rank();

  std::vector<std::uint16_t> sum(N * N);
  std::vector<std::int64_t> tmp(n);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      for (std::size_t i = 0; i < n; ++i) tmp[i] = table.residues(a)[i] + table.residues(b)[i];
      sum[a * N + b] = static_cast<std::uint16_t>(table.index_of(tmp.data()));
    }
  auto add = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(sum[a * N + b]); };

  // allowed[j]: elements killed by p^(e_j), i.e. legal images of w_j.
  std::vector<ElementSet> allowed(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t mult = static_cast<std::size_t>(g.modulus(j));
    for (std::size_t x = 0; x < N; ++x) {
      std::size_t y = 0;
      for (std::size_t k = 0; k < mult; ++k) y = add(y, x);
      if (y == 0) allowed[j].set(x);
    }
  }

  ElementSet full;
  for (std::size_t x = 0; x < N; ++x) full.set(x);

  // Upper bound on how much the remaining generators can enlarge a subgroup.
  std::vector<std::size_t> growth(n + 1, 1);
  for (std::size_t j = n; j-- > 0;) growth[j] = growth[j + 1] * static_cast<std::size_t>(g.modulus(j));

  auto translate = [&](const ElementSet& s, std::size_t y) {
    ElementSet out;
    s.for_each([&](std::size_t e) { out.set(add(e, y)); });
    return out;
  };
  auto join = [&](const ElementSet& s, std::size_t x) {
    ElementSet out = s;
    for (std::size_t y = x; !s.test(y); y = add(y, x)) out |= translate(s, y);
    return out;
  };

  using Level = std::unordered_map<ElementSet, BigInt, detail::ElementSetHash>;
  Level cur;
  {
    ElementSet trivial;
    trivial.set(0);
    cur.emplace(trivial, 1);
  }
  for (std::size_t j = 0; j < n; ++j) {
    Level next;
    for (const auto& [s, ways] : cur) {
      ElementSet visited;
      for (std::size_t x = 0; x < N; ++x) {
        if (visited.test(x)) continue;
        const ElementSet coset = translate(s, x);
        visited |= coset;
        const std::size_t choices = (coset & allowed[j]).count();
        if (choices == 0) continue;
        const ElementSet grown = s.test(x) ? s : join(s, x);
        if (grown.count() * growth[j + 1] < N) continue;
        next[grown] += ways * choices;
      }
    }
    cur = std::move(next);
  }
  auto it = cur.find(full);
  return it == cur.end() ? BigInt(0) : it->second;
}

/// |Aut| of Z/m_1 x ... x Z/m_r by exhaustive search over generator images,
/// without splitting into primes. Each candidate homomorphism is checked for
/// injectivity on every element.
inline BigInt brute_force_group_aut_count(std::span<const BigInt> moduli) {
  std::vector<std::int64_t> mods;
  BigInt order = 1;
  for (const auto& m : moduli) {
    if (m < 1) throw Error("brute_force_group_aut_count: moduli must be positive");
    order *= m;
    if (order > kElementEnumerationCap) throw CapExceeded("whole-group oracle: group order too large");
    mods.push_back(static_cast<std::int64_t>(m));
  }
  const ElementTable table(mods);
  const std::size_t N = table.size(), r = table.rank();

  std::vector<std::vector<std::size_t>> candidates(r);
  BigInt tuples = 1;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t x = 0; x < N; ++x) {
      bool killed = true;
      for (std::size_t k = 0; k < r && killed; ++k) killed = (mods[i] * table.residues(x)[k]) % mods[k] == 0;
      if (killed) candidates[i].push_back(x);
    }
    tuples *= candidates[i].size();
  }
  if (tuples * N > kWholeGroupWorkCap)
    throw CapExceeded("whole-group oracle: " + tuples.str() + " candidate homomorphisms on " + std::to_string(N) +
                      " elements exceeds work cap");

  std::vector<std::size_t> pick(r, 0);
  std::vector<char> seen(N);
  std::vector<std::int64_t> image(r);
  BigInt count = 0;
  for (;;) {
    std::fill(seen.begin(), seen.end(), 0);
    bool injective = true;
    for (std::size_t idx = 0; idx < N && injective; ++idx) {
      const std::int64_t* h = table.residues(idx);
      std::fill(image.begin(), image.end(), 0);
      for (std::size_t i = 0; i < r; ++i) {
        const std::int64_t* x = table.residues(candidates[i][pick[i]]);
        for (std::size_t k = 0; k < r; ++k) image[k] = (image[k] + h[i] * x[k]) % mods[k];
      }
      const std::size_t t = table.index_of(image.data());
      injective = !seen[t];
      seen[t] = 1;
    }
    if (injective) count += 1;
    std::size_t i = r;
    for (; i-- > 0;) {
      if (++pick[i] < candidates[i].size()) break;
      pick[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return count;
}

struct ComponentReport {
  std::uint64_t p = 0;
  std::vector<unsigned> exponents;
  BigInt formula;
  std::optional<BigInt> oracle;
  bool criterion_agrees = false;
  std::optional<std::string> error;

  bool pass() const { return !error && oracle && *oracle == formula && criterion_agrees; }
};

struct WholeGroupReport {
  BigInt formula;
  std::optional<BigInt> oracle;
  std::optional<std::string> error;

  bool pass() const { return !error && oracle && *oracle == formula; }
};

struct VerifyReport {
  std::vector<ComponentReport> components;
  std::optional<WholeGroupReport> whole_group;
  bool pass = false;
};

/// Formula vs exhaustive count per prime component, plus a whole-group
/// product check when more than one prime is present. Cap violations are
/// recorded per component and make the report fail.
inline VerifyReport verify_group(const AbelianGroup& g) {
  VerifyReport rep;
  bool ok = !g.components().empty();
  BigInt product = 1;
  for (const auto& comp : g.components()) {
    ComponentReport c;
    c.p = comp.prime();
    c.exponents = comp.exponents();
    c.formula = aut_order_hp(comp);
    product *= c.formula;
    try {
      const EndoCensus census = endo_census(comp);
      c.oracle = census.bijective;
      c.criterion_agrees = census.disagreements == 0 && census.det_nonzero == census.bijective;
    } catch (const CapExceeded& e) {
      c.error = e.what();
    }
    ok = ok && c.pass();
    rep.components.push_back(std::move(c));
  }
  if (g.components().size() >= 2) {
    WholeGroupReport w;
    w.formula = product;
    try {
      w.oracle = brute_force_group_aut_count(g.cyclic_moduli());
    } catch (const CapExceeded& e) {
      w.error = e.what();
    }
    ok = ok && w.pass();
    rep.whole_group = std::move(w);
  }
  rep.pass = ok;
  return rep;
}

}  // namespace abelaut::oracle
