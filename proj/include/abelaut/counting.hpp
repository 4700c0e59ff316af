#pragma once

#include <algorithm>
#include <vector>

#include "abelaut/bigint.hpp"
#include "abelaut/group.hpp"

namespace abelaut {

/// d_k = max{l : e_l = e_k}, c_k = min{l : e_l = e_k}; 1-based.
struct DkCk {
  std::vector<unsigned> d;
  std::vector<unsigned> c;
};

inline DkCk dk_ck(const PrimePowerGroup& g) {
  const auto& e = g.exponents();
  const unsigned n = static_cast<unsigned>(e.size());
  DkCk out{std::vector<unsigned>(n), std::vector<unsigned>(n)};
  for (unsigned k = 1; k <= n; ++k) {
    unsigned lo = k, hi = k;
    for (unsigned l = 1; l <= n; ++l) {
      if (e[l - 1] != e[k - 1]) continue;
      lo = std::min(lo, l);
      hi = std::max(hi, l);
    }
    out.d[k - 1] = hi;
    out.c[k - 1] = lo;
  }
  return out;
}

/// |Aut(H_p)| = prod_k (p^d_k - p^(k-1)) * prod_j (p^e_j)^(n-d_j)
///            * prod_i (p^(e_i-1))^(n-c_i+1).
inline BigInt aut_order_hp(const PrimePowerGroup& g) {
  const auto& e = g.exponents();
  const unsigned n = static_cast<unsigned>(e.size());
  const auto [d, c] = dk_ck(g);
  BigInt result = 1;
  for (unsigned k = 1; k <= n; ++k) result *= g.prime_power(d[k - 1]) - g.prime_power(k - 1);
  for (unsigned j = 1; j <= n; ++j) result *= ipow(g.prime_power(e[j - 1]), n - d[j - 1]);
  for (unsigned i = 1; i <= n; ++i) result *= ipow(g.prime_power(e[i - 1] - 1), n - c[i - 1] + 1);
  return result;
}

/// |Aut(G)| as the product over prime components.
inline BigInt aut_order(const AbelianGroup& g) {
  BigInt result = 1;
  for (const auto& comp : g.components()) result *= aut_order_hp(comp);
  return result;
}

}  // namespace abelaut
