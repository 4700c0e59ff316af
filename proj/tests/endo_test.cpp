#include <map>
#include <set>

#include <gtest/gtest.h>

#include "abelaut/endo.hpp"
#include "abelaut/oracle.hpp"
#include "test_util.hpp"

namespace abelaut {
namespace {

const PrimePowerGroup kG12{2, {1, 2}};

Endo endo(const PrimePowerGroup& g, IntMatrix m) { return Endo(g, m); }

TEST(IsInRp, WorkedExampleShape) {
  // e = (1, 2, 5): a_21 = b p, a_31 = b p^4, a_32 = b p^3, rest free.
  for (std::uint64_t p : {2ull, 3ull, 7ull}) {
    const PrimePowerGroup g(p, {1, 2, 5});
    const BigInt P(p);
    const IntMatrix ok{{5, -3, 11}, {7 * P, 2, 13}, {-3 * ipow(P, 4), 4 * ipow(P, 3), 1}};
    EXPECT_TRUE(is_in_rp(g, ok));
    IntMatrix bad = ok;
    bad(2, 1) = ipow(P, 2);
    EXPECT_FALSE(is_in_rp(g, bad));
    bad = ok;
    bad(2, 0) = ipow(P, 3);
    EXPECT_FALSE(is_in_rp(g, bad));
  }
}

TEST(IsInRp, IdentityAndFailure) {
  EXPECT_TRUE(is_in_rp(kG12, IntMatrix::identity(2)));
  EXPECT_FALSE(is_in_rp(kG12, IntMatrix{{1, 0}, {1, 1}}));
  EXPECT_THROW(is_in_rp(kG12, IntMatrix::identity(3)), Error);
}

TEST(Endo, ConstructionValidatesEagerly) {
  try {
    Endo(kG12, IntMatrix{{1, 0}, {1, 1}});
    FAIL() << "expected RpViolation";
  } catch (const RpViolation& e) {
    EXPECT_EQ(e.row(), 1u);
    EXPECT_EQ(e.col(), 0u);
  }
}

TEST(Canonicalize, ReducesRowByRowModulus) {
  EXPECT_EQ(endo(kG12, {{3, 5}, {6, 7}}).matrix(), (IntMatrix{{1, 1}, {2, 3}}));
  const Endo c = endo(kG12, {{1, 1}, {2, 3}});
  EXPECT_EQ(canonicalize(RpMatrix(kG12, c.matrix())), c);
  EXPECT_EQ(endo(kG12, {{2, -4}, {4, 8}}), Endo::zero(kG12));
  EXPECT_EQ(endo(kG12, {{-1, -1}, {-2, -1}}).matrix(), (IntMatrix{{1, 1}, {2, 3}}));
}

TEST(Apply, NamedCases) {
  const Endo m = endo(kG12, {{1, 1}, {2, 1}});
  EXPECT_EQ(apply(m, HpElement(kG12, {1, 1})), HpElement(kG12, {0, 3}));
  for (const auto& h : enumerate_elements(kG12)) {
    EXPECT_EQ(apply(Endo::identity(kG12), h), h);
    EXPECT_TRUE(apply(Endo::zero(kG12), h).is_zero());
  }
  EXPECT_THROW(apply(m, HpElement(PrimePowerGroup(2, {1, 3}), {1, 1})), GroupMismatch);
}

TEST(EndoCompose, NamedCases) {
  const Endo m = endo(kG12, {{1, 1}, {2, 1}});
  EXPECT_EQ(endo_compose(Endo::identity(kG12), m), m);
  EXPECT_EQ(endo_compose(m, m).matrix(), (IntMatrix{{1, 0}, {0, 3}}));
  EXPECT_EQ(endo_add(m, Endo::zero(kG12)), m);
  EXPECT_THROW(endo_compose(m, Endo::identity(PrimePowerGroup(3, {1, 2}))), GroupMismatch);
}

TEST(EndoCompose, OrderIsBThenA) {
  const PrimePowerGroup g(3, {1, 1});
  const Endo a = endo(g, {{1, 1}, {0, 1}});
  const Endo b = endo(g, {{0, 1}, {1, 0}});
  const auto all = enumerate_elements(g);
  for (const auto& h : all) EXPECT_EQ(apply(endo_compose(a, b), h), apply(a, apply(b, h)));
  EXPECT_NE(endo_compose(a, b), endo_compose(b, a));
}

TEST(EndoFromGeneratorImages, NamedCases) {
  std::vector<HpElement> gens{HpElement::generator(kG12, 0), HpElement::generator(kG12, 1)};
  EXPECT_EQ(endo_from_generator_images(kG12, gens), Endo::identity(kG12));

  std::vector<HpElement> images{HpElement(kG12, {1, 2}), HpElement(kG12, {1, 1})};
  EXPECT_EQ(endo_from_generator_images(kG12, images).matrix(), (IntMatrix{{1, 1}, {2, 1}}));

  std::vector<HpElement> illegal{HpElement(kG12, {1, 1}), HpElement(kG12, {0, 1})};
  try {
    endo_from_generator_images(kG12, illegal);
    FAIL() << "expected RpViolation";
  } catch (const RpViolation& e) {
    EXPECT_EQ(e.row(), 1u);
    EXPECT_EQ(e.col(), 0u);
  }
}

TEST(InKernel, NamedCases) {
  EXPECT_TRUE(in_kernel(kG12, IntMatrix{{2, 0}, {4, 0}}));
  EXPECT_FALSE(in_kernel(kG12, IntMatrix::identity(2)));
  EXPECT_FALSE(in_kernel(kG12, IntMatrix{{2, 2}, {4, 2}}));
  EXPECT_THROW(in_kernel(kG12, IntMatrix{{2, 2}, {1, 0}}), RpViolation);
}

TEST(EndoCount, NamedValues) {
  EXPECT_EQ(endo_count(PrimePowerGroup(2, {1})), 2);
  EXPECT_EQ(endo_count(kG12), 32);
  EXPECT_EQ(endo_count(PrimePowerGroup(3, {1, 1})), 81);
}

TEST(EndoCount, MatchesEnumerationUpToOrder64) {
  for (const auto& g : testing::all_prime_power_groups(64)) {
    if (endo_count(g) > oracle::kEndoCap) continue;
    std::set<Endo> seen;
    oracle::for_each_endo(g, [&](const Endo& m) { seen.insert(m); });
    ASSERT_EQ(BigInt(seen.size()), endo_count(g)) << g.to_string();
  }
}

TEST(RpProperties, ClosureUnderProduct) {
  Rng rng(101);
  const auto groups = testing::prime_power_groups({2, 3, 5, 7}, 4096);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto& g = groups[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(groups.size()) - 1))];
    const IntMatrix a = testing::random_rp_matrix(g, rng);
    const IntMatrix b = testing::random_rp_matrix(g, rng);
    ASSERT_TRUE(is_in_rp(g, a * b)) << g.to_string();
    ASSERT_TRUE(is_in_rp(g, a + b));
  }
}

TEST(RpProperties, RepresentativeIndependence) {
  Rng rng(202);
  const auto groups = testing::prime_power_groups({2, 3, 5}, 4096);
  for (int trial = 0; trial < 500; ++trial) {
    const auto& g = groups[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(groups.size()) - 1))];
    const RpMatrix a(g, testing::random_rp_matrix(g, rng));
    std::vector<BigInt> h, lifted;
    for (std::size_t i = 0; i < g.rank(); ++i) {
      h.push_back(rng.uniform_below(g.modulus(i)));
      lifted.push_back(h.back() + rng.uniform_int(-20, 20) * g.modulus(i));
    }
    const HpElement expected = apply_lifted(a, h);
    ASSERT_EQ(apply_lifted(a, lifted), expected);
    ASSERT_EQ(apply(canonicalize(a), HpElement(g, h)), expected);
  }
}

TEST(RpProperties, HomomorphismLawsExhaustive) {
  Rng rng(303);
  for (const auto& g : testing::all_prime_power_groups(64)) {
    const auto all = enumerate_elements(g);
    for (int k = 0; k < 3; ++k) {
      const Endo m = random_endo(g, rng);
      for (const auto& x : all)
        for (const auto& y : all) ASSERT_EQ(apply(m, hp_add(x, y)), hp_add(apply(m, x), apply(m, y)));
    }
  }
}

TEST(RpProperties, QuotientSoundness) {
  Rng rng(404);
  const auto groups = testing::prime_power_groups({2, 3, 5}, 32);
  for (int trial = 0; trial < 400; ++trial) {
    const auto& g = groups[static_cast<std::size_t>(trial) % groups.size()];
    const IntMatrix a = testing::random_rp_matrix(g, rng);
    IntMatrix b = a + testing::random_kernel_matrix(g, rng);
    if (trial % 2) b = b + testing::random_rp_matrix(g, rng, 1);
    const bool same = Endo(g, a) == Endo(g, b);
    ASSERT_EQ(same, in_kernel(g, a - b));
  }
}

TEST(RpProperties, SurjectivityFromGeneratorImages) {
  // Every legal assignment of generator images, as a function computed by
  // linear extension, matches apply of the constructed matrix everywhere.
  // Groups with more than 2^14 assignments (Z/2^5 elementary, 2^25 of them)
  // get a seeded sample of 2000 instead.
  Rng rng(505);
  for (const auto& g : testing::prime_power_groups({2, 3, 5}, 32)) {
    const auto all = enumerate_elements(g);
    const std::size_t n = g.rank();
    std::vector<std::vector<HpElement>> legal(n);
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& x : all)
        if (hp_scalar_mul(g.modulus(j), x).is_zero()) legal[j].push_back(x);
    BigInt assignments = 1;
    for (const auto& l : legal) assignments *= l.size();
    ASSERT_EQ(assignments, endo_count(g)) << g.to_string();

    auto check = [&](const std::vector<std::size_t>& pick) {
      std::vector<HpElement> images;
      for (std::size_t j = 0; j < n; ++j) images.push_back(legal[j][pick[j]]);
      const Endo m = endo_from_generator_images(g, images);
      for (std::size_t j = 0; j < n; ++j) ASSERT_EQ(apply(m, HpElement::generator(g, j)), images[j]);
      for (const auto& h : all) {
        HpElement expect = HpElement::zero(g);
        for (std::size_t j = 0; j < n; ++j) expect = hp_add(expect, hp_scalar_mul(h[j], images[j]));
        ASSERT_EQ(apply(m, h), expect) << g.to_string();
      }
    };

    std::vector<std::size_t> pick(n, 0);
    if (assignments > (1 << 14)) {
      for (int k = 0; k < 2000; ++k) {
        for (std::size_t j = 0; j < n; ++j)
          pick[j] = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(legal[j].size()) - 1));
        check(pick);
      }
      continue;
    }
    for (;;) {
      check(pick);
      std::size_t j = n;
      for (; j-- > 0;) {
        if (++pick[j] < legal[j].size()) break;
        pick[j] = 0;
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
  }
}

TEST(RandomEndo, DeterministicAndCanonical) {
  const PrimePowerGroup g(3, {1, 2, 4});
  Rng a(9), b(9);
  for (int k = 0; k < 50; ++k) {
    const Endo x = random_endo(g, a);
    ASSERT_EQ(x, random_endo(g, b));
    ASSERT_TRUE(is_in_rp(g, x.matrix()));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        ASSERT_GE(x(i, j), 0);
        ASSERT_LT(x(i, j), g.modulus(i));
      }
  }
}

TEST(RandomEndo, CoversSmallEndRingUniformly) {
  const PrimePowerGroup g(2, {1, 2});
  Rng rng(77);
  std::map<Endo, int> hits;
  const int draws = 32 * 400;
  for (int k = 0; k < draws; ++k) ++hits[random_endo(g, rng)];
  ASSERT_EQ(hits.size(), 32u);
  for (const auto& [m, c] : hits) {
    EXPECT_GT(c, 300);
    EXPECT_LT(c, 500);
  }
}

}  // namespace
}  // namespace abelaut
