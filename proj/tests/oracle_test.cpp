#include <set>

#include <gtest/gtest.h>

#include "abelaut/counting.hpp"
#include "abelaut/oracle.hpp"
#include "test_util.hpp"

namespace abelaut {
namespace {

using oracle::brute_force_aut_count;
using oracle::count_automorphisms_by_generation;
using oracle::enumerate_endos;

TEST(EnumerateEndos, SmallCases) {
  const auto z2 = enumerate_endos(PrimePowerGroup(2, {1}));
  ASSERT_EQ(z2.size(), 2u);
  EXPECT_EQ(z2[0].matrix(), (IntMatrix{{0}}));
  EXPECT_EQ(z2[1].matrix(), (IntMatrix{{1}}));

  EXPECT_EQ(enumerate_endos(PrimePowerGroup(2, {1, 2})).size(), 32u);

  const auto f2 = enumerate_endos(PrimePowerGroup(2, {1, 1}));
  ASSERT_EQ(f2.size(), 16u);
  std::set<std::string> text;
  for (const auto& m : f2) text.insert(m.to_string());
  EXPECT_EQ(text.size(), 16u);
  EXPECT_TRUE(text.count("[[1,1],[1,1]]"));
}

TEST(EnumerateEndos, LexicographicDistinctAndCounted) {
  for (const auto& g : testing::all_prime_power_groups(64)) {
    if (endo_count(g) > 4096) continue;
    const auto all = enumerate_endos(g);
    ASSERT_EQ(BigInt(all.size()), endo_count(g));
    for (std::size_t k = 1; k < all.size(); ++k) ASSERT_TRUE(all[k - 1] < all[k]) << g.to_string();
  }
}

TEST(EnumerateEndos, CapIsHard) {
  EXPECT_THROW(enumerate_endos(PrimePowerGroup(2, {1, 1, 1, 1, 1})), CapExceeded);
  EXPECT_THROW(brute_force_aut_count(PrimePowerGroup(2, {7})), CapExceeded);
}

TEST(BruteForceAutCount, NamedValues) {
  EXPECT_EQ(brute_force_aut_count(PrimePowerGroup(2, {1})), 1);
  EXPECT_EQ(brute_force_aut_count(PrimePowerGroup(2, {1, 2})), 8);
  EXPECT_EQ(brute_force_aut_count(PrimePowerGroup(3, {1, 1})), 48);
  EXPECT_EQ(brute_force_aut_count(PrimePowerGroup(2, {1, 1, 2})), 192);
}

TEST(GenerationOracle, AgreesWithEnumerationOracle) {
  for (const auto& g : testing::all_prime_power_groups(64)) {
    if (endo_count(g) > (1u << 16)) continue;
    ASSERT_EQ(count_automorphisms_by_generation(g), brute_force_aut_count(g)) << g.to_string();
  }
}

TEST(GenerationOracle, ReachesBeyondEndoCap) {
  // |GL_5(F_2)| = 31 * 30 * 28 * 24 * 16.
  EXPECT_EQ(count_automorphisms_by_generation(PrimePowerGroup(2, {1, 1, 1, 1, 1})), 9999360);
  EXPECT_THROW(count_automorphisms_by_generation(PrimePowerGroup(2, {9})), CapExceeded);
}

TEST(WholeGroupOracle, NamedValues) {
  auto count = [](std::vector<BigInt> m) { return oracle::brute_force_group_aut_count(m); };
  EXPECT_EQ(count({6}), 2);
  EXPECT_EQ(count({12}), 4);
  EXPECT_EQ(count({4, 3}), 4);
  EXPECT_EQ(count({2, 4, 3}), 16);
  EXPECT_EQ(count({60}), 16);
  EXPECT_EQ(count({2, 2}), 6);
  EXPECT_THROW(count({4, 4, 4, 4}), CapExceeded);
}

TEST(VerifyGroup, NamedReports) {
  auto rep = oracle::verify_group(parse_group_spec("2,4"));
  ASSERT_TRUE(rep.pass);
  ASSERT_EQ(rep.components.size(), 1u);
  EXPECT_EQ(rep.components[0].formula, 8);
  EXPECT_EQ(*rep.components[0].oracle, 8);
  EXPECT_TRUE(rep.components[0].criterion_agrees);
  EXPECT_FALSE(rep.whole_group.has_value());

  rep = oracle::verify_group(parse_group_spec("12"));
  ASSERT_TRUE(rep.pass);
  ASSERT_TRUE(rep.whole_group.has_value());
  EXPECT_EQ(rep.whole_group->formula, 4);
  EXPECT_EQ(*rep.whole_group->oracle, 4);

  rep = oracle::verify_group(parse_group_spec("2,2,4"));
  ASSERT_TRUE(rep.pass);
  EXPECT_EQ(*rep.components[0].oracle, 192);
}

TEST(VerifyGroup, CapsReportedPerComponent) {
  const auto rep = oracle::verify_group(parse_group_spec("128,3"));
  EXPECT_FALSE(rep.pass);
  ASSERT_EQ(rep.components.size(), 2u);
  EXPECT_TRUE(rep.components[0].error.has_value());
  EXPECT_FALSE(rep.components[1].error.has_value());
  EXPECT_TRUE(rep.components[1].pass());
}

TEST(RingAction, ComposeMatchesSequentialApplyOnTinyGroups) {
  for (const auto& g : testing::all_prime_power_groups(8)) {
    const auto endos = enumerate_endos(g);
    const auto elems = enumerate_elements(g);
    for (const auto& a : endos)
      for (const auto& b : endos) {
        const Endo ab = endo_compose(a, b);
        for (const auto& h : elems) ASSERT_EQ(apply(ab, h), apply(a, apply(b, h)));
      }
  }
}

}  // namespace
}  // namespace abelaut
