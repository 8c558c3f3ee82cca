#include <gtest/gtest.h>

#include "braidforge/morse.hpp"
#include "braidforge/stability.hpp"
#include "support.hpp"

using namespace bftest;

TEST(PlusMap, AddsSmallestFreeCriticalVertex) {
  const MorseComplex three(theta(), 3);
  EXPECT_EQ(plus_map(three, cell("{e(5,9), 6}")), cell("{e(5,9), 1, 6}"));
  EXPECT_EQ(plus_map(three, cell("{e(1,8), 2}")), cell("{e(1,8), 2, 3}"));
  const MorseComplex four(theta(), 4);
  EXPECT_EQ(plus_map(four, cell("{e(1,11), e(5,9), 6}")), cell("{e(1,11), e(5,9), 2, 6}"));
}

TEST(Stability, ThetaReport) {
  const StabilityReport r = stability_report(theta(), 2, 4);
  ASSERT_EQ(r.levels.size(), 3u);
  EXPECT_TRUE(r.two_connected);
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_FALSE(r.levels[0].lifting_checked);
  for (const auto& lv : r.levels) {
    EXPECT_EQ(lv.minimal_generators, 3u);
    EXPECT_TRUE(lv.lifting_ok);
  }
  EXPECT_EQ(r.levels[1].new_relators.size(), 2u);
  EXPECT_EQ(r.levels[2].new_relators.size(), 4u);
}

TEST(Stability, WarnsWhenNotTwoConnected) {
  const StabilityReport r = stability_report(load_graph(fixture("lasso.json")), 2, 4);
  EXPECT_FALSE(r.two_connected);
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(Stability, RejectsBadRange) {
  EXPECT_THROW(stability_report(theta(), 3, 2), ValidationError);
  EXPECT_THROW(stability_report(theta(), 0, 2), ValidationError);
}

// Every relator at n lifts letterwise to the relator of the lifted cell at n+1.
TEST(StabilityProperty, RelatorsLiftLetterwise) {
  for (const char* f : {"theta.json", "lasso.json", "y.json"}) {
    const Graph g = load_graph(fixture(f));
    for (int n = 1; n < 4; ++n) {
      if (!check_subdivision(g, n + 1).sufficient()) continue;
      const MorseComplex lo(g, n), hi(g, n + 1);
      const MorsePresentation plo = morse_presentation(lo), phi = morse_presentation(hi);
      for (const auto& r : plo.relators) {
        const Cell lifted = plus_map(hi, r.source);
        auto it = std::find_if(phi.relators.begin(), phi.relators.end(),
                               [&](const MorseRelator& m) { return m.source == lifted; });
        ASSERT_NE(it, phi.relators.end());
        EXPECT_EQ(it->cells, plus_map(hi, r.cells)) << f << " n=" << n << " " << to_string(r.source);
      }
    }
  }
}
