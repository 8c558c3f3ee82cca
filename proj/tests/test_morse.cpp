#include <gtest/gtest.h>

#include <random>

#include "braidforge/morse.hpp"
#include "braidforge/oracle.hpp"
#include "support.hpp"

using namespace bftest;

TEST(Rewrite, CollapsibleLettersVanish) {
  const MorseComplex cx(theta(), 2);
  const CellWord w = cells("{e(1,2), 3}");
  ASSERT_EQ(cx.kind(w[0].symbol), MorseKind::Collapsible);
  const RewriteTrace t = rewrite_word(cx, w);
  EXPECT_TRUE(t.output.empty());
  ASSERT_EQ(t.steps.size(), 1u);
  EXPECT_EQ(t.steps[0].kind, MoveKind::Collapse);
}

TEST(Rewrite, CriticalLettersStay) {
  const MorseComplex cx(theta(), 2);
  const CellWord w = cells("{e(1,8), 2} {e(5,9), 6}^-1");
  EXPECT_EQ(rewrite_word(cx, w).output, w);
}

TEST(Rewrite, StepBoundRaises) {
  const MorseComplex cx(theta(), 3);
  RewriteOptions o;
  o.max_steps = 2;
  const CellWord b = relator_loop(cx, cell("{e(1,8), e(5,9), 6}"));
  EXPECT_THROW(rewrite_word(cx, b, o), ComputationError);
  MorseFlow flow(cx, 2);
  EXPECT_THROW(flow.image(b), ComputationError);
}

TEST(Rewrite, GammaRLoopImage) {
  const MorseComplex cx(theta(), 2);
  MorseFlow flow(cx);
  const CellWord w = cells("{e(1,11),2}{e(1,8),2}^-1{e(1,2),8}{e(1,11),8}^-1{e(1,8),11}{e(1,2),11}^-1");
  ASSERT_TRUE(is_closed_path(w));
  const CellWord img = flow.image(w);
  EXPECT_EQ(to_string(img), "{e(1,11), 2} {e(1,8), 2}^-1 {e(1,11), 2}^-1 {e(5,9), 6} {e(1,8), 2}");
}

TEST(Presentation, ThetaThreeRelators) {
  const MorseComplex cx(theta(), 3);
  const MorsePresentation p = morse_presentation(cx);
  const std::vector<std::string> names{"a1", "a2", "g", "s1", "s2"};
  ASSERT_EQ(p.generators.size(), 5u);
  ASSERT_EQ(p.relators.size(), 2u);
  EXPECT_EQ(p.relators[0].word, gen_word("a1 g^-1 a1^-1 g^-1 s1", names));
  EXPECT_EQ(p.relators[1].word, gen_word("a2 g^-1 a2^-1 s2", names));
}

TEST(Presentation, PathIsTrivial) {
  const MorseComplex cx(load_graph(fixture("path.json")), 2);
  const MorsePresentation p = morse_presentation(cx);
  EXPECT_TRUE(p.generators.empty());
  EXPECT_TRUE(p.relators.empty());
  EXPECT_EQ(p.group().to_string(), "< | >");
}

// The memoized flow and the literal three-move rewriting agree on every
// 1-cell and on random closed paths.
TEST(RewriteProperty, FlowMatchesLiteralRewrite) {
  for (int n : {2, 3, 4}) {
    const MorseComplex cx(theta(), n);
    MorseFlow flow(cx);
    for (const Cell& c : cx.enumerate_cells(1)) {
      const CellWord w{{c, 1}};
      ASSERT_EQ(flow.image(w), rewrite_word(cx, w).output) << to_string(c);
    }
  }
  const MorseComplex cx(theta(), 3);
  MorseFlow flow(cx);
  const auto ones = cx.enumerate_cells(1);
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, ones.size() - 1);
  for (int t = 0; t < 200; ++t) {
    // A random walk on the 1-skeleton from the base, closed by the tree paths.
    Cell at = cx.base();
    CellWord walk;
    for (int s = 0; s < 8; ++s) {
      for (int tries = 0; tries < 200; ++tries) {
        const Cell& c = ones[pick(rng)];
        if (cell_start(c) == at) {
          walk.push_back({c, 1});
          at = cell_end(c);
          break;
        }
        if (cell_end(c) == at) {
          walk.push_back({c, -1});
          at = cell_start(c);
          break;
        }
      }
    }
    walk = concat(walk, inverse(cx.path_to_base(at)));
    if (walk.empty()) continue;
    ASSERT_TRUE(is_closed_path(walk));
    EXPECT_EQ(flow.image(walk), rewrite_word(cx, walk, {1'000'000, false}).output);
  }
}

// Morse and 1-skeleton presentations have the same abelianization.
TEST(PresentationProperty, OracleHomologyAgrees) {
  for (const char* f : {"theta.json", "y.json", "path.json", "lasso.json"}) {
    for (int n = 1; n <= 4; ++n) {
      const Graph g = load_graph(fixture(f));
      if (!check_subdivision(g, n).sufficient()) continue;
      const MorseComplex cx(g, n);
      EXPECT_EQ(homology_h1(morse_presentation(cx).group()), homology_h1(skeleton_presentation(cx)))
          << f << " n=" << n;
    }
  }
}

TEST(PresentationProperty, DeterministicAcrossThreadCounts) {
  const MorseComplex cx(theta(), 4);
  setenv("BRAIDFORGE_THREADS", "1", 1);
  const FPGroup a = morse_presentation(cx).group();
  setenv("BRAIDFORGE_THREADS", "8", 1);
  const FPGroup b = morse_presentation(cx).group();
  unsetenv("BRAIDFORGE_THREADS");
  EXPECT_EQ(a.to_string(), b.to_string());
}
