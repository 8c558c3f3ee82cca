#include <gtest/gtest.h>

#include "support.hpp"

using namespace bftest;

namespace {

struct Case {
  const char* file;
  int n;
};

const Case kCases[] = {{"theta.json", 1}, {"theta.json", 2}, {"theta.json", 3}, {"theta.json", 4},
                       {"y.json", 2},     {"y.json", 3},     {"path.json", 2},  {"path.json", 3},
                       {"path.json", 4},  {"lasso.json", 2}, {"lasso.json", 3}, {"lasso.json", 4}};

}  // namespace

TEST(Cell, TextRoundTrip) {
  const Cell c = cell("{e(5,9), e(1,8), 6, 2}");
  EXPECT_EQ(to_string(c), "{e(1,8), e(5,9), 2, 6}");
  EXPECT_EQ(parse_cell("{e(1,8),e(5,9),2,6}"), c);
  EXPECT_EQ(c.dim(), 2);
  EXPECT_EQ(c.particles(), 4);
  EXPECT_TRUE(c.occupies(9));
  EXPECT_FALSE(c.has_vertex(9));
}

TEST(Cell, RejectsOverlap) {
  EXPECT_THROW(parse_cell("{e(1,2), 2}"), ValidationError);
  EXPECT_THROW(parse_cell("{e(1,2), 3, 3}"), ValidationError);
  EXPECT_THROW(parse_cell("{e(1,2), x}"), ValidationError);
}

TEST(Cell, WordRoundTrip) {
  const CellWord w = cells("{e(1,8), 2}{e(1,11), 2}^-1 {e(5,9), 6}");
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[1].sign, -1);
  EXPECT_EQ(parse_cell_word(to_string(w)), w);
}

TEST(Cell, EndpointsOfOneCell) {
  const Cell c = cell("{e(5,9), 6}");
  EXPECT_EQ(cell_start(c), cell("{6, 9}"));
  EXPECT_EQ(cell_end(c), cell("{5, 6}"));
}

TEST(Complex, RejectsBadParticleCounts) {
  EXPECT_THROW(MorseComplex(theta(), 0), ValidationError);
  EXPECT_THROW(MorseComplex(theta(), 12), ValidationError);
  EXPECT_THROW(MorseComplex(theta(), 6), ValidationError);
  EXPECT_THROW(MorseComplex(load_graph(fixture("theta_raw.json")), 2), ValidationError);
}

TEST(Complex, RejectsShortLegs) {
  EXPECT_THROW(MorseComplex(load_graph(fixture("y.json")), 4), ValidationError);
}

TEST(Complex, BlockingAndOrderRespect) {
  const MorseComplex cx(theta(), 3);
  const Cell c = cell("{e(5,9), 1, 6}");
  EXPECT_TRUE(cx.is_blocked(c, 1));
  EXPECT_TRUE(cx.is_blocked(c, 6));
  EXPECT_FALSE(cx.is_order_respecting(c, Edge{5, 9}));
  EXPECT_FALSE(cx.is_order_respecting(c, Edge{1, 8}));
  EXPECT_TRUE(cx.is_order_respecting(cell("{e(5,6), 1, 9}"), Edge{5, 6}));
  EXPECT_EQ(cx.lowest_unblocked(cell("{1, 3, 7}")), 3);
  EXPECT_EQ(cx.matching_image(cell("{1, 3, 7}")), cell("{e(2,3), 1, 7}"));
  EXPECT_THROW(cx.matching_image(c), ComputationError);
}

TEST(Complex, ThetaCriticalCellsAtTwo) {
  const MorseComplex cx(theta(), 2);
  EXPECT_EQ(cx.critical_cells(0), (std::vector<Cell>{cell("{1, 2}")}));
  EXPECT_EQ(cx.critical_cells(1),
            (std::vector<Cell>{cell("{e(1,8), 2}"), cell("{e(1,11), 2}"), cell("{e(5,9), 6}")}));
  EXPECT_TRUE(cx.critical_cells(2).empty());
}

TEST(Complex, CellSizes) {
  const MorseComplex cx(theta(), 4);
  EXPECT_EQ(cx.cell_size(cell("{e(1,8), 2, 3, 4}")), 0);
  EXPECT_EQ(cx.cell_size(cell("{e(5,9), 1, 2, 6}")), 1);
  EXPECT_EQ(cx.cell_size(cell("{e(5,9), 1, 6, 7}")), 2);
  EXPECT_EQ(cx.cell_size(cell("{e(5,9), 6, 10, 11}")), 3);
}

TEST(Complex, BoundaryWordIsClosed) {
  const MorseComplex cx(theta(), 4);
  for (const Cell& c : cx.enumerate_cells(2)) {
    const CellWord b = cx.boundary_word(c);
    ASSERT_EQ(b.size(), 4u);
    EXPECT_TRUE(is_closed_path(b)) << to_string(c);
  }
}

TEST(Complex, PathToBaseEndsAtBase) {
  const MorseComplex cx(theta(), 3);
  for (const Cell& v : cx.enumerate_cells(0)) {
    const CellWord p = cx.path_to_base(v);
    if (v == cx.base()) {
      EXPECT_TRUE(p.empty());
      continue;
    }
    ASSERT_FALSE(p.empty());
    EXPECT_EQ(path_start(p), cx.base());
    const auto& last = p.back();
    EXPECT_EQ(last.sign > 0 ? cell_end(last.symbol) : cell_start(last.symbol), v);
    for (const auto& l : p) EXPECT_EQ(cx.kind(l.symbol), MorseKind::Collapsible);
  }
}

// Classification agrees with the brute-force oracle on every cell, and the
// matching satisfies its axioms.
TEST(ComplexProperty, MatchesBruteForceOracle) {
  for (const Case& k : kCases) {
    const MorseComplex cx(load_graph(fixture(k.file)), k.n);
    const BruteMatching oracle = brute_matching(cx.graph(), k.n);
    std::size_t seen = 0;
    for (int d = 0; d <= std::min(k.n, 2); ++d) {
      const auto all = cx.enumerate_cells(d);
      EXPECT_EQ(all, brute_cells(cx.graph(), k.n, d)) << k.file << " n=" << k.n << " dim " << d;
      for (const Cell& c : all) {
        ++seen;
        ASSERT_EQ(cx.kind(c), oracle.kind.at(c)) << k.file << " n=" << k.n << " " << to_string(c);
        if (cx.kind(c) == MorseKind::Redundant && d < 2) EXPECT_EQ(cx.matching_image(c), oracle.w.at(c));
      }
    }
    EXPECT_GT(seen, 0u);
    const MatchingReport m = cx.validate_matching();
    EXPECT_TRUE(m.ok) << k.file << " n=" << k.n;
    EXPECT_EQ(m.critical[0], 1u);
  }
}

// Euler characteristic of the complex equals that of the Morse complex.
TEST(ComplexProperty, EulerCharacteristic) {
  for (const Case& k : kCases) {
    if (k.n > 2) continue;
    const MorseComplex cx(load_graph(fixture(k.file)), k.n);
    long chi = 0, chi_c = 0;
    for (int d = 0; d <= k.n; ++d) {
      const long sign = d % 2 ? -1 : 1;
      chi += sign * static_cast<long>(brute_cells(cx.graph(), k.n, d).size());
      chi_c += sign * static_cast<long>(cx.critical_cells(d).size());
    }
    EXPECT_EQ(chi, chi_c) << k.file << " n=" << k.n;
  }
}
