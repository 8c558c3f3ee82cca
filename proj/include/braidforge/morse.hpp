#pragma once

// Rewriting words of 1-cells into words of critical 1-cells, and the Morse
// presentation built from the critical cells.

#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "braidforge/complex.hpp"
#include "braidforge/presentation.hpp"

namespace braidforge {

enum class MoveKind { FreeCancel, Collapse, SimpleHomotopy };

std::string to_string(MoveKind k);

struct RewriteStep {
  MoveKind kind = MoveKind::FreeCancel;
  std::size_t position = 0;
  Cell cell;
};

struct RewriteTrace {
  CellWord input;
  std::vector<RewriteStep> steps;
  std::size_t step_count = 0;
  CellWord output;
};

struct RewriteOptions {
  std::size_t max_steps = 1'000'000;
  bool record_steps = true;
};

/// Applies the three moves literally: at every step the leftmost free
/// cancellation, else the leftmost collapsible letter is deleted, else the
/// leftmost redundant letter is replaced through the boundary of its image.
/// Throws ComputationError when the step bound is exceeded.
RewriteTrace rewrite_word(const MorseComplex& cx, const CellWord& w, const RewriteOptions& opts = {});

/// Memoized Morse flow: the image of each 1-cell is computed once. Gives the
/// same result as rewrite_word. Safe to share between threads.
class MorseFlow {
 public:
  explicit MorseFlow(const MorseComplex& cx, std::size_t max_steps = 1'000'000)
      : cx_(cx), max_steps_(max_steps) {}

  CellWord image(const Cell& one_cell);
  CellWord image(const CellWord& w);

 private:
  const MorseComplex& cx_;
  std::size_t max_steps_;
  std::size_t steps_ = 0;
  std::map<Cell, CellWord> memo_;
  std::recursive_mutex mu_;
};

/// The relation of a 2-cell as a loop: the boundary word read backwards,
/// starting at the corner {iota(e), tau(e')}. This is the orientation in
/// which relators are reported.
CellWord relator_loop(const MorseComplex& cx, const Cell& two_cell);

struct MorseRelator {
  CellWord cells;  ///< rewritten relator over critical 1-cells
  GenWord word;    ///< same, over generator indices
  Cell source;     ///< the critical 2-cell
};

struct MorsePresentation {
  int particles = 0;
  std::vector<Cell> generators;  ///< critical 1-cells, sorted
  std::vector<MorseRelator> relators;

  int index_of(const Cell& c) const;  ///< -1 if not a generator
  GenWord to_gen_word(const CellWord& critical_word) const;
  CellWord to_cell_word(const GenWord& w) const;
  FPGroup group() const;
  std::vector<int> sizes(const MorseComplex& cx) const;
};

/// Generators are the critical 1-cells, relators the rewritten relator loops
/// of the critical 2-cells.
MorsePresentation morse_presentation(const MorseComplex& cx, std::size_t max_steps = 1'000'000);

}  // namespace braidforge
