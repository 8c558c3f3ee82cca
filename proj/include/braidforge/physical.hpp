#pragma once

// Exchange loops (Y-loops at junctions of the tree, O-loops around simple
// cycles), their images in the Morse complex, and physical presentations
// whose generators are such loops.

#include <string>
#include <variant>
#include <vector>

#include "braidforge/complex.hpp"
#include "braidforge/morse.hpp"
#include "braidforge/presentation.hpp"

namespace braidforge {

/// Exchange of two particles at junction l, where k = parent(l) and m < n are
/// children of l. `spectators` holds the other N-2 particles.
struct YLoopSpec {
  int k = 0;
  int m = 0;
  int n = 0;
  std::vector<int> spectators;
  std::string name;  ///< defaults to Y(k,m,n;spectators)
};

/// One particle travelling once around a simple cycle v1 -> ... -> vp -> v1.
struct OLoopSpec {
  std::vector<int> cycle;
  std::vector<int> spectators;
  std::string name;  ///< defaults to O(cycle;spectators)
};

/// An arbitrary closed path of 1-cells.
struct WordLoopSpec {
  CellWord word;
  std::string name;
};

using LoopSpec = std::variant<YLoopSpec, OLoopSpec, WordLoopSpec>;

std::string loop_name(const LoopSpec& s);
bool is_y_loop(const LoopSpec& s);

CellWord y_loop_word(const MorseComplex& cx, const YLoopSpec& s);
CellWord o_loop_word(const MorseComplex& cx, const OLoopSpec& s);
CellWord loop_word(const MorseComplex& cx, const LoopSpec& s);

/// Image of a closed path over critical 1-cells. With `based`, the path is
/// first conjugated by the collapsible path from the base configuration.
CellWord loop_image(const MorseComplex& cx, MorseFlow& flow, const CellWord& w, bool based = true);

struct PhysicalLoop {
  std::string name;
  bool is_y = false;
  CellWord word;
  CellWord image;  ///< over critical 1-cells
};

struct DictionaryEntry {
  Cell cell;
  GenWord word;  ///< over loop indices
};

struct PhysicalPresentation {
  std::vector<PhysicalLoop> loops;
  /// Generators are the loop names. Relators: the minimal relators rewritten
  /// in loops, then one relator per solved non-minimal cell, then loop
  /// equations that were not needed for solving.
  FPGroup group;
  std::vector<DictionaryEntry> dictionary;  ///< sorted by cell

  const DictionaryEntry* entry(const Cell& c) const;
  std::vector<std::string> loop_names() const;
};

class PhysicalSolveError : public ComputationError {
 public:
  PhysicalSolveError(const std::string& msg, std::vector<Cell> unsolved, std::vector<YLoopSpec> suggestions)
      : ComputationError(msg), unsolved(std::move(unsolved)), suggestions(std::move(suggestions)) {}
  std::vector<Cell> unsolved;
  std::vector<YLoopSpec> suggestions;
};

/// Inverts the loop equations (loop = image) by triangular elimination and
/// rewrites the minimal presentation in terms of loops.
PhysicalPresentation solve_physical_presentation(const MorseComplex& cx, const MorsePresentation& morse,
                                                 const TietzeResult& minimal, const std::vector<LoopSpec>& loops);

/// Y-loops whose image is a single given critical cell, for cells of the
/// form {e(l,n), m, v} with m a child of l below n.
std::vector<YLoopSpec> suggest_loops(const MorseComplex& cx, MorseFlow& flow, const Cell& critical);

}  // namespace braidforge
