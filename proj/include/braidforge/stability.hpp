#pragma once

// The + map from N- to (N+1)-particle cells and the relator-lifting report.

#include <string>
#include <utility>
#include <vector>

#include "braidforge/complex.hpp"
#include "braidforge/morse.hpp"

namespace braidforge {

/// Adds the smallest free vertex that makes the result critical in `target`
/// (a complex with one more particle). Throws ComputationError if none exists.
Cell plus_map(const MorseComplex& target, const Cell& c);
CellWord plus_map(const MorseComplex& target, const CellWord& w);

struct StabilityLevel {
  int n = 0;
  std::size_t generators = 0;  ///< critical 1-cells
  std::size_t relators = 0;    ///< critical 2-cells
  std::size_t minimal_generators = 0;
  std::size_t minimal_relators = 0;
  /// Critical 2-cells not hit by the + map from level n-1.
  std::vector<Cell> new_relators;
  /// Pairs (cell at n-1, its + image at n) for critical 1- and 2-cells.
  std::vector<std::pair<Cell, Cell>> correspondence;
  bool lifting_checked = false;  ///< false at the first level
  bool lifting_ok = true;
  std::vector<std::string> lifting_failures;
};

struct StabilityReport {
  std::vector<StabilityLevel> levels;
  bool two_connected = false;
  std::vector<std::string> warnings;

  bool lifting_ok() const;
};

/// For each n in [n_lo, n_hi]: Morse and minimal presentation sizes, the +
/// correspondence from n-1, and the check that every relator of n-1 lifts
/// letterwise: rewrite(b(tau+)) == (rewrite(b(tau)))+.
StabilityReport stability_report(const Graph& g, int n_lo, int n_hi);

}  // namespace braidforge
