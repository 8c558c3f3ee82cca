#pragma once

// Finitely presented groups: Tietze elimination, abelianization, Smith
// normal form and first homology.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "braidforge/error.hpp"
#include "braidforge/word.hpp"

namespace braidforge {

struct FPGroup {
  std::vector<std::string> generators;
  std::vector<GenWord> relators;
  /// Provenance of each relator, e.g. the critical 2-cell it came from.
  std::vector<std::string> relator_sources;

  /// Throws ValidationError on out-of-range indices, bad signs or empty names.
  void validate() const;
  std::string to_string() const;
};

std::string word_to_string(const GenWord& w, const std::vector<std::string>& names);

struct Elimination {
  int generator = 0;
  GenWord relator;     ///< the relator used, at the time of elimination
  GenWord expression;  ///< generator as a word in the generators alive then
};

struct TietzeResult {
  FPGroup group;                 ///< surviving generators and reduced relators
  std::vector<int> kept;         ///< original indices of the surviving generators
  std::vector<Elimination> log;  ///< in elimination order, original indices
  /// Every original generator as a word in the surviving ones (original indices).
  std::map<int, GenWord> expressions;
  int target = 0;  ///< m + p from the first homology
  bool target_reached = false;
};

/// Repeatedly solves a relator for a generator occurring in it exactly once
/// and substitutes it away. Candidates are ranked by larger size, then shorter
/// relator, then lower generator index. `sizes` may be empty (all zero).
TietzeResult tietze_minimize(const FPGroup& p, const std::vector<int>& sizes = {},
                             std::optional<int> target = std::nullopt);

struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Rows are relators, columns generators; entries are exponent sums.
IntMatrix abelianization_matrix(const FPGroup& p);

struct SmithForm {
  std::vector<std::int64_t> factors;  ///< nonzero invariant factors, each dividing the next
  std::size_t rank = 0;
};

/// Exact Smith normal form. Entries are int64 with checked arithmetic; an
/// overflow raises ComputationError.
SmithForm smith_normal_form(const IntMatrix& m);

struct HomologyClass {
  std::size_t free_rank = 0;
  std::vector<std::int64_t> torsion;  ///< invariant factors greater than one

  /// `Z^3`, `Z`, `0`, `Z (+) Z_2^2`.
  std::string to_string() const;
  std::size_t minimal_generators() const { return free_rank + torsion.size(); }
  bool operator==(const HomologyClass&) const = default;
};

HomologyClass homology_h1(const FPGroup& p);

}  // namespace braidforge
