#pragma once

// Cells of the discretized configuration complex and the discrete Morse
// matching on them.
//
// A cell is a set of N pairwise disjoint constituents, each an edge or a
// vertex of the ordered graph. A 1-cell {e, v} runs from iota(e) u v to
// tau(e) u v. The matching pairs a redundant cell with the cell obtained by
// replacing its lowest unblocked vertex v by the tree edge e(v).

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "braidforge/graph.hpp"
#include "braidforge/word.hpp"

namespace braidforge {

struct Cell {
  std::vector<Edge> edges;    ///< sorted by (tau, iota)
  std::vector<int> vertices;  ///< sorted labels

  int dim() const { return static_cast<int>(edges.size()); }
  int particles() const { return static_cast<int>(edges.size() + vertices.size()); }
  bool has_vertex(int v) const;
  /// True if v is a vertex of the cell or an endpoint of one of its edges.
  bool occupies(int v) const;

  bool operator==(const Cell&) const = default;
  auto operator<=>(const Cell&) const = default;
};

/// Sorts constituents and checks pairwise disjointness.
Cell make_cell(std::vector<Edge> edges, std::vector<int> vertices);

/// `{e(5,9), 1, 6}`; edges first, then vertices.
std::string to_string(const Cell& c);
/// Accepts the output of to_string, with or without spaces.
Cell parse_cell(const std::string& text);

using CellWord = Word<Cell>;

std::string to_string(const CellWord& w);
CellWord parse_cell_word(const std::string& text);

/// Initial and terminal configurations of a 1-cell.
Cell cell_start(const Cell& one_cell);
Cell cell_end(const Cell& one_cell);
/// True if consecutive letters share endpoints and the word returns to its start.
bool is_closed_path(const CellWord& w);
/// Configuration where a path starts; the word must be non-empty.
Cell path_start(const CellWord& w);

enum class MorseKind { Critical, Redundant, Collapsible };

std::string to_string(MorseKind k);

struct MorseClass {
  MorseKind kind = MorseKind::Critical;
  /// Image under W for redundant 0- and 1-cells, preimage for collapsible
  /// cells. Redundant 2-cells pair with 3-cells, which are not modelled.
  std::optional<Cell> partner;
};

struct MatchingReport {
  bool ok = true;
  std::vector<std::string> problems;
  std::size_t cells[3] = {0, 0, 0};
  std::size_t critical[3] = {0, 0, 0};
  std::size_t redundant[3] = {0, 0, 0};
  std::size_t collapsible[3] = {0, 0, 0};
};

class MorseComplex {
 public:
  /// Requires a simple graph sufficiently subdivided for n and a unique
  /// critical 0-cell; throws ValidationError otherwise.
  MorseComplex(const Graph& g, int n);

  const OrderedGraph& graph() const { return graph_; }
  int particles() const { return n_; }

  /// All cells of dimension dim, sorted.
  std::vector<Cell> enumerate_cells(int dim) const;
  std::vector<Cell> critical_cells(int dim) const;

  /// True if c is a cell of this complex (right particle count, edges exist).
  bool contains(const Cell& c) const;

  bool is_blocked(const Cell& c, int v) const;
  bool is_order_respecting(const Cell& c, const Edge& e) const;
  bool is_critical(const Cell& c) const;
  std::optional<int> lowest_unblocked(const Cell& c) const;

  MorseKind kind(const Cell& c) const;
  MorseClass classify(const Cell& c) const;

  /// W: replaces the lowest unblocked vertex by its parent edge. Throws
  /// ComputationError for critical or collapsible cells.
  Cell matching_image(const Cell& c) const;

  /// The word {e,iota(e'),v}{e',tau(e),v}{e,tau(e'),v}^-1{e',iota(e),v}^-1
  /// where e is the smaller edge.
  CellWord boundary_word(const Cell& two_cell) const;

  /// The base configuration {1, ..., N}.
  Cell base() const;

  /// Collapsible path from the base to `config`: the W0 falling path of
  /// config, reversed.
  CellWord path_to_base(const Cell& config) const;

  /// Number of vertices blocked behind tau(e) on its outgoing branches; zero
  /// when tau(e) is the root.
  int cell_size(const Cell& one_cell) const;

  /// Exhaustive check of the matching axioms: partition, injectivity,
  /// W0 onto collapsible 1-cells, and acyclicity of the modified Hasse diagram.
  MatchingReport validate_matching() const;

 private:
  bool collapsible_one(const Cell& c) const;
  bool collapsible_two(const Cell& c, Cell* preimage) const;
  Cell replace_vertex(const Cell& c, int v) const;

  OrderedGraph graph_;
  int n_;
};

}  // namespace braidforge
