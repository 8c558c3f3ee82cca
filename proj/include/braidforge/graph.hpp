#pragma once

// Graph ingestion, subdivision and the canonical vertex order.
//
// A Graph is a finite connected multigraph over integer vertex ids together
// with a spanning tree, a root of tree-degree one and a rotation system (the
// clockwise cyclic order of neighbours at every vertex). The rotation of the
// tree edges fixes a planar embedding of the tree, which in turn fixes the
// depth-first vertex labelling that every downstream computation is phrased
// in. OrderedGraph is the relabelled, simple-graph view used by the complex.

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "braidforge/error.hpp"

namespace braidforge {

class GraphError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Raw description of a graph as read from a graph file.
struct GraphSpec {
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> edges;
  /// Clockwise neighbour ids per vertex; a neighbour joined by several
  /// parallel edges appears once per edge, a loop contributes its vertex twice.
  std::map<int, std::vector<int>> rotation;
  std::vector<std::pair<int, int>> tree_edges;
  std::optional<int> root;
};

class Graph {
 public:
  /// Validates the spec: connectivity, spanning tree, root, rotation.
  explicit Graph(GraphSpec spec);

  const std::vector<int>& vertices() const { return vertices_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool is_tree_edge(std::size_t edge_index) const { return in_tree_[edge_index]; }
  int root() const { return root_; }
  const std::vector<int>& rotation(int v) const;
  const std::map<int, std::vector<int>>& rotations() const { return rotation_; }
  std::vector<std::pair<int, int>> tree_edges() const;

  /// Degree in the whole graph, loops counted twice.
  int degree(int v) const;
  int tree_degree(int v) const;
  /// Tree neighbours of v in clockwise order.
  std::vector<int> tree_neighbours(int v) const;
  /// Indices of edges incident to v, in edge-list order.
  std::vector<std::size_t> incident_edges(int v) const;
  bool has_vertex(int v) const;
  bool is_simple() const;
  std::size_t vertex_count() const { return vertices_.size(); }

  /// Non-fatal notes collected during validation (e.g. defaulted rotation).
  const std::vector<std::string>& warnings() const { return warnings_; }

  GraphSpec spec() const;

 private:
  std::vector<int> vertices_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<bool> in_tree_;
  std::map<int, std::vector<int>> rotation_;
  std::map<int, std::vector<std::size_t>> incidence_;
  int root_ = 0;
  std::vector<std::string> warnings_;
};

/// Depth-first labelling of the vertices: the root is 1, children of a vertex
/// are visited in clockwise order starting after the branch towards the root.
struct VertexOrder {
  std::map<int, int> label;        ///< vertex id -> label in 1..|V|
  std::vector<int> id_of_label;    ///< label -> vertex id; index 0 unused
  std::vector<int> parent_label;   ///< label -> parent label; 0 for the root
};

VertexOrder order_vertices(const Graph& g);

/// An edge in label space, oriented from iota (larger label) to tau.
struct Edge {
  int tau = 0;
  int iota = 0;

  bool contains(int v) const { return v == tau || v == iota; }
  bool operator==(const Edge&) const = default;
  auto operator<=>(const Edge&) const = default;
};

Edge make_edge(int a, int b);

/// Label-space view of a simple graph; the substrate of the Abrams complex.
class OrderedGraph {
 public:
  /// Throws ValidationError if the graph has loops or parallel edges.
  explicit OrderedGraph(const Graph& g);

  const Graph& graph() const { return graph_; }
  const VertexOrder& order() const { return order_; }
  int vertex_count() const { return static_cast<int>(parent_.size()) - 1; }

  /// All edges sorted by (tau, iota).
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Edge>& deleted_edges() const { return deleted_; }
  bool is_tree_edge(const Edge& e) const;
  bool has_edge(const Edge& e) const;

  /// Parent label of v in the tree; 0 for the root.
  int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }
  /// The tree edge e(v) with iota = v; empty for the root.
  std::optional<Edge> parent_edge(int v) const;
  /// Children of v in branch order 1, 2, ...
  const std::vector<int>& children(int v) const { return children_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return degree_[static_cast<std::size_t>(v)]; }
  int tree_degree(int v) const;
  /// Tree path between two labels, endpoints included.
  std::vector<int> tree_path(int a, int b) const;
  /// True if `ancestor` lies on the tree path from v to the root (v included).
  bool is_ancestor(int ancestor, int v) const;

  int id_of(int label) const { return order_.id_of_label[static_cast<std::size_t>(label)]; }
  int label_of(int id) const;

 private:
  Graph graph_;
  VertexOrder order_;
  std::vector<Edge> edges_;
  std::vector<Edge> deleted_;
  std::vector<int> parent_;
  std::vector<int> depth_;
  std::vector<std::vector<int>> children_;
  std::vector<int> degree_;
};

struct PathViolation {
  int from = 0;  ///< essential vertex id
  int to = 0;    ///< essential vertex id
  int length = 0;
  std::vector<int> vertices;  ///< ids along the path
};

struct CycleViolation {
  std::vector<int> vertices;  ///< ids along the cycle, starting at the smallest
  int length = 0;
};

struct SubdivisionReport {
  int target_n = 0;
  std::vector<PathViolation> path_violations;
  std::vector<CycleViolation> cycle_violations;

  bool sufficient() const { return path_violations.empty() && cycle_violations.empty(); }
};

/// Exhaustive list of violations of the two subdivision conditions for n
/// particles: paths between distinct essential vertices need n-1 edges and
/// cycles need n+1 edges.
SubdivisionReport check_subdivision(const Graph& g, int n);

/// Inserts degree-two vertices until the graph is sufficiently subdivided for
/// n particles. The result is relabelled so that vertex ids equal labels. A
/// graph that is already sufficient is returned unchanged.
Graph subdivide_for(const Graph& g, int n);

/// Relabels vertex ids to the canonical depth-first labels.
Graph relabel_canonical(const Graph& g);

struct TreeConditionReport {
  bool t1 = true;
  std::vector<Edge> t1_witnesses;                 ///< deleted edges with deg(iota) != 2
  bool t2 = true;
  std::vector<std::pair<Edge, int>> t2_witnesses;  ///< (deleted edge, separating vertex)
  bool t3_verified = false;                       ///< never checked
};

/// Tree conditions T1 and T2 for the minimal-presentation machinery.
TreeConditionReport check_tree_conditions(const OrderedGraph& g);

/// True if the graph stays connected after deleting any single vertex.
bool is_two_connected(const Graph& g);

}  // namespace braidforge
