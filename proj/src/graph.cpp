#include "braidforge/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace braidforge {

namespace {

std::string edge_text(int a, int b) {
  std::ostringstream os;
  os << "{" << a << "," << b << "}";
  return os.str();
}

// Connected components over the given edge subset, ignoring `removed`.
bool connected(const std::vector<int>& vertices, const std::vector<std::pair<int, int>>& edges,
               std::optional<int> removed = std::nullopt) {
  std::map<int, int> idx;
  for (int v : vertices) {
    if (removed && v == *removed) continue;
    idx.emplace(v, static_cast<int>(idx.size()));
  }
  if (idx.size() <= 1) return true;
  std::vector<int> parent(idx.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [a, b] : edges) {
    if (removed && (a == *removed || b == *removed)) continue;
    parent[find(idx.at(a))] = find(idx.at(b));
  }
  const int r = find(0);
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (find(static_cast<int>(i)) != r) return false;
  }
  return true;
}

}  // namespace

Graph::Graph(GraphSpec spec) {
  vertices_ = spec.vertices;
  std::sort(vertices_.begin(), vertices_.end());
  if (vertices_.empty()) throw GraphError("graph has no vertices");
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw GraphError("duplicate vertex id");
  }
  for (int v : vertices_) incidence_[v];

  edges_ = spec.edges;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto [a, b] = edges_[i];
    if (!has_vertex(a) || !has_vertex(b)) {
      throw GraphError("edge " + edge_text(a, b) + " references an unknown vertex");
    }
    incidence_[a].push_back(i);
    if (b != a) incidence_[b].push_back(i);
  }
  if (!connected(vertices_, edges_)) throw GraphError("graph has multiple components");

  // Tree edges: each declared pair claims the first unused matching edge.
  in_tree_.assign(edges_.size(), false);
  for (auto [a, b] : spec.tree_edges) {
    if (a == b) throw GraphError("tree edge " + edge_text(a, b) + " is a loop");
    bool found = false;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      auto [u, v] = edges_[i];
      if (!in_tree_[i] && ((u == a && v == b) || (u == b && v == a))) {
        in_tree_[i] = true;
        found = true;
        break;
      }
    }
    if (!found) throw GraphError("tree edge " + edge_text(a, b) + " is not an edge of the graph");
  }
  std::vector<std::pair<int, int>> tree = tree_edges();
  if (tree.size() + 1 != vertices_.size() || !connected(vertices_, tree)) {
    std::set<int> touched;
    for (auto [a, b] : tree) {
      touched.insert(a);
      touched.insert(b);
    }
    for (int v : vertices_) {
      if (vertices_.size() > 1 && !touched.count(v)) {
        throw GraphError("non-spanning tree: vertex " + std::to_string(v) + " is not covered");
      }
    }
    if (tree.size() + 1 != vertices_.size()) {
      throw GraphError(tree.size() + 1 > vertices_.size() ? "tree edges contain a cycle"
                                                          : "non-spanning tree: tree is disconnected");
    }
    throw GraphError("non-spanning tree: tree is disconnected");
  }

  // Rotation system.
  bool defaulted = false;
  for (int v : vertices_) {
    std::vector<int> expected;
    for (std::size_t i : incidence_.at(v)) {
      auto [a, b] = edges_[i];
      if (a == b) {
        expected.push_back(v);
        expected.push_back(v);
      } else {
        expected.push_back(a == v ? b : a);
      }
    }
    std::sort(expected.begin(), expected.end());
    auto it = spec.rotation.find(v);
    if (it == spec.rotation.end()) {
      rotation_[v] = expected;
      defaulted = true;
      continue;
    }
    std::vector<int> given = it->second;
    std::sort(given.begin(), given.end());
    if (given != expected) {
      throw GraphError("rotation inconsistent with incidence at vertex " + std::to_string(v));
    }
    rotation_[v] = it->second;
  }
  for (const auto& [v, rot] : spec.rotation) {
    if (!has_vertex(v)) throw GraphError("rotation given for unknown vertex " + std::to_string(v));
  }
  if (defaulted) {
    warnings_.push_back("rotation missing for some vertices; defaulted to ascending neighbour ids");
  }

  if (spec.root) {
    if (!has_vertex(*spec.root)) throw GraphError("root " + std::to_string(*spec.root) + " is not a vertex");
    if (tree_degree(*spec.root) != 1) {
      throw GraphError("root " + std::to_string(*spec.root) + " must have degree 1 in the tree");
    }
    root_ = *spec.root;
  } else {
    auto it = std::find_if(vertices_.begin(), vertices_.end(), [&](int v) { return tree_degree(v) == 1; });
    if (it == vertices_.end()) throw GraphError("no vertex of tree-degree 1 available as root");
    root_ = *it;
    warnings_.push_back("root not given; using lowest-id vertex of tree-degree 1: " + std::to_string(root_));
  }
}

const std::vector<int>& Graph::rotation(int v) const {
  auto it = rotation_.find(v);
  if (it == rotation_.end()) throw GraphError("unknown vertex " + std::to_string(v));
  return it->second;
}

std::vector<std::pair<int, int>> Graph::tree_edges() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (in_tree_[i]) out.push_back(edges_[i]);
  }
  return out;
}

int Graph::degree(int v) const {
  int d = 0;
  for (std::size_t i : incidence_.at(v)) d += edges_[i].first == edges_[i].second ? 2 : 1;
  return d;
}

int Graph::tree_degree(int v) const {
  int d = 0;
  for (std::size_t i : incidence_.at(v)) d += in_tree_[i] ? 1 : 0;
  return d;
}

std::vector<std::size_t> Graph::incident_edges(int v) const { return incidence_.at(v); }

bool Graph::has_vertex(int v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

bool Graph::is_simple() const {
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges_) {
    if (a == b) return false;
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) return false;
  }
  return true;
}

std::vector<int> Graph::tree_neighbours(int v) const {
  // The k-th occurrence of neighbour u in the rotation belongs to the k-th edge
  // joining v and u; only tree edges are kept.
  std::map<int, std::vector<std::size_t>> by_neighbour;
  for (std::size_t i : incidence_.at(v)) {
    auto [a, b] = edges_[i];
    if (a == b) continue;
    by_neighbour[a == v ? b : a].push_back(i);
  }
  std::map<int, std::size_t> seen;
  std::vector<int> out;
  for (int u : rotation_.at(v)) {
    if (u == v) continue;
    std::size_t k = seen[u]++;
    const auto& list = by_neighbour[u];
    if (k < list.size() && in_tree_[list[k]]) out.push_back(u);
  }
  return out;
}

GraphSpec Graph::spec() const {
  GraphSpec s;
  s.vertices = vertices_;
  s.edges = edges_;
  s.rotation = rotation_;
  s.tree_edges = tree_edges();
  s.root = root_;
  return s;
}

VertexOrder order_vertices(const Graph& g) {
  VertexOrder order;
  order.id_of_label.push_back(0);
  order.parent_label.push_back(0);

  struct Frame {
    int id;
    int parent_id;
  };
  std::vector<Frame> stack{{g.root(), 0}};
  bool root_frame = true;
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const int label = static_cast<int>(order.id_of_label.size());
    order.label[f.id] = label;
    order.id_of_label.push_back(f.id);
    order.parent_label.push_back(root_frame ? 0 : order.label.at(f.parent_id));

    // Branch 0 points to the parent; the remaining branches follow clockwise.
    std::vector<int> nbrs = g.tree_neighbours(f.id);
    std::vector<int> kids;
    if (root_frame) {
      kids = nbrs;
    } else {
      auto it = std::find(nbrs.begin(), nbrs.end(), f.parent_id);
      const std::size_t start = static_cast<std::size_t>(it - nbrs.begin());
      for (std::size_t k = 1; k < nbrs.size(); ++k) kids.push_back(nbrs[(start + k) % nbrs.size()]);
    }
    root_frame = false;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back({*it, f.id});
  }
  return order;
}

Edge make_edge(int a, int b) {
  if (a == b) throw ValidationError("edge endpoints coincide");
  return a < b ? Edge{a, b} : Edge{b, a};
}

OrderedGraph::OrderedGraph(const Graph& g) : graph_(g), order_(order_vertices(g)) {
  if (!g.is_simple()) {
    throw ValidationError("graph has loops or parallel edges; subdivide it before building the complex");
  }
  const std::size_t n = g.vertex_count();
  parent_ = order_.parent_label;
  children_.assign(n + 1, {});
  degree_.assign(n + 1, 0);
  depth_.assign(n + 1, 0);
  for (std::size_t v = 2; v <= n; ++v) {
    depth_[v] = depth_[static_cast<std::size_t>(parent_[v])] + 1;  // labels are preorder
    children_[static_cast<std::size_t>(parent_[v])].push_back(static_cast<int>(v));
  }
  // Preorder labels make children appear in branch order already.
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    auto [a, b] = g.edges()[i];
    Edge e = make_edge(order_.label.at(a), order_.label.at(b));
    edges_.push_back(e);
    ++degree_[static_cast<std::size_t>(e.tau)];
    ++degree_[static_cast<std::size_t>(e.iota)];
    if (!g.is_tree_edge(i)) deleted_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  std::sort(deleted_.begin(), deleted_.end());
}

bool OrderedGraph::is_tree_edge(const Edge& e) const {
  return e.iota >= 2 && e.iota <= vertex_count() && parent(e.iota) == e.tau;
}

bool OrderedGraph::has_edge(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

std::optional<Edge> OrderedGraph::parent_edge(int v) const {
  if (v <= 1) return std::nullopt;
  return Edge{parent(v), v};
}

int OrderedGraph::tree_degree(int v) const {
  return static_cast<int>(children(v).size()) + (v == 1 ? 0 : 1);
}

std::vector<int> OrderedGraph::tree_path(int a, int b) const {
  std::vector<int> up_a{a};
  std::vector<int> up_b{b};
  while (a != b) {
    if (depth_[static_cast<std::size_t>(a)] >= depth_[static_cast<std::size_t>(b)]) {
      a = parent(a);
      up_a.push_back(a);
    } else {
      b = parent(b);
      up_b.push_back(b);
    }
  }
  up_b.pop_back();
  up_a.insert(up_a.end(), up_b.rbegin(), up_b.rend());
  return up_a;
}

bool OrderedGraph::is_ancestor(int ancestor, int v) const {
  while (v != 0) {
    if (v == ancestor) return true;
    v = parent(v);
  }
  return false;
}

int OrderedGraph::label_of(int id) const {
  auto it = order_.label.find(id);
  if (it == order_.label.end()) throw ValidationError("unknown vertex id " + std::to_string(id));
  return it->second;
}

// ---------------------------------------------------------------------------
// Subdivision.

namespace {

struct Chain {
  std::vector<int> vertices;       // ids, first and last are essential (or equal for closed chains)
  std::vector<std::size_t> edges;  // edge indices along the chain
  bool closed() const { return vertices.front() == vertices.back(); }
  int length() const { return static_cast<int>(edges.size()); }
};

std::size_t other_incident(const Graph& g, int v, std::size_t edge) {
  for (std::size_t i : g.incident_edges(v)) {
    if (i != edge) return i;
  }
  return edge;
}

int other_end(const Graph& g, std::size_t edge, int v) {
  auto [a, b] = g.edges()[edge];
  return a == v ? b : a;
}

// Maximal paths whose interior vertices have degree two.
std::vector<Chain> chains(const Graph& g) {
  std::vector<Chain> out;
  std::vector<bool> used(g.edges().size(), false);
  auto essential = [&](int v) { return g.degree(v) != 2; };
  auto walk = [&](int start, std::size_t first_edge) {
    Chain c;
    c.vertices.push_back(start);
    int cur = start;
    std::size_t e = first_edge;
    while (true) {
      used[e] = true;
      c.edges.push_back(e);
      cur = other_end(g, e, cur);
      c.vertices.push_back(cur);
      if (essential(cur) || cur == start) break;
      e = other_incident(g, cur, e);
      if (used[e]) break;
    }
    out.push_back(std::move(c));
  };
  for (int v : g.vertices()) {
    if (!essential(v)) continue;
    for (std::size_t e : g.incident_edges(v)) {
      if (!used[e]) walk(v, e);
    }
  }
  // Components without essential vertices are plain cycles.
  for (int v : g.vertices()) {
    for (std::size_t e : g.incident_edges(v)) {
      if (!used[e]) walk(v, e);
    }
  }
  return out;
}

struct SimpleCycle {
  std::vector<int> nodes;          // starts at smallest node
  std::vector<std::size_t> edges;  // edge ids along the cycle
};

// Simple cycles of an undirected multigraph with at most `max_len` edges.
std::vector<SimpleCycle> simple_cycles(const std::vector<int>& nodes,
                                       const std::vector<std::pair<int, int>>& edges, std::size_t max_len) {
  std::map<int, std::vector<std::size_t>> inc;
  for (int v : nodes) inc[v];
  for (std::size_t i = 0; i < edges.size(); ++i) {
    inc[edges[i].first].push_back(i);
    if (edges[i].first != edges[i].second) inc[edges[i].second].push_back(i);
  }
  std::set<std::vector<std::size_t>> seen;
  std::vector<SimpleCycle> out;
  for (int s : nodes) {
    std::vector<int> path_nodes{s};
    std::vector<std::size_t> path_edges;
    std::function<void(int)> dfs = [&](int cur) {
      for (std::size_t e : inc[cur]) {
        if (std::find(path_edges.begin(), path_edges.end(), e) != path_edges.end()) continue;
        auto [a, b] = edges[e];
        const int w = a == cur ? b : a;
        if (w == s) {
          if (path_edges.size() + 1 > max_len) continue;
          std::vector<std::size_t> key = path_edges;
          key.push_back(e);
          std::vector<std::size_t> sorted_key = key;
          std::sort(sorted_key.begin(), sorted_key.end());
          if (!seen.insert(sorted_key).second) continue;
          out.push_back({path_nodes, key});
        } else if (w > s && std::find(path_nodes.begin(), path_nodes.end(), w) == path_nodes.end() &&
                   path_edges.size() + 1 < max_len) {
          path_nodes.push_back(w);
          path_edges.push_back(e);
          dfs(w);
          path_nodes.pop_back();
          path_edges.pop_back();
        }
      }
    };
    dfs(s);
  }
  // Canonical direction: the neighbour after the start is the smaller one.
  for (auto& c : out) {
    if (c.nodes.size() >= 3 && c.nodes[1] > c.nodes.back()) {
      std::reverse(c.nodes.begin() + 1, c.nodes.end());
      std::reverse(c.edges.begin(), c.edges.end());
    }
  }
  std::sort(out.begin(), out.end(), [](const SimpleCycle& x, const SimpleCycle& y) {
    if (x.edges.size() != y.edges.size()) return x.edges.size() < y.edges.size();
    return x.nodes < y.nodes;
  });
  return out;
}

}  // namespace

SubdivisionReport check_subdivision(const Graph& g, int n) {
  SubdivisionReport report;
  report.target_n = n;
  for (const Chain& c : chains(g)) {
    if (c.closed()) continue;
    if (c.length() < n - 1) {
      const int a = c.vertices.front();
      const int b = c.vertices.back();
      PathViolation pv{std::min(a, b), std::max(a, b), c.length(), c.vertices};
      if (a > b) std::reverse(pv.vertices.begin(), pv.vertices.end());
      report.path_violations.push_back(std::move(pv));
    }
  }
  std::sort(report.path_violations.begin(), report.path_violations.end(),
            [](const PathViolation& x, const PathViolation& y) { return x.vertices < y.vertices; });
  if (n >= 1) {
    for (const auto& cyc : simple_cycles(g.vertices(), g.edges(), static_cast<std::size_t>(n))) {
      report.cycle_violations.push_back({cyc.nodes, static_cast<int>(cyc.edges.size())});
    }
  }
  return report;
}

Graph relabel_canonical(const Graph& g) {
  const VertexOrder order = order_vertices(g);
  auto lab = [&](int id) { return order.label.at(id); };
  GraphSpec s;
  for (int v : g.vertices()) s.vertices.push_back(lab(v));
  for (auto [a, b] : g.edges()) s.edges.emplace_back(lab(a), lab(b));
  for (const auto& [v, rot] : g.rotations()) {
    std::vector<int> r;
    for (int u : rot) r.push_back(lab(u));
    s.rotation[lab(v)] = r;
  }
  for (auto [a, b] : g.tree_edges()) s.tree_edges.emplace_back(lab(a), lab(b));
  s.root = lab(g.root());
  return Graph(std::move(s));
}

Graph subdivide_for(const Graph& g, int target) {
  if (g.is_simple() && check_subdivision(g, target).sufficient()) return g;
  // Cycles of length at least 3 also make the result simple.
  const int n = g.is_simple() ? target : std::max(target, 2);

  const std::vector<Chain> cs = chains(g);
  std::vector<int> required(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    required[i] = std::max(cs[i].length(), cs[i].closed() ? n + 1 : n - 1);
  }

  // Cycle condition on the graph of chains.
  std::set<int> node_set;
  std::vector<std::pair<int, int>> topo_edges;
  for (const Chain& c : cs) {
    node_set.insert(c.vertices.front());
    node_set.insert(c.vertices.back());
    topo_edges.emplace_back(c.vertices.front(), c.vertices.back());
  }
  const std::vector<int> nodes(node_set.begin(), node_set.end());
  const auto cycles = simple_cycles(nodes, topo_edges, topo_edges.size());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& cyc : cycles) {
      int total = 0;
      for (std::size_t ci : cyc.edges) total += required[ci];
      while (total < n + 1) {
        std::size_t best = cyc.edges.front();
        for (std::size_t ci : cyc.edges) {
          if (required[ci] < required[best] || (required[ci] == required[best] && ci < best)) best = ci;
        }
        ++required[best];
        ++total;
        changed = true;
      }
    }
  }

  // New vertices per original edge, spread evenly along each chain.
  std::vector<int> extra(g.edges().size(), 0);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const int add = required[i] - cs[i].length();
    const int len = cs[i].length();
    for (int j = 0; j < len; ++j) {
      extra[cs[i].edges[static_cast<std::size_t>(j)]] += add / len + (j < add % len ? 1 : 0);
    }
  }

  GraphSpec spec = g.spec();
  int next_id = g.vertices().back() + 1;
  std::vector<std::pair<int, int>> new_edges;
  std::vector<std::pair<int, int>> new_tree;
  std::map<int, std::vector<int>> rotation = g.rotations();
  // Replaces the k-th rotation slot of v holding u by w.
  auto replace_slot = [&](int v, int u, int k, int w) {
    int seen = 0;
    for (int& x : rotation[v]) {
      if (x == u && seen++ == k) {
        x = w;
        return;
      }
    }
  };
  std::map<std::pair<int, int>, int> occurrence;  // slots already consumed per (vertex, neighbour)
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    auto [a, b] = g.edges()[i];
    const bool tree = g.is_tree_edge(i);
    const int t = extra[i];
    int slot_a = occurrence[{a, b}]++;
    int slot_b = a == b ? occurrence[{a, b}]++ : occurrence[{b, a}]++;
    if (t == 0) {
      new_edges.emplace_back(a, b);
      if (tree) new_tree.emplace_back(a, b);
      continue;
    }
    std::vector<int> chain{a};
    for (int j = 0; j < t; ++j) chain.push_back(next_id++);
    chain.push_back(b);
    // A deleted edge keeps one segment outside the tree: the one at the root
    // if it touches the root, so the root stays a leaf of the tree, else the last.
    const std::size_t off = a == g.root() && a != b ? 0 : chain.size() - 2;
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
      new_edges.emplace_back(chain[j], chain[j + 1]);
      if (tree || j != off) new_tree.emplace_back(chain[j], chain[j + 1]);
    }
    for (std::size_t j = 1; j + 1 < chain.size(); ++j) {
      spec.vertices.push_back(chain[j]);
      rotation[chain[j]] = {chain[j - 1], chain[j + 1]};
    }
    // Earlier slot replacements shift occurrence counts for parallel edges.
    if (a == b) {
      replace_slot(a, a, slot_a, chain[1]);
      replace_slot(a, a, slot_b - 1, chain[chain.size() - 2]);
      occurrence[{a, b}] -= 2;
    } else {
      replace_slot(a, b, slot_a, chain[1]);
      replace_slot(b, a, slot_b, chain[chain.size() - 2]);
      --occurrence[{a, b}];
      --occurrence[{b, a}];
    }
  }
  spec.edges = std::move(new_edges);
  spec.tree_edges = std::move(new_tree);
  spec.rotation = std::move(rotation);
  return relabel_canonical(Graph(std::move(spec)));
}

TreeConditionReport check_tree_conditions(const OrderedGraph& g) {
  TreeConditionReport r;
  for (const Edge& e : g.deleted_edges()) {
    if (g.degree(e.iota) != 2) {
      r.t1 = false;
      r.t1_witnesses.push_back(e);
    }
    const std::vector<int> path = g.tree_path(e.tau, e.iota);
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      if (path[i] < e.tau) {
        r.t2 = false;
        r.t2_witnesses.emplace_back(e, path[i]);
      }
    }
  }
  return r;
}

bool is_two_connected(const Graph& g) {
  const auto& vs = g.vertices();
  if (vs.size() < 2) return false;
  if (vs.size() == 2) {
    int between = 0;
    for (auto [a, b] : g.edges()) between += a != b ? 1 : 0;
    return between >= 2;
  }
  for (int v : vs) {
    if (!connected(vs, g.edges(), v)) return false;
  }
  return true;
}

}  // namespace braidforge
