#include "braidforge/complex.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace braidforge {

bool Cell::has_vertex(int v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }

bool Cell::occupies(int v) const {
  if (has_vertex(v)) return true;
  return std::any_of(edges.begin(), edges.end(), [v](const Edge& e) { return e.contains(v); });
}

Cell make_cell(std::vector<Edge> edges, std::vector<int> vertices) {
  std::sort(edges.begin(), edges.end());
  std::sort(vertices.begin(), vertices.end());
  std::vector<int> points = vertices;
  for (const Edge& e : edges) {
    if (e.tau >= e.iota) throw ValidationError("edge must satisfy tau < iota");
    points.push_back(e.tau);
    points.push_back(e.iota);
  }
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
    throw ValidationError("cell constituents are not disjoint");
  }
  return Cell{std::move(edges), std::move(vertices)};
}

std::string to_string(const Cell& c) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const Edge& e : c.edges) {
    os << (first ? "" : ", ") << "e(" << e.tau << "," << e.iota << ")";
    first = false;
  }
  for (int v : c.vertices) {
    os << (first ? "" : ", ") << v;
    first = false;
  }
  os << "}";
  return os.str();
}

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

int parse_int(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("cannot parse '" + s + "' in " + context);
  }
}

}  // namespace

Cell parse_cell(const std::string& text) {
  const std::string s = strip(text);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw ValidationError("malformed cell: " + text);
  const std::string body = s.substr(1, s.size() - 2);
  std::vector<Edge> edges;
  std::vector<int> vertices;
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] == 'e') {
      const std::size_t close = body.find(')', i);
      if (close == std::string::npos || i + 1 >= body.size() || body[i + 1] != '(') {
        throw ValidationError("malformed edge in cell: " + text);
      }
      const std::string inner = body.substr(i + 2, close - i - 2);
      const std::size_t comma = inner.find(',');
      if (comma == std::string::npos) throw ValidationError("malformed edge in cell: " + text);
      edges.push_back(make_edge(parse_int(inner.substr(0, comma), text), parse_int(inner.substr(comma + 1), text)));
      i = close + 1;
    } else {
      std::size_t next = body.find(',', i);
      if (next == std::string::npos) next = body.size();
      vertices.push_back(parse_int(body.substr(i, next - i), text));
      i = next;
    }
    if (i < body.size()) {
      if (body[i] != ',') throw ValidationError("malformed cell: " + text);
      ++i;
    }
  }
  return make_cell(std::move(edges), std::move(vertices));
}

std::string to_string(const CellWord& w) {
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += to_string(l.symbol);
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

CellWord parse_cell_word(const std::string& text) {
  CellWord w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '{') throw ValidationError("malformed word: " + text);
    const std::size_t close = text.find('}', i);
    if (close == std::string::npos) throw ValidationError("unterminated cell in word: " + text);
    Cell c = parse_cell(text.substr(i, close - i + 1));
    i = close + 1;
    int sign = 1;
    if (text.compare(i, 3, "^-1") == 0) {
      sign = -1;
      i += 3;
    }
    w.push_back({std::move(c), sign});
  }
  return w;
}

Cell cell_start(const Cell& c) {
  if (c.dim() != 1) throw ValidationError("not a 1-cell: " + to_string(c));
  std::vector<int> v = c.vertices;
  v.push_back(c.edges[0].iota);
  return make_cell({}, std::move(v));
}

Cell cell_end(const Cell& c) {
  if (c.dim() != 1) throw ValidationError("not a 1-cell: " + to_string(c));
  std::vector<int> v = c.vertices;
  v.push_back(c.edges[0].tau);
  return make_cell({}, std::move(v));
}

Cell path_start(const CellWord& w) {
  if (w.empty()) throw ValidationError("empty path has no start");
  return w.front().sign > 0 ? cell_start(w.front().symbol) : cell_end(w.front().symbol);
}

bool is_closed_path(const CellWord& w) {
  if (w.empty()) return true;
  const Cell start = path_start(w);
  Cell at = start;
  for (const auto& l : w) {
    const Cell from = l.sign > 0 ? cell_start(l.symbol) : cell_end(l.symbol);
    if (from != at) return false;
    at = l.sign > 0 ? cell_end(l.symbol) : cell_start(l.symbol);
  }
  return at == start;
}

std::string to_string(MorseKind k) {
  switch (k) {
    case MorseKind::Critical:
      return "critical";
    case MorseKind::Redundant:
      return "redundant";
    case MorseKind::Collapsible:
      return "collapsible";
  }
  return "?";
}

// ---------------------------------------------------------------------------

MorseComplex::MorseComplex(const Graph& g, int n) : graph_(g), n_(n) {
  if (n < 1) throw ValidationError("particle count must be at least 1");
  if (n > graph_.vertex_count()) throw ValidationError("more particles than vertices");
  const SubdivisionReport report = check_subdivision(g, n);
  if (!report.sufficient()) {
    std::ostringstream os;
    os << "graph is not sufficiently subdivided for " << n << " particles ("
       << report.path_violations.size() << " short paths, " << report.cycle_violations.size()
       << " short cycles)";
    throw ValidationError(os.str());
  }
  // A second critical 0-cell exists exactly when the tree branches among the
  // first n-1 labels.
  for (int v = 1; v < n; ++v) {
    if (graph_.children(v).size() > 1) {
      throw ValidationError("critical 0-cell is not unique: tree branches at label " + std::to_string(v) +
                            " before the base configuration is complete");
    }
  }
}

std::vector<Cell> MorseComplex::enumerate_cells(int dim) const {
  if (dim < 0 || dim > 2) throw ValidationError("cell dimension must be 0, 1 or 2");
  std::vector<Cell> out;
  if (dim > n_) return out;
  const auto& edges = graph_.edges();
  const int nv = graph_.vertex_count();
  std::vector<Edge> chosen;
  std::vector<bool> used(static_cast<std::size_t>(nv) + 1, false);

  auto choose_vertices = [&]() {
    std::vector<int> free;
    for (int v = 1; v <= nv; ++v) {
      if (!used[static_cast<std::size_t>(v)]) free.push_back(v);
    }
    const int k = n_ - dim;
    if (k > static_cast<int>(free.size())) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      std::vector<int> verts;
      for (int i : idx) verts.push_back(free[static_cast<std::size_t>(i)]);
      out.push_back(Cell{chosen, std::move(verts)});
      int i = k - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == static_cast<int>(free.size()) - k + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  };

  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(chosen.size()) == dim) {
      choose_vertices();
      return;
    }
    for (std::size_t i = from; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      if (used[static_cast<std::size_t>(e.tau)] || used[static_cast<std::size_t>(e.iota)]) continue;
      used[static_cast<std::size_t>(e.tau)] = used[static_cast<std::size_t>(e.iota)] = true;
      chosen.push_back(e);
      self(self, i + 1);
      chosen.pop_back();
      used[static_cast<std::size_t>(e.tau)] = used[static_cast<std::size_t>(e.iota)] = false;
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Cell> MorseComplex::critical_cells(int dim) const {
  std::vector<Cell> out;
  for (Cell& c : enumerate_cells(dim)) {
    if (is_critical(c)) out.push_back(std::move(c));
  }
  return out;
}

bool MorseComplex::contains(const Cell& c) const {
  if (c.particles() != n_ || c.dim() > 2) return false;
  std::vector<int> points = c.vertices;
  for (const Edge& e : c.edges) {
    if (!graph_.has_edge(e)) return false;
    points.push_back(e.tau);
    points.push_back(e.iota);
  }
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) return false;
  return std::all_of(points.begin(), points.end(), [&](int v) { return v >= 1 && v <= graph_.vertex_count(); });
}

bool MorseComplex::is_blocked(const Cell& c, int v) const {
  if (v == 1) return true;
  return c.occupies(graph_.parent(v));
}

bool MorseComplex::is_order_respecting(const Cell& c, const Edge& e) const {
  if (!graph_.is_tree_edge(e)) return false;
  for (int v : c.vertices) {
    if (e.tau < v && v < e.iota && graph_.parent(v) == e.tau) return false;
  }
  return true;
}

bool MorseComplex::is_critical(const Cell& c) const {
  for (int v : c.vertices) {
    if (!is_blocked(c, v)) return false;
  }
  for (const Edge& e : c.edges) {
    if (is_order_respecting(c, e)) return false;
  }
  return true;
}

std::optional<int> MorseComplex::lowest_unblocked(const Cell& c) const {
  for (int v : c.vertices) {
    if (!is_blocked(c, v)) return v;
  }
  return std::nullopt;
}

Cell MorseComplex::replace_vertex(const Cell& c, int v) const {
  std::vector<int> verts;
  for (int x : c.vertices) {
    if (x != v) verts.push_back(x);
  }
  std::vector<Edge> edges = c.edges;
  edges.push_back(*graph_.parent_edge(v));
  std::sort(edges.begin(), edges.end());
  return Cell{std::move(edges), std::move(verts)};
}

bool MorseComplex::collapsible_one(const Cell& c) const {
  const Edge& e = c.edges[0];
  if (!graph_.is_tree_edge(e)) return false;
  const Cell c0 = cell_start(c);
  if (c0 == base()) return false;
  return lowest_unblocked(c0) == e.iota;
}

bool MorseComplex::collapsible_two(const Cell& c, Cell* preimage) const {
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const Edge& e = c.edges[i];
    if (!graph_.is_tree_edge(e)) continue;
    std::vector<int> verts = c.vertices;
    verts.push_back(e.iota);
    std::sort(verts.begin(), verts.end());
    Cell c1{{c.edges[1 - i]}, std::move(verts)};
    if (is_critical(c1) || collapsible_one(c1)) continue;
    if (lowest_unblocked(c1) == e.iota) {
      if (preimage) *preimage = c1;
      return true;
    }
  }
  return false;
}

MorseKind MorseComplex::kind(const Cell& c) const {
  if (is_critical(c)) return MorseKind::Critical;
  switch (c.dim()) {
    case 0:
      return MorseKind::Redundant;
    case 1:
      return collapsible_one(c) ? MorseKind::Collapsible : MorseKind::Redundant;
    case 2:
      return collapsible_two(c, nullptr) ? MorseKind::Collapsible : MorseKind::Redundant;
    default:
      throw ValidationError("cells above dimension 2 are not supported");
  }
}

MorseClass MorseComplex::classify(const Cell& c) const {
  MorseClass mc;
  mc.kind = kind(c);
  if (mc.kind == MorseKind::Redundant && c.dim() < 2) {
    mc.partner = matching_image(c);
  } else if (mc.kind == MorseKind::Collapsible) {
    if (c.dim() == 1) {
      mc.partner = cell_start(c);
    } else {
      Cell pre;
      collapsible_two(c, &pre);
      mc.partner = pre;
    }
  }
  return mc;
}

Cell MorseComplex::matching_image(const Cell& c) const {
  if (c.dim() >= 2) throw ComputationError("matching image of a 2-cell is not modelled: " + to_string(c));
  const MorseKind k = kind(c);
  if (k != MorseKind::Redundant) {
    throw ComputationError("matching image requested for " + to_string(k) + " cell " + to_string(c));
  }
  const auto v = lowest_unblocked(c);
  if (!v) throw ComputationError("matching error: redundant cell without unblocked vertex " + to_string(c));
  return replace_vertex(c, *v);
}

CellWord MorseComplex::boundary_word(const Cell& c) const {
  if (c.dim() != 2) throw ValidationError("boundary word needs a 2-cell: " + to_string(c));
  const Edge& e = c.edges[0];
  const Edge& f = c.edges[1];
  auto one = [&](const Edge& edge, int v) {
    std::vector<int> verts = c.vertices;
    verts.push_back(v);
    std::sort(verts.begin(), verts.end());
    return Cell{{edge}, std::move(verts)};
  };
  return {{one(e, f.iota), 1}, {one(f, e.tau), 1}, {one(e, f.tau), -1}, {one(f, e.iota), -1}};
}

Cell MorseComplex::base() const {
  std::vector<int> v(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  return Cell{{}, std::move(v)};
}

CellWord MorseComplex::path_to_base(const Cell& config) const {
  if (config.dim() != 0 || !contains(config)) throw ValidationError("not a configuration: " + to_string(config));
  // Each W0 step lowers the label sum, which bounds the walk.
  long long bound = 0;
  for (int v : config.vertices) bound += v;
  CellWord falling;
  Cell at = config;
  const Cell b = base();
  while (at != b) {
    if (static_cast<long long>(falling.size()) > bound) {
      throw ComputationError("falling path does not terminate; matching is broken");
    }
    Cell step = matching_image(at);
    at = cell_end(step);
    falling.push_back({std::move(step), 1});
  }
  return inverse(falling);
}

int MorseComplex::cell_size(const Cell& c) const {
  if (c.dim() != 1) throw ValidationError("cell size is defined for 1-cells");
  const int tau = c.edges[0].tau;
  if (tau == 1) return 0;
  int size = 0;
  for (int v : c.vertices) {
    if (v != tau && graph_.is_ancestor(tau, v)) ++size;
  }
  return size;
}

MatchingReport MorseComplex::validate_matching() const {
  MatchingReport r;
  auto problem = [&](std::string msg) {
    r.ok = false;
    if (r.problems.size() < 50) r.problems.push_back(std::move(msg));
  };
  std::vector<std::vector<Cell>> cells(3);
  std::vector<std::map<Cell, MorseKind>> kinds(3);
  for (int d = 0; d <= 2; ++d) {
    cells[static_cast<std::size_t>(d)] = enumerate_cells(d);
    r.cells[d] = cells[static_cast<std::size_t>(d)].size();
    for (const Cell& c : cells[static_cast<std::size_t>(d)]) {
      const MorseKind k = kind(c);
      kinds[static_cast<std::size_t>(d)][c] = k;
      if (k == MorseKind::Critical) ++r.critical[d];
      if (k == MorseKind::Redundant) ++r.redundant[d];
      if (k == MorseKind::Collapsible) ++r.collapsible[d];
    }
  }
  if (r.critical[0] != 1 || kinds[0][base()] != MorseKind::Critical) problem("critical 0-cell is not unique");

  // W_i must be injective from redundant i-cells onto matched (i+1)-cells.
  std::map<Cell, Cell> up;  // redundant cell -> its image
  for (int d = 0; d <= 1; ++d) {
    std::set<Cell> images;
    for (const Cell& c : cells[static_cast<std::size_t>(d)]) {
      if (kinds[static_cast<std::size_t>(d)][c] != MorseKind::Redundant) continue;
      const auto v = lowest_unblocked(c);
      if (!v) {
        problem("redundant cell without unblocked vertex: " + to_string(c));
        continue;
      }
      const Cell w = replace_vertex(c, *v);
      auto it = kinds[static_cast<std::size_t>(d + 1)].find(w);
      if (it == kinds[static_cast<std::size_t>(d + 1)].end() || it->second != MorseKind::Collapsible) {
        problem("image of " + to_string(c) + " is not collapsible");
      }
      if (!images.insert(w).second) problem("W is not injective at " + to_string(w));
      up[c] = w;
    }
    if (images.size() != r.collapsible[d + 1]) {
      problem("collapsible " + std::to_string(d + 1) + "-cells are not exactly the images of W");
    }
  }

  // Acyclicity: redundant cell -> image -> other redundant faces of the image.
  auto faces = [&](const Cell& c) {
    std::vector<Cell> out;
    if (c.dim() == 1) {
      out = {cell_start(c), cell_end(c)};
    } else {
      for (const auto& l : boundary_word(c)) out.push_back(l.symbol);
    }
    return out;
  };
  std::map<Cell, int> state;  // 1 on stack, 2 finished
  bool cyclic = false;
  for (const auto& [start, img] : up) {
    if (state[start] != 0) continue;
    std::vector<std::pair<Cell, std::size_t>> stack{{start, 0}};
    state[start] = 1;
    while (!stack.empty() && !cyclic) {
      auto& [c, next] = stack.back();
      const std::vector<Cell> fs = faces(up.at(c));
      bool pushed = false;
      while (next < fs.size()) {
        const Cell f = fs[next++];
        if (f == c || !up.count(f)) continue;
        if (state[f] == 1) {
          cyclic = true;
          break;
        }
        if (state[f] == 0) {
          state[f] = 1;
          stack.push_back({f, 0});
          pushed = true;
          break;
        }
      }
      if (!pushed && !cyclic) {
        state[stack.back().first] = 2;
        stack.pop_back();
      }
    }
    if (cyclic) {
      problem("matching has a closed gradient path through " + to_string(start));
      break;
    }
  }
  return r;
}

}  // namespace braidforge
