#include "braidforge/physical.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace braidforge {

namespace {

std::string join(const std::vector<int>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  return os.str();
}

void check_spectators(const MorseComplex& cx, const std::vector<int>& spectators, std::size_t expected,
                      const std::vector<int>& occupied, const std::string& what) {
  if (spectators.size() != expected) {
    throw ValidationError(what + " needs " + std::to_string(expected) + " spectators, got " +
                          std::to_string(spectators.size()));
  }
  std::set<int> seen(occupied.begin(), occupied.end());
  for (int v : spectators) {
    if (v < 1 || v > cx.graph().vertex_count()) throw ValidationError(what + ": unknown vertex " + std::to_string(v));
    if (!seen.insert(v).second) throw ValidationError(what + ": spectator " + std::to_string(v) + " collides");
  }
}

Cell one_cell(const Edge& e, int v, const std::vector<int>& spectators) {
  std::vector<int> verts = spectators;
  if (v != 0) verts.push_back(v);
  return make_cell({e}, std::move(verts));
}

}  // namespace

std::string loop_name(const LoopSpec& s) {
  return std::visit(
      [](const auto& spec) -> std::string {
        using T = std::decay_t<decltype(spec)>;
        if (!spec.name.empty()) return spec.name;
        if constexpr (std::is_same_v<T, YLoopSpec>) {
          return "Y(" + std::to_string(spec.k) + "," + std::to_string(spec.m) + "," + std::to_string(spec.n) + ";" +
                 join(spec.spectators) + ")";
        } else if constexpr (std::is_same_v<T, OLoopSpec>) {
          return "O(" + join(spec.cycle) + ";" + join(spec.spectators) + ")";
        } else {
          return "W(" + to_string(spec.word) + ")";
        }
      },
      s);
}

bool is_y_loop(const LoopSpec& s) { return std::holds_alternative<YLoopSpec>(s); }

CellWord y_loop_word(const MorseComplex& cx, const YLoopSpec& s) {
  const OrderedGraph& g = cx.graph();
  const int nv = g.vertex_count();
  for (int v : {s.k, s.m, s.n}) {
    if (v < 1 || v > nv) throw ValidationError("Y-loop: unknown vertex " + std::to_string(v));
  }
  if (!(s.m < s.n)) throw ValidationError("Y-loop needs m < n");
  const int l = g.parent(s.m);
  if (l == 0 || g.parent(s.n) != l || g.parent(l) != s.k) {
    throw ValidationError("Y-loop: " + std::to_string(s.m) + " and " + std::to_string(s.n) +
                          " must be children of a junction whose parent is " + std::to_string(s.k));
  }
  if (g.tree_degree(l) < 3) throw ValidationError("Y-loop: vertex " + std::to_string(l) + " is not a junction");
  check_spectators(cx, s.spectators, static_cast<std::size_t>(cx.particles() - 2), {s.k, l, s.m, s.n}, "Y-loop");
  const Edge ln{l, s.n};
  const Edge lm{l, s.m};
  const Edge kl{s.k, l};
  const auto& v = s.spectators;
  return {{one_cell(ln, s.k, v), 1},  {one_cell(lm, s.k, v), -1}, {one_cell(kl, s.m, v), -1},
          {one_cell(ln, s.m, v), -1}, {one_cell(lm, s.n, v), 1},  {one_cell(kl, s.n, v), 1}};
}

CellWord o_loop_word(const MorseComplex& cx, const OLoopSpec& s) {
  const auto& c = s.cycle;
  if (c.size() < 3) throw ValidationError("O-loop needs a simple cycle with at least 3 vertices");
  std::set<int> distinct(c.begin(), c.end());
  if (distinct.size() != c.size()) throw ValidationError("O-loop cycle is not simple");
  check_spectators(cx, s.spectators, static_cast<std::size_t>(cx.particles() - 1), c, "O-loop");
  CellWord w;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int a = c[i];
    const int b = c[(i + 1) % c.size()];
    if (a < 1 || b < 1 || a > cx.graph().vertex_count() || b > cx.graph().vertex_count()) {
      throw ValidationError("O-loop: unknown vertex");
    }
    const Edge e = make_edge(a, b);
    if (!cx.graph().has_edge(e)) {
      throw ValidationError("O-loop: " + std::to_string(a) + " and " + std::to_string(b) + " are not adjacent");
    }
    // Travelling from the larger label to the smaller follows the edge.
    w.push_back({one_cell(e, 0, s.spectators), a > b ? 1 : -1});
  }
  return w;
}

CellWord loop_word(const MorseComplex& cx, const LoopSpec& s) {
  if (auto y = std::get_if<YLoopSpec>(&s)) return y_loop_word(cx, *y);
  if (auto o = std::get_if<OLoopSpec>(&s)) return o_loop_word(cx, *o);
  const CellWord& w = std::get<WordLoopSpec>(s).word;
  for (const auto& l : w) {
    if (l.symbol.dim() != 1 || !cx.contains(l.symbol)) {
      throw ValidationError("loop letter is not a 1-cell of the complex: " + to_string(l.symbol));
    }
  }
  if (!is_closed_path(w)) throw ValidationError("loop word is not a closed path");
  return w;
}

CellWord loop_image(const MorseComplex& cx, MorseFlow& flow, const CellWord& w, bool based) {
  if (!is_closed_path(w)) throw ValidationError("word is not a closed path");
  if (!based || w.empty()) return flow.image(w);
  const CellWord p = cx.path_to_base(path_start(w));
  CellWord conj = p;
  conj.insert(conj.end(), w.begin(), w.end());
  const CellWord pinv = inverse(p);
  conj.insert(conj.end(), pinv.begin(), pinv.end());
  return flow.image(conj);
}

const DictionaryEntry* PhysicalPresentation::entry(const Cell& c) const {
  for (const auto& e : dictionary) {
    if (e.cell == c) return &e;
  }
  return nullptr;
}

std::vector<std::string> PhysicalPresentation::loop_names() const {
  std::vector<std::string> out;
  for (const auto& l : loops) out.push_back(l.name);
  return out;
}

std::vector<YLoopSpec> suggest_loops(const MorseComplex& cx, MorseFlow& flow, const Cell& sigma) {
  std::vector<YLoopSpec> out;
  if (sigma.dim() != 1) return out;
  const OrderedGraph& g = cx.graph();
  const Edge e = sigma.edges[0];
  if (!g.is_tree_edge(e)) return out;
  const int l = e.tau;
  const int k = g.parent(l);
  if (k == 0) return out;
  for (int m : sigma.vertices) {
    if (g.parent(m) != l || m >= e.iota) continue;
    YLoopSpec spec;
    spec.k = k;
    spec.m = m;
    spec.n = e.iota;
    for (int v : sigma.vertices) {
      if (v != m) spec.spectators.push_back(v);
    }
    try {
      const CellWord img = loop_image(cx, flow, y_loop_word(cx, spec));
      if (img.size() == 1 && img[0].symbol == sigma) out.push_back(spec);
    } catch (const ValidationError&) {
      // spectators collide with the junction
    }
  }
  return out;
}

PhysicalPresentation solve_physical_presentation(const MorseComplex& cx, const MorsePresentation& morse,
                                                 const TietzeResult& minimal, const std::vector<LoopSpec>& loops) {
  PhysicalPresentation pp;
  MorseFlow flow(cx);
  for (const auto& spec : loops) {
    PhysicalLoop l;
    l.name = loop_name(spec);
    l.is_y = is_y_loop(spec);
    l.word = loop_word(cx, spec);
    l.image = loop_image(cx, flow, l.word);
    pp.loops.push_back(std::move(l));
  }
  {
    std::set<std::string> names;
    for (const auto& l : pp.loops) {
      if (!names.insert(l.name).second) throw ValidationError("duplicate loop name " + l.name);
    }
  }

  std::map<Cell, GenWord> dict;
  auto dict_word = [&](const CellWord& w) {
    return substitute<int>(w, [&](const Cell& c) -> const GenWord& { return dict.at(c); });
  };
  std::vector<bool> used(pp.loops.size(), false);
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < pp.loops.size(); ++i) {
      if (used[i]) continue;
      const CellWord& img = pp.loops[i].image;
      std::set<Cell> unknown;
      for (const auto& l : img) {
        if (!dict.count(l.symbol)) unknown.insert(l.symbol);
      }
      if (unknown.size() != 1) continue;
      const Cell c = *unknown.begin();
      if (occurrences(img, c) != 1) continue;
      const auto pos = static_cast<std::size_t>(
          std::find_if(img.begin(), img.end(), [&](const Letter<Cell>& l) { return l.symbol == c; }) - img.begin());
      // loop = A c^s B, hence c^s = A^-1 loop B^-1.
      const CellWord a(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(pos));
      const CellWord b(img.begin() + static_cast<std::ptrdiff_t>(pos) + 1, img.end());
      GenWord x = inverse(dict_word(a));
      push_reduced(x, Letter<int>{static_cast<int>(i), 1});
      append_reduced(x, inverse(dict_word(b)));
      dict[c] = img[pos].sign > 0 ? x : inverse(x);
      used[i] = true;
      progress = true;
    }
  }

  std::set<Cell> unsolved;
  for (int g : minimal.kept) {
    const Cell& c = morse.generators[static_cast<std::size_t>(g)];
    if (!dict.count(c)) unsolved.insert(c);
  }
  for (const auto& l : pp.loops) {
    for (const auto& letter : l.image) {
      if (!dict.count(letter.symbol)) unsolved.insert(letter.symbol);
    }
  }
  if (!unsolved.empty()) {
    std::vector<YLoopSpec> suggestions;
    std::string msg = "loop equations cannot be inverted; unsolved critical cells:";
    for (const Cell& c : unsolved) {
      msg += " " + to_string(c);
      for (auto& s : suggest_loops(cx, flow, c)) suggestions.push_back(std::move(s));
    }
    throw PhysicalSolveError(msg, std::vector<Cell>(unsolved.begin(), unsolved.end()), std::move(suggestions));
  }

  pp.group.generators = pp.loop_names();
  // Any Morse generator as a word in loops: solved cells directly, the others
  // through their expression in the minimal generators.
  auto in_loops = [&](int gen) -> GenWord {
    const Cell& c = morse.generators[static_cast<std::size_t>(gen)];
    auto it = dict.find(c);
    if (it != dict.end()) return it->second;
    return substitute<int>(minimal.expressions.at(gen), [&](int kept) -> const GenWord& {
      return dict.at(morse.generators[static_cast<std::size_t>(kept)]);
    });
  };

  for (std::size_t i = 0; i < minimal.group.relators.size(); ++i) {
    GenWord r = substitute<int>(minimal.group.relators[i], [&](int j) {
      return in_loops(minimal.kept[static_cast<std::size_t>(j)]);
    });
    pp.group.relators.push_back(std::move(r));
    pp.group.relator_sources.push_back("minimal " + minimal.group.relator_sources[i]);
  }
  for (const auto& [c, word] : dict) {
    const int gen = morse.index_of(c);
    if (std::find(minimal.kept.begin(), minimal.kept.end(), gen) != minimal.kept.end()) continue;
    auto el = std::find_if(minimal.log.begin(), minimal.log.end(), [&](const Elimination& e) { return e.generator == gen; });
    if (el == minimal.log.end()) continue;
    GenWord r = substitute<int>(el->relator, in_loops);
    if (r.empty()) continue;
    pp.group.relators.push_back(std::move(r));
    pp.group.relator_sources.push_back("aux " + to_string(c));
  }
  for (std::size_t i = 0; i < pp.loops.size(); ++i) {
    if (used[i]) continue;
    GenWord r{{static_cast<int>(i), -1}};
    append_reduced(r, dict_word(pp.loops[i].image));
    r = cyclic_reduce(r);
    if (r.empty()) continue;
    pp.group.relators.push_back(std::move(r));
    pp.group.relator_sources.push_back("loop " + pp.loops[i].name);
  }
  for (const auto& [c, word] : dict) pp.dictionary.push_back({c, word});
  return pp;
}

}  // namespace braidforge
