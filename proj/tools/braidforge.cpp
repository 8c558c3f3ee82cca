// braidforge: command line front end.
//
// Exit codes: 0 success, 1 usage, 2 validation, 3 computation failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "braidforge/complex.hpp"
#include "braidforge/io.hpp"
#include "braidforge/morse.hpp"
#include "braidforge/oracle.hpp"
#include "braidforge/physical.hpp"
#include "braidforge/presentation.hpp"
#include "braidforge/representations.hpp"
#include "braidforge/stability.hpp"

using namespace braidforge;

namespace {

struct Options {
  std::string input;
  std::string second;  // assignment file for rep-verify
  int n = 0;
  int k = 1;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  int restarts = 20;
  int max_iterations = 5000;
  std::string json;
  std::string loops;
  int from = 2;
  int to = 4;
  std::size_t max_steps = 1'000'000;
  bool subdivide = false;
  bool all = false;
};

class Runner {
 public:
  Runner(std::string command, const Options& o) : o_(o) { manifest_.command = std::move(command); }

  Graph graph() {
    Graph g = load_graph(hashed(o_.input));
    for (const auto& w : g.warnings()) std::cerr << "warning: " << w << "\n";
    if (o_.subdivide) g = subdivide_for(g, o_.n);
    return g;
  }

  std::string hashed(const std::string& path) {
    const std::string text = read_file(path);
    manifest_.inputs[path] = fnv1a_hex(text);
    return path;
  }

  Json load_json(const std::string& path) {
    const std::string text = read_file(path);
    manifest_.inputs[path] = fnv1a_hex(text);
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ValidationError("malformed " + path + ": " + e.what());
    }
  }

  void param(const std::string& key, Json value) { manifest_.parameters[key] = std::move(value); }

  std::ostream& out() { return text_; }

  void finish(Json result) {
    if (o_.json != "-") std::cout << text_.str();
    if (o_.json.empty()) return;
    Json doc;
    doc["manifest"] = manifest_.to_json();
    doc["result"] = std::move(result);
    const std::string body = doc.dump(2) + "\n";
    if (o_.json == "-") {
      std::cout << body;
    } else {
      std::ofstream f(o_.json, std::ios::binary);
      if (!f) throw ValidationError("cannot write " + o_.json);
      f << body;
    }
  }

 private:
  const Options& o_;
  RunManifest manifest_;
  std::ostringstream text_;
};

Json cells_json(const std::vector<Cell>& cells) {
  Json a = Json::array();
  for (const Cell& c : cells) a.push_back(to_string(c));
  return a;
}

Json cell_word_json(const CellWord& w) {
  Json a = Json::array();
  for (const auto& l : w) a.push_back({to_string(l.symbol), l.sign});
  return a;
}

Json homology_json(const HomologyClass& h) {
  Json j;
  j["free_rank"] = h.free_rank;
  j["torsion"] = h.torsion;
  j["text"] = h.to_string();
  return j;
}

Json tietze_json(const TietzeResult& t, const FPGroup& source) {
  Json j;
  j["presentation"] = presentation_to_json(t.group);
  j["kept"] = t.kept;
  Json log = Json::array();
  for (const auto& e : t.log) {
    Json step;
    step["generator"] = source.generators[static_cast<std::size_t>(e.generator)];
    step["relator"] = word_to_string(e.relator, source.generators);
    step["expression"] = word_to_string(e.expression, source.generators);
    log.push_back(step);
  }
  j["log"] = log;
  j["target"] = t.target;
  j["target_reached"] = t.target_reached;
  return j;
}

void print_presentation(std::ostream& os, const MorsePresentation& p) {
  os << p.group().to_string() << "\n";
  for (const auto& r : p.relators) os << "  " << to_string(r.source) << ": " << to_string(r.cells) << "\n";
}

void print_tietze(std::ostream& os, const TietzeResult& t, const FPGroup& source) {
  os << t.group.to_string() << "\n";
  for (const auto& e : t.log) {
    os << "  " << source.generators[static_cast<std::size_t>(e.generator)]
       << " = " << word_to_string(e.expression, source.generators) << "\n";
  }
  if (!t.target_reached) {
    os << "note: " << t.group.generators.size() << " generators remain, homology allows " << t.target << "\n";
  }
}

void record_n(Runner& r, const Options& o) {
  r.param("n", o.n);
  r.param("max_steps", o.max_steps);
  if (o.subdivide) r.param("subdivide", true);
}

// A presentation file is used as is; a graph file yields the minimal
// presentation of its n-particle braid group.
FPGroup load_group(Runner& r, const Options& o) {
  Json j = r.load_json(o.input);
  if (j.contains("generators")) return presentation_from_json(j);
  Graph g(graph_spec_from_json(j));
  if (o.subdivide) g = subdivide_for(g, o.n);
  record_n(r, o);
  MorseComplex cx(g, o.n);
  const MorsePresentation mp = morse_presentation(cx, o.max_steps);
  return tietze_minimize(mp.group(), mp.sizes(cx)).group;
}

int cmd_subdivide(const Options& o) {
  Runner r("subdivide", o);
  r.param("n", o.n);
  const Graph g = load_graph(r.hashed(o.input));
  const SubdivisionReport before = check_subdivision(g, o.n);
  const Graph s = subdivide_for(g, o.n);
  auto& os = r.out();
  os << "input: " << g.vertex_count() << " vertices, " << g.edges().size() << " edges, "
     << (before.sufficient() ? "sufficiently subdivided" : "needs subdivision") << " for n = " << o.n << "\n";
  for (const auto& v : before.path_violations) {
    os << "  path " << v.from << " .. " << v.to << " has " << v.length << " edges\n";
  }
  for (const auto& v : before.cycle_violations) {
    os << "  cycle through " << Json(v.vertices).dump() << " has " << v.length << " edges\n";
  }
  os << "output: " << s.vertex_count() << " vertices, " << s.edges().size() << " edges\n";
  if (o.json.empty()) os << graph_to_json(s).dump(2) << "\n";
  r.finish(graph_to_json(s));
  return 0;
}

int cmd_cells(const Options& o) {
  Runner r("cells", o);
  record_n(r, o);
  const MorseComplex cx(r.graph(), o.n);
  const MatchingReport m = cx.validate_matching();
  auto& os = r.out();
  Json j;
  Json counts = Json::array();
  for (int d = 0; d <= 2; ++d) {
    const auto i = static_cast<std::size_t>(d);
    os << "dim " << d << ": " << m.cells[i] << " cells, " << m.critical[i] << " critical, " << m.redundant[i]
       << " redundant, " << m.collapsible[i] << " collapsible\n";
    counts.push_back({{"dim", d},
                      {"cells", m.cells[i]},
                      {"critical", m.critical[i]},
                      {"redundant", m.redundant[i]},
                      {"collapsible", m.collapsible[i]}});
  }
  j["counts"] = counts;
  Json crit;
  for (int d = 0; d <= 2; ++d) {
    const auto cells = cx.critical_cells(d);
    os << "critical " << d << "-cells:\n";
    for (const Cell& c : cells) os << "  " << to_string(c) << "\n";
    crit[std::to_string(d)] = cells_json(cells);
  }
  j["critical"] = crit;
  if (o.all) {
    Json all = Json::array();
    os << "all cells:\n";
    for (int d = 0; d <= 2; ++d) {
      for (const Cell& c : cx.enumerate_cells(d)) {
        const MorseClass k = cx.classify(c);
        os << "  " << to_string(c) << "  " << to_string(k.kind);
        Json e{{"cell", to_string(c)}, {"kind", to_string(k.kind)}};
        if (k.partner) {
          os << "  " << to_string(*k.partner);
          e["partner"] = to_string(*k.partner);
        }
        os << "\n";
        all.push_back(e);
      }
    }
    j["cells"] = all;
  }
  j["matching_ok"] = m.ok;
  for (const auto& p : m.problems) os << "matching problem: " << p << "\n";
  r.finish(j);
  return m.ok ? 0 : 3;
}

int cmd_present(const Options& o) {
  Runner r("present", o);
  record_n(r, o);
  const MorseComplex cx(r.graph(), o.n);
  const MorsePresentation p = morse_presentation(cx, o.max_steps);
  print_presentation(r.out(), p);
  Json j = presentation_to_json(p.group());
  Json rels = Json::array();
  for (const auto& rel : p.relators) rels.push_back({{"source", to_string(rel.source)}, {"cells", cell_word_json(rel.cells)}});
  j["relator_cells"] = rels;
  r.finish(j);
  return 0;
}

int cmd_minimal(const Options& o) {
  Runner r("minimal", o);
  record_n(r, o);
  const MorseComplex cx(r.graph(), o.n);
  const MorsePresentation p = morse_presentation(cx, o.max_steps);
  const FPGroup g = p.group();
  const TietzeResult t = tietze_minimize(g, p.sizes(cx));
  print_tietze(r.out(), t, g);
  const TreeConditionReport tc = check_tree_conditions(cx.graph());
  r.out() << "tree conditions: T1 " << (tc.t1 ? "ok" : "violated") << ", T2 " << (tc.t2 ? "ok" : "violated")
          << ", T3 unverified\n";
  Json j = tietze_json(t, g);
  Json t1 = Json::array(), t2 = Json::array();
  for (const Edge& e : tc.t1_witnesses) t1.push_back({e.tau, e.iota});
  for (const auto& [e, v] : tc.t2_witnesses) t2.push_back({{"edge", {e.tau, e.iota}}, {"vertex", v}});
  j["tree_conditions"] = {{"t1", tc.t1}, {"t1_witnesses", t1}, {"t2", tc.t2}, {"t2_witnesses", t2}, {"t3", "unverified"}};
  r.finish(j);
  return 0;
}

int cmd_h1(const Options& o) {
  Runner r("h1", o);
  record_n(r, o);
  const MorseComplex cx(r.graph(), o.n);
  const HomologyClass h = homology_h1(morse_presentation(cx, o.max_steps).group());
  r.out() << h.to_string() << "\n";
  r.finish(homology_json(h));
  return 0;
}

int cmd_oracle(const Options& o) {
  Runner r("oracle", o);
  record_n(r, o);
  const MorseComplex cx(r.graph(), o.n);
  const FPGroup sk = skeleton_presentation(cx);
  const FPGroup mo = morse_presentation(cx, o.max_steps).group();
  // The matrices differ in size; their cokernels are what must agree.
  const bool same = homology_h1(sk) == homology_h1(mo);
  auto& os = r.out();
  os << "skeleton presentation: " << sk.generators.size() << " generators, " << sk.relators.size() << " relators\n";
  os << "morse presentation: " << mo.generators.size() << " generators, " << mo.relators.size() << " relators\n";
  os << "H1 skeleton: " << homology_h1(sk).to_string() << "\n";
  os << "H1 morse: " << homology_h1(mo).to_string() << "\n";
  os << (same ? "agree" : "DISAGREE") << "\n";
  Json j;
  j["skeleton"] = {{"generators", sk.generators.size()},
                   {"relators", sk.relators.size()},
                   {"h1", homology_json(homology_h1(sk))}};
  j["morse"] = {{"generators", mo.generators.size()},
                {"relators", mo.relators.size()},
                {"h1", homology_json(homology_h1(mo))}};
  j["agree"] = same;
  r.finish(j);
  return same ? 0 : 3;
}

Json physical_json(const PhysicalPresentation& pp, const MorsePresentation& mp) {
  Json j;
  Json loops = Json::array();
  for (const auto& l : pp.loops) {
    loops.push_back({{"name", l.name}, {"y_loop", l.is_y}, {"image", cell_word_json(l.image)}});
  }
  j["loops"] = loops;
  Json dict = Json::array();
  const auto names = pp.loop_names();
  for (const auto& e : pp.dictionary) dict.push_back({{"cell", to_string(e.cell)}, {"word", word_to_string(e.word, names)}});
  j["dictionary"] = dict;
  j["presentation"] = presentation_to_json(pp.group);
  j["critical_cells"] = cells_json(mp.generators);
  return j;
}

struct PhysicalRun {
  PhysicalPresentation pp;
  MorsePresentation mp;
};

PhysicalRun physical(Runner& r, const Options& o) {
  if (o.loops.empty()) throw ValidationError("--loops is required");
  record_n(r, o);
  const MorseComplex cx(r.graph(), o.n);
  const auto loops = loops_from_json(r.load_json(o.loops));
  MorsePresentation mp = morse_presentation(cx, o.max_steps);
  const TietzeResult t = tietze_minimize(mp.group(), mp.sizes(cx));
  return {solve_physical_presentation(cx, mp, t, loops), std::move(mp)};
}

void report_unsolved(const PhysicalSolveError& e) {
  std::cerr << "error: " << e.what() << "\n";
  for (const Cell& c : e.unsolved) std::cerr << "  unsolved: " << to_string(c) << "\n";
  for (const auto& s : e.suggestions) std::cerr << "  try loop: " << loop_name(s) << "\n";
}

int cmd_physical(const Options& o) {
  Runner r("physical", o);
  try {
    const PhysicalRun run = physical(r, o);
    auto& os = r.out();
    const auto names = run.pp.loop_names();
    for (const auto& l : run.pp.loops) os << l.name << " -> " << to_string(l.image) << "\n";
    os << "dictionary:\n";
    for (const auto& e : run.pp.dictionary) os << "  " << to_string(e.cell) << " = " << word_to_string(e.word, names) << "\n";
    os << "relators:\n";
    for (std::size_t i = 0; i < run.pp.group.relators.size(); ++i) {
      os << "  " << run.pp.group.relator_sources[i] << ": " << word_to_string(run.pp.group.relators[i], names) << "\n";
    }
    r.finish(physical_json(run.pp, run.mp));
  } catch (const PhysicalSolveError& e) {
    report_unsolved(e);
    return 3;
  }
  return 0;
}

int cmd_locally_abelian(const Options& o) {
  Runner r("locally-abelian", o);
  PhysicalRun run;
  try {
    run = physical(r, o);
  } catch (const PhysicalSolveError& e) {
    report_unsolved(e);
    return 3;
  }
  const LocallyAbelianResult la = locally_abelian_solve(run.pp);
  auto& os = r.out();
  Json j;
  Json cong = Json::array();
  os << "phase constraints (mod 2 pi):\n";
  for (const auto& c : la.congruences) {
    os << "  " << la.describe_constraint(c) << "   [" << c.source << "]\n";
    cong.push_back({{"constraint", la.describe_constraint(c)}, {"coefficients", c.coefficients}, {"source", c.source}});
  }
  if (la.congruences.empty()) os << "  none\n";
  os << "trivial relators:";
  Json triv = Json::array();
  for (const auto& c : la.trivial) {
    os << " " << c.source;
    triv.push_back(c.source);
  }
  os << "\n";
  Json eqs = Json::array();
  std::vector<std::string> o_names;
  for (int i : la.o_loops) o_names.push_back(la.names[static_cast<std::size_t>(i)]);
  for (const auto& e : la.equations) {
    const std::string w = word_to_string(e.o_word, la.names);
    os << "matrix equation [" << e.source << "]: phase" << Json(e.phase_coefficients).dump() << " * " << w << " = I\n";
    eqs.push_back({{"phase_coefficients", e.phase_coefficients}, {"word", w}, {"source", e.source}});
  }
  Json free = Json::array();
  for (int i : la.unconstrained) {
    os << "unconstrained: " << la.names[static_cast<std::size_t>(i)] << "\n";
    free.push_back(la.names[static_cast<std::size_t>(i)]);
  }
  j["congruences"] = cong;
  j["trivial"] = triv;
  j["equations"] = eqs;
  j["unconstrained"] = free;
  r.finish(j);
  return 0;
}

int cmd_stabilize(const Options& o) {
  Runner r("stabilize", o);
  r.param("from", o.from);
  r.param("to", o.to);
  Graph g = load_graph(r.hashed(o.input));
  if (o.subdivide) {
    r.param("subdivide", true);
    g = subdivide_for(g, o.to);
  }
  const StabilityReport rep = stability_report(g, o.from, o.to);
  auto& os = r.out();
  for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
  Json levels = Json::array();
  for (const auto& lv : rep.levels) {
    os << "n = " << lv.n << ": " << lv.generators << " critical 1-cells, " << lv.relators << " critical 2-cells, minimal "
       << lv.minimal_generators << " generators / " << lv.minimal_relators << " relators";
    if (lv.lifting_checked) os << ", lifting " << (lv.lifting_ok ? "ok" : "FAILED");
    os << "\n";
    for (const auto& c : lv.new_relators) os << "  new relator cell " << to_string(c) << "\n";
    for (const auto& f : lv.lifting_failures) os << "  " << f << "\n";
    Json corr = Json::array();
    for (const auto& [a, b] : lv.correspondence) corr.push_back({to_string(a), to_string(b)});
    levels.push_back({{"n", lv.n},
                      {"generators", lv.generators},
                      {"relators", lv.relators},
                      {"minimal_generators", lv.minimal_generators},
                      {"minimal_relators", lv.minimal_relators},
                      {"new_relators", cells_json(lv.new_relators)},
                      {"correspondence", corr},
                      {"lifting_checked", lv.lifting_checked},
                      {"lifting_ok", lv.lifting_ok},
                      {"lifting_failures", lv.lifting_failures}});
  }
  Json j;
  j["two_connected"] = rep.two_connected;
  j["warnings"] = rep.warnings;
  j["levels"] = levels;
  r.finish(j);
  return rep.lifting_ok() ? 0 : 3;
}

Json report_json(const ResidualReport& rep) {
  return {{"deviations", rep.deviations},
          {"max_deviation", rep.max_deviation},
          {"tolerance", rep.tolerance},
          {"pass", rep.pass}};
}

int cmd_rep_verify(const Options& o) {
  Runner r("rep-verify", o);
  r.param("tol", o.tol);
  const FPGroup p = load_group(r, o);
  const UnitaryAssignment a = assignment_from_json(r.load_json(o.second), p);
  a.validate(p.generators.size());
  const ResidualReport rep = verify_representation(p, a, o.tol);
  auto& os = r.out();
  for (std::size_t i = 0; i < rep.deviations.size(); ++i) {
    os << "relator " << i << ": " << rep.deviations[i] << "\n";
  }
  os << (rep.pass ? "PASS" : "FAIL") << " max deviation " << rep.max_deviation << " (tol " << o.tol << ")\n";
  r.finish(report_json(rep));
  return rep.pass ? 0 : 3;
}

int cmd_rep_solve(const Options& o) {
  Runner r("rep-solve", o);
  r.param("k", o.k);
  r.param("seed", o.seed);
  r.param("tol", o.tol);
  r.param("restarts", o.restarts);
  r.param("max_iterations", o.max_iterations);
  const FPGroup p = load_group(r, o);
  SolveOptions so;
  so.restarts = o.restarts;
  so.max_iterations = o.max_iterations;
  so.tol = o.tol;
  try {
    const SolveResult s = solve_representation(p, o.k, o.seed, so);
    r.out() << "found at restart " << s.restart << " (seed " << s.seed << ") after " << s.iterations
            << " iterations, max deviation " << s.report.max_deviation << "\n";
    Json j;
    j["assignment"] = assignment_to_json(s.assignment, p.generators);
    j["report"] = report_json(s.report);
    j["restart"] = s.restart;
    j["seed"] = s.seed;
    j["iterations"] = s.iterations;
    r.finish(j);
  } catch (const RepresentationNotFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph braid group presentations and their unitary representations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Options o;

  auto input = [&](CLI::App* s, const std::string& what) {
    s->add_option("input", o.input, what)->required()->check(CLI::ExistingFile);
  };
  auto particles = [&](CLI::App* s) {
    s->add_option("-n,--particles", o.n, "number of particles")->required()->check(CLI::Range(1, 64));
    s->add_option("--max-steps", o.max_steps, "rewrite step bound");
    s->add_flag("--subdivide", o.subdivide, "subdivide the graph as needed first");
  };
  auto json = [&](CLI::App* s) { s->add_option("--json", o.json, "write JSON output to PATH ('-' for stdout)"); };
  auto loops = [&](CLI::App* s) {
    s->add_option("--loops", o.loops, "loop file")->required()->check(CLI::ExistingFile);
  };

  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> cmds;
  auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    CLI::App* s = app.add_subcommand(name, help);
    json(s);
    cmds.emplace_back(s, fn);
    return s;
  };

  {
    auto* s = add("subdivide", "subdivide a graph for n particles", cmd_subdivide);
    input(s, "graph file");
    s->add_option("-n,--particles", o.n, "number of particles")->required()->check(CLI::Range(1, 64));
  }
  {
    auto* s = add("cells", "classify the cells of the discretized configuration space", cmd_cells);
    input(s, "graph file");
    particles(s);
    s->add_flag("--all", o.all, "list every cell with its class");
  }
  for (auto [name, help, fn] : {std::tuple{"present", "Morse presentation", cmd_present},
                                std::tuple{"minimal", "Tietze-minimized presentation", cmd_minimal},
                                std::tuple{"h1", "first homology", cmd_h1},
                                std::tuple{"oracle", "cross-check against the 1-skeleton presentation", cmd_oracle}}) {
    auto* s = add(name, help, fn);
    input(s, "graph file");
    particles(s);
  }
  for (auto [name, help, fn] : {std::tuple{"physical", "presentation in exchange loops", cmd_physical},
                                std::tuple{"locally-abelian", "phase constraints of the locally abelian ansatz",
                                           cmd_locally_abelian}}) {
    auto* s = add(name, help, fn);
    input(s, "graph file");
    particles(s);
    loops(s);
  }
  {
    auto* s = add("stabilize", "presentation sizes and relator lifting across particle numbers", cmd_stabilize);
    input(s, "graph file");
    s->add_option("--from", o.from, "lowest particle number")->check(CLI::Range(1, 64));
    s->add_option("--to", o.to, "highest particle number")->check(CLI::Range(1, 64));
    s->add_flag("--subdivide", o.subdivide, "subdivide the graph for the highest particle number first");
  }
  {
    auto* s = add("rep-verify", "check a unitary assignment against the relators", cmd_rep_verify);
    input(s, "presentation or graph file");
    s->add_option("assignment", o.second, "assignment file")->required()->check(CLI::ExistingFile);
    s->add_option("-n,--particles", o.n, "number of particles (graph input)");
    s->add_option("--max-steps", o.max_steps, "rewrite step bound");
    s->add_flag("--subdivide", o.subdivide, "subdivide the graph as needed first");
    s->add_option("--tol", o.tol, "tolerance on ||R - I||_F");
  }
  {
    auto* s = add("rep-solve", "search for a unitary representation", cmd_rep_solve);
    input(s, "presentation or graph file");
    s->add_option("-n,--particles", o.n, "number of particles (graph input)");
    s->add_option("--max-steps", o.max_steps, "rewrite step bound");
    s->add_flag("--subdivide", o.subdivide, "subdivide the graph as needed first");
    s->add_option("-k,--dimension", o.k, "matrix size")->check(CLI::Range(1, 64));
    s->add_option("--seed", o.seed, "seed of the first restart");
    s->add_option("--tol", o.tol, "tolerance on ||R - I||_F");
    s->add_option("--restarts", o.restarts, "number of random starts")->check(CLI::Range(1, 100000));
    s->add_option("--max-iterations", o.max_iterations, "iterations per start")->check(CLI::Range(1, 10000000));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    for (auto& [s, fn] : cmds) {
      if (s->parsed()) return fn(o);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ComputationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
