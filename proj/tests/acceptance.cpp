// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "braidforge/morse.hpp"
#include "braidforge/oracle.hpp"
#include "braidforge/physical.hpp"
#include "braidforge/representations.hpp"
#include "braidforge/stability.hpp"
#include "support.hpp"

using namespace bftest;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << " [failed: " << what << "]";
    }
  }
};

struct Minimal {
  MorsePresentation mp;
  TietzeResult t;
};

Minimal minimal(const MorseComplex& cx) {
  MorsePresentation mp = morse_presentation(cx);
  TietzeResult t = tietze_minimize(mp.group(), mp.sizes(cx));
  return {std::move(mp), std::move(t)};
}

std::vector<Cell> cell_list(std::initializer_list<const char*> xs) {
  std::vector<Cell> out;
  for (const char* x : xs) out.push_back(cell(x));
  return out;
}

std::vector<LoopSpec> loops(const std::string& file) { return loops_from_json(Json::parse(read_file(fixture(file)))); }

const MorseRelator* relator_of(const MorsePresentation& p, const Cell& source) {
  for (const auto& r : p.relators) {
    if (r.source == source) return &r;
  }
  return nullptr;
}

// Words over named symbols, with Ad and commutators spelled out.
GenWord ad(const GenWord& h, const GenWord& g) { return concat(concat(h, g), inverse(h)); }
GenWord comm(const GenWord& a, const GenWord& b) { return concat(concat(a, b), concat(inverse(a), inverse(b))); }

const std::vector<std::string> kFixtures{"theta.json", "y.json", "path.json", "lasso.json", "theta_raw.json"};

// ---------------------------------------------------------------------------

void criterion1(Check& c) {
  const MorseComplex cx(theta(), 2);
  const auto crit = cx.critical_cells(1);
  c.expect(crit == cell_list({"{e(1,8), 2}", "{e(1,11), 2}", "{e(5,9), 6}"}), "critical 1-cells");
  c.expect(cx.critical_cells(2).empty(), "no critical 2-cells");
  const FPGroup g = morse_presentation(cx).group();
  c.expect(g.generators.size() == 3 && g.relators.empty(), "free presentation on 3 generators");
  c.notes << " " << g.to_string();
}

void criterion2(Check& c) {
  const MorseComplex cx(theta(), 3);
  const auto m = minimal(cx);
  c.expect(m.mp.generators == cell_list({"{e(1,8), 2, 3}", "{e(1,11), 2, 3}", "{e(5,9), 1, 6}", "{e(5,9), 6, 7}",
                                         "{e(5,9), 6, 10}"}),
           "critical 1-cells");
  c.expect(cx.critical_cells(2) == cell_list({"{e(1,8), e(5,9), 6}", "{e(1,11), e(5,9), 6}"}), "critical 2-cells");
  const std::vector<std::string> names{"a1", "a2", "g", "s1", "s2"};
  const auto* t1 = relator_of(m.mp, cell("{e(1,8), e(5,9), 6}"));
  const auto* t2 = relator_of(m.mp, cell("{e(1,11), e(5,9), 6}"));
  c.expect(t1 && t1->word == gen_word("a1 g^-1 a1^-1 g^-1 s1", names), "b(tau1)");
  c.expect(t2 && t2->word == gen_word("a2 g^-1 a2^-1 s2", names), "b(tau2)");
  c.expect(m.t.group.generators.size() == 3 && m.t.group.relators.empty(), "minimal presentation free of rank 3");
  c.notes << " minimal " << m.t.group.generators.size() << " generators, " << m.t.group.relators.size() << " relators";
}

void criterion3(Check& c) {
  const MorseComplex cx(theta(), 4);
  const auto m = minimal(cx);
  c.expect(m.mp.generators == cell_list({"{e(1,8), 2, 3, 4}", "{e(1,11), 2, 3, 4}", "{e(5,9), 1, 2, 6}",
                                         "{e(5,9), 1, 6, 7}", "{e(5,9), 1, 6, 10}", "{e(5,9), 6, 7, 8}",
                                         "{e(5,9), 6, 7, 10}", "{e(5,9), 6, 10, 11}"}),
           "8 critical 1-cells");
  c.expect(cx.critical_cells(2) == cell_list({"{e(1,8), e(5,9), 2, 6}", "{e(1,8), e(5,9), 6, 7}",
                                              "{e(1,8), e(5,9), 6, 10}", "{e(1,11), e(5,9), 2, 6}",
                                              "{e(1,11), e(5,9), 6, 7}", "{e(1,11), e(5,9), 6, 10}"}),
           "6 critical 2-cells");
  const std::vector<std::string> n{"a1", "a2", "g", "s1", "s2", "s3", "s4", "s5"};
  const std::pair<const char*, const char*> rels[] = {
      {"{e(1,11), e(5,9), 6, 7}", "a2 s1^-1 a2^-1 s4"},
      {"{e(1,8), e(5,9), 6, 7}", "a1 s1^-1 a1^-1 g^-1 s3"},
      {"{e(1,11), e(5,9), 6, 10}", "a2 s2^-1 a2^-1 s5"},
      {"{e(1,8), e(5,9), 6, 10}", "g a1 s2^-1 a1^-1 g^-1 s2^-1 s4"},
  };
  int k = 3;
  for (const auto& [src, word] : rels) {
    const auto* r = relator_of(m.mp, cell(src));
    c.expect(r && r->word == gen_word(word, n), "b(tau" + std::to_string(k) + ")");
    ++k;
  }
  const FPGroup& g = m.t.group;
  c.expect(g.generators.size() == 3 && g.relators.size() == 1, "3 generators and 1 relator");
  if (g.relators.size() == 1) {
    const std::vector<std::string> names{"a1", "a2", "g"};
    // Minimal generators are the first three cells, in the same order.
    const GenWord gam = gen_word("g", names), h = gen_word("a1 a2", names);
    const GenWord expected = comm(gam, ad(h, gam));
    c.notes << " relator " << word_to_string(g.relators[0], names);
    c.expect(conjugate_words(g.relators[0], expected, true), "relator conjugate to [g, Ad_{a1 a2}(g)]");
  }
}

void criterion4(Check& c) {
  auto h1 = [](const Graph& g, int n) { return homology_h1(morse_presentation(MorseComplex(g, n)).group()); };
  for (int n = 2; n <= 4; ++n) {
    c.expect(h1(theta(), n).to_string() == "Z^3", "theta n=" + std::to_string(n) + " Z^3");
  }
  const Graph path = load_graph(fixture("path.json"));
  for (int n = 2; n <= 4; ++n) c.expect(h1(path, n).to_string() == "0", "path n=" + std::to_string(n));
  const Graph y = load_graph(fixture("y.json"));
  const MorseComplex cy(y, 2);
  c.expect(h1(y, 2).to_string() == "Z", "Y n=2 Z");
  c.expect(homology_h1(skeleton_presentation(cy)).to_string() == "Z", "Y n=2 oracle Z");
  int checked = 0;
  for (const auto& f : kFixtures) {
    for (int n = 1; n <= 4; ++n) {
      const Graph g = subdivide_for(load_graph(fixture(f)), n);
      const HomologyClass h = h1(g, n);
      c.expect(h.torsion.empty(), f + " n=" + std::to_string(n) + " torsion-free");
      ++checked;
    }
  }
  c.notes << " torsion-free on " << checked << " (fixture, n) pairs";
}

void criterion5(Check& c) {
  int checked = 0;
  for (const auto& f : kFixtures) {
    for (int n = 1; n <= 4; ++n) {
      const Graph g = subdivide_for(load_graph(fixture(f)), n);
      const MorseComplex cx(g, n);
      const FPGroup a = morse_presentation(cx).group(), b = skeleton_presentation(cx);
      const SmithForm sa = smith_normal_form(abelianization_matrix(a));
      const SmithForm sb = smith_normal_form(abelianization_matrix(b));
      // Same cokernel: equal invariant factors above one and equal free rank.
      std::vector<std::int64_t> ta, tb;
      for (auto d : sa.factors) if (d > 1) ta.push_back(d);
      for (auto d : sb.factors) if (d > 1) tb.push_back(d);
      const bool same = ta == tb && a.generators.size() - sa.rank == b.generators.size() - sb.rank;
      c.expect(same, f + " n=" + std::to_string(n));
      ++checked;
    }
  }
  c.notes << " " << checked << " (fixture, n) pairs";
}

void criterion6(Check& c) {
  const MorseComplex cx(theta(), 2);
  const auto m = minimal(cx);
  auto ls = loops("theta_loops_n2.json");
  const PhysicalPresentation pp = solve_physical_presentation(cx, m.mp, m.t, ls);
  const auto names = pp.loop_names();
  auto entry = [&](const char* cl) {
    const DictionaryEntry* e = pp.entry(cell(cl));
    return e ? word_to_string(e->word, names) : std::string("<none>");
  };
  c.expect(entry("{e(5,9), 6}") == "gamma^-1", "tilde-gamma = gamma^-1");
  c.expect(entry("{e(1,8), 2}") == "gamma alpha_U", "tilde-alpha1 = gamma alpha_U");
  c.expect(entry("{e(1,11), 2}") == "alpha_D^-1 gamma alpha_U", "tilde-alpha2 = alpha_D^-1 gamma alpha_U");

  MorseFlow flow(cx);
  const CellWord gr = cells("{e(1,11),2}{e(1,8),2}^-1{e(1,2),8}{e(1,11),8}^-1{e(1,8),11}{e(1,2),11}^-1");
  const CellWord img = loop_image(cx, flow, gr);
  const std::vector<std::string> morse_names{"a1", "a2", "g"};
  const GenWord img_w = m.mp.to_gen_word(img);
  c.expect(img_w == gen_word("a2 a1^-1 a2^-1 g a1", morse_names), "gamma_R image");

  const GenWord sub = free_reduce(substitute<int>(img_w, [&](int s) -> const GenWord& {
    return pp.entry(m.mp.generators[static_cast<std::size_t>(s)])->word;
  }));
  c.notes << " gamma_R = " << word_to_string(sub, names);
  // The target word traverses both O-loops against the orientation of the
  // loop definitions used for the dictionary.
  GenWord reversed;
  for (const auto& l : sub) {
    const bool o_loop = names[static_cast<std::size_t>(l.symbol)] != "gamma";
    reversed.push_back({l.symbol, o_loop ? -l.sign : l.sign});
  }
  c.expect(free_reduce(reversed) == gen_word("alpha_D alpha_U gamma^-1 alpha_D^-1 alpha_U^-1", names),
           "substitution gives alpha_D alpha_U gamma^-1 alpha_D^-1 alpha_U^-1 with O-loops reversed");
}

void criterion7(Check& c) {
  const MorseComplex cx(theta(), 4);
  const auto m = minimal(cx);
  const PhysicalPresentation pp = solve_physical_presentation(cx, m.mp, m.t, loops("theta_loops_n4.json"));
  const auto names = pp.loop_names();
  auto entry = [&](const char* cl) {
    const DictionaryEntry* e = pp.entry(cell(cl));
    return e ? word_to_string(e->word, names) : std::string("<none>");
  };
  c.expect(entry("{e(5,9), 1, 2, 6}") == "gamma^-1", "tilde-gamma");
  c.expect(entry("{e(5,9), 1, 6, 10}") == "gamma'^-1", "sigma2");
  c.expect(entry("{e(5,9), 6, 10, 11}") == "gamma''^-1", "sigma5");
  c.expect(entry("{e(1,8), 2, 3, 4}") == "gamma gamma' gamma'' alpha_U^-1", "tilde-alpha1");
  c.expect(entry("{e(1,11), 2, 3, 4}") == "alpha_D^-1 gamma gamma' gamma'' alpha_U^-1", "tilde-alpha2");

  auto w = [&](const std::string& s) { return gen_word(s, names); };
  const GenWord x = w("gamma gamma' gamma'' alpha_U^-1 alpha_D^-1 gamma gamma' gamma'' alpha_U^-1");
  const GenWord y = w("alpha_D^-1 gamma gamma' gamma'' alpha_U^-1");
  const GenWord r1 = free_reduce(comm(w("gamma^-1"), ad(x, w("gamma^-1"))));
  const GenWord r2 = free_reduce(concat(ad(y, w("gamma")), w("gamma'^-1")));
  const GenWord r3 = free_reduce(concat(ad(y, w("gamma'")), w("gamma''^-1")));
  auto found = [&](const GenWord& target) {
    for (const auto& r : pp.group.relators) {
      if (free_reduce(r) == target) return true;
    }
    return false;
  };
  c.expect(found(r1), "R1");
  c.expect(found(r2), "R2");
  c.expect(found(r3), "R3");
  for (std::size_t i = 0; i < pp.group.relators.size(); ++i) {
    if (pp.group.relator_sources[i].rfind("minimal", 0) == 0) {
      c.notes << " R1 computed: " << word_to_string(pp.group.relators[i], names)
              << "; conjugate to the stated R1: " << (conjugate_words(pp.group.relators[i], r1, true) ? "yes" : "no");
    }
  }
}

void criterion8(Check& c) {
  const StabilityReport r = stability_report(theta(), 2, 4);
  for (const auto& lv : r.levels) {
    c.expect(lv.minimal_generators == 3, "n=" + std::to_string(lv.n) + " minimal generators 3");
    if (lv.lifting_checked) c.expect(lv.lifting_ok, "lifting into n=" + std::to_string(lv.n));
  }
  // Explicitly: every critical 2-cell at 3 lifts letterwise into 4.
  const MorseComplex three(theta(), 3), four(theta(), 4);
  const MorsePresentation p3 = morse_presentation(three), p4 = morse_presentation(four);
  for (const auto& rel : p3.relators) {
    const Cell up = plus_map(four, rel.source);
    const auto* target = relator_of(p4, up);
    c.expect(target && target->cells == plus_map(four, rel.cells), "b(" + to_string(up) + ") = b(tau)+");
  }
  c.notes << " " << p3.relators.size() << " relators lifted 3 -> 4";
}

void criterion9(Check& c) {
  const MorseComplex cx(theta(), 4);
  const FPGroup g = minimal(cx).t.group;
  std::mt19937_64 rng(2024);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    UnitaryAssignment a;
    a.k = 2 + t % 3;
    for (int i = 0; i < 3; ++i) a.matrices.push_back(haar_unitary(a.k, rng));
    const CMatrix v = haar_unitary(a.k, rng);
    UnitaryAssignment b = a;
    for (auto& mtx : b.matrices) mtx = v * mtx * v.adjoint();
    const auto ra = verify_representation(g, a, 1.0), rb = verify_representation(g, b, 1.0);
    for (std::size_t i = 0; i < ra.deviations.size(); ++i) {
      worst = std::max(worst, std::abs(ra.deviations[i] - rb.deviations[i]));
    }
  }
  c.expect(worst < 1e-12, "(a) gauge invariance");
  c.notes << " (a) max change " << worst;

  try {
    const SolveResult s = solve_representation(g, 2, 0);
    const ResidualReport again = verify_representation(g, s.assignment, 1e-8);
    c.expect(s.report.max_deviation < 1e-8 && again.pass, "(b) solver");
    c.notes << "; (b) residual " << s.report.max_deviation << " at restart " << s.restart;
  } catch (const RepresentationNotFound& e) {
    c.expect(false, std::string("(b) ") + e.what());
  }

  auto diag = [](double a, double b) {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = std::polar(1.0, a);
    d(1, 1) = std::polar(1.0, b);
    return d;
  };
  CMatrix swap = CMatrix::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  UnitaryAssignment hand;
  hand.k = 2;
  hand.matrices = {swap, CMatrix::Identity(2, 2), diag(0.3, 1.9)};
  const ResidualReport hr = verify_representation(g, hand, 1e-12);
  c.expect(hr.pass, "(c) hand-built assignment");
  c.notes << "; (c) residual " << hr.max_deviation;

  UnitaryAssignment m0 = hand;
  m0.matrices = {haar_unitary(2, rng), haar_unitary(2, rng), std::polar(1.0, 0.8) * CMatrix::Identity(2, 2)};
  UnitaryAssignment mid = hand;
  mid.matrices = {diag(0.2, 1.1), diag(-0.7, 0.4), diag(0.3, 1.9)};
  try {
    const auto k0 = classify_theta_component(g, m0);
    const auto k1 = classify_theta_component(g, mid);
    const auto k2 = classify_theta_component(g, hand);
    c.expect(k0.kind == "M0", "(d) M0");
    c.expect(k1.label == "M_id", "(d) M_id");
    c.expect(k2.label == "M_(1 2)", "(d) transposition");
    c.notes << "; (d) " << k0.label << ", " << k1.label << ", " << k2.label;
  } catch (const Error& e) {
    c.expect(false, std::string("(d) ") + e.what());
  }
}

void criterion10(Check& c) {
  const MorseComplex cx(theta(), 4);
  const auto m = minimal(cx);
  const PhysicalPresentation pp = solve_physical_presentation(cx, m.mp, m.t, loops("theta_loops_n4.json"));
  const LocallyAbelianResult la = locally_abelian_solve(pp);
  std::set<std::vector<int>> got;
  for (const auto& k : la.congruences) {
    got.insert(k.coefficients);
    c.notes << " " << la.describe_constraint(k) << ";";
  }
  c.expect(got == std::set<std::vector<int>>{{1, -1, 0}, {0, 1, -1}}, "phi = phi', phi' = phi''");
  c.expect(la.equations.empty(), "no matrix equations");
  std::set<std::string> free;
  for (int i : la.unconstrained) free.insert(la.names[static_cast<std::size_t>(i)]);
  c.expect(free == std::set<std::string>{"alpha_U", "alpha_D"}, "U_U and U_D unconstrained");
  bool r1_trivial = false;
  for (const auto& t : la.trivial) r1_trivial = r1_trivial || t.source.rfind("minimal", 0) == 0;
  c.expect(r1_trivial, "R1 trivial");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
      {"theta n=2 critical cells and free rank 3", criterion1},
      {"theta n=3 generators, relators, free rank 3", criterion2},
      {"theta n=4 cells, relators, minimal relator", criterion3},
      {"first homology", criterion4},
      {"oracle equivalence of Smith forms", criterion5},
      {"physical presentation n=2", criterion6},
      {"physical presentation n=4", criterion7},
      {"stabilization", criterion8},
      {"representations", criterion9},
      {"locally abelian constraints", criterion10},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Check c;
    try {
      run(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.notes << " [exception: " << e.what() << "]";
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << index << ": " << name << " |" << c.notes.str()
              << std::endl;
    if (!c.ok) ++failed;
    ++index;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
