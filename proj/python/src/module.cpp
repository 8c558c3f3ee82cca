#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "braidforge/complex.hpp"
#include "braidforge/io.hpp"
#include "braidforge/morse.hpp"
#include "braidforge/oracle.hpp"
#include "braidforge/physical.hpp"
#include "braidforge/presentation.hpp"
#include "braidforge/representations.hpp"
#include "braidforge/stability.hpp"

namespace py = pybind11;
using namespace braidforge;

namespace {

py::list relator_list(const FPGroup& g) {
  py::list out;
  for (const auto& r : g.relators) {
    py::list w;
    for (const auto& l : r) w.append(py::make_tuple(l.symbol, l.sign));
    out.append(w);
  }
  return out;
}

FPGroup group_from(const std::vector<std::string>& generators, const std::vector<std::vector<std::pair<int, int>>>& rels) {
  FPGroup g;
  g.generators = generators;
  for (const auto& r : rels) {
    GenWord w;
    for (auto [s, e] : r) w.push_back({s, e});
    g.relators.push_back(std::move(w));
  }
  g.validate();
  return g;
}

UnitaryAssignment assignment(const std::vector<CMatrix>& ms) {
  UnitaryAssignment a;
  if (ms.empty()) throw ValidationError("no matrices given");
  a.k = static_cast<int>(ms.front().rows());
  a.matrices = ms;
  return a;
}

py::dict physical_dict(const PhysicalPresentation& pp) {
  const auto names = pp.loop_names();
  py::dict dict;
  for (const auto& e : pp.dictionary) dict[py::str(to_string(e.cell))] = word_to_string(e.word, names);
  py::dict d;
  d["loops"] = names;
  d["dictionary"] = dict;
  d["group"] = pp.group;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Graph braid group presentations and unitary representations";
  m.attr("__version__") = kVersion;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ComputationError>(m, "ComputationError", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def_property_readonly("vertices", &Graph::vertices)
      .def_property_readonly("edges", &Graph::edges)
      .def_property_readonly("root", &Graph::root)
      .def_property_readonly("warnings", &Graph::warnings)
      .def("to_json", [](const Graph& g) { return graph_to_json(g).dump(); });

  m.def("load_graph", &load_graph, py::arg("path"));
  m.def("parse_graph", &parse_graph, py::arg("text"));
  m.def("subdivide", &subdivide_for, py::arg("graph"), py::arg("n"));
  m.def("is_sufficiently_subdivided", [](const Graph& g, int n) { return check_subdivision(g, n).sufficient(); });

  py::class_<FPGroup>(m, "FPGroup")
      .def(py::init(&group_from), py::arg("generators"), py::arg("relators"))
      .def_readonly("generators", &FPGroup::generators)
      .def_property_readonly("relators", &relator_list)
      .def_readonly("relator_sources", &FPGroup::relator_sources)
      .def("__str__", &FPGroup::to_string)
      .def("__repr__", &FPGroup::to_string);

  py::class_<MorseComplex>(m, "MorseComplex")
      .def(py::init<const Graph&, int>(), py::arg("graph"), py::arg("n"), py::keep_alive<1, 2>())
      .def_property_readonly("particles", &MorseComplex::particles)
      .def("cells",
           [](const MorseComplex& cx, int dim) {
             std::vector<std::string> out;
             for (const Cell& c : cx.enumerate_cells(dim)) out.push_back(to_string(c));
             return out;
           })
      .def("critical_cells",
           [](const MorseComplex& cx, int dim) {
             std::vector<std::string> out;
             for (const Cell& c : cx.critical_cells(dim)) out.push_back(to_string(c));
             return out;
           })
      .def("classify", [](const MorseComplex& cx, const std::string& c) { return to_string(cx.kind(parse_cell(c))); })
      .def("matching_ok", [](const MorseComplex& cx) { return cx.validate_matching().ok; })
      .def("rewrite", [](const MorseComplex& cx, const std::string& word) {
        return to_string(rewrite_word(cx, parse_cell_word(word)).output);
      });

  m.def(
      "morse_presentation",
      [](const MorseComplex& cx) { return morse_presentation(cx).group(); }, py::arg("complex"));
  m.def(
      "minimal_presentation",
      [](const MorseComplex& cx) {
        const MorsePresentation p = morse_presentation(cx);
        return tietze_minimize(p.group(), p.sizes(cx)).group;
      },
      py::arg("complex"));
  m.def(
      "skeleton_presentation", [](const MorseComplex& cx) { return skeleton_presentation(cx); }, py::arg("complex"));
  m.def(
      "h1", [](const FPGroup& g) { return homology_h1(g).to_string(); }, py::arg("group"));
  m.def(
      "physical_presentation",
      [](const MorseComplex& cx, const std::string& loops_path) {
        const auto loops = loops_from_json(Json::parse(read_file(loops_path)));
        const MorsePresentation p = morse_presentation(cx);
        const TietzeResult t = tietze_minimize(p.group(), p.sizes(cx));
        return physical_dict(solve_physical_presentation(cx, p, t, loops));
      },
      py::arg("complex"), py::arg("loops_path"));
  m.def(
      "phase_constraints",
      [](const MorseComplex& cx, const std::string& loops_path) {
        const auto loops = loops_from_json(Json::parse(read_file(loops_path)));
        const MorsePresentation p = morse_presentation(cx);
        const TietzeResult t = tietze_minimize(p.group(), p.sizes(cx));
        const LocallyAbelianResult la = locally_abelian_solve(solve_physical_presentation(cx, p, t, loops));
        std::vector<std::string> out;
        for (const auto& c : la.congruences) out.push_back(la.describe_constraint(c));
        return out;
      },
      py::arg("complex"), py::arg("loops_path"));
  m.def(
      "stability",
      [](const Graph& g, int lo, int hi) {
        const StabilityReport r = stability_report(g, lo, hi);
        py::list levels;
        for (const auto& lv : r.levels) {
          py::dict d;
          d["n"] = lv.n;
          d["generators"] = lv.generators;
          d["relators"] = lv.relators;
          d["minimal_generators"] = lv.minimal_generators;
          d["lifting_ok"] = lv.lifting_ok;
          levels.append(d);
        }
        return levels;
      },
      py::arg("graph"), py::arg("lo"), py::arg("hi"));

  m.def(
      "verify_representation",
      [](const FPGroup& g, const std::vector<CMatrix>& ms, double tol) {
        const ResidualReport r = verify_representation(g, assignment(ms), tol);
        return py::make_tuple(r.pass, r.max_deviation);
      },
      py::arg("group"), py::arg("matrices"), py::arg("tol") = 1e-8);
  m.def(
      "solve_representation",
      [](const FPGroup& g, int k, std::uint64_t seed, double tol, int restarts) {
        SolveOptions o;
        o.tol = tol;
        o.restarts = restarts;
        py::gil_scoped_release release;
        return solve_representation(g, k, seed, o).assignment.matrices;
      },
      py::arg("group"), py::arg("k"), py::arg("seed") = 0, py::arg("tol") = 1e-8, py::arg("restarts") = 20);
  m.def(
      "classify_theta_component",
      [](const FPGroup& g, const std::vector<CMatrix>& ms) {
        const ThetaComponent c = classify_theta_component(g, assignment(ms));
        return py::make_tuple(c.kind, c.label, c.permutation);
      },
      py::arg("group"), py::arg("matrices"));
}
