#include "braidforge/io.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace braidforge {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

namespace {

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed " + what + ": " + e.what());
  }
}

std::pair<int, int> pair_from(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw ValidationError(what + " must be a pair [u, v]");
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

GraphSpec graph_spec_from_json(const Json& j) {
  try {
    GraphSpec s;
    for (const auto& v : j.at("vertices")) s.vertices.push_back(v.get<int>());
    for (const auto& e : j.at("edges")) s.edges.push_back(pair_from(e, "edge"));
    for (const auto& e : j.at("tree_edges")) s.tree_edges.push_back(pair_from(e, "tree edge"));
    if (j.contains("rotation")) {
      for (const auto& [key, nbrs] : j.at("rotation").items()) {
        int v = 0;
        try {
          v = std::stoi(key);
        } catch (const std::exception&) {
          throw ValidationError("rotation key '" + key + "' is not a vertex id");
        }
        s.rotation[v] = nbrs.get<std::vector<int>>();
      }
    }
    if (j.contains("root") && !j.at("root").is_null()) s.root = j.at("root").get<int>();
    return s;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed graph file: ") + e.what());
  }
}

Graph parse_graph(const std::string& text) { return Graph(graph_spec_from_json(parse_json(text, "graph file"))); }

Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

Json graph_to_json(const Graph& g) {
  Json j;
  j["vertices"] = g.vertices();
  Json edges = Json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  j["edges"] = edges;
  Json rot = Json::object();
  for (const auto& [v, r] : g.rotations()) rot[std::to_string(v)] = r;
  j["rotation"] = rot;
  Json tree = Json::array();
  for (auto [a, b] : g.tree_edges()) tree.push_back({a, b});
  j["tree_edges"] = tree;
  j["root"] = g.root();
  return j;
}

Json word_to_json(const GenWord& w) {
  Json out = Json::array();
  for (const auto& l : w) out.push_back({l.symbol, l.sign});
  return out;
}

GenWord word_from_json(const Json& j) {
  GenWord w;
  for (const auto& l : j) {
    if (!l.is_array() || l.size() != 2) throw ValidationError("word letters must be [index, sign]");
    w.push_back({l[0].get<int>(), l[1].get<int>()});
  }
  return w;
}

Json presentation_to_json(const FPGroup& p) {
  Json j;
  j["generators"] = p.generators;
  Json rels = Json::array();
  for (const auto& r : p.relators) rels.push_back(word_to_json(r));
  j["relators"] = rels;
  if (!p.relator_sources.empty()) j["relator_sources"] = p.relator_sources;
  return j;
}

FPGroup presentation_from_json(const Json& j) {
  try {
    FPGroup p;
    p.generators = j.at("generators").get<std::vector<std::string>>();
    for (const auto& r : j.at("relators")) p.relators.push_back(word_from_json(r));
    if (j.contains("relator_sources")) p.relator_sources = j.at("relator_sources").get<std::vector<std::string>>();
    p.validate();
    return p;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed presentation: ") + e.what());
  }
}

Json assignment_to_json(const UnitaryAssignment& a, const std::vector<std::string>& generators) {
  Json j;
  j["k"] = a.k;
  j["generators"] = generators;
  Json mats = Json::array();
  for (const CMatrix& m : a.matrices) {
    Json entries = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
    }
    mats.push_back(entries);
  }
  j["matrices"] = mats;
  return j;
}

UnitaryAssignment assignment_from_json(const Json& j, const FPGroup& p) {
  try {
    UnitaryAssignment a;
    a.k = j.at("k").get<int>();
    if (a.k < 1) throw ValidationError("assignment dimension must be at least 1");
    std::vector<CMatrix> mats;
    for (const auto& entries : j.at("matrices")) {
      if (entries.size() != static_cast<std::size_t>(a.k * a.k)) {
        throw ValidationError("matrix needs k*k entries");
      }
      CMatrix m(a.k, a.k);
      for (int i = 0; i < a.k * a.k; ++i) {
        const auto& e = entries[static_cast<std::size_t>(i)];
        m(i / a.k, i % a.k) = {e.at(0).get<double>(), e.at(1).get<double>()};
      }
      mats.push_back(std::move(m));
    }
    if (j.contains("generators")) {
      const auto names = j.at("generators").get<std::vector<std::string>>();
      if (names.size() != mats.size()) throw ValidationError("assignment names and matrices differ in number");
      for (const auto& g : p.generators) {
        auto it = std::find(names.begin(), names.end(), g);
        if (it == names.end()) throw ValidationError("generator " + g + " is not assigned");
        a.matrices.push_back(mats[static_cast<std::size_t>(it - names.begin())]);
      }
    } else {
      a.matrices = std::move(mats);
    }
    return a;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed assignment: ") + e.what());
  }
}

std::vector<LoopSpec> loops_from_json(const Json& j) {
  try {
    std::vector<LoopSpec> out;
    const Json& list = j.is_array() ? j : j.at("loops");
    for (const auto& l : list) {
      const std::string type = l.at("type").get<std::string>();
      const std::string name = l.value("name", std::string());
      if (type == "Y") {
        YLoopSpec y;
        y.k = l.at("k").get<int>();
        y.m = l.at("m").get<int>();
        y.n = l.at("n").get<int>();
        y.spectators = l.value("spectators", std::vector<int>{});
        y.name = name;
        out.emplace_back(std::move(y));
      } else if (type == "O") {
        OLoopSpec o;
        o.cycle = l.at("cycle").get<std::vector<int>>();
        o.spectators = l.value("spectators", std::vector<int>{});
        o.name = name;
        out.emplace_back(std::move(o));
      } else if (type == "word") {
        out.emplace_back(WordLoopSpec{parse_cell_word(l.at("word").get<std::string>()), name});
      } else {
        throw ValidationError("unknown loop type '" + type + "'");
      }
    }
    return out;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed loops file: ") + e.what());
  }
}

Json RunManifest::to_json() const {
  Json j;
  j["command"] = command;
  Json in = Json::object();
  for (const auto& [path, hash] : inputs) in[path] = hash;
  j["inputs"] = in;
  j["parameters"] = parameters;
  j["version"] = version;
  return j;
}

}  // namespace braidforge
