#pragma once

// File formats: graph files, presentations, unitary assignments, loop lists
// and the run manifest embedded in every JSON output.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "braidforge/graph.hpp"
#include "braidforge/physical.hpp"
#include "braidforge/presentation.hpp"
#include "braidforge/representations.hpp"

namespace braidforge {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

std::string read_file(const std::string& path);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

GraphSpec graph_spec_from_json(const Json& j);
Graph parse_graph(const std::string& text);
Graph load_graph(const std::string& path);
Json graph_to_json(const Graph& g);

Json word_to_json(const GenWord& w);
GenWord word_from_json(const Json& j);

/// { "generators": [...], "relators": [[[index, sign], ...], ...], "relator_sources": [...] }
Json presentation_to_json(const FPGroup& p);
FPGroup presentation_from_json(const Json& j);

/// { "k": k, "generators": [...], "matrices": [[[re, im], ...], ...] }, row-major.
Json assignment_to_json(const UnitaryAssignment& a, const std::vector<std::string>& generators);
/// Matrices are matched to `p` by generator name when names are given, else by position.
UnitaryAssignment assignment_from_json(const Json& j, const FPGroup& p);

/// { "loops": [ {"type": "Y", "k":.., "m":.., "n":.., "spectators": [..], "name": ..},
///              {"type": "O", "cycle": [..], "spectators": [..]},
///              {"type": "word", "word": "{e(1,11), 2} {e(1,8), 2}^-1 ..."} ] }
std::vector<LoopSpec> loops_from_json(const Json& j);

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> inputs;  ///< path -> content hash
  Json parameters = Json::object();
  std::string version = kVersion;

  Json to_json() const;
};

}  // namespace braidforge
