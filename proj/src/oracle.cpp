#include "braidforge/oracle.hpp"

#include <deque>
#include <map>
#include <set>

namespace braidforge {

FPGroup skeleton_presentation(const MorseComplex& cx) {
  const std::vector<Cell> zeros = cx.enumerate_cells(0);
  const std::vector<Cell> ones = cx.enumerate_cells(1);
  std::map<Cell, std::vector<std::size_t>> incident;
  for (std::size_t i = 0; i < ones.size(); ++i) {
    incident[cell_start(ones[i])].push_back(i);
    incident[cell_end(ones[i])].push_back(i);
  }
  std::set<Cell> seen{cx.base()};
  std::vector<bool> in_tree(ones.size(), false);
  std::deque<Cell> queue{cx.base()};
  while (!queue.empty()) {
    const Cell at = queue.front();
    queue.pop_front();
    for (std::size_t i : incident[at]) {
      const Cell s = cell_start(ones[i]);
      const Cell other = s == at ? cell_end(ones[i]) : s;
      if (seen.insert(other).second) {
        in_tree[i] = true;
        queue.push_back(other);
      }
    }
  }
  if (seen.size() != zeros.size()) throw ComputationError("1-skeleton of the complex is disconnected");

  FPGroup g;
  std::map<Cell, int> index;
  for (std::size_t i = 0; i < ones.size(); ++i) {
    if (in_tree[i]) continue;
    index[ones[i]] = static_cast<int>(g.generators.size());
    g.generators.push_back(to_string(ones[i]));
  }
  for (const Cell& two : cx.enumerate_cells(2)) {
    GenWord r;
    for (const auto& l : cx.boundary_word(two)) {
      auto it = index.find(l.symbol);
      if (it != index.end()) r.push_back({it->second, l.sign});
    }
    g.relators.push_back(std::move(r));
    g.relator_sources.push_back(to_string(two));
  }
  return g;
}

}  // namespace braidforge
