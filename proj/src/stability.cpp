#include "braidforge/stability.hpp"

#include <algorithm>
#include <memory>

namespace braidforge {

Cell plus_map(const MorseComplex& target, const Cell& c) {
  for (int v = 1; v <= target.graph().vertex_count(); ++v) {
    if (c.occupies(v)) continue;
    std::vector<int> verts = c.vertices;
    verts.push_back(v);
    std::sort(verts.begin(), verts.end());
    Cell lifted{c.edges, std::move(verts)};
    if (target.is_critical(lifted)) return lifted;
  }
  throw ComputationError("no vertex lifts " + to_string(c) + " to a critical cell with " +
                         std::to_string(target.particles()) + " particles");
}

CellWord plus_map(const MorseComplex& target, const CellWord& w) {
  CellWord out;
  for (const auto& l : w) out.push_back({plus_map(target, l.symbol), l.sign});
  return out;
}

bool StabilityReport::lifting_ok() const {
  return std::all_of(levels.begin(), levels.end(), [](const StabilityLevel& l) { return l.lifting_ok; });
}

StabilityReport stability_report(const Graph& g, int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw ValidationError("stability range must satisfy 1 <= from <= to");
  StabilityReport rep;
  rep.two_connected = is_two_connected(g);
  if (!rep.two_connected) rep.warnings.push_back("graph is not 2-connected; generator counts need not stabilise");

  std::vector<std::unique_ptr<MorseComplex>> cxs;
  std::vector<MorsePresentation> pres;
  for (int n = n_lo; n <= n_hi; ++n) {
    cxs.push_back(std::make_unique<MorseComplex>(g, n));
    pres.push_back(morse_presentation(*cxs.back()));
  }
  for (std::size_t i = 0; i < cxs.size(); ++i) {
    const MorseComplex& cx = *cxs[i];
    const MorsePresentation& p = pres[i];
    StabilityLevel lv;
    lv.n = cx.particles();
    lv.generators = p.generators.size();
    lv.relators = p.relators.size();
    const TietzeResult t = tietze_minimize(p.group(), p.sizes(cx));
    lv.minimal_generators = t.group.generators.size();
    lv.minimal_relators = t.group.relators.size();

    std::vector<Cell> hit;
    if (i > 0) {
      lv.lifting_checked = true;
      const MorsePresentation& lower = pres[i - 1];
      for (const Cell& c : lower.generators) {
        try {
          lv.correspondence.push_back({c, plus_map(cx, c)});
        } catch (const ComputationError& e) {
          lv.lifting_ok = false;
          lv.lifting_failures.push_back(e.what());
        }
      }
      for (const MorseRelator& r : lower.relators) {
        try {
          const Cell lifted = plus_map(cx, r.source);
          lv.correspondence.push_back({r.source, lifted});
          hit.push_back(lifted);
          auto it = std::find_if(p.relators.begin(), p.relators.end(),
                                 [&](const MorseRelator& m) { return m.source == lifted; });
          if (it == p.relators.end()) throw ComputationError(to_string(lifted) + " is not a critical 2-cell");
          if (it->cells != plus_map(cx, r.cells)) {
            lv.lifting_ok = false;
            lv.lifting_failures.push_back("relator of " + to_string(lifted) + " differs from the lift of " +
                                          to_string(r.source));
          }
        } catch (const ComputationError& e) {
          lv.lifting_ok = false;
          lv.lifting_failures.push_back(e.what());
        }
      }
    }
    for (const MorseRelator& r : p.relators) {
      if (std::find(hit.begin(), hit.end(), r.source) == hit.end()) lv.new_relators.push_back(r.source);
    }
    rep.levels.push_back(std::move(lv));
  }
  return rep;
}

}  // namespace braidforge
