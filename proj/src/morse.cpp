#include "braidforge/morse.hpp"

#include <algorithm>
#include <set>

#include "braidforge/parallel.hpp"

namespace braidforge {

std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::FreeCancel:
      return "free-cancel";
    case MoveKind::Collapse:
      return "collapse";
    case MoveKind::SimpleHomotopy:
      return "simple-homotopy";
  }
  return "?";
}

namespace {

// Replacement for a redundant 1-cell sigma: with b(W(sigma)) rotated to
// sigma^t u, sigma equals u^-1 when t = +1 and u when t = -1.
CellWord homotopy_replacement(const MorseComplex& cx, const Cell& sigma) {
  const Cell tau = cx.matching_image(sigma);
  const CellWord b = cx.boundary_word(tau);
  std::size_t pos = b.size();
  std::size_t count = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i].symbol == sigma) {
      if (pos == b.size()) pos = i;
      ++count;
    }
  }
  if (count != 1) {
    throw ComputationError("redundant cell " + to_string(sigma) + " does not occur exactly once in the boundary of " +
                           to_string(tau));
  }
  const CellWord rot = rotate_left(b, pos);
  const CellWord u(rot.begin() + 1, rot.end());
  return rot.front().sign > 0 ? inverse(u) : u;
}

}  // namespace

RewriteTrace rewrite_word(const MorseComplex& cx, const CellWord& input, const RewriteOptions& opts) {
  RewriteTrace trace;
  trace.input = input;
  CellWord w = input;
  std::map<Cell, MorseKind> kinds;
  auto kind_of = [&](const Cell& c) {
    auto it = kinds.find(c);
    if (it != kinds.end()) return it->second;
    if (c.dim() != 1 || !cx.contains(c)) throw ValidationError("word letter is not a 1-cell of the complex: " + to_string(c));
    return kinds.emplace(c, cx.kind(c)).first->second;
  };
  auto record = [&](MoveKind k, std::size_t pos, const Cell& c) {
    if (++trace.step_count > opts.max_steps) {
      throw ComputationError("rewriting exceeded " + std::to_string(opts.max_steps) + " steps");
    }
    if (opts.record_steps) trace.steps.push_back({k, pos, c});
  };

  while (true) {
    bool moved = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].symbol == w[i + 1].symbol && w[i].sign == -w[i + 1].sign) {
        record(MoveKind::FreeCancel, i, w[i].symbol);
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i + 2));
        moved = true;
        break;
      }
    }
    if (moved) continue;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (kind_of(w[i].symbol) == MorseKind::Collapsible) {
        record(MoveKind::Collapse, i, w[i].symbol);
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
        moved = true;
        break;
      }
    }
    if (moved) continue;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (kind_of(w[i].symbol) == MorseKind::Redundant) {
        record(MoveKind::SimpleHomotopy, i, w[i].symbol);
        CellWord rep = homotopy_replacement(cx, w[i].symbol);
        if (w[i].sign < 0) rep = inverse(rep);
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
        w.insert(w.begin() + static_cast<std::ptrdiff_t>(i), rep.begin(), rep.end());
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  trace.output = std::move(w);
  return trace;
}

CellWord MorseFlow::image(const Cell& c) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = memo_.find(c);
  if (it != memo_.end()) return it->second;
  if (c.dim() != 1 || !cx_.contains(c)) throw ValidationError("not a 1-cell of the complex: " + to_string(c));
  if (++steps_ > max_steps_) throw ComputationError("Morse flow exceeded " + std::to_string(max_steps_) + " steps");

  CellWord out;
  switch (cx_.kind(c)) {
    case MorseKind::Critical:
      out = {{c, 1}};
      break;
    case MorseKind::Collapsible:
      break;
    case MorseKind::Redundant: {
      // A placeholder entry detects a cyclic flow.
      memo_.emplace(c, CellWord{{c, 0}});
      const CellWord rep = homotopy_replacement(cx_, c);
      for (const auto& l : rep) {
        auto m = memo_.find(l.symbol);
        if (m != memo_.end() && !m->second.empty() && m->second.front().sign == 0) {
          throw ComputationError("Morse flow revisits " + to_string(l.symbol) + "; matching is not acyclic");
        }
        const CellWord img = image(l.symbol);
        append_reduced(out, l.sign > 0 ? img : inverse(img));
      }
      memo_.erase(c);
      break;
    }
  }
  memo_.emplace(c, out);
  return out;
}

CellWord MorseFlow::image(const CellWord& w) {
  CellWord out;
  for (const auto& l : w) {
    const CellWord img = image(l.symbol);
    append_reduced(out, l.sign > 0 ? img : inverse(img));
  }
  return out;
}

CellWord relator_loop(const MorseComplex& cx, const Cell& two_cell) {
  return rotate_left(inverse(cx.boundary_word(two_cell)), 1);
}

int MorsePresentation::index_of(const Cell& c) const {
  auto it = std::lower_bound(generators.begin(), generators.end(), c);
  if (it == generators.end() || *it != c) return -1;
  return static_cast<int>(it - generators.begin());
}

GenWord MorsePresentation::to_gen_word(const CellWord& w) const {
  GenWord out;
  for (const auto& l : w) {
    const int i = index_of(l.symbol);
    if (i < 0) throw ValidationError("not a critical 1-cell: " + to_string(l.symbol));
    out.push_back({i, l.sign});
  }
  return out;
}

CellWord MorsePresentation::to_cell_word(const GenWord& w) const {
  CellWord out;
  for (const auto& l : w) out.push_back({generators.at(static_cast<std::size_t>(l.symbol)), l.sign});
  return out;
}

FPGroup MorsePresentation::group() const {
  FPGroup g;
  for (const Cell& c : generators) g.generators.push_back(to_string(c));
  for (const auto& r : relators) {
    g.relators.push_back(r.word);
    g.relator_sources.push_back(to_string(r.source));
  }
  return g;
}

std::vector<int> MorsePresentation::sizes(const MorseComplex& cx) const {
  std::vector<int> out;
  for (const Cell& c : generators) out.push_back(cx.cell_size(c));
  return out;
}

MorsePresentation morse_presentation(const MorseComplex& cx, std::size_t max_steps) {
  MorsePresentation p;
  p.particles = cx.particles();
  p.generators = cx.critical_cells(1);
  const std::vector<Cell> twos = cx.critical_cells(2);
  p.relators.resize(twos.size());
  MorseFlow flow(cx, max_steps);
  parallel_for(twos.size(), [&](std::size_t i) {
    CellWord img = flow.image(relator_loop(cx, twos[i]));
    p.relators[i].word = p.to_gen_word(img);
    p.relators[i].cells = std::move(img);
    p.relators[i].source = twos[i];
  });
  return p;
}

}  // namespace braidforge
