#pragma once

// Shared helpers and test-only oracles. The oracles recompute quantities from
// their definitions, without going through the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "braidforge/complex.hpp"
#include "braidforge/io.hpp"
#include "braidforge/presentation.hpp"

namespace bftest {

using namespace braidforge;

inline std::string fixture(const std::string& name) { return std::string(BRAIDFORGE_FIXTURES) + "/" + name; }

inline const Graph& theta() {
  static const Graph g = load_graph(fixture("theta.json"));
  return g;
}

inline Cell cell(const std::string& s) { return parse_cell(s); }
inline CellWord cells(const std::string& s) { return parse_cell_word(s); }

/// Word over generator names, e.g. "a b^-1 c".
inline GenWord gen_word(const std::string& text, const std::vector<std::string>& names) {
  GenWord w;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    if (i >= text.size()) break;
    std::size_t j = text.find(' ', i);
    if (j == std::string::npos) j = text.size();
    std::string tok = text.substr(i, j - i);
    int sign = 1;
    if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
      sign = -1;
      tok.resize(tok.size() - 3);
    }
    auto it = std::find(names.begin(), names.end(), tok);
    if (it == names.end()) throw std::runtime_error("unknown generator " + tok);
    w.push_back({static_cast<int>(it - names.begin()), sign});
    i = j;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Smith normal form from determinantal divisors: d_k is the gcd of all k x k
// minors, the invariant factors are d_k / d_{k-1}. Exponential; small inputs only.

inline std::int64_t det_exact(std::vector<std::vector<std::int64_t>> a) {
  // Bareiss fraction-free elimination.
  const std::size_t n = a.size();
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline std::vector<std::int64_t> determinantal_factors(const IntMatrix& m) {
  std::vector<std::int64_t> factors;
  std::int64_t prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows, m.cols); ++k) {
    std::int64_t g = 0;
    subsets(m.rows, k, [&](const std::vector<std::size_t>& rs) {
      subsets(m.cols, k, [&](const std::vector<std::size_t>& cs) {
        std::vector<std::vector<std::int64_t>> sub(k, std::vector<std::int64_t>(k));
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m(rs[i], cs[j]);
        }
        g = std::gcd(g, det_exact(sub));
      });
    });
    if (g == 0) break;
    factors.push_back(g / prev);
    prev = g;
  }
  return factors;
}

// ---------------------------------------------------------------------------
// Brute-force cell enumeration and matching, straight from the definitions:
// a vertex v is blocked if v = 1 or its parent is occupied; W replaces the
// lowest unblocked vertex by its parent edge; a cell is collapsible if it is
// W of a cell that is not itself collapsible, redundant if it has an
// unblocked vertex and is not collapsible, critical otherwise.

struct BruteMatching {
  std::map<Cell, MorseKind> kind;
  std::map<Cell, Cell> w;  // redundant -> collapsible
};

inline std::vector<Cell> brute_cells(const OrderedGraph& g, int n, int dim) {
  const int nv = g.vertex_count();
  std::vector<Cell> out;
  std::vector<Edge> edges = g.edges();
  subsets(edges.size(), static_cast<std::size_t>(dim), [&](const std::vector<std::size_t>& es) {
    std::set<int> used;
    for (std::size_t e : es) {
      if (!used.insert(edges[e].tau).second || !used.insert(edges[e].iota).second) return;
    }
    std::vector<int> free;
    for (int v = 1; v <= nv; ++v) {
      if (!used.count(v)) free.push_back(v);
    }
    const std::size_t need = static_cast<std::size_t>(n - dim);
    subsets(free.size(), need, [&](const std::vector<std::size_t>& vs) {
      Cell c;
      for (std::size_t e : es) c.edges.push_back(edges[e]);
      for (std::size_t v : vs) c.vertices.push_back(free[v]);
      std::sort(c.edges.begin(), c.edges.end());
      out.push_back(c);
    });
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline BruteMatching brute_matching(const OrderedGraph& g, int n) {
  BruteMatching m;
  auto occupied = [](const Cell& c, int v) {
    if (std::find(c.vertices.begin(), c.vertices.end(), v) != c.vertices.end()) return true;
    return std::any_of(c.edges.begin(), c.edges.end(), [&](const Edge& e) { return e.tau == v || e.iota == v; });
  };
  auto w_of = [&](const Cell& c) -> std::optional<Cell> {
    for (int v : c.vertices) {
      if (v == 1 || occupied(c, g.parent(v))) continue;
      Cell d = c;
      d.vertices.erase(std::find(d.vertices.begin(), d.vertices.end(), v));
      d.edges.push_back(Edge{g.parent(v), v});
      std::sort(d.edges.begin(), d.edges.end());
      return d;
    }
    return std::nullopt;
  };
  std::set<Cell> collapsible;
  for (int dim = 0; dim <= std::min(n, 2); ++dim) {
    for (const Cell& c : brute_cells(g, n, dim)) {
      if (collapsible.count(c)) {
        m.kind[c] = MorseKind::Collapsible;
        continue;
      }
      if (auto d = w_of(c)) {
        m.kind[c] = MorseKind::Redundant;
        m.w[c] = *d;
        collapsible.insert(*d);
      } else {
        m.kind[c] = MorseKind::Critical;
      }
    }
  }
  return m;
}

}  // namespace bftest
