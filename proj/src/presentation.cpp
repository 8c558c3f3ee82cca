#include "braidforge/presentation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace braidforge {

void FPGroup::validate() const {
  for (const auto& g : generators) {
    if (g.empty()) throw ValidationError("empty generator name");
  }
  for (const auto& r : relators) {
    for (const auto& l : r) {
      if (l.symbol < 0 || static_cast<std::size_t>(l.symbol) >= generators.size()) {
        throw ValidationError("relator refers to generator index " + std::to_string(l.symbol) + " out of range");
      }
      if (l.sign != 1 && l.sign != -1) throw ValidationError("letter exponent must be +1 or -1");
    }
  }
  if (!relator_sources.empty() && relator_sources.size() != relators.size()) {
    throw ValidationError("relator provenance does not match relator count");
  }
}

std::string word_to_string(const GenWord& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += names.at(static_cast<std::size_t>(l.symbol));
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

std::string FPGroup::to_string() const {
  std::ostringstream os;
  os << "< ";
  for (std::size_t i = 0; i < generators.size(); ++i) os << (i ? ", " : "") << generators[i];
  os << (generators.empty() ? "| " : " | ");
  for (std::size_t i = 0; i < relators.size(); ++i) os << (i ? ", " : "") << word_to_string(relators[i], generators);
  os << (relators.empty() ? ">" : " >");
  return os.str();
}

// ---------------------------------------------------------------------------

TietzeResult tietze_minimize(const FPGroup& p, const std::vector<int>& sizes, std::optional<int> target) {
  p.validate();
  const std::size_t ngen = p.generators.size();
  auto size_of = [&](int g) { return sizes.empty() ? 0 : sizes.at(static_cast<std::size_t>(g)); };

  TietzeResult res;
  res.target = target ? *target : static_cast<int>(homology_h1(p).minimal_generators());

  std::vector<GenWord> rels;
  std::vector<std::string> sources;
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    GenWord r = cyclic_reduce(p.relators[i]);
    if (r.empty()) continue;
    rels.push_back(std::move(r));
    sources.push_back(p.relator_sources.empty() ? "R" + std::to_string(i + 1) : p.relator_sources[i]);
  }
  std::vector<bool> alive(ngen, true);
  std::map<int, GenWord> expr;
  for (std::size_t g = 0; g < ngen; ++g) expr[static_cast<int>(g)] = GenWord{{static_cast<int>(g), 1}};

  while (true) {
    // Best candidate (generator, relator).
    int best_g = -1;
    std::size_t best_r = 0;
    for (std::size_t ri = 0; ri < rels.size(); ++ri) {
      std::map<int, int> count;
      for (const auto& l : rels[ri]) ++count[l.symbol];
      for (const auto& [g, c] : count) {
        if (c != 1) continue;
        bool better = best_g < 0;
        if (!better) {
          const int sg = size_of(g);
          const int sb = size_of(best_g);
          if (sg != sb) {
            better = sg > sb;
          } else if (rels[ri].size() != rels[best_r].size()) {
            better = rels[ri].size() < rels[best_r].size();
          } else {
            better = g < best_g;
          }
        }
        if (better) {
          best_g = g;
          best_r = ri;
        }
      }
    }
    if (best_g < 0) break;

    // r = A g^s B, so g^s = A^-1 B^-1 read cyclically: rotate g^s to the front.
    const GenWord r = rels[best_r];
    const auto pos = static_cast<std::size_t>(
        std::find_if(r.begin(), r.end(), [&](const Letter<int>& l) { return l.symbol == best_g; }) - r.begin());
    const GenWord rot = rotate_left(r, pos);
    const int s = rot.front().sign;
    const GenWord u(rot.begin() + 1, rot.end());
    const GenWord image = s > 0 ? inverse(u) : u;

    res.log.push_back({best_g, r, image});
    rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(best_r));
    sources.erase(sources.begin() + static_cast<std::ptrdiff_t>(best_r));
    alive[static_cast<std::size_t>(best_g)] = false;

    auto img = [&](int g) -> GenWord {
      if (g == best_g) return image;
      return GenWord{{g, 1}};
    };
    std::vector<GenWord> next;
    std::vector<std::string> next_sources;
    for (std::size_t i = 0; i < rels.size(); ++i) {
      GenWord w = substitute<int>(rels[i], img);
      if (w.empty()) continue;
      next.push_back(std::move(w));
      next_sources.push_back(sources[i]);
    }
    rels = std::move(next);
    sources = std::move(next_sources);
    for (auto& [g, e] : expr) e = substitute<int>(e, img);
  }

  std::vector<int> index(ngen, -1);
  for (std::size_t g = 0; g < ngen; ++g) {
    if (!alive[g]) continue;
    index[g] = static_cast<int>(res.kept.size());
    res.kept.push_back(static_cast<int>(g));
    res.group.generators.push_back(p.generators[g]);
  }
  for (std::size_t i = 0; i < rels.size(); ++i) {
    GenWord w = cyclic_reduce(rels[i]);
    if (w.empty()) continue;
    for (auto& l : w) l.symbol = index[static_cast<std::size_t>(l.symbol)];
    res.group.relators.push_back(std::move(w));
    res.group.relator_sources.push_back(sources[i]);
  }
  res.expressions = std::move(expr);
  res.target_reached = static_cast<int>(res.kept.size()) == res.target;
  return res;
}

// ---------------------------------------------------------------------------

IntMatrix abelianization_matrix(const FPGroup& p) {
  p.validate();
  IntMatrix m(p.relators.size(), p.generators.size());
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    for (const auto& l : p.relators[i]) m(i, static_cast<std::size_t>(l.symbol)) += l.sign;
  }
  return m;
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ComputationError("integer overflow in Smith normal form");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw ComputationError("integer overflow in Smith normal form");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ComputationError("integer overflow in Smith normal form");
  return r;
}

std::int64_t abs64(std::int64_t a) {
  if (a == INT64_MIN) throw ComputationError("integer overflow in Smith normal form");
  return a < 0 ? -a : a;
}

// Dense Smith form on a small block; returns the nonzero diagonal.
std::vector<std::int64_t> dense_smith(std::vector<std::vector<std::int64_t>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::int64_t> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = rows;
      std::size_t pj = cols;
      std::int64_t best = 0;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] != 0 && (best == 0 || abs64(a[i][j]) < best)) {
            best = abs64(a[i][j]);
            pi = i;
            pj = j;
          }
        }
      }
      if (best == 0) return diag;
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const std::int64_t q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] = checked_sub(a[i][j], checked_mul(q, a[t][j]));
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const std::int64_t q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] = checked_sub(a[i][j], checked_mul(q, a[i][t]));
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // The pivot must divide the rest of the block.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] = checked_add(a[t][k], a[i][k]);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    diag.push_back(abs64(a[t][t]));
  }
  return diag;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  // Phase 1: eliminate unit pivots on a sparse copy.
  std::vector<std::map<std::size_t, std::int64_t>> rows(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (m(i, j) != 0) rows[i][j] = m(i, j);
    }
  }
  std::vector<bool> row_live(m.rows, true);
  std::vector<bool> col_live(m.cols, true);
  std::size_t units = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t p = 0; p < m.rows; ++p) {
      if (!row_live[p]) continue;
      auto it = std::find_if(rows[p].begin(), rows[p].end(), [](const auto& kv) { return abs64(kv.second) == 1; });
      if (it == rows[p].end()) continue;
      const std::size_t c = it->first;
      const std::int64_t pv = it->second;
      // Clear column c from every other row; the pivot row then drops out.
      for (std::size_t i = 0; i < m.rows; ++i) {
        if (i == p || !row_live[i]) continue;
        auto f = rows[i].find(c);
        if (f == rows[i].end()) continue;
        const std::int64_t q = checked_mul(f->second, pv);  // pv = +-1, so q = a_ic / pv
        for (const auto& [j, v] : rows[p]) {
          std::int64_t nv = checked_sub(rows[i][j], checked_mul(q, v));
          if (nv == 0) {
            rows[i].erase(j);
          } else {
            rows[i][j] = nv;
          }
        }
      }
      row_live[p] = false;
      col_live[c] = false;
      rows[p].clear();
      ++units;
      progress = true;
    }
  }

  // Phase 2: dense Smith form on what is left.
  std::vector<std::size_t> rest_cols;
  for (std::size_t j = 0; j < m.cols; ++j) {
    if (col_live[j]) rest_cols.push_back(j);
  }
  std::vector<std::vector<std::int64_t>> dense;
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (!row_live[i] || rows[i].empty()) continue;
    std::vector<std::int64_t> row(rest_cols.size(), 0);
    for (std::size_t k = 0; k < rest_cols.size(); ++k) {
      auto f = rows[i].find(rest_cols[k]);
      if (f != rows[i].end()) row[k] = f->second;
    }
    dense.push_back(std::move(row));
  }
  SmithForm out;
  out.factors.assign(units, 1);
  for (std::int64_t d : dense_smith(std::move(dense))) out.factors.push_back(d);
  // Enforce the divisibility chain.
  auto& f = out.factors;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      const std::int64_t g = std::gcd(f[i], f[j]);
      const std::int64_t l = checked_mul(f[i] / g, f[j]);
      f[i] = g;
      f[j] = l;
    }
  }
  out.rank = f.size();
  return out;
}

std::string HomologyClass::to_string() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (std::size_t i = 0; i < torsion.size();) {
    std::size_t j = i;
    while (j < torsion.size() && torsion[j] == torsion[i]) ++j;
    std::string t = "Z_" + std::to_string(torsion[i]);
    if (j - i > 1) t += "^" + std::to_string(j - i);
    parts.push_back(t);
    i = j;
  }
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " (+) " + parts[i];
  return out;
}

HomologyClass homology_h1(const FPGroup& p) {
  const SmithForm s = smith_normal_form(abelianization_matrix(p));
  HomologyClass h;
  h.free_rank = p.generators.size() - s.rank;
  for (std::int64_t d : s.factors) {
    if (d > 1) h.torsion.push_back(d);
  }
  return h;
}

}  // namespace braidforge
