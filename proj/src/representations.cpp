#include "braidforge/representations.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "braidforge/parallel.hpp"

namespace braidforge {

using cd = std::complex<double>;

void UnitaryAssignment::validate(std::size_t generators, double tol) const {
  if (k < 1) throw ValidationError("representation dimension must be at least 1");
  if (matrices.size() != generators) {
    throw ValidationError("assignment has " + std::to_string(matrices.size()) + " matrices for " +
                          std::to_string(generators) + " generators");
  }
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    const CMatrix& m = matrices[i];
    if (m.rows() != k || m.cols() != k) throw ValidationError("matrix " + std::to_string(i) + " has the wrong shape");
    const double dev = (m.adjoint() * m - CMatrix::Identity(k, k)).norm();
    if (!(dev <= tol)) {
      throw ValidationError("matrix " + std::to_string(i) + " is not unitary (deviation " + std::to_string(dev) + ")");
    }
  }
}

CMatrix eval_word(const GenWord& w, const UnitaryAssignment& a) {
  CMatrix out = CMatrix::Identity(a.k, a.k);
  for (const auto& l : w) {
    if (l.symbol < 0 || static_cast<std::size_t>(l.symbol) >= a.matrices.size()) {
      throw ValidationError("generator " + std::to_string(l.symbol) + " is not assigned");
    }
    const CMatrix& m = a.matrices[static_cast<std::size_t>(l.symbol)];
    out = l.sign > 0 ? CMatrix(out * m) : CMatrix(out * m.adjoint());
  }
  return out;
}

ResidualReport verify_representation(const FPGroup& p, const UnitaryAssignment& a, double tol) {
  p.validate();
  ResidualReport r;
  r.tolerance = tol;
  const CMatrix id = CMatrix::Identity(a.k, a.k);
  for (const auto& rel : p.relators) {
    const double d = (eval_word(rel, a) - id).norm();
    r.deviations.push_back(d);
    r.max_deviation = std::max(r.max_deviation, d);
  }
  r.pass = r.max_deviation <= tol;
  return r;
}

CMatrix haar_unitary(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix z(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = cd(re, im);
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(k, k);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < k; ++j) {
    const cd d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0) q.col(j) *= d / mag;
  }
  return q;
}

CMatrix polar_unitary(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double residual_objective(const FPGroup& p, const UnitaryAssignment& a, std::vector<CMatrix>* grad) {
  const int k = a.k;
  if (grad) grad->assign(a.matrices.size(), CMatrix::Zero(k, k));
  double f = 0.0;
  std::vector<CMatrix> letters;
  std::vector<CMatrix> prefix;
  for (const auto& rel : p.relators) {
    const std::size_t n = rel.size();
    letters.clear();
    for (const auto& l : rel) {
      const CMatrix& m = a.matrices[static_cast<std::size_t>(l.symbol)];
      letters.push_back(l.sign > 0 ? m : CMatrix(m.adjoint()));
    }
    prefix.assign(n + 1, CMatrix::Identity(k, k));
    for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] * letters[j];
    f += 2.0 * k - 2.0 * prefix[n].trace().real();
    if (!grad) continue;
    CMatrix suffix = CMatrix::Identity(k, k);
    for (std::size_t j = n; j-- > 0;) {
      // R = A X B with A = prefix[j], B = suffix.
      const CMatrix ba = suffix * prefix[j];
      const auto g = static_cast<std::size_t>(rel[j].symbol);
      if (rel[j].sign > 0) {
        (*grad)[g] -= 2.0 * ba.adjoint();
      } else {
        (*grad)[g] -= 2.0 * ba;
      }
      suffix = letters[j] * suffix;
    }
  }
  return f;
}

namespace {

CMatrix riemannian(const CMatrix& u, const CMatrix& g) {
  const CMatrix x = u.adjoint() * g;
  return u * (0.5 * (x - x.adjoint()));
}

struct RunResult {
  UnitaryAssignment a;
  double objective = 0.0;
  int iterations = 0;
};

RunResult descend(const FPGroup& p, int k, std::uint64_t seed, const SolveOptions& opts) {
  std::mt19937_64 rng(seed);
  RunResult run;
  run.a.k = k;
  for (std::size_t i = 0; i < p.generators.size(); ++i) run.a.matrices.push_back(haar_unitary(k, rng));
  // Deviations below tol need the objective below tol^2; aim a little lower.
  const double target = 0.01 * opts.tol * opts.tol;
  std::vector<CMatrix> grad;
  double f = residual_objective(p, run.a, &grad);
  double step = 0.1;
  for (int it = 0; it < opts.max_iterations && f > target; ++it) {
    std::vector<CMatrix> xi(grad.size());
    double norm2 = 0.0;
    for (std::size_t g = 0; g < grad.size(); ++g) {
      xi[g] = riemannian(run.a.matrices[g], grad[g]);
      norm2 += xi[g].squaredNorm();
    }
    if (norm2 < 1e-300) break;
    step = std::min(step * 2.0, 10.0);
    UnitaryAssignment trial;
    double ft = f;
    while (step > 1e-16) {
      trial.k = k;
      trial.matrices.clear();
      for (std::size_t g = 0; g < grad.size(); ++g) {
        trial.matrices.push_back(polar_unitary(run.a.matrices[g] - step * xi[g]));
      }
      ft = residual_objective(p, trial, nullptr);
      if (ft <= f - 1e-4 * step * norm2) break;
      step *= 0.5;
    }
    if (step <= 1e-16) break;
    run.a = std::move(trial);
    f = residual_objective(p, run.a, &grad);
    run.iterations = it + 1;
  }
  run.objective = f;
  return run;
}

}  // namespace

SolveResult solve_representation(const FPGroup& p, int k, std::uint64_t seed, const SolveOptions& opts) {
  p.validate();
  if (k < 1) throw ValidationError("representation dimension must be at least 1");
  if (opts.restarts < 1) throw ValidationError("at least one restart is required");
  const auto restarts = static_cast<std::size_t>(opts.restarts);
  std::vector<RunResult> runs(restarts);
  std::vector<ResidualReport> reports(restarts);
  // Batches keep the answer independent of the thread count: the first
  // converged restart by index wins.
  const std::size_t batch = std::max<std::size_t>(1, thread_count());
  for (std::size_t lo = 0; lo < restarts; lo += batch) {
    const std::size_t hi = std::min(restarts, lo + batch);
    parallel_for(hi - lo, [&](std::size_t i) {
      runs[lo + i] = descend(p, k, seed + lo + i, opts);
      reports[lo + i] = verify_representation(p, runs[lo + i].a, opts.tol);
    });
    for (std::size_t i = lo; i < hi; ++i) {
      if (reports[i].pass) {
        return {runs[i].a, reports[i], static_cast<int>(i), seed + i, runs[i].iterations};
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < restarts; ++i) {
    if (reports[i].max_deviation < reports[best].max_deviation) best = i;
  }
  SolveResult r{runs[best].a, reports[best], static_cast<int>(best), seed + best, runs[best].iterations};
  std::ostringstream os;
  os << "no representation found at this tolerance (best residual " << r.report.max_deviation << " after "
     << opts.restarts << " restarts)";
  throw RepresentationNotFound(os.str(), std::move(r));
}

// ---------------------------------------------------------------------------

bool PhaseConstraint::trivial() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](int c) { return c == 0; });
}

namespace {

void normalise(std::vector<int>& c) {
  auto it = std::find_if(c.begin(), c.end(), [](int x) { return x != 0; });
  if (it != c.end() && *it < 0) {
    for (int& x : c) x = -x;
  }
}

}  // namespace

LocallyAbelianResult locally_abelian_solve(const PhysicalPresentation& pp) {
  LocallyAbelianResult res;
  res.source_group = pp.group;
  res.names = pp.loop_names();
  std::vector<int> slot(pp.loops.size(), -1);
  for (std::size_t i = 0; i < pp.loops.size(); ++i) {
    if (pp.loops[i].is_y) {
      slot[i] = static_cast<int>(res.y_loops.size());
      res.y_loops.push_back(static_cast<int>(i));
    } else {
      res.o_loops.push_back(static_cast<int>(i));
    }
  }
  std::set<std::vector<int>> seen;
  std::set<int> constrained;
  for (std::size_t r = 0; r < pp.group.relators.size(); ++r) {
    const GenWord& rel = pp.group.relators[r];
    const std::string src = pp.group.relator_sources.empty() ? "R" + std::to_string(r + 1) : pp.group.relator_sources[r];
    std::vector<int> coeff(res.y_loops.size(), 0);
    GenWord o;
    for (const auto& l : rel) {
      const int s = slot[static_cast<std::size_t>(l.symbol)];
      if (s >= 0) {
        coeff[static_cast<std::size_t>(s)] += l.sign;
      } else {
        o.push_back(l);
      }
    }
    // Scalars are central, so the O-part may be reduced cyclically.
    o = cyclic_reduce(o);
    if (o.empty()) {
      PhaseConstraint c{coeff, src};
      if (c.trivial()) {
        res.trivial.push_back(std::move(c));
        continue;
      }
      normalise(c.coefficients);
      if (seen.insert(c.coefficients).second) res.congruences.push_back(std::move(c));
    } else {
      for (const auto& l : o) constrained.insert(l.symbol);
      res.equations.push_back({coeff, std::move(o), src});
    }
  }
  for (int i : res.o_loops) {
    if (!constrained.count(i)) res.unconstrained.push_back(i);
  }
  return res;
}

std::string LocallyAbelianResult::describe_constraint(const PhaseConstraint& c) const {
  std::ostringstream lhs;
  std::ostringstream rhs;
  for (std::size_t j = 0; j < c.coefficients.size(); ++j) {
    const int a = c.coefficients[j];
    if (a == 0) continue;
    std::ostringstream& side = a > 0 ? lhs : rhs;
    if (side.tellp() > 0) side << " + ";
    if (std::abs(a) != 1) side << std::abs(a) << "*";
    side << "phi[" << names[static_cast<std::size_t>(y_loops[j])] << "]";
  }
  const std::string l = lhs.str().empty() ? "0" : lhs.str();
  const std::string r = rhs.str().empty() ? "0" : rhs.str();
  return l + " = " + r + " (mod 2pi)";
}

ResidualReport LocallyAbelianResult::verify(const std::vector<double>& phases, const std::vector<CMatrix>& o_unitaries,
                                            double tol) const {
  if (phases.size() != y_loops.size() || o_unitaries.size() != o_loops.size()) {
    throw ValidationError("ansatz needs one phase per Y-loop and one unitary per O-loop");
  }
  UnitaryAssignment a;
  a.k = o_unitaries.empty() ? 1 : static_cast<int>(o_unitaries.front().rows());
  a.matrices.assign(names.size(), CMatrix::Identity(a.k, a.k));
  for (std::size_t j = 0; j < y_loops.size(); ++j) {
    a.matrices[static_cast<std::size_t>(y_loops[j])] =
        std::polar(1.0, phases[j]) * CMatrix::Identity(a.k, a.k);
  }
  for (std::size_t j = 0; j < o_loops.size(); ++j) a.matrices[static_cast<std::size_t>(o_loops[j])] = o_unitaries[j];
  return verify_representation(source_group, a, tol);
}

// ---------------------------------------------------------------------------

ThetaComponent classify_theta_component(const FPGroup& p, const UnitaryAssignment& a, double tol,
                                        double degeneracy_tol) {
  if (p.generators.size() != 3) throw ValidationError("Theta classification needs generators (alpha1, alpha2, gamma)");
  a.validate(3, 1e-8);
  const ResidualReport rep = verify_representation(p, a, tol);
  if (!rep.pass) throw ComputationError("assignment does not satisfy the relators");

  const int k = a.k;
  const CMatrix& ug = a.matrices[2];
  const CMatrix h = a.matrices[0] * a.matrices[1];
  Eigen::ComplexEigenSolver<CMatrix> es(ug);
  std::vector<int> order(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) order[static_cast<std::size_t>(i)] = i;
  const auto& ev = es.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int x, int y) { return std::arg(ev(x)) < std::arg(ev(y)); });
  std::vector<cd> lambda;
  CMatrix v(k, k);
  for (int i = 0; i < k; ++i) {
    lambda.push_back(ev(order[static_cast<std::size_t>(i)]));
    v.col(i) = es.eigenvectors().col(order[static_cast<std::size_t>(i)]).normalized();
  }
  // Clusters of numerically equal eigenvalues.
  std::vector<int> cluster(static_cast<std::size_t>(k), -1);
  std::vector<int> cluster_size;
  for (int i = 0; i < k; ++i) {
    if (cluster[static_cast<std::size_t>(i)] >= 0) continue;
    const int id = static_cast<int>(cluster_size.size());
    cluster_size.push_back(0);
    for (int j = i; j < k; ++j) {
      if (cluster[static_cast<std::size_t>(j)] < 0 &&
          std::abs(lambda[static_cast<std::size_t>(i)] - lambda[static_cast<std::size_t>(j)]) < degeneracy_tol) {
        cluster[static_cast<std::size_t>(j)] = id;
        ++cluster_size.back();
      }
    }
  }
  ThetaComponent out;
  out.degeneracy = *std::max_element(cluster_size.begin(), cluster_size.end());
  if (cluster_size.size() == 1) {
    out.kind = "M0";
    out.label = "M0";
    return out;
  }

  // Ad_h(U_gamma) in the eigenbasis of U_gamma; it must be diagonal on the
  // eigenspaces and carry the same spectrum.
  const CMatrix c = v.inverse() * (h * ug * h.adjoint()) * v;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (cluster[static_cast<std::size_t>(i)] != cluster[static_cast<std::size_t>(j)] && std::abs(c(i, j)) > 1e-6) {
        throw ComputationError("conjugate of U_gamma does not commute with U_gamma; point is outside the commutator shape");
      }
    }
  }
  std::vector<cd> diag;
  for (std::size_t a0 = 0; a0 < cluster_size.size(); ++a0) {
    std::vector<int> idx;
    for (int i = 0; i < k; ++i) {
      if (cluster[static_cast<std::size_t>(i)] == static_cast<int>(a0)) idx.push_back(i);
    }
    CMatrix block(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t x = 0; x < idx.size(); ++x) {
      for (std::size_t y = 0; y < idx.size(); ++y) block(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = c(idx[x], idx[y]);
    }
    Eigen::ComplexEigenSolver<CMatrix> bs(block);
    for (std::size_t x = 0; x < idx.size(); ++x) diag.push_back(bs.eigenvalues()(static_cast<Eigen::Index>(x)));
  }
  // Position j carries diag[j]; eigenvalue i moves to the unused j with diag[j] == lambda_i.
  std::vector<int> positions;
  for (std::size_t a0 = 0; a0 < cluster_size.size(); ++a0) {
    for (int i = 0; i < k; ++i) {
      if (cluster[static_cast<std::size_t>(i)] == static_cast<int>(a0)) positions.push_back(i);
    }
  }
  out.permutation.assign(static_cast<std::size_t>(k), -1);
  std::vector<bool> taken(static_cast<std::size_t>(k), false);
  for (int i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < diag.size(); ++j) {
      if (!taken[j] && std::abs(diag[j] - lambda[static_cast<std::size_t>(i)]) < 1e-6) {
        taken[j] = true;
        out.permutation[static_cast<std::size_t>(i)] = positions[j];
        break;
      }
    }
    if (out.permutation[static_cast<std::size_t>(i)] < 0) {
      throw ComputationError("conjugation does not permute the spectrum of U_gamma");
    }
  }
  bool identity = true;
  for (int i = 0; i < k; ++i) identity = identity && out.permutation[static_cast<std::size_t>(i)] == i;
  std::ostringstream perm;
  if (identity) {
    perm << "id";
  } else {
    // cycle notation, 1-based
    std::vector<bool> vis(static_cast<std::size_t>(k), false);
    for (int i = 0; i < k; ++i) {
      if (vis[static_cast<std::size_t>(i)] || out.permutation[static_cast<std::size_t>(i)] == i) continue;
      perm << "(";
      for (int j = i; !vis[static_cast<std::size_t>(j)]; j = out.permutation[static_cast<std::size_t>(j)]) {
        vis[static_cast<std::size_t>(j)] = true;
        perm << (j == i ? "" : " ") << j + 1;
      }
      perm << ")";
    }
  }
  if (out.degeneracy == 1) {
    out.kind = "M_P";
    out.label = "M_" + perm.str();
  } else {
    out.kind = "M_P^(d)";
    out.label = "M_" + perm.str() + "^(" + std::to_string(out.degeneracy) + ")";
  }
  return out;
}

}  // namespace braidforge
