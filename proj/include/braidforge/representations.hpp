#pragma once

// Unitary representations of finitely presented groups: evaluation,
// verification, a Riemannian gradient solver on U(k)^r, the locally abelian
// ansatz and component classification for the Theta relator shape.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "braidforge/physical.hpp"
#include "braidforge/presentation.hpp"

namespace braidforge {

using CMatrix = Eigen::MatrixXcd;

struct UnitaryAssignment {
  int k = 0;
  std::vector<CMatrix> matrices;  ///< indexed like the generators

  /// Throws ValidationError on a wrong shape or if any matrix deviates from
  /// unitarity by more than tol in Frobenius norm.
  void validate(std::size_t generators, double tol = 1e-10) const;
};

CMatrix eval_word(const GenWord& w, const UnitaryAssignment& a);

struct ResidualReport {
  std::vector<double> deviations;  ///< ||R_i - I||_F
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

ResidualReport verify_representation(const FPGroup& p, const UnitaryAssignment& a, double tol);

/// Haar-distributed unitary via QR of a complex Ginibre matrix.
CMatrix haar_unitary(int k, std::mt19937_64& rng);

/// Nearest unitary in Frobenius norm (polar factor).
CMatrix polar_unitary(const CMatrix& m);

struct SolveOptions {
  int restarts = 20;
  int max_iterations = 5000;
  double tol = 1e-8;
};

struct SolveResult {
  UnitaryAssignment assignment;
  ResidualReport report;
  int restart = 0;          ///< index of the restart that produced the result
  std::uint64_t seed = 0;   ///< seed of that restart
  int iterations = 0;
};

class RepresentationNotFound : public ComputationError {
 public:
  RepresentationNotFound(const std::string& msg, SolveResult best) : ComputationError(msg), best(std::move(best)) {}
  SolveResult best;
};

/// Objective sum_i ||R_i - I||_F^2 and its Euclidean gradient per generator.
double residual_objective(const FPGroup& p, const UnitaryAssignment& a, std::vector<CMatrix>* gradient = nullptr);

/// Riemannian gradient descent with Armijo backtracking and polar retraction,
/// from Haar-random starts; restart i uses seed + i. Throws
/// RepresentationNotFound if no restart reaches opts.tol.
SolveResult solve_representation(const FPGroup& p, int k, std::uint64_t seed, const SolveOptions& opts = {});

// ---------------------------------------------------------------------------

/// sum_j coefficients[j] * phi_j = 0 (mod 2 pi), over the Y-loops.
struct PhaseConstraint {
  std::vector<int> coefficients;
  std::string source;
  bool trivial() const;
};

/// exp(i sum_j c_j phi_j) * W(U) = I with W a word in the O-loops.
struct MatrixEquation {
  std::vector<int> phase_coefficients;
  GenWord o_word;  ///< over loop indices
  std::string source;
};

struct LocallyAbelianResult {
  std::vector<int> y_loops;  ///< loop indices carrying phases
  std::vector<int> o_loops;  ///< loop indices carrying unitaries
  std::vector<std::string> names;
  std::vector<PhaseConstraint> congruences;  ///< non-trivial, normalised, deduplicated
  std::vector<PhaseConstraint> trivial;      ///< relators satisfied identically
  std::vector<MatrixEquation> equations;
  std::vector<int> unconstrained;  ///< O-loops absent from every matrix equation

  std::string describe_constraint(const PhaseConstraint& c) const;
  /// Residuals of all relators for phases (one per Y-loop) and O-loop unitaries.
  ResidualReport verify(const std::vector<double>& phases, const std::vector<CMatrix>& o_unitaries,
                        double tol) const;

  FPGroup source_group;
};

LocallyAbelianResult locally_abelian_solve(const PhysicalPresentation& pp);

struct ThetaComponent {
  std::string kind;              ///< "M0", "M_P" or "M_P^(d)"
  std::vector<int> permutation;  ///< eigenvalue i goes to permutation[i]
  int degeneracy = 1;
  std::string label;
};

/// Classifies a point of the Theta relator variety for generators ordered
/// (alpha1, alpha2, gamma): by the spectrum of U_gamma and the permutation of
/// its eigenvalues under conjugation by U_alpha1 U_alpha2.
ThetaComponent classify_theta_component(const FPGroup& p, const UnitaryAssignment& a, double tol = 1e-8,
                                        double degeneracy_tol = 1e-6);

}  // namespace braidforge
