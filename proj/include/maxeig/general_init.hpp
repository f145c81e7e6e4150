#pragma once

#include <optional>
#include <span>

#include "maxeig/numat.hpp"
#include "maxeig/trace.hpp"
#include "maxeig/tridiag.hpp"

namespace maxeig {

/// h with h_0 = 1 harmonic for Q^c on every row except the last.
/// Throws SingularError or NonPositiveSequence("h", i).
Vector<double> solve_h_general(const DenseMatrix<double>& qc);

/// Diag(h)^-1 Q^c Diag(h).
DenseMatrix<double> h_transform_general(const DenseMatrix<double>& qc, std::span<const double> h);

/// P = Diag(1/(-q_ii)) Q + I. Requires a strictly negative diagonal.
DenseMatrix<double> jump_matrix(const DenseMatrix<double>& qt);

/// phi with phi_0 = 1 solving phi = P phi on rows 1..N.
/// Throws SingularError or NonPositiveSequence("phi", i).
Vector<double> solve_phi_general(const DenseMatrix<double>& qt);

/// mu with mu_0 = 1 solving the first N equations of Q^T mu = 0.
/// Throws SingularError or NonPositiveSequence("mu", i).
Measure solve_mu_general(const DenseMatrix<double>& qt);

struct StartingPoint {
  Vector<double> v0;              ///< sqrt(phi) normalized in L^2(mu)
  double z0_rayleigh;             ///< (v0, -Q v0)_mu
  std::optional<double> z0_safe;  ///< empty when phi_1 >= 1
};

/// Starting pair from phi and mu. The safe shift is
///   z0^-1 = (1/(1 - phi_1)) max_n [ sqrt(phi_n) sum_{k<=n} mu_k sqrt(phi_k)
///                                   + sum_{j>n} mu_j phi_j^{3/2} / sqrt(phi_n) ]
/// with phi rescaled to phi_0 = 1 (v0 does not depend on the scale).
StartingPoint initials_general(const DenseMatrix<double>& qt, std::span<const double> phi, const Measure& mu);

/// Intermediate objects of the dense pipeline.
struct GeneralInitials {
  ShiftedMatrix shifted;
  Vector<double> h;
  DenseMatrix<double> qt;
  Vector<double> phi;
  Measure mu;
  StartingPoint start;
};

GeneralInitials compute_general_initials(const DenseMatrix<double>& a);

/// Q^c as a TridiagonalSystem when it is tridiagonal with positive off-diagonals.
std::optional<TridiagonalSystem> as_tridiagonal(const DenseMatrix<double>& qc);

enum class GeneralZ0 { safe, rayleigh, value };

struct GeneralOptions {
  double tol = 1e-10;
  double residual_tol = 1e-8;
  int max_iterations = 50;
  GeneralZ0 z0 = GeneralZ0::safe;
  double z0_value = 0.0;
  V0Choice v0 = V0Choice::efficient;
  /// Reuse the O(N) recurrences and explicit solver on tridiagonal input.
  bool tridiagonal_fast_path = true;
  bool keep_vectors = false;
  NormConvention output_norm = NormConvention::last_component_one;
};

struct GeneralRun {
  /// (rho(A), g(A)) recovered from the transformed problem; the residual is
  /// ||A g - rho g||_inf / ||g||_inf on A itself.
  EigenpairResult<double> original;
  /// lambda_min(-Q^c) = m - rho(A); the trace records this quantity.
  double lambda_min;
  IterationTrace<double> trace;
  double m;
  double z0;
  bool used_tridiagonal_path;
  /// Set when the safe shift was requested but phi_1 >= 1 forced the Rayleigh shift.
  bool safe_z0_unavailable = false;
};

/// shift_to_qc -> h -> H-transform -> phi, mu -> initials -> RQI in L^2(mu) ->
/// (m - z, Diag(h) v).
GeneralRun general_rqi(const DenseMatrix<double>& a, const GeneralOptions& opts = {});

}  // namespace maxeig
