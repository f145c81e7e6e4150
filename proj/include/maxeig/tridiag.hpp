#pragma once

#include <span>
#include <vector>

#include "maxeig/linsolve.hpp"
#include "maxeig/numat.hpp"
#include "maxeig/trace.hpp"

namespace maxeig {

/// Similarity Diag(h)^-1 Q^c Diag(h) that moves every killing rate to the
/// right endpoint. h_0 = 1, h_n = h_{n-1} r_{n-1}.
struct HTransform {
  std::vector<double> h;
  std::vector<double> r;
  TridiagonalSystem transformed;
  double original_killing;  ///< c_N of the input
};

/// Builds h from the one-step recurrence
///   r_0 = 1 + c_0/b_0,  r_n = 1 + (a_n + c_n)/b_n - a_n/(b_n r_{n-1}).
/// When c_0..c_{N-1} already vanish, h = 1 and the system is returned as is.
/// Throws NonPositiveSequence("r", n) if the recurrence leaves (0, inf).
HTransform compute_h(const TridiagonalSystem& qc);

/// Efficient initials for a system killed only at the right endpoint.
struct InitialData {
  std::vector<double> mu;
  std::vector<double> phi;       ///< phi_n = sum_{k>=n} 1/(mu_k b_k), strictly decreasing
  std::vector<double> v0_tilde;  ///< sqrt(phi)
  std::vector<double> v0;        ///< v0_tilde normalized in L^2(mu)
  double delta1;
  double rayleigh;  ///< (v0, -Q v0)_mu
  double z0;        ///< z0_combination(delta1, rayleigh)
};

InitialData compute_initials(const TridiagonalSystem& qt);

/// max_n [ sqrt(phi_n) sum_{k<=n} mu_k sqrt(phi_k) + sum_{j>n} mu_j phi_j^{3/2} / sqrt(phi_n) ]
/// evaluated in O(N) with prefix and suffix sums.
double delta_bracket_max(std::span<const double> mu, std::span<const double> phi);

/// 7/(8 delta1) + rayleigh/8: the starting shift used for the birth-death tables.
double z0_combination(double delta1, double rayleigh);

/// Solves (-Q - z I) w = v for Q killed only at N through the running-sum form
/// of the explicit representation w(s) = A(s) + x B(s). O(N).
/// Throws DenominatorBreakdown when the denominator of x vanishes.
Vector<double> explicit_rqi_solve(const TridiagonalSystem& qt, const Measure& mu, double z,
                                  std::span<const double> v);

/// Bands of -Q - z I.
TridiagonalBands<double> negated_shifted_bands(const TridiagonalSystem& t, double z);

enum class TridiagSolver { explicit_formula, generic };

enum class Z0Choice {
  combination,    ///< 7/(8 delta1) + (v0, -Q v0)_mu / 8
  inverse_delta,  ///< 1 / delta1
  rayleigh,       ///< (v0, -Q v0)_mu for the selected v0
  value,          ///< caller supplied
};

enum class V0Choice { efficient, uniform };

struct TridiagOptions {
  double tol = 1e-10;
  double residual_tol = 1e-8;
  int max_iterations = 50;
  TridiagSolver solver = TridiagSolver::explicit_formula;
  Z0Choice z0 = Z0Choice::combination;
  double z0_value = 0.0;
  V0Choice v0 = V0Choice::efficient;
  bool keep_vectors = false;
};

struct TridiagRun {
  /// lambda_min(-Q~) and its eigenvector, normalized in L^2(mu).
  EigenpairResult<double> result;
  IterationTrace<double> trace;
  HTransform transform;
  InitialData initials;
};

/// compute_h -> compute_initials -> RQI on -Q~ in L^2(mu).
TridiagRun tridiag_rqi(const TridiagonalSystem& qc, const TridiagOptions& opts = {});

/// Maps (z, v) for -Q~ back to (m - z, Diag(h) v). With `l2_mu` the product
/// Diag(h) v is left unscaled.
EigenpairResult<double> recover_original(const EigenpairResult<double>& result, std::span<const double> h,
                                         double m, NormConvention norm = NormConvention::last_component_one);

inline EigenpairResult<double> recover_original(const EigenpairResult<double>& result,
                                                const HTransform& transform, double m,
                                                NormConvention norm = NormConvention::last_component_one) {
  return recover_original(result, transform.h, m, norm);
}

}  // namespace maxeig
