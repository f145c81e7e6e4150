#pragma once

#include <optional>

#include "maxeig/numat.hpp"
#include "maxeig/trace.hpp"

namespace maxeig {

/// Which eigenvalue the caller wants reported. Q-matrices have rho(Q) < 0;
/// `min_of_negated` iterates on Q itself and reports lambda_min(-Q) = -rho(Q),
/// so every reported z (trace and result) is negated.
enum class Target { maximal, min_of_negated };

struct IterOptions {
  double tol = 1e-10;           ///< on |z_k - z_{k-1}| / max(1, |z_k|)
  double residual_tol = 1e-8;   ///< on ||A v - z v||_inf / max(1, |z|)
  int max_iterations = 100;
  Target target = Target::maximal;
  std::optional<double> z0;     ///< overrides the starting shift; always a shift for A itself
  bool keep_vectors = false;
};

enum class PowerNorm { l1, l2 };

struct PowerOptions {
  PowerNorm norm = PowerNorm::l1;
  int steps = 1000;
  double tol = 0.0;    ///< stop early on |z_k - z_{k-1}| < tol; 0 runs all steps
  double shift = 0.0;  ///< iterate on A + shift I, report z - shift
  Target target = Target::maximal;
  bool keep_vectors = false;
};

template <Scalar T>
struct PowerRun {
  Vector<T> vector;
  IterationTrace<T> trace;
};

/// v_k = A v_{k-1} / ||A v_{k-1}||,  z_k = ||A v_k||.
template <Scalar T>
PowerRun<T> power_iteration(const DenseMatrix<T>& a, Vector<T> v0, const PowerOptions& opts = {});

enum class ZUpdate {
  rayleigh,           ///< z = v* A v with ||v||_2 = 1
  weighted_rayleigh,  ///< z = (v, A v)_mu with ||v||_mu = 1
  max_ratio,          ///< z = max_i (A v)_i / v_i; real, positive iterates only
};

template <Scalar T>
struct RqiRun {
  EigenpairResult<T> result;
  IterationTrace<T> trace;
};

/// Shifted inverse iteration v_k = (z_{k-1} I - A)^{-1} v_{k-1}, normalized,
/// with the shift update selected by `update`. Each iterate is sign-fixed so
/// that its largest-magnitude component is positive real. A singular solve is
/// retried once with z perturbed by 1e-12 (1 + |z|).
///
/// Throws MaxIterationsExceeded, NonPositiveIterate (max_ratio only) and
/// SingularError when the retry also breaks down.
template <Scalar T>
RqiRun<T> rqi(const DenseMatrix<T>& a, Vector<T> v0, T z0, ZUpdate update, const IterOptions& opts = {},
              const Measure* weights = nullptr);

/// Uniform v0 and z0 = max_i (A v0 / v0)(i); Rayleigh shift updates.
/// For complex A the default z0 is the largest real part of the row sums.
/// Faster than algorithm2 but can be captured by a non-maximal eigenvalue.
template <Scalar T>
RqiRun<T> algorithm1(const DenseMatrix<T>& a, const IterOptions& opts = {});

/// Uniform v0, z_k = max_i (A v_k / v_k)(i) at every step. For nonnegative
/// irreducible A these shifts stay above rho(A).
RqiRun<double> algorithm2(const DenseMatrix<double>& a, const IterOptions& opts = {});

/// Uniform unit vector of the given order.
template <Scalar T>
Vector<T> uniform_vector(std::size_t order);

struct CaptureCheck {
  bool maximal;      ///< eigenvalue agrees with the algorithm 2 reference
  double reference;  ///< algorithm 2 value, in the same target convention
};

/// Cross-checks an eigenvalue (reported under `target`) against algorithm 2.
CaptureCheck check_maximal_capture(const DenseMatrix<double>& a, double eigenvalue, Target target,
                                   double rel = 1e-6);

}  // namespace maxeig
