#pragma once

// Rayleigh quotient iteration in L^2(mu) for -Q, shared by the tridiagonal
// and the general pipelines. Only the operator and the shifted solve differ.

#include <algorithm>
#include <cmath>
#include <span>

#include "maxeig/errors.hpp"
#include "maxeig/numat.hpp"
#include "maxeig/trace.hpp"

namespace maxeig::detail {

struct WeightedRqiOptions {
  double tol;
  double residual_tol;
  int max_iterations;
};

struct WeightedRqiOutcome {
  double z;
  Vector<double> v;
  double residual;
  int iterations;
};

/// Flips the sign so that the largest-magnitude component is positive.
inline void fix_sign(Vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (v[best] < 0.0) {
    for (double& x : v) x = -x;
  }
}

inline double relative_change(double z, double previous) {
  return std::abs(z - previous) / std::max(1.0, std::abs(z));
}

/// `apply(v)` returns -Q v; `solve(z, v)` returns w with (-Q - z I) w = v.
template <class Apply, class Solve>
WeightedRqiOutcome weighted_rqi(Apply&& apply, Solve&& solve, const Measure& mu, Vector<double> v, double z,
                                const WeightedRqiOptions& opts, IterationTrace<double>& trace) {
  const auto eigen_residual = [&](std::span<const double> x, std::span<const double> ax, double value) {
    Vector<double> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = ax[i] - value * x[i];
    return weighted_norm<double>(r, mu);
  };

  double residual = eigen_residual(v, apply(v), z);
  trace.record(z, residual, v);
  if (residual <= opts.residual_tol * std::max(1.0, std::abs(z))) {
    trace.finish(Termination::converged_at_start);
    return {z, std::move(v), residual, 0};
  }

  for (int k = 1; k <= opts.max_iterations; ++k) {
    Vector<double> w;
    try {
      w = solve(z, v);
    } catch (const SingularError&) {
      w = solve(z + 1e-12 * (1.0 + std::abs(z)), v);
    }
    const double scale = weighted_norm<double>(w, mu);
    for (double& x : w) x /= scale;
    fix_sign(w);
    v = std::move(w);

    const auto av = apply(v);
    const double z_next = weighted_inner<double>(v, av, mu);
    residual = eigen_residual(v, av, z_next);
    trace.record(z_next, residual, v);

    const bool settled = relative_change(z_next, z) < opts.tol;
    z = z_next;
    if (settled && residual <= opts.residual_tol * std::max(1.0, std::abs(z))) {
      trace.finish(Termination::converged);
      return {z, std::move(v), residual, k};
    }
  }
  trace.finish(Termination::max_iterations);
  throw MaxIterationsExceeded(opts.max_iterations);
}

}  // namespace maxeig::detail
