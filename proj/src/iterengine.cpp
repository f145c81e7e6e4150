#include "maxeig/iterengine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxeig/errors.hpp"
#include "maxeig/linsolve.hpp"

namespace maxeig {

namespace {

template <Scalar T>
T reported(T z, Target target) {
  return target == Target::min_of_negated ? T{} - z : z;
}

template <Scalar T>
double vector_norm(std::span<const T> v, const Measure* weights) {
  return weights ? weighted_norm<T>(v, *weights) : norm_l2<T>(v);
}

template <Scalar T>
void scale_by(Vector<T>& v, T factor) {
  for (T& x : v) x *= factor;
}

// Largest-magnitude component becomes positive real; lowest index wins ties.
template <Scalar T>
void fix_phase(Vector<T>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  const double mag = std::abs(v[best]);
  if (mag == 0.0) return;
  if constexpr (std::same_as<T, double>) {
    if (v[best] < 0.0) scale_by(v, -1.0);
  } else {
    const Complex phase = std::conj(v[best]) / mag;
    scale_by(v, phase);
    v[best] = Complex(v[best].real(), 0.0);
  }
}

template <Scalar T>
double residual_inf(std::span<const T> v, std::span<const T> av, T z) {
  double r = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) r = std::max(r, std::abs(av[i] - z * v[i]));
  return r;
}

template <Scalar T>
Vector<T> shifted_solve(const DenseMatrix<T>& a, T z, std::span<const T> v) {
  DenseMatrix<T> m = a;
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j) m(i, j) = -m(i, j);
  return dense_solve(m.shifted(z), v);
}

template <Scalar T>
T next_shift(const DenseMatrix<T>& a, std::span<const T> v, std::span<const T> av, ZUpdate update,
             const Measure* weights, int k) {
  switch (update) {
    case ZUpdate::rayleigh: {
      T num{};
      T den{};
      for (std::size_t i = 0; i < v.size(); ++i) {
        num += conj_value(v[i]) * av[i];
        den += conj_value(v[i]) * v[i];
      }
      return num / den;
    }
    case ZUpdate::weighted_rayleigh:
      return weighted_inner<T>(v, av, *weights) / weighted_inner<T>(v, v, *weights);
    case ZUpdate::max_ratio:
      if constexpr (std::same_as<T, double>) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (!(v[i] > 0.0)) throw NonPositiveIterate(k, i);
        }
        return max_ratio(a, v);
      } else {
        throw InvalidInput("max_ratio shift update is undefined for complex matrices");
      }
  }
  return T{};
}

}  // namespace

template <Scalar T>
Vector<T> uniform_vector(std::size_t order) {
  return Vector<T>(order, T{1.0 / std::sqrt(static_cast<double>(order))});
}

template <Scalar T>
PowerRun<T> power_iteration(const DenseMatrix<T>& a, Vector<T> v0, const PowerOptions& opts) {
  if (v0.size() != a.order()) throw DimensionError("power_iteration: dimension mismatch");
  const DenseMatrix<T> shifted = opts.shift == 0.0 ? a : a.shifted(T{opts.shift});
  const auto norm = [&](std::span<const T> x) {
    return opts.norm == PowerNorm::l1 ? norm_l1<T>(x) : norm_l2<T>(x);
  };

  PowerRun<T> run{std::move(v0), IterationTrace<T>(opts.keep_vectors)};
  Vector<T>& v = run.vector;
  scale_by(v, T{1.0 / norm(v)});

  auto av = matvec(shifted, std::span<const T>(v));
  double z = norm(av);
  const auto record = [&] {
    run.trace.record(reported<T>(T{z - opts.shift}, opts.target), residual_inf<T>(v, av, T{z}), v);
  };
  record();
  for (int k = 1; k <= opts.steps; ++k) {
    v = av;
    scale_by(v, T{1.0 / z});
    av = matvec(shifted, std::span<const T>(v));
    const double previous = z;
    z = norm(av);
    record();
    if (opts.tol > 0.0 && std::abs(z - previous) < opts.tol * std::max(1.0, z)) {
      run.trace.finish(Termination::converged);
      return run;
    }
  }
  run.trace.finish(Termination::step_limit);
  return run;
}

template <Scalar T>
RqiRun<T> rqi(const DenseMatrix<T>& a, Vector<T> v0, T z0, ZUpdate update, const IterOptions& opts,
              const Measure* weights) {
  if (v0.size() != a.order()) throw DimensionError("rqi: dimension mismatch");
  if (update == ZUpdate::weighted_rayleigh && weights == nullptr) {
    throw InvalidInput("rqi: weighted Rayleigh update needs a measure");
  }
  const Measure* norm_weights = update == ZUpdate::weighted_rayleigh ? weights : nullptr;

  RqiRun<T> run{{}, IterationTrace<T>(opts.keep_vectors)};
  Vector<T> v = std::move(v0);
  scale_by(v, T{1.0 / vector_norm<T>(v, norm_weights)});
  T z = z0;

  auto av = matvec(a, std::span<const T>(v));
  double residual = residual_inf<T>(v, av, z);
  run.trace.record(reported(z, opts.target), residual, v);

  const auto finish = [&](Termination reason, int iterations) {
    run.trace.finish(reason);
    run.result.eigenvalue = reported(z, opts.target);
    run.result.eigenvector = v;
    run.result.iterations = iterations;
    run.result.residual = residual;
    run.result.norm = norm_weights ? NormConvention::l2_mu : NormConvention::l2;
    return run;
  };

  if (residual <= opts.residual_tol * std::max(1.0, std::abs(z))) {
    return finish(Termination::converged_at_start, 0);
  }

  for (int k = 1; k <= opts.max_iterations; ++k) {
    Vector<T> w;
    try {
      w = shifted_solve(a, z, std::span<const T>(v));
    } catch (const SingularError&) {
      w = shifted_solve(a, T{z + 1e-12 * (1.0 + std::abs(z))}, std::span<const T>(v));
    }
    scale_by(w, T{1.0 / vector_norm<T>(w, norm_weights)});
    fix_phase(w);
    v = std::move(w);

    av = matvec(a, std::span<const T>(v));
    const T z_next = next_shift(a, std::span<const T>(v), std::span<const T>(av), update, weights, k);
    residual = residual_inf<T>(v, av, z_next);
    run.trace.record(reported(z_next, opts.target), residual, v);

    const bool settled = std::abs(z_next - z) / std::max(1.0, std::abs(z_next)) < opts.tol;
    z = z_next;
    if (settled && residual <= opts.residual_tol * std::max(1.0, std::abs(z))) {
      return finish(Termination::converged, k);
    }
  }
  run.trace.finish(Termination::max_iterations);
  throw MaxIterationsExceeded(opts.max_iterations);
}

template <Scalar T>
RqiRun<T> algorithm1(const DenseMatrix<T>& a, const IterOptions& opts) {
  auto v0 = uniform_vector<T>(a.order());
  T z0{};
  if (opts.z0) {
    z0 = T{*opts.z0};
  } else if constexpr (std::same_as<T, double>) {
    z0 = max_ratio(a, v0);
  } else {
    const auto sums = row_sums(a);
    double best = sums[0].real();
    for (const auto& s : sums) best = std::max(best, s.real());
    z0 = T{best};
  }
  return rqi(a, std::move(v0), z0, ZUpdate::rayleigh, opts);
}

RqiRun<double> algorithm2(const DenseMatrix<double>& a, const IterOptions& opts) {
  auto v0 = uniform_vector<double>(a.order());
  const double z0 = opts.z0 ? *opts.z0 : max_ratio(a, v0);
  return rqi(a, std::move(v0), z0, ZUpdate::max_ratio, opts);
}

CaptureCheck check_maximal_capture(const DenseMatrix<double>& a, double eigenvalue, Target target, double rel) {
  IterOptions opts;
  opts.target = target;
  const double reference = algorithm2(a, opts).result.eigenvalue;
  const bool maximal = std::abs(eigenvalue - reference) <= rel * std::max(1.0, std::abs(reference));
  return {maximal, reference};
}

template Vector<double> uniform_vector<double>(std::size_t);
template Vector<Complex> uniform_vector<Complex>(std::size_t);
template PowerRun<double> power_iteration(const DenseMatrix<double>&, Vector<double>, const PowerOptions&);
template PowerRun<Complex> power_iteration(const DenseMatrix<Complex>&, Vector<Complex>, const PowerOptions&);
template RqiRun<double> rqi(const DenseMatrix<double>&, Vector<double>, double, ZUpdate, const IterOptions&,
                            const Measure*);
template RqiRun<Complex> rqi(const DenseMatrix<Complex>&, Vector<Complex>, Complex, ZUpdate, const IterOptions&,
                             const Measure*);
template RqiRun<double> algorithm1(const DenseMatrix<double>&, const IterOptions&);
template RqiRun<Complex> algorithm1(const DenseMatrix<Complex>&, const IterOptions&);

}  // namespace maxeig
