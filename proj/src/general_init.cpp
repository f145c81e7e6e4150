#include "maxeig/general_init.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxeig/errors.hpp"
#include "maxeig/linsolve.hpp"
#include "weighted_rqi.hpp"

namespace maxeig {

namespace {

// Solves the order-1 system obtained by pinning unknown 0 to 1.
// coeff(i, j) is the coefficient of unknown j in equation i; `rows` lists the
// equations that are kept.
template <class Coeff>
Vector<double> solve_pinned(std::size_t order, std::size_t first_row, Coeff&& coeff) {
  const std::size_t n = order - 1;
  Vector<double> x(order, 1.0);
  if (n == 0) return x;
  DenseMatrix<double> m(n);
  Vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t row = first_row + i;
    for (std::size_t j = 1; j < order; ++j) m(i, j - 1) = coeff(row, j);
    rhs[i] = -coeff(row, 0);
  }
  const auto tail = dense_solve<double>(m, rhs);
  std::copy(tail.begin(), tail.end(), x.begin() + 1);
  return x;
}

void require_positive(std::span<const double> v, const char* name) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) throw NonPositiveSequence(name, i);
  }
}

std::vector<double> negated(std::vector<double> v) {
  for (double& x : v) x = -x;
  return v;
}

double safe_shift(std::span<const double> mu, std::span<const double> phi) {
  std::vector<double> scaled(phi.begin(), phi.end());
  for (double& p : scaled) p /= phi[0];
  if (scaled.size() < 2 || scaled[1] >= 1.0) return -1.0;
  return (1.0 - scaled[1]) / delta_bracket_max(mu, scaled);
}

}  // namespace

Vector<double> solve_h_general(const DenseMatrix<double>& qc) {
  auto h = solve_pinned(qc.order(), 0, [&](std::size_t i, std::size_t j) { return qc(i, j); });
  require_positive(h, "h");
  return h;
}

DenseMatrix<double> h_transform_general(const DenseMatrix<double>& qc, std::span<const double> h) {
  if (h.size() != qc.order()) throw DimensionError("h_transform_general: dimension mismatch");
  require_positive(h, "h");
  DenseMatrix<double> qt(qc.order());
  for (std::size_t i = 0; i < qc.order(); ++i)
    for (std::size_t j = 0; j < qc.order(); ++j) qt(i, j) = qc(i, j) * h[j] / h[i];
  return qt;
}

DenseMatrix<double> jump_matrix(const DenseMatrix<double>& qt) {
  const std::size_t n = qt.order();
  DenseMatrix<double> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rate = -qt(i, i);
    if (!(rate > 0.0)) throw InvalidInput("jump_matrix: diagonal entry " + std::to_string(i) + " is not negative");
    for (std::size_t j = 0; j < n; ++j) p(i, j) = i == j ? 0.0 : qt(i, j) / rate;
  }
  return p;
}

Vector<double> solve_phi_general(const DenseMatrix<double>& qt) {
  const auto p = jump_matrix(qt);
  auto phi = solve_pinned(qt.order(), 1, [&](std::size_t i, std::size_t j) {
    return (i == j ? 1.0 : 0.0) - p(i, j);
  });
  require_positive(phi, "phi");
  return phi;
}

Measure solve_mu_general(const DenseMatrix<double>& qt) {
  auto mu = solve_pinned(qt.order(), 0, [&](std::size_t i, std::size_t j) { return qt(j, i); });
  require_positive(mu, "mu");
  return Measure(std::move(mu));
}

StartingPoint initials_general(const DenseMatrix<double>& qt, std::span<const double> phi, const Measure& mu) {
  if (phi.size() != qt.order() || mu.size() != qt.order()) throw DimensionError("initials_general: size mismatch");
  require_positive(phi, "phi");
  if (phi.size() > 1 && std::all_of(phi.begin(), phi.end(), [&](double p) { return p == phi[0]; })) {
    throw InvalidInput("initials_general: phi must decrease away from the origin");
  }

  StartingPoint start;
  start.v0.resize(phi.size());
  std::transform(phi.begin(), phi.end(), start.v0.begin(), [](double p) { return std::sqrt(p); });
  const double scale = weighted_norm<double>(start.v0, mu);
  for (double& x : start.v0) x /= scale;

  const auto qv = negated(matvec(qt, std::span<const double>(start.v0)));
  start.z0_rayleigh = weighted_inner<double>(start.v0, qv, mu);
  const double safe = safe_shift(mu.weights(), phi);
  if (safe > 0.0) start.z0_safe = safe;
  return start;
}

GeneralInitials compute_general_initials(const DenseMatrix<double>& a) {
  auto shifted = shift_to_qc(a);
  auto h = solve_h_general(shifted.qc);
  auto qt = h_transform_general(shifted.qc, h);
  auto phi = solve_phi_general(qt);
  auto mu = solve_mu_general(qt);
  auto start = initials_general(qt, phi, mu);
  return {std::move(shifted), std::move(h), std::move(qt), std::move(phi), std::move(mu), std::move(start)};
}

std::optional<TridiagonalSystem> as_tridiagonal(const DenseMatrix<double>& qc) {
  const std::size_t order = qc.order();
  if (order < 2) return std::nullopt;
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = 0; j < order; ++j)
      if ((j + 1 < i || j > i + 1) && qc(i, j) != 0.0) return std::nullopt;

  std::vector<double> lower(order - 1), upper(order - 1), killing(order);
  for (std::size_t i = 0; i + 1 < order; ++i) {
    lower[i] = qc(i + 1, i);
    upper[i] = qc(i, i + 1);
    if (!(lower[i] > 0.0) || !(upper[i] > 0.0)) return std::nullopt;
  }
  for (std::size_t i = 0; i < order; ++i) {
    double sum = qc(i, i);
    if (i > 0) sum += qc(i, i - 1);
    if (i + 1 < order) sum += qc(i, i + 1);
    // Row sums of Q^c are nonpositive; clip rounding noise on the maximal row.
    killing[i] = std::max(0.0, -sum);
  }
  return TridiagonalSystem(std::move(lower), std::move(upper), std::move(killing));
}

GeneralRun general_rqi(const DenseMatrix<double>& a, const GeneralOptions& opts) {
  const ShiftedMatrix shifted = shift_to_qc(a);
  const detail::WeightedRqiOptions rqi_opts{opts.tol, opts.residual_tol, opts.max_iterations};

  GeneralRun run{{}, 0.0, IterationTrace<double>(opts.keep_vectors), shifted.m, 0.0, false};

  const auto pick_z0 = [&](double rayleigh, std::optional<double> safe) {
    switch (opts.z0) {
      case GeneralZ0::safe:
        if (safe) return *safe;
        run.safe_z0_unavailable = true;
        return rayleigh;
      case GeneralZ0::rayleigh: return rayleigh;
      case GeneralZ0::value: return opts.z0_value;
    }
    return rayleigh;
  };
  const auto uniform_in = [](const Measure& mu) {
    Vector<double> v(mu.size(), 1.0);
    const double scale = weighted_norm<double>(v, mu);
    for (double& x : v) x /= scale;
    return v;
  };

  detail::WeightedRqiOutcome outcome;
  Vector<double> h;
  std::optional<TridiagonalSystem> tri =
      opts.tridiagonal_fast_path ? as_tridiagonal(shifted.qc) : std::optional<TridiagonalSystem>{};
  if (tri && std::any_of(tri->killing().begin(), tri->killing().end(), [](double c) { return c > 0.0; })) {
    run.used_tridiagonal_path = true;
    HTransform transform = compute_h(*tri);
    const TridiagonalSystem& qt = transform.transformed;
    const InitialData init = compute_initials(qt);
    const Measure mu(init.mu);

    Vector<double> v0 = opts.v0 == V0Choice::uniform ? uniform_in(mu) : init.v0;
    const auto apply = [&](std::span<const double> v) { return negated(matvec(qt, v)); };
    const double rayleigh = weighted_inner<double>(v0, apply(v0), mu);
    const double safe = safe_shift(init.mu, init.phi);
    run.z0 = pick_z0(rayleigh, safe > 0.0 ? std::optional<double>(safe) : std::nullopt);

    const auto solve = [&](double z, std::span<const double> v) { return explicit_rqi_solve(qt, mu, z, v); };
    outcome = detail::weighted_rqi(apply, solve, mu, std::move(v0), run.z0, rqi_opts, run.trace);
    h = std::move(transform.h);
  } else {
    h = solve_h_general(shifted.qc);
    const DenseMatrix<double> qt = h_transform_general(shifted.qc, h);
    const Measure mu = solve_mu_general(qt);
    const Vector<double> phi = solve_phi_general(qt);
    StartingPoint start = initials_general(qt, phi, mu);

    Vector<double> v0 = start.v0;
    double rayleigh = start.z0_rayleigh;
    const auto apply = [&](std::span<const double> v) { return negated(matvec(qt, v)); };
    if (opts.v0 == V0Choice::uniform) {
      v0 = uniform_in(mu);
      rayleigh = weighted_inner<double>(v0, apply(v0), mu);
    }
    run.z0 = pick_z0(rayleigh, start.z0_safe);

    DenseMatrix<double> negated_qt(qt.order());
    for (std::size_t i = 0; i < qt.order(); ++i)
      for (std::size_t j = 0; j < qt.order(); ++j) negated_qt(i, j) = -qt(i, j);
    const auto solve = [&](double z, std::span<const double> v) {
      return dense_solve<double>(negated_qt.shifted(-z), v);
    };
    outcome = detail::weighted_rqi(apply, solve, mu, std::move(v0), run.z0, rqi_opts, run.trace);
  }

  EigenpairResult<double> transformed;
  transformed.eigenvalue = outcome.z;
  transformed.eigenvector = std::move(outcome.v);
  transformed.iterations = outcome.iterations;
  transformed.residual = outcome.residual;

  run.original = recover_original(transformed, std::span<const double>(h), shifted.m, opts.output_norm);
  const Vector<double>& g = run.original.eigenvector;
  const Vector<double> ag = matvec(a, std::span<const double>(g));
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(ag[i] - run.original.eigenvalue * g[i]));
  run.original.residual = worst / norm_inf<double>(g);
  run.lambda_min = outcome.z;
  return run;
}

}  // namespace maxeig
