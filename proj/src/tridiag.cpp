#include "maxeig/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxeig/errors.hpp"
#include "weighted_rqi.hpp"

namespace maxeig {

HTransform compute_h(const TridiagonalSystem& qc) {
  const std::size_t n = qc.n();
  if (qc.killed_only_at_end()) {
    return {std::vector<double>(n + 1, 1.0), std::vector<double>(n, 1.0), qc, qc.c(n)};
  }

  std::vector<double> r(n);
  r[0] = 1.0 + qc.c(0) / qc.b(0);
  for (std::size_t i = 1; i < n; ++i) {
    r[i] = 1.0 + (qc.a(i) + qc.c(i)) / qc.b(i) - qc.a(i) / (qc.b(i) * r[i - 1]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(r[i] > 0.0) || !std::isfinite(r[i])) throw NonPositiveSequence("r", i);
  }

  std::vector<double> h(n + 1);
  h[0] = 1.0;
  for (std::size_t i = 1; i <= n; ++i) h[i] = h[i - 1] * r[i - 1];

  std::vector<double> lower(n), upper(n), killing(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) lower[i - 1] = qc.a(i) / r[i - 1];
  for (std::size_t i = 0; i < n; ++i) upper[i] = qc.b(i) * r[i];
  killing[n] = qc.a(n) + qc.c(n) - lower[n - 1];
  if (!(killing[n] > 0.0)) throw NonPositiveSequence("c_N", n);

  return {std::move(h), std::move(r), TridiagonalSystem(std::move(lower), std::move(upper), std::move(killing)),
          qc.c(n)};
}

double delta_bracket_max(std::span<const double> mu, std::span<const double> phi) {
  const std::size_t size = phi.size();
  std::vector<double> tail(size + 1, 0.0);
  for (std::size_t j = size; j-- > 0;) tail[j] = tail[j + 1] + mu[j] * phi[j] * std::sqrt(phi[j]);

  double best = 0.0;
  double head = 0.0;
  for (std::size_t n = 0; n < size; ++n) {
    const double root = std::sqrt(phi[n]);
    head += mu[n] * root;
    best = std::max(best, root * head + tail[n + 1] / root);
  }
  return best;
}

double z0_combination(double delta1, double rayleigh) { return 7.0 / (8.0 * delta1) + rayleigh / 8.0; }

namespace {

std::vector<double> negate(std::vector<double> v) {
  for (double& x : v) x = -x;
  return v;
}

double rayleigh_quotient(const TridiagonalSystem& q, const Measure& mu, std::span<const double> v) {
  const auto qv = negate(matvec(q, v));
  return weighted_inner<double>(v, qv, mu);
}

void require_end_killing(const TridiagonalSystem& qt) {
  if (!qt.killed_only_at_end()) throw InvalidInput("system must be killed only at the right endpoint");
  if (!(qt.c(qt.n()) > 0.0)) throw InvalidInput("killing rate at the right endpoint must be positive");
}

}  // namespace

InitialData compute_initials(const TridiagonalSystem& qt) {
  require_end_killing(qt);
  const std::size_t n = qt.n();

  InitialData d;
  d.mu.resize(n + 1);
  d.mu[0] = 1.0;
  for (std::size_t i = 1; i <= n; ++i) d.mu[i] = d.mu[i - 1] * qt.b(i - 1) / qt.a(i);

  d.phi.resize(n + 1);
  double tail = 0.0;
  for (std::size_t i = n + 1; i-- > 0;) {
    tail += 1.0 / (d.mu[i] * qt.b(i));
    d.phi[i] = tail;
  }

  const Measure mu(d.mu);
  d.v0_tilde.resize(n + 1);
  std::transform(d.phi.begin(), d.phi.end(), d.v0_tilde.begin(), [](double p) { return std::sqrt(p); });
  const double scale = weighted_norm<double>(d.v0_tilde, mu);
  d.v0 = d.v0_tilde;
  for (double& x : d.v0) x /= scale;

  d.delta1 = delta_bracket_max(d.mu, d.phi);
  d.rayleigh = rayleigh_quotient(qt, mu, d.v0);
  d.z0 = z0_combination(d.delta1, d.rayleigh);
  return d;
}

Vector<double> explicit_rqi_solve(const TridiagonalSystem& qt, const Measure& mu, double z,
                                  std::span<const double> v) {
  require_end_killing(qt);
  const std::size_t n = qt.n();
  if (v.size() != n + 1 || mu.size() != n + 1) throw DimensionError("explicit_rqi_solve: dimension mismatch");

  // A(s+1) = A(s) - (1/(mu_s b_s)) sum_{j<=s} mu_j (v_j + z A_j), likewise for B;
  // this is M_{s,j} = mu_j (kappa_s - kappa_{j-1}) summed without the triangle.
  Vector<double> a(n + 1), b(n + 1);
  a[0] = 0.0;
  b[0] = 1.0;
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    sum_a += mu[s] * (v[s] + z * a[s]);
    sum_b += mu[s] * b[s];
    const double t = 1.0 / (mu[s] * qt.b(s));
    a[s + 1] = a[s] - t * sum_a;
    b[s + 1] = b[s] - z * t * sum_b;
  }
  sum_a += mu[n] * (v[n] + z * a[n]);
  sum_b += mu[n] * b[n];

  const double end_rate = mu[n] * qt.b(n);
  const double denominator = end_rate * b[n] - z * sum_b;
  const double scale = std::abs(end_rate * b[n]) + std::abs(z * sum_b);
  if (!(std::abs(denominator) > 1e-30 * scale)) {
    throw DenominatorBreakdown("explicit_rqi_solve: denominator vanished at z = " + std::to_string(z));
  }
  const double x = (sum_a - end_rate * a[n]) / denominator;

  Vector<double> w(n + 1);
  for (std::size_t s = 0; s <= n; ++s) w[s] = a[s] + x * b[s];
  for (double value : w) {
    if (!std::isfinite(value)) throw DenominatorBreakdown("explicit_rqi_solve: solution overflowed");
  }
  return w;
}

TridiagonalBands<double> negated_shifted_bands(const TridiagonalSystem& t, double z) {
  const std::size_t order = t.order();
  TridiagonalBands<double> bands;
  bands.lower.resize(order - 1);
  bands.upper.resize(order - 1);
  bands.diag.resize(order);
  for (std::size_t i = 0; i < order; ++i) bands.diag[i] = -t.diagonal(i) - z;
  for (std::size_t i = 0; i + 1 < order; ++i) {
    bands.lower[i] = -t.a(i + 1);
    bands.upper[i] = -t.upper()[i];
  }
  return bands;
}

TridiagRun tridiag_rqi(const TridiagonalSystem& qc, const TridiagOptions& opts) {
  if (std::all_of(qc.killing().begin(), qc.killing().end(), [](double c) { return c == 0.0; })) {
    throw InvalidInput("tridiag_rqi: all killing rates vanish");
  }
  HTransform transform = compute_h(qc);
  const TridiagonalSystem& qt = transform.transformed;
  InitialData initials = compute_initials(qt);
  const Measure mu(initials.mu);

  Vector<double> v0 = initials.v0;
  if (opts.v0 == V0Choice::uniform) {
    v0.assign(qt.order(), 1.0);
    const double scale = weighted_norm<double>(v0, mu);
    for (double& x : v0) x /= scale;
  }

  double z0 = initials.z0;
  switch (opts.z0) {
    case Z0Choice::combination: break;
    case Z0Choice::inverse_delta: z0 = 1.0 / initials.delta1; break;
    case Z0Choice::rayleigh: z0 = rayleigh_quotient(qt, mu, v0); break;
    case Z0Choice::value: z0 = opts.z0_value; break;
  }

  const auto apply = [&](std::span<const double> v) { return negate(matvec(qt, v)); };
  const auto solve = [&](double z, std::span<const double> v) {
    if (opts.solver == TridiagSolver::explicit_formula) return explicit_rqi_solve(qt, mu, z, v);
    return tridiag_solve<double>(negated_shifted_bands(qt, z), v);
  };

  IterationTrace<double> trace(opts.keep_vectors);
  auto outcome = detail::weighted_rqi(apply, solve, mu, std::move(v0), z0,
                                      {opts.tol, opts.residual_tol, opts.max_iterations}, trace);

  EigenpairResult<double> result;
  result.eigenvalue = outcome.z;
  result.eigenvector = std::move(outcome.v);
  result.iterations = outcome.iterations;
  result.residual = outcome.residual;
  result.h = transform.h;
  result.norm = NormConvention::l2_mu;
  return {std::move(result), std::move(trace), std::move(transform), std::move(initials)};
}

EigenpairResult<double> recover_original(const EigenpairResult<double>& result, std::span<const double> h,
                                         double m, NormConvention norm) {
  if (result.eigenvector.size() != h.size()) throw DimensionError("recover_original: size mismatch");
  EigenpairResult<double> out = result;
  out.eigenvalue = m - result.eigenvalue;
  for (std::size_t i = 0; i < out.eigenvector.size(); ++i) out.eigenvector[i] *= h[i];
  out.shift = m;
  out.h.assign(h.begin(), h.end());
  switch (norm) {
    case NormConvention::last_component_one: normalize_last_component(out.eigenvector); break;
    case NormConvention::l1: {
      const double s = norm_l1<double>(out.eigenvector);
      for (double& x : out.eigenvector) x /= s;
      break;
    }
    case NormConvention::l2: {
      const double s = norm_l2<double>(out.eigenvector);
      for (double& x : out.eigenvector) x /= s;
      break;
    }
    case NormConvention::l2_mu: break;
  }
  out.norm = norm;
  return out;
}

}  // namespace maxeig
