#include <cmath>

#include "doctest.h"
#include "maxeig/general_init.hpp"
#include "maxeig/iterengine.hpp"
#include "maxeig/models.hpp"
#include "maxeig/tridiag.hpp"
#include "support.hpp"

using namespace maxeig;
using namespace maxeig::testing;

namespace {

template <Scalar T>
double pair_residual(const DenseMatrix<T>& a, T z, const Vector<T>& v) {
  const auto av = matvec(a, std::span<const T>(v));
  double r = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) r = std::max(r, std::abs(av[i] - z * v[i]));
  return r / norm_inf<T>(v);
}

double max_gap(std::span<const double> x, std::span<const double> y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]) / std::abs(y[i]));
  return worst;
}

std::vector<double> direction(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  const double first = out[0];
  for (auto& x : out) x /= first;
  return out;
}

}  // namespace

TEST_CASE("H-transform preserves the spectrum") {
  for (int trial = 0; trial < 50; ++trial) {
    const int n = uniform_int(1, 11);
    const auto t = random_tridiagonal(n, 0.1, 3.0);
    const auto before = oracle_eigenvalues(t.dense());
    const auto after = oracle_eigenvalues(compute_h(t).transformed.dense());
    for (std::size_t i = 0; i < before.size(); ++i) CHECK(std::abs(before[i] - after[i]) < 1e-8);
  }
}

TEST_CASE("explicit and generic tridiagonal solvers agree") {
  for (int trial = 0; trial < 50; ++trial) {
    const int n = uniform_int(1, 99);
    const auto qt = compute_h(random_tridiagonal(n)).transformed;
    const auto init = compute_initials(qt);
    const Measure mu(init.mu);
    std::vector<double> v(n + 1);
    for (auto& x : v) x = uniform(0.0, 1.0);
    const double z = uniform(0.0, 3.0) * init.z0;
    const auto w1 = explicit_rqi_solve(qt, mu, z, v);
    const auto w2 = tridiag_solve<double>(negated_shifted_bands(qt, z), v);
    const double scale = norm_inf<double>(w2);
    for (int i = 0; i <= n; ++i) CHECK(std::abs(w1[i] - w2[i]) <= 1e-8 * scale);
  }
}

TEST_CASE("dense sequences specialize to the tridiagonal closed forms") {
  for (int trial = 0; trial < 30; ++trial) {
    const int n = uniform_int(1, 30);
    const auto gi = compute_general_initials(random_tridiagonal(n).dense());
    const auto t = as_tridiagonal(gi.shifted.qc);
    REQUIRE(t.has_value());
    const auto ht = compute_h(*t);
    const auto init = compute_initials(ht.transformed);
    CHECK(max_gap(gi.h, ht.h) < 1e-10);
    CHECK(max_gap(gi.mu.weights(), init.mu) < 1e-10);
    CHECK(max_gap(direction(gi.phi), direction(init.phi)) < 1e-10);
    CHECK(max_gap(gi.start.v0, init.v0) < 1e-10);
  }
}

TEST_CASE("max_ratio bounds the Perron root from above") {
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(1, 12);
    const auto a = random_nonnegative(n, 0.01, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(0.05, 1.0);
    const double rho = oracle_rho(a);
    CHECK(max_ratio(a, v) >= rho * (1.0 - 1e-12));
    const auto run = algorithm2(a);
    for (double z : run.trace.values()) CHECK(z >= rho * (1.0 - 1e-12));
  }
}

TEST_CASE("shifting the matrix shifts the eigenvalue and keeps the eigenvector") {
  for (int trial = 0; trial < 30; ++trial) {
    const int n = uniform_int(2, 12);
    const auto a = random_nonnegative(n, 0.05, 1.0);
    const double m = std::ldexp(1.0, uniform_int(0, 4));
    const auto b = a.shifted(m);
    for (int which = 0; which < 2; ++which) {
      CAPTURE(which);
      const auto r1 = which == 0 ? algorithm1(a) : algorithm2(a);
      const auto r2 = which == 0 ? algorithm1(b) : algorithm2(b);
      CHECK(std::abs((r2.result.eigenvalue - r1.result.eigenvalue) - m) < 1e-10 * std::max(1.0, m));
      for (int i = 0; i < n; ++i) CHECK(std::abs(r1.result.eigenvector[i] - r2.result.eigenvector[i]) < 1e-10);
    }
  }
}

TEST_CASE("repeated runs produce bitwise-identical traces") {
  const auto a = random_nonnegative(10, 0.0, 1.0);
  CHECK(algorithm1(a).trace.values() == algorithm1(a).trace.values());
  CHECK(algorithm2(a).trace.values() == algorithm2(a).trace.values());
  CHECK(general_rqi(a).trace.values() == general_rqi(a).trace.values());
  const auto t = random_tridiagonal(40);
  CHECK(tridiag_rqi(t).trace.values() == tridiag_rqi(t).trace.values());
  const auto c = random_complex(5);
  CHECK(algorithm1(c).trace.values() == algorithm1(c).trace.values());
}

TEST_CASE("converged runs satisfy the eigen-equation") {
  for (int trial = 0; trial < 30; ++trial) {
    const int n = uniform_int(2, 12);
    const auto a = random_nonnegative(n, 0.05, 1.0);
    for (const auto& run : {algorithm1(a), algorithm2(a)}) {
      CHECK(pair_residual(a, run.result.eigenvalue, run.result.eigenvector) <=
            1e-8 * std::max(1.0, std::abs(run.result.eigenvalue)));
    }
    CHECK(general_rqi(a).original.residual <= 1e-8);

    const auto c = random_complex(n);
    const auto rc = algorithm1(c);
    CHECK(pair_residual(c, rc.result.eigenvalue, rc.result.eigenvector) <=
          1e-8 * std::max(1.0, std::abs(rc.result.eigenvalue)));

    const auto t = random_tridiagonal(n);
    const auto rt = tridiag_rqi(t);
    const auto back = recover_original(rt.result, rt.transform, 0.0);
    CHECK(pair_residual(t.dense(), back.eigenvalue, back.eigenvector) <= 1e-8 * std::max(1.0, std::abs(back.eigenvalue)));
  }
}
