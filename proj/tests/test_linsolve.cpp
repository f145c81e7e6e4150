#include <cmath>

#include "doctest.h"
#include "maxeig/errors.hpp"
#include "maxeig/linsolve.hpp"
#include "maxeig/models.hpp"
#include "maxeig/tridiag.hpp"
#include "support.hpp"

using namespace maxeig;
using namespace maxeig::testing;

namespace {

template <Scalar T>
double residual(const DenseMatrix<T>& a, const Vector<T>& x, const Vector<T>& b) {
  auto ax = matvec(a, std::span<const T>(x));
  for (std::size_t i = 0; i < ax.size(); ++i) ax[i] -= b[i];
  return norm_inf<T>(ax) / std::max(1.0, norm_inf<T>(b));
}

TridiagonalBands<double> bands_of(const DenseMatrix<double>& a) {
  TridiagonalBands<double> t;
  const std::size_t n = a.order();
  for (std::size_t i = 0; i < n; ++i) {
    t.diag.push_back(a(i, i));
    if (i + 1 < n) {
      t.lower.push_back(a(i + 1, i));
      t.upper.push_back(a(i, i + 1));
    }
  }
  return t;
}

}  // namespace

TEST_CASE("dense solve of a 2x2 system") {
  const DenseMatrix<double> a(2, {2, 1, 1, 2});
  const Vector<double> b{3, 3};
  const auto x = dense_solve(a, std::span<const double>(b));
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("dense solve with the identity returns the right-hand side") {
  const Vector<double> b{0.5, -2.0, 7.25};
  CHECK(dense_solve(DenseMatrix<double>::identity(3), std::span<const double>(b)) == b);
}

TEST_CASE("partial pivoting handles a zero leading entry") {
  const DenseMatrix<double> a(2, {0, 1, 1, 0});
  const Vector<double> b{2, 5};
  const auto f = lu_factor(a);
  CHECK(f.parity() == -1);
  CHECK(f.pivots()[0] == 1);
  CHECK(lu_solve(f, std::span<const double>(b)) == Vector<double>{5, 2});
}

TEST_CASE("singular matrices are rejected") {
  CHECK_THROWS_AS(lu_factor(DenseMatrix<double>(2, {1, 2, 2, 4})), SingularError);
  CHECK_THROWS_AS(lu_factor(DenseMatrix<double>(2)), SingularError);
  TridiagonalBands<double> t{{1.0}, {1.0, 1.0}, {1.0}};
  const Vector<double> b{1, 1};
  CHECK_THROWS_AS(tridiag_solve(t, std::span<const double>(b)), BreakdownError);
}

TEST_CASE("dimension mismatches throw") {
  const Vector<double> b{1, 2, 3};
  CHECK_THROWS_AS(dense_solve(DenseMatrix<double>::identity(2), std::span<const double>(b)), DimensionError);
  TridiagonalBands<double> t{{1.0}, {4.0, 4.0}, {1.0}};
  CHECK_THROWS_AS(tridiag_solve(t, std::span<const double>(b)), DimensionError);
  TridiagonalBands<double> bad{{1.0, 1.0}, {4.0, 4.0}, {1.0}};
  const Vector<double> b2{1, 2};
  CHECK_THROWS_AS(tridiag_solve(bad, std::span<const double>(b2)), DimensionError);
}

TEST_CASE("first shifted solve of algorithm 1 on the negative example") {
  const auto a = negative3();
  const auto shifted = DenseMatrix<double>::identity(3).shifted(23.0);
  DenseMatrix<double> m(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = shifted(i, j) - a(i, j);
  const Vector<double> v(3, 1.0 / std::sqrt(3.0));
  auto w = dense_solve(m, std::span<const double>(v));
  const double n2 = norm_l2<double>(w);
  for (auto& x : w) x /= n2;
  const auto aw = matvec(a, std::span<const double>(w));
  double z = 0.0;
  for (std::size_t i = 0; i < 3; ++i) z += w[i] * aw[i];
  CHECK(std::abs(z - 17.3772) < 5e-5);
}

TEST_CASE("tridiagonal solver pivots when the diagonal is small") {
  TridiagonalBands<double> t{{1.0, 1.0}, {1e-40, 1e-40, 1.0}, {1.0, 1.0}};
  const Vector<double> b{1, 2, 3};
  DenseMatrix<double> dense(3, {1e-40, 1, 0, 1, 1e-40, 1, 0, 1, 1});
  const auto x = tridiag_solve(t, std::span<const double>(b));
  CHECK(residual(dense, x, b) < 1e-14);
}

TEST_CASE("random dense systems have small residuals") {
  for (int trial = 0; trial < 30; ++trial) {
    const int n = uniform_int(1, 40);
    const auto a = random_real(n);
    Vector<double> b(n);
    for (auto& x : b) x = uniform(-1, 1);
    CHECK(residual(a, dense_solve(a, std::span<const double>(b)), b) < 1e-12);

    const auto c = random_complex(n);
    Vector<Complex> bc(n);
    for (auto& x : bc) x = Complex(uniform(-1, 1), uniform(-1, 1));
    CHECK(residual(c, dense_solve(c, std::span<const Complex>(bc)), bc) < 1e-12);
  }
}

TEST_CASE("tridiagonal solver agrees with dense elimination") {
  for (int trial = 0; trial < 30; ++trial) {
    const int n = uniform_int(1, 60);
    const auto q = random_tridiagonal(n);
    const double z = uniform(-3, 3);
    const auto bands = negated_shifted_bands(q, z);
    DenseMatrix<double> dense = negate(q.dense()).shifted(-z);
    CHECK(bands_of(dense).diag == bands.diag);
    Vector<double> b(n + 1);
    for (auto& x : b) x = uniform(0.1, 1);
    const auto x1 = tridiag_solve(bands, std::span<const double>(b));
    const auto x2 = dense_solve(dense, std::span<const double>(b));
    for (int i = 0; i <= n; ++i) CHECK(std::abs(x1[i] - x2[i]) <= 1e-9 * std::max(1.0, std::abs(x2[i])));
  }
}

TEST_CASE("lu conditioning hint is in (0, 1]") {
  const auto f = lu_factor(random_real(8));
  CHECK(f.rcond_estimate() > 0.0);
  CHECK(f.rcond_estimate() <= 1.0);
  CHECK(lu_factor(DenseMatrix<double>::identity(4)).rcond_estimate() == 1.0);
}
