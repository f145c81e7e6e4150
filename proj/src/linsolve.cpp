#include "maxeig/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "maxeig/errors.hpp"

namespace maxeig {

template <Scalar T>
Vector<T> tridiag_solve(const TridiagonalBands<T>& bands, std::span<const T> rhs) {
  const std::size_t n = bands.order();
  if (n == 0) throw DimensionError("tridiag_solve: empty system");
  if (bands.lower.size() + 1 != n || bands.upper.size() + 1 != n) {
    throw DimensionError("tridiag_solve: band lengths do not match the diagonal");
  }
  if (rhs.size() != n) throw DimensionError("tridiag_solve: dimension mismatch");

  std::vector<T> d(bands.diag);
  std::vector<T> du(bands.upper);
  std::vector<T> dl(bands.lower);
  std::vector<T> du2(n > 2 ? n - 2 : 0, T{});
  Vector<T> x(rhs.begin(), rhs.end());

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (std::abs(d[i]) < kBreakdownPivot) {
        throw BreakdownError("tridiag_solve: zero pivot at row " + std::to_string(i));
      }
      const T fact = dl[i] / d[i];
      d[i + 1] -= fact * du[i];
      x[i + 1] -= fact * x[i];
      dl[i] = T{};
    } else {
      // Interchange rows i and i+1.
      if (std::abs(dl[i]) < kBreakdownPivot) {
        throw BreakdownError("tridiag_solve: zero pivot at row " + std::to_string(i));
      }
      const T fact = d[i] / dl[i];
      d[i] = dl[i];
      const T temp = d[i + 1];
      d[i + 1] = du[i] - fact * temp;
      if (i + 2 < n) {
        dl[i] = du[i + 1];
        du[i + 1] = -fact * dl[i];
      }
      du[i] = temp;
      std::swap(x[i], x[i + 1]);
      x[i + 1] -= fact * x[i];
      if (i + 2 < n) {
        du2[i] = dl[i];
        dl[i] = T{};
      }
    }
  }
  if (std::abs(d[n - 1]) < kBreakdownPivot) {
    throw BreakdownError("tridiag_solve: zero pivot at row " + std::to_string(n - 1));
  }

  x[n - 1] /= d[n - 1];
  if (n > 1) x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
  if (n > 2) {
    for (std::size_t k = n - 2; k-- > 0;) {
      x[k] = (x[k] - du[k] * x[k + 1] - du2[k] * x[k + 2]) / d[k];
    }
  }
  for (const T& value : x) {
    if (!is_finite(value)) throw BreakdownError("tridiag_solve: solution overflowed");
  }
  return x;
}

template <Scalar T>
LuFactors<T> lu_factor(const DenseMatrix<T>& a) {
  const std::size_t n = a.order();
  LuFactors<T> f;
  f.order_ = n;
  f.lu_.assign(a.data().begin(), a.data().end());
  f.pivots_.resize(n);
  auto& lu = f.lu_;

  double umax = 0.0;
  double umin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double mag = std::abs(lu[i * n + k]);
      if (mag > best) {
        best = mag;
        p = i;
      }
    }
    if (best < kBreakdownPivot) {
      throw SingularError("lu_factor: pivot below threshold in column " + std::to_string(k));
    }
    f.pivots_[k] = p;
    if (p != k) {
      std::swap_ranges(lu.begin() + k * n, lu.begin() + (k + 1) * n, lu.begin() + p * n);
      f.parity_ = -f.parity_;
    }
    umax = std::max(umax, best);
    umin = std::min(umin, best);

    const T pivot = lu[k * n + k];
    const T* row_k = lu.data() + k * n;
    for (std::size_t i = k + 1; i < n; ++i) {
      T* row_i = lu.data() + i * n;
      const T l = row_i[k] / pivot;
      row_i[k] = l;
      if (l == T{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) row_i[j] -= l * row_k[j];
    }
  }
  f.rcond_ = umin / umax;
  return f;
}

template <Scalar T>
Vector<T> lu_solve(const LuFactors<T>& f, std::span<const T> rhs) {
  const std::size_t n = f.order();
  if (rhs.size() != n) throw DimensionError("lu_solve: dimension mismatch");
  const auto lu = f.packed();
  const auto piv = f.pivots();

  Vector<T> x(rhs.begin(), rhs.end());
  for (std::size_t k = 0; k < n; ++k) {
    if (piv[k] != k) std::swap(x[k], x[piv[k]]);
  }
  for (std::size_t i = 1; i < n; ++i) {
    T s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu[i * n + j] * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    T s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu[i * n + j] * x[j];
    x[i] = s / lu[i * n + i];
  }
  for (const T& value : x) {
    if (!is_finite(value)) throw SingularError("lu_solve: solution overflowed");
  }
  return x;
}

template Vector<double> tridiag_solve(const TridiagonalBands<double>&, std::span<const double>);
template Vector<Complex> tridiag_solve(const TridiagonalBands<Complex>&, std::span<const Complex>);
template LuFactors<double> lu_factor(const DenseMatrix<double>&);
template LuFactors<Complex> lu_factor(const DenseMatrix<Complex>&);
template Vector<double> lu_solve(const LuFactors<double>&, std::span<const double>);
template Vector<Complex> lu_solve(const LuFactors<Complex>&, std::span<const Complex>);

}  // namespace maxeig
