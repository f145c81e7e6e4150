#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maxeig/numat.hpp"

namespace maxeig {

/// Pivots with magnitude below this value are treated as exact breakdown.
inline constexpr double kBreakdownPivot = 1e-30;

/// General tridiagonal coefficients: lower[i] = T(i+1, i), upper[i] = T(i, i+1).
template <Scalar T>
struct TridiagonalBands {
  std::vector<T> lower;
  std::vector<T> diag;
  std::vector<T> upper;

  std::size_t order() const { return diag.size(); }
};

/// Solves T w = rhs by Gaussian elimination with row interchanges between
/// adjacent rows (the LAPACK gtsv scheme). Throws BreakdownError on a pivot
/// below kBreakdownPivot.
template <Scalar T>
Vector<T> tridiag_solve(const TridiagonalBands<T>& bands, std::span<const T> rhs);

/// Packed P A = L U with unit lower L.
template <Scalar T>
class LuFactors {
 public:
  std::size_t order() const { return order_; }
  std::span<const T> packed() const { return lu_; }
  std::span<const std::size_t> pivots() const { return pivots_; }
  /// +1 or -1 according to the number of row swaps.
  int parity() const { return parity_; }
  /// min|u_ii| / max|u_ii|; a cheap conditioning hint, not a bound.
  double rcond_estimate() const { return rcond_; }

 private:
  template <Scalar U>
  friend LuFactors<U> lu_factor(const DenseMatrix<U>& a);

  std::size_t order_ = 0;
  std::vector<T> lu_;
  std::vector<std::size_t> pivots_;
  int parity_ = 1;
  double rcond_ = 0.0;
};

/// Partial pivoting on the largest column magnitude. Throws SingularError
/// when the chosen pivot is below kBreakdownPivot.
template <Scalar T>
LuFactors<T> lu_factor(const DenseMatrix<T>& a);

template <Scalar T>
Vector<T> lu_solve(const LuFactors<T>& f, std::span<const T> rhs);

/// Factor and solve in one call.
template <Scalar T>
Vector<T> dense_solve(const DenseMatrix<T>& a, std::span<const T> rhs) {
  return lu_solve(lu_factor(a), rhs);
}

}  // namespace maxeig
