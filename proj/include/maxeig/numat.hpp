#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

namespace maxeig {

using Complex = std::complex<double>;

/// Entry type of every vector and matrix: real or complex double.
template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Complex>;

enum class ScalarKind { real, complex };

template <Scalar T>
constexpr ScalarKind kind_of() {
  return std::same_as<T, double> ? ScalarKind::real : ScalarKind::complex;
}

template <Scalar T>
using Vector = std::vector<T>;

inline double conj_value(double x) { return x; }
inline Complex conj_value(const Complex& x) { return std::conj(x); }

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); }

/// Throws InvalidInput when any entry is NaN or infinite.
template <Scalar T>
void require_finite(std::span<const T> values, const char* what);

/// Square dense matrix stored row-major.
template <Scalar T>
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t order);
  DenseMatrix(std::size_t order, std::vector<T> entries);

  static DenseMatrix identity(std::size_t order);

  std::size_t order() const { return order_; }
  static constexpr ScalarKind kind() { return kind_of<T>(); }

  T operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }
  T& operator()(std::size_t i, std::size_t j) { return entries_[i * order_ + j]; }

  std::span<const T> row(std::size_t i) const { return {entries_.data() + i * order_, order_}; }
  std::span<const T> data() const { return entries_; }

  /// A + shift * I
  DenseMatrix shifted(T shift) const;
  DenseMatrix transposed() const;
  double max_abs() const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t order_;
  std::vector<T> entries_;
};

/// Tridiagonal Q-type matrix described by three rate sequences.
///
///   row i < N : a_i at (i, i-1), -(a_i + b_i + c_i) on the diagonal, b_i at (i, i+1)
///   row N     : a_N at (N, N-1), -(a_N + c_N) on the diagonal
///
/// with a_0 := 0. The diagonal is always derived, never stored. After the
/// H-transform only c_N is non-zero and plays the role of b_N.
class TridiagonalSystem {
 public:
  /// `lower` holds a_1..a_N, `upper` holds b_0..b_{N-1}, `killing` holds c_0..c_N.
  TridiagonalSystem(std::vector<double> lower, std::vector<double> upper, std::vector<double> killing);

  std::size_t n() const { return upper_.size(); }
  std::size_t order() const { return upper_.size() + 1; }

  /// a_i for 1 <= i <= N; a(0) == 0.
  double a(std::size_t i) const { return i == 0 ? 0.0 : lower_[i - 1]; }
  /// b_i for 0 <= i < N; b(N) is the killing rate c_N.
  double b(std::size_t i) const { return i < upper_.size() ? upper_[i] : killing_.back(); }
  double c(std::size_t i) const { return killing_[i]; }
  double diagonal(std::size_t i) const;

  std::span<const double> lower() const { return lower_; }
  std::span<const double> upper() const { return upper_; }
  std::span<const double> killing() const { return killing_; }

  /// True when c_0..c_{N-1} vanish.
  bool killed_only_at_end() const;

  /// Dense expansion; intended for oracles and I/O.
  DenseMatrix<double> dense() const;

  bool operator==(const TridiagonalSystem&) const = default;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> killing_;
};

/// Positive weights with mu_0 = 1.
class Measure {
 public:
  explicit Measure(std::vector<double> weights);

  static Measure uniform(std::size_t size) { return Measure(std::vector<double>(size, 1.0)); }

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

template <Scalar T>
Vector<T> matvec(const DenseMatrix<T>& a, std::span<const T> v);
Vector<double> matvec(const TridiagonalSystem& t, std::span<const double> v);

/// sum_i mu_i * conj(u_i) * v_i
template <Scalar T>
T weighted_inner(std::span<const T> u, std::span<const T> v, const Measure& mu);
template <Scalar T>
double weighted_norm(std::span<const T> v, const Measure& mu);

template <Scalar T>
double norm_l1(std::span<const T> v);
template <Scalar T>
double norm_l2(std::span<const T> v);
template <Scalar T>
double norm_inf(std::span<const T> v);

bool is_positive(std::span<const double> v);

/// max_i (Av)_i / v_i for strictly positive v; the lowest index wins ties.
double max_ratio(const DenseMatrix<double>& a, std::span<const double> v);
double max_ratio(const TridiagonalSystem& t, std::span<const double> v);

template <Scalar T>
Vector<T> row_sums(const DenseMatrix<T>& a);

struct ShiftedMatrix {
  DenseMatrix<double> qc;  ///< A - m I
  double m;                ///< maximal row sum of A
};

/// Q^c = A - (max_i sum_j a_ij) I. With `require_metzler` the off-diagonals
/// must be nonnegative.
ShiftedMatrix shift_to_qc(const DenseMatrix<double>& a, bool require_metzler = true);

bool has_nonnegative_off_diagonal(const DenseMatrix<double>& a);

}  // namespace maxeig
