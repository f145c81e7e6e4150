#include "maxeig/numat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxeig/errors.hpp"

namespace maxeig {

template <Scalar T>
void require_finite(std::span<const T> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!is_finite(values[i])) {
      throw InvalidInput(std::string(what) + ": non-finite entry at index " + std::to_string(i));
    }
  }
}

template <Scalar T>
DenseMatrix<T>::DenseMatrix(std::size_t order) : order_(order), entries_(order * order, T{}) {
  if (order == 0) throw DimensionError("matrix order must be at least 1");
}

template <Scalar T>
DenseMatrix<T>::DenseMatrix(std::size_t order, std::vector<T> entries)
    : order_(order), entries_(std::move(entries)) {
  if (order == 0) throw DimensionError("matrix order must be at least 1");
  if (entries_.size() != order * order) {
    throw DimensionError("expected " + std::to_string(order * order) + " entries, got " +
                         std::to_string(entries_.size()));
  }
  require_finite<T>(entries_, "matrix");
}

template <Scalar T>
DenseMatrix<T> DenseMatrix<T>::identity(std::size_t order) {
  DenseMatrix m(order);
  for (std::size_t i = 0; i < order; ++i) m(i, i) = T{1};
  return m;
}

template <Scalar T>
DenseMatrix<T> DenseMatrix<T>::shifted(T shift) const {
  DenseMatrix out = *this;
  for (std::size_t i = 0; i < order_; ++i) out(i, i) += shift;
  return out;
}

template <Scalar T>
DenseMatrix<T> DenseMatrix<T>::transposed() const {
  DenseMatrix out(order_);
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j < order_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

template <Scalar T>
double DenseMatrix<T>::max_abs() const {
  double m = 0.0;
  for (const T& x : entries_) m = std::max(m, std::abs(x));
  return m;
}

template class DenseMatrix<double>;
template class DenseMatrix<Complex>;

TridiagonalSystem::TridiagonalSystem(std::vector<double> lower, std::vector<double> upper,
                                     std::vector<double> killing)
    : lower_(std::move(lower)), upper_(std::move(upper)), killing_(std::move(killing)) {
  const std::size_t n = upper_.size();
  if (n == 0) throw DimensionError("tridiagonal system needs N >= 1");
  if (lower_.size() != n || killing_.size() != n + 1) {
    throw DimensionError("tridiagonal system: expected " + std::to_string(n) + " sub-diagonal and " +
                         std::to_string(n + 1) + " killing rates");
  }
  require_finite<double>(lower_, "a");
  require_finite<double>(upper_, "b");
  require_finite<double>(killing_, "c");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lower_[i] > 0.0)) throw InvalidInput("a_" + std::to_string(i + 1) + " must be positive");
    if (!(upper_[i] > 0.0)) throw InvalidInput("b_" + std::to_string(i) + " must be positive");
  }
  for (std::size_t i = 0; i <= n; ++i) {
    if (killing_[i] < 0.0) throw InvalidInput("c_" + std::to_string(i) + " must be nonnegative");
  }
}

double TridiagonalSystem::diagonal(std::size_t i) const {
  if (i < upper_.size()) return -(a(i) + upper_[i] + killing_[i]);
  return -(a(i) + killing_[i]);
}

bool TridiagonalSystem::killed_only_at_end() const {
  return std::all_of(killing_.begin(), killing_.end() - 1, [](double c) { return c == 0.0; });
}

DenseMatrix<double> TridiagonalSystem::dense() const {
  const std::size_t order = this->order();
  DenseMatrix<double> m(order);
  for (std::size_t i = 0; i < order; ++i) {
    if (i > 0) m(i, i - 1) = a(i);
    m(i, i) = diagonal(i);
    if (i + 1 < order) m(i, i + 1) = upper_[i];
  }
  return m;
}

Measure::Measure(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw DimensionError("measure must have at least one weight");
  require_finite<double>(weights_, "measure");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0)) throw InvalidInput("measure weight " + std::to_string(i) + " is not positive");
  }
  if (weights_[0] != 1.0) throw InvalidInput("measure must satisfy mu_0 = 1");
}

template <Scalar T>
Vector<T> matvec(const DenseMatrix<T>& a, std::span<const T> v) {
  if (v.size() != a.order()) throw DimensionError("matvec: dimension mismatch");
  Vector<T> out(a.order());
  for (std::size_t i = 0; i < a.order(); ++i) {
    const auto row = a.row(i);
    T s{};
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * v[j];
    out[i] = s;
  }
  return out;
}

// Same per-row summation order as matvec on dense(): zero entries add nothing.
Vector<double> matvec(const TridiagonalSystem& t, std::span<const double> v) {
  const std::size_t order = t.order();
  if (v.size() != order) throw DimensionError("matvec: dimension mismatch");
  Vector<double> out(order);
  for (std::size_t i = 0; i < order; ++i) {
    double s = 0.0;
    if (i > 0) s += t.a(i) * v[i - 1];
    s += t.diagonal(i) * v[i];
    if (i + 1 < order) s += t.upper()[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

template <Scalar T>
T weighted_inner(std::span<const T> u, std::span<const T> v, const Measure& mu) {
  if (u.size() != v.size() || u.size() != mu.size()) throw DimensionError("weighted_inner: dimension mismatch");
  T s{};
  for (std::size_t i = 0; i < u.size(); ++i) s += mu[i] * conj_value(u[i]) * v[i];
  return s;
}

template <Scalar T>
double weighted_norm(std::span<const T> v, const Measure& mu) {
  if (v.size() != mu.size()) throw DimensionError("weighted_norm: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += mu[i] * std::norm(v[i]);
  return std::sqrt(s);
}

template <Scalar T>
double norm_l1(std::span<const T> v) {
  double s = 0.0;
  for (const T& x : v) s += std::abs(x);
  return s;
}

template <Scalar T>
double norm_l2(std::span<const T> v) {
  double s = 0.0;
  for (const T& x : v) s += std::norm(x);
  return std::sqrt(s);
}

template <Scalar T>
double norm_inf(std::span<const T> v) {
  double s = 0.0;
  for (const T& x : v) s = std::max(s, std::abs(x));
  return s;
}

bool is_positive(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
}

namespace {

double max_ratio_of(std::span<const double> av, std::span<const double> v) {
  double best = av[0] / v[0];
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double r = av[i] / v[i];
    if (r > best) best = r;
  }
  return best;
}

void require_positive(std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) throw InvalidInput("max_ratio: vector entry " + std::to_string(i) + " is not positive");
  }
}

}  // namespace

double max_ratio(const DenseMatrix<double>& a, std::span<const double> v) {
  require_positive(v);
  const auto av = matvec(a, v);
  return max_ratio_of(av, v);
}

double max_ratio(const TridiagonalSystem& t, std::span<const double> v) {
  require_positive(v);
  const auto av = matvec(t, v);
  return max_ratio_of(av, v);
}

template <Scalar T>
Vector<T> row_sums(const DenseMatrix<T>& a) {
  Vector<T> out(a.order());
  for (std::size_t i = 0; i < a.order(); ++i) {
    T s{};
    for (const T& x : a.row(i)) s += x;
    out[i] = s;
  }
  return out;
}

bool has_nonnegative_off_diagonal(const DenseMatrix<double>& a) {
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j)
      if (i != j && a(i, j) < 0.0) return false;
  return true;
}

ShiftedMatrix shift_to_qc(const DenseMatrix<double>& a, bool require_metzler) {
  if (require_metzler && !has_nonnegative_off_diagonal(a)) {
    throw InvalidInput("shift_to_qc: matrix has negative off-diagonal entries");
  }
  const auto sums = row_sums(a);
  const double m = *std::max_element(sums.begin(), sums.end());
  return {a.shifted(-m), m};
}

template void require_finite<double>(std::span<const double>, const char*);
template void require_finite<Complex>(std::span<const Complex>, const char*);
template Vector<double> matvec(const DenseMatrix<double>&, std::span<const double>);
template Vector<Complex> matvec(const DenseMatrix<Complex>&, std::span<const Complex>);
template double weighted_inner(std::span<const double>, std::span<const double>, const Measure&);
template Complex weighted_inner(std::span<const Complex>, std::span<const Complex>, const Measure&);
template double weighted_norm(std::span<const double>, const Measure&);
template double weighted_norm(std::span<const Complex>, const Measure&);
template double norm_l1(std::span<const double>);
template double norm_l1(std::span<const Complex>);
template double norm_l2(std::span<const double>);
template double norm_l2(std::span<const Complex>);
template double norm_inf(std::span<const double>);
template double norm_inf(std::span<const Complex>);
template Vector<double> row_sums(const DenseMatrix<double>&);
template Vector<Complex> row_sums(const DenseMatrix<Complex>&);

}  // namespace maxeig
