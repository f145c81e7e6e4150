#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "maxeig/numat.hpp"

namespace maxeig::testing {

/// Fixed-seed generator so every property run sees the same cases.
inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20171028);
  return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline TridiagonalSystem random_tridiagonal(int n, double lo = 0.5, double hi = 2.0, bool killing = true) {
  std::vector<double> a(n), b(n), c(n + 1, 0.0);
  for (auto& x : a) x = uniform(lo, hi);
  for (auto& x : b) x = uniform(lo, hi);
  if (killing) {
    for (auto& x : c) x = uniform(0.0, hi);
  } else {
    c.back() = uniform(lo, hi);
  }
  return TridiagonalSystem(a, b, c);
}

inline DenseMatrix<double> random_nonnegative(int n, double lo = 0.0, double hi = 1.0) {
  DenseMatrix<double> m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = uniform(lo, hi);
  return m;
}

inline DenseMatrix<double> random_real(int n) {
  DenseMatrix<double> m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = uniform(-1.0, 1.0);
    m(i, i) += n;
  }
  return m;
}

inline DenseMatrix<Complex> random_complex(int n) {
  DenseMatrix<Complex> m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Complex(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    m(i, i) += Complex(n, 0.0);
  }
  return m;
}

inline Eigen::MatrixXd to_eigen(const DenseMatrix<double>& a) {
  const auto n = static_cast<Eigen::Index>(a.order());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(i, j);
  return m;
}

inline Eigen::MatrixXcd to_eigen(const DenseMatrix<Complex>& a) {
  const auto n = static_cast<Eigen::Index>(a.order());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(i, j);
  return m;
}

/// Oracle spectrum ordered by real part, then imaginary part.
inline std::vector<Complex> oracle_eigenvalues(const DenseMatrix<double>& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(a), false);
  std::vector<Complex> out(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(out.begin(), out.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

inline std::vector<Complex> oracle_eigenvalues(const DenseMatrix<Complex>& a) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(to_eigen(a), false);
  std::vector<Complex> out(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(out.begin(), out.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

/// Largest real part of the oracle spectrum; the Perron root for Metzler matrices.
inline double oracle_rho(const DenseMatrix<double>& a) { return oracle_eigenvalues(a).back().real(); }

inline DenseMatrix<double> negate(const DenseMatrix<double>& a) {
  DenseMatrix<double> m = a;
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j) m(i, j) = -a(i, j);
  return m;
}

inline double rel_diff(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

}  // namespace maxeig::testing
