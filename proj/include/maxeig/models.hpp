#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "maxeig/numat.hpp"

namespace maxeig {

enum class ModelName { bd_squares, poisson_block, toeplitz, triangular, branching, negative3, complex3 };

/// Rates a_k in column 0 of the triangular model.
enum class RateRule { inv_kp1, one, k, k2 };

struct PoissonStencil {
  double diagonal = -4.0;
  double off_diagonal = 1.0;

  bool operator==(const PoissonStencil&) const = default;
};

/// `size` means N for bd_squares and triangular (order N + 1), the order for
/// toeplitz and branching, and the number of diagonal blocks for poisson_block.
struct ModelSpec {
  ModelName name = ModelName::bd_squares;
  int size = 0;
  RateRule rule = RateRule::inv_kp1;
  double alpha = 1.75;
  int block_size = 0;  ///< poisson_block only; 0 means square grid
  PoissonStencil stencil;

  bool operator==(const ModelSpec&) const = default;
};

using AnyMatrix = std::variant<TridiagonalSystem, DenseMatrix<double>, DenseMatrix<Complex>>;

std::string_view to_string(ModelName name);
ModelName parse_model_name(std::string_view text);
std::string_view to_string(RateRule rule);
RateRule parse_rate_rule(std::string_view text);

/// {"name": ..., "size": ..., "params": {...}}
std::string model_spec_to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const std::string& text);

AnyMatrix render(const ModelSpec& spec);

/// b_k = (k+1)^2, a_k = k^2, no killing except c_N = (N+1)^2.
TridiagonalSystem bd_squares(int n);

/// Block-tridiagonal matrix with identity off-diagonal blocks and tridiagonal
/// diagonal blocks built from `stencil`.
DenseMatrix<double> poisson_block(int blocks, int block_size, PoissonStencil stencil = {});

/// entry(i, j) = |i - j| + 1
DenseMatrix<double> toeplitz_linear(int n);

/// Lower triangular plus the upper diagonal: column 0 carries a_i, the
/// superdiagonal carries i + 1, and row N sums to -(N + 1).
DenseMatrix<double> triangular_model(int n, RateRule rule);

/// Truncated branching generator on {1..N} with p_0 = alpha/2, p_1 = 0,
/// p_k = (2 - alpha)/2^k; the last column absorbs the exact tail sums.
DenseMatrix<double> branching_model(int n, double alpha);

/// The 3x3 matrix with negative off-diagonal entries.
DenseMatrix<double> negative3();

/// The 3x3 complex matrix, coefficients as printed to four decimals.
DenseMatrix<Complex> complex3();

}  // namespace maxeig
