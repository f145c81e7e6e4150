#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "maxeig/numat.hpp"

namespace maxeig {

enum class Termination {
  running,
  converged,
  converged_at_start,  ///< the initial pair already satisfied the residual test
  step_limit,          ///< fixed step count reached (power iteration)
  max_iterations,
};

std::string_view to_string(Termination t);

enum class NormConvention { l1, l2, l2_mu, last_component_one };

std::string_view to_string(NormConvention n);

template <Scalar T>
struct TraceStep {
  int k;
  T z;
  double residual;
  double seconds;
};

/// Ordered record of an iteration run. Step k = 0 is the initial pair.
template <Scalar T>
class IterationTrace {
 public:
  explicit IterationTrace(bool keep_vectors = false)
      : keep_vectors_(keep_vectors), start_(std::chrono::steady_clock::now()) {}

  void record(T z, double residual, std::span<const T> v = {});
  /// Sets the termination reason; a second call throws std::logic_error.
  void finish(Termination reason);

  const std::vector<TraceStep<T>>& steps() const { return steps_; }
  const std::vector<Vector<T>>& snapshots() const { return snapshots_; }
  Termination termination() const { return termination_; }
  bool empty() const { return steps_.empty(); }
  const TraceStep<T>& back() const { return steps_.back(); }

  /// Eigenvalue estimates only, in step order.
  std::vector<T> values() const;

 private:
  bool keep_vectors_;
  std::chrono::steady_clock::time_point start_;
  std::vector<TraceStep<T>> steps_;
  std::vector<Vector<T>> snapshots_;
  Termination termination_ = Termination::running;
};

/// First step index from which every later z agrees with the last one to
/// `rel` relative to |z_last|.
template <Scalar T>
int settled_iteration(const IterationTrace<T>& trace, double rel);

template <Scalar T>
struct EigenpairResult {
  T eigenvalue{};
  Vector<T> eigenvector;
  int iterations = 0;
  double residual = 0.0;
  /// Shift m with Q^c = A - m I, when one was applied.
  std::optional<double> shift;
  /// Diagonal of the H-transform, when one was applied.
  std::vector<double> h;
  NormConvention norm = NormConvention::l2;
};

/// Rescales so that the last component equals 1.
template <Scalar T>
void normalize_last_component(Vector<T>& v);

}  // namespace maxeig
