#include "maxeig/trace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxeig {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::running: return "running";
    case Termination::converged: return "converged";
    case Termination::converged_at_start: return "converged_at_start";
    case Termination::step_limit: return "step_limit";
    case Termination::max_iterations: return "max_iterations";
  }
  return "unknown";
}

std::string_view to_string(NormConvention n) {
  switch (n) {
    case NormConvention::l1: return "l1";
    case NormConvention::l2: return "l2";
    case NormConvention::l2_mu: return "l2_mu";
    case NormConvention::last_component_one: return "last_component_one";
  }
  return "unknown";
}

template <Scalar T>
void IterationTrace<T>::record(T z, double residual, std::span<const T> v) {
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  steps_.push_back({static_cast<int>(steps_.size()), z, residual, seconds});
  if (keep_vectors_) snapshots_.emplace_back(v.begin(), v.end());
}

template <Scalar T>
void IterationTrace<T>::finish(Termination reason) {
  if (termination_ != Termination::running) throw std::logic_error("trace already terminated");
  termination_ = reason;
}

template <Scalar T>
std::vector<T> IterationTrace<T>::values() const {
  std::vector<T> out;
  out.reserve(steps_.size());
  for (const auto& s : steps_) out.push_back(s.z);
  return out;
}

template <Scalar T>
int settled_iteration(const IterationTrace<T>& trace, double rel) {
  const auto& steps = trace.steps();
  if (steps.empty()) return 0;
  const T last = steps.back().z;
  const double scale = std::abs(last) > 0.0 ? std::abs(last) : 1.0;
  int settled = steps.back().k;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    if (std::abs(it->z - last) > rel * scale) break;
    settled = it->k;
  }
  return settled;
}

template <Scalar T>
void normalize_last_component(Vector<T>& v) {
  const T last = v.back();
  for (T& x : v) x /= last;
}

template class IterationTrace<double>;
template class IterationTrace<Complex>;
template int settled_iteration(const IterationTrace<double>&, double);
template int settled_iteration(const IterationTrace<Complex>&, double);
template void normalize_last_component(Vector<double>&);
template void normalize_last_component(Vector<Complex>&);

}  // namespace maxeig
