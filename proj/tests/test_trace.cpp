#include <stdexcept>

#include "doctest.h"
#include "maxeig/trace.hpp"

using namespace maxeig;

TEST_CASE("trace records steps in order with monotone timestamps") {
  IterationTrace<double> trace;
  CHECK(trace.empty());
  trace.record(3.0, 1.0);
  trace.record(2.5, 0.1);
  trace.record(2.5, 0.0);
  REQUIRE(trace.steps().size() == 3);
  for (std::size_t i = 0; i < trace.steps().size(); ++i) CHECK(trace.steps()[i].k == static_cast<int>(i));
  CHECK(trace.steps()[0].seconds <= trace.steps()[1].seconds);
  CHECK(trace.steps()[1].seconds <= trace.steps()[2].seconds);
  CHECK(trace.values() == std::vector<double>{3.0, 2.5, 2.5});
  CHECK(trace.back().z == 2.5);
  CHECK(trace.termination() == Termination::running);
}

TEST_CASE("termination can be set once") {
  IterationTrace<Complex> trace;
  trace.record(Complex(1, 1), 0.0);
  trace.finish(Termination::converged);
  CHECK(trace.termination() == Termination::converged);
  CHECK_THROWS_AS(trace.finish(Termination::max_iterations), std::logic_error);
}

TEST_CASE("snapshots are kept only on request") {
  const Vector<double> v{1, 2};
  IterationTrace<double> plain;
  plain.record(1.0, 0.0, v);
  CHECK(plain.snapshots().empty());
  IterationTrace<double> kept(true);
  kept.record(1.0, 0.0, v);
  REQUIRE(kept.snapshots().size() == 1);
  CHECK(kept.snapshots()[0] == v);
}

TEST_CASE("settled iteration") {
  IterationTrace<double> trace;
  for (double z : {0.52, 0.5252, 0.525268, 0.5252681}) trace.record(z, 0.0);
  CHECK(settled_iteration(trace, 5e-7) == 2);
  CHECK(settled_iteration(trace, 1e-9) == 3);
  CHECK(settled_iteration(trace, 1.0) == 0);
  CHECK(settled_iteration(IterationTrace<double>{}, 1e-6) == 0);
}

TEST_CASE("last component normalization") {
  Vector<double> v{2, 4, 0.5};
  normalize_last_component(v);
  CHECK(v == Vector<double>{4, 8, 1});
}

TEST_CASE("enum names") {
  CHECK(to_string(Termination::converged_at_start) == "converged_at_start");
  CHECK(to_string(NormConvention::l2_mu) == "l2_mu");
}
