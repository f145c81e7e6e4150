#include "maxeig/reproduce.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <map>
#include <numbers>
#include <ostream>

#include "json.hpp"
#include "maxeig/errors.hpp"
#include "maxeig/general_init.hpp"
#include "maxeig/iterengine.hpp"
#include "maxeig/models.hpp"
#include "maxeig/tridiag.hpp"

namespace maxeig {

namespace detail {
std::string embedded_reference_tables();
}

using nlohmann::json;

namespace {

using Quantities = std::map<std::string, double>;

const json& reference_doc() {
  static const json doc = json::parse(detail::embedded_reference_tables(), nullptr, true, true);
  return doc;
}

void put_trace(Quantities& q, const std::vector<double>& values, const std::string& prefix = "z") {
  for (std::size_t k = 0; k < values.size(); ++k) q[prefix + std::to_string(k)] = values[k];
}

// First index whose value lies within rel of target, or -1.
int first_within(const std::vector<double>& values, double target, double rel) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (std::abs(values[k] - target) <= rel * std::abs(target)) return static_cast<int>(k);
  }
  return -1;
}

Quantities table1(int size) {
  const auto run = tridiag_rqi(bd_squares(size - 1));
  Quantities q;
  put_trace(q, run.trace.values());
  const int settled = settled_iteration(run.trace, 5e-7);
  q["settled_by_2"] = settled <= 2 ? 1.0 : 0.0;
  return q;
}

Quantities table2(int size) {
  const int grid = static_cast<int>(std::lround(std::sqrt(size)));
  if (grid * grid != size) throw InvalidInput("t2: size must be a square");
  const auto run = general_rqi(poisson_block(grid, grid));
  const auto values = run.trace.values();
  const double oracle = 4.0 - 4.0 * std::cos(std::numbers::pi / (grid + 1));
  Quantities q;
  for (std::size_t k = 0; k < values.size(); ++k) q["8-z" + std::to_string(k)] = 8.0 - values[k];
  q["final"] = run.lambda_min;
  q["8-final"] = 8.0 - run.lambda_min;
  const int first = first_within(values, oracle, 1e-6);
  q["converged_by_3"] = first >= 0 && first <= 3 ? 1.0 : 0.0;
  return q;
}

Quantities table3(int size) {
  const auto run = general_rqi(toeplitz_linear(size));
  const auto values = run.trace.values();
  Quantities q;
  put_trace(q, values);
  const int first = first_within(values, run.lambda_min, 1e-4);
  q["converged_by_4"] = first >= 0 && first <= 4 ? 1.0 : 0.0;
  return q;
}

Quantities negated_algorithm2(const DenseMatrix<double>& a) {
  IterOptions opts;
  opts.target = Target::min_of_negated;
  const auto run = algorithm2(a, opts);
  Quantities q;
  put_trace(q, run.trace.values());
  q["final"] = run.result.eigenvalue;
  return q;
}

Quantities table4(int size) { return negated_algorithm2(triangular_model(size - 1, RateRule::inv_kp1)); }

Quantities table5(int size) { return negated_algorithm2(branching_model(size, 1.75)); }

Quantities table6(int) {
  const auto a = negative3();
  IterOptions opts;
  opts.z0 = 24.0;
  Quantities q;
  put_trace(q, algorithm1(a, opts).trace.values(), "alg1_z");
  const auto run2 = algorithm2(a, opts);
  put_trace(q, run2.trace.values(), "alg2_z");
  const auto& g = run2.result.eigenvector;
  for (std::size_t i = 0; i < g.size(); ++i) q["g" + std::to_string(i)] = g[i] / g.back();
  return q;
}

Quantities table7(int) {
  const auto run = algorithm1(complex3());
  Quantities q;
  q["eigenvalue_re"] = run.result.eigenvalue.real();
  q["eigenvalue_im"] = run.result.eigenvalue.imag();
  auto g = run.result.eigenvector;
  const double n = norm_l2<Complex>(g);
  for (std::size_t i = 0; i < g.size(); ++i) q["g" + std::to_string(i)] = g[i].real() / n;
  const auto values = run.trace.values();
  for (std::size_t k = 1; k < values.size(); ++k) {
    q["y" + std::to_string(k) + "_re"] = values[k].real();
    q["y" + std::to_string(k) + "_im"] = values[k].imag();
  }
  return q;
}

Quantities example11(int size) {
  const auto run = tridiag_rqi(bd_squares(size - 1));
  const auto pair = recover_original(run.result, run.transform, 0.0, NormConvention::last_component_one);
  Quantities q;
  q["lambda"] = run.result.eigenvalue;
  for (std::size_t i = 0; i < pair.eigenvector.size(); ++i) q["g" + std::to_string(i)] = pair.eigenvector[i];
  const auto& v = run.initials.v0_tilde;
  for (std::size_t i = 0; i < v.size(); ++i) q["v0_" + std::to_string(i)] = v[i] / v[0];
  return q;
}

Quantities example12(int size) {
  TridiagOptions opts;
  opts.z0 = Z0Choice::rayleigh;
  Quantities q;
  put_trace(q, tridiag_rqi(bd_squares(size - 1), opts).trace.values());
  return q;
}

Quantities example13(int size) {
  const auto a = bd_squares(size - 1).dense();
  GeneralOptions opts;
  opts.z0 = GeneralZ0::rayleigh;
  opts.v0 = V0Choice::uniform;
  const auto run = general_rqi(a, opts);
  Quantities q;
  put_trace(q, run.trace.values());
  const auto check = check_maximal_capture(a, run.lambda_min, Target::min_of_negated);
  q["non_maximal_flagged"] = check.maximal ? 0.0 : 1.0;
  q["maximal_reference"] = check.reference;
  return q;
}

using Producer = std::function<Quantities(int)>;

const std::map<std::string, Producer>& producers() {
  static const std::map<std::string, Producer> table = {
      {"t1", table1},  {"t2", table2},  {"t3", table3},       {"t4", table4},       {"t5", table5},
      {"t6", table6},  {"t7", table7},  {"e11", example11},   {"e12", example12},   {"e13", example13},
  };
  return table;
}

CellStatus judge(const CellResult& c) {
  if (!c.computed) return c.gated ? CellStatus::fail : CellStatus::reference_differs;
  const double bound = c.relative ? c.tol * std::abs(c.reference) : c.tol;
  const bool ok = std::abs(*c.computed - c.reference) <= bound;
  if (c.gated) return ok ? CellStatus::pass : CellStatus::fail;
  return ok ? CellStatus::reference_match : CellStatus::reference_differs;
}

std::string_view status_text(CellStatus s) {
  switch (s) {
    case CellStatus::pass: return "PASS";
    case CellStatus::fail: return "FAIL";
    case CellStatus::skipped: return "SKIP";
    case CellStatus::reference_match: return "ref-only (matches)";
    case CellStatus::reference_differs: return "ref-only (differs)";
  }
  return "?";
}

std::string six_digits(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

int ReproduceReport::gated_failures() const {
  int n = 0;
  for (const auto& t : tables)
    for (const auto& c : t.cells) n += c.status == CellStatus::fail ? 1 : 0;
  return n;
}

std::vector<std::string> reference_table_keys() {
  std::vector<std::string> keys;
  for (const auto& [key, _] : reference_doc().at("tables").items()) keys.push_back(key);
  return keys;
}

std::string reference_data_text() { return detail::embedded_reference_tables(); }

ReproduceReport reproduce(const std::vector<std::string>& keys, const ReproduceOptions& opts) {
  std::vector<std::string> selected;
  for (const auto& key : keys) {
    if (key == "all") {
      for (const auto& k : reference_table_keys()) selected.push_back(k);
    } else if (producers().contains(key) && reference_doc().at("tables").contains(key)) {
      selected.push_back(key);
    } else {
      throw InvalidInput("unknown table '" + key + "'");
    }
  }

  // One job per (table, size); merged back in file order.
  using Job = std::pair<std::string, int>;
  std::map<Job, std::shared_future<Quantities>> jobs;
  std::map<Job, std::string> errors;
  ReproduceReport report;
  for (const auto& key : selected) {
    const json& table = reference_doc().at("tables").at(key);
    TableReport tr{key, table.value("title", std::string()), {}};
    for (const auto& cell : table.at("cells")) {
      CellResult c;
      c.size = cell.at("size").get<int>();
      c.quantity = cell.at("quantity").get<std::string>();
      c.reference = cell.at("value").get<double>();
      c.tol = cell.at("tol").get<double>();
      c.relative = cell.value("tol_mode", std::string("rel")) == "rel";
      c.gated = cell.value("gated", true);
      const Job job{key, c.size};
      if (c.size <= opts.max_size && !jobs.contains(job)) {
        const Producer& produce = producers().at(key);
        const int size = c.size;
        jobs.emplace(job, std::async(opts.parallel ? std::launch::async : std::launch::deferred,
                                     [produce, size] { return produce(size); })
                              .share());
      }
      tr.cells.push_back(std::move(c));
    }
    report.tables.push_back(std::move(tr));
  }

  for (auto& tr : report.tables) {
    for (auto& c : tr.cells) {
      const Job job{tr.key, c.size};
      if (c.size > opts.max_size) {
        c.status = CellStatus::skipped;
        c.note = "size above --max-size";
        continue;
      }
      try {
        const Quantities& q = jobs.at(job).get();
        if (const auto it = q.find(c.quantity); it != q.end()) c.computed = it->second;
        else c.note = "not produced";
      } catch (const std::exception& e) {
        c.note = e.what();
      }
      c.status = judge(c);
    }
  }
  return report;
}

void print_report(std::ostream& out, const ReproduceReport& report) {
  int gated = 0;
  int passed = 0;
  int skipped = 0;
  for (const auto& t : report.tables) {
    out << "== " << t.key << ": " << t.title << '\n';
    for (const auto& c : t.cells) {
      out << "  size " << c.size << "  " << c.quantity << "  computed "
          << (c.computed ? six_digits(*c.computed) : std::string("-")) << "  reference " << six_digits(c.reference)
          << "  tol " << six_digits(c.tol) << (c.relative ? " rel" : " abs") << "  " << status_text(c.status);
      if (!c.note.empty()) out << "  (" << c.note << ')';
      out << '\n';
      if (c.status == CellStatus::skipped) ++skipped;
      else if (c.gated) {
        ++gated;
        passed += c.status == CellStatus::pass ? 1 : 0;
      }
    }
  }
  out << "gated cells: " << passed << '/' << gated << " passed, " << skipped << " skipped\n";
}

}  // namespace maxeig
