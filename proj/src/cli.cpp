#include "maxeig/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maxeig/errors.hpp"
#include "maxeig/general_init.hpp"
#include "maxeig/io.hpp"
#include "maxeig/iterengine.hpp"
#include "maxeig/models.hpp"
#include "maxeig/reproduce.hpp"
#include "maxeig/tridiag.hpp"

namespace maxeig {

namespace {

/// Inputs larger than this skip the algorithm 2 cross-check in `solve`.
constexpr std::size_t kCaptureCheckLimit = 2000;

struct ModelArgs {
  std::string model;
  int n = -1;
  double alpha = 1.75;
  std::string rule = "inv_kp1";
  int block_size = 0;
  std::string spec;
  std::string input;
};

struct SolveArgs {
  ModelArgs source;
  std::string method;
  double tol = 1e-10;
  int max_iter = 0;
  std::string z0;
  std::string v0;
  std::string norm;
  bool negate = false;
  bool no_negate = false;
  int steps = 1000;
  std::string trace_out;
  bool json = false;
};

struct Loaded {
  AnyMatrix matrix;
  std::optional<ModelSpec> spec;
  std::string path;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ModelSpec spec_from_args(const ModelArgs& args) {
  if (!args.spec.empty()) {
    const std::string text = args.spec.front() == '@' ? read_text(args.spec.substr(1)) : args.spec;
    return model_spec_from_json(text);
  }
  ModelSpec spec;
  spec.name = parse_model_name(args.model);
  const bool fixed = spec.name == ModelName::negative3 || spec.name == ModelName::complex3;
  if (!fixed && args.n < 0) throw ParseError("--n is required for model " + args.model, 0);
  spec.size = fixed ? 3 : args.n;
  spec.rule = parse_rate_rule(args.rule);
  spec.alpha = args.alpha;
  spec.block_size = args.block_size;
  return spec;
}

Loaded load(const ModelArgs& args) {
  const int sources = (args.model.empty() ? 0 : 1) + (args.spec.empty() ? 0 : 1) + (args.input.empty() ? 0 : 1);
  if (sources != 1) throw ParseError("give exactly one of --model, --spec, --input", 0);
  if (!args.input.empty()) return {read_matrix_file(args.input), std::nullopt, args.input};
  const ModelSpec spec = spec_from_args(args);
  return {render(spec), spec, {}};
}

bool is_complex(const AnyMatrix& m) { return std::holds_alternative<DenseMatrix<Complex>>(m); }

DenseMatrix<double> dense_real(const AnyMatrix& m) {
  if (const auto* t = std::get_if<TridiagonalSystem>(&m)) return t->dense();
  if (const auto* d = std::get_if<DenseMatrix<double>>(&m)) return *d;
  throw InvalidInput("method needs a real matrix");
}

bool is_q_matrix(const DenseMatrix<double>& a) {
  if (!has_nonnegative_off_diagonal(a)) return false;
  const double slack = 1e-12 * std::max(1.0, a.max_abs());
  for (const double s : row_sums(a)) {
    if (s > slack) return false;
  }
  return true;
}

template <Scalar T>
double pair_residual(const DenseMatrix<T>& a, T z, std::span<const T> v) {
  const Vector<T> av = matvec(a, v);
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(av[i] - z * v[i]));
  return worst / norm_inf<T>(v);
}

template <Scalar T>
void normalize(Vector<T>& v, const std::string& norm) {
  double scale = 1.0;
  if (norm == "last") {
    normalize_last_component(v);
    return;
  }
  if (norm == "l1") scale = norm_l1<T>(v);
  else if (norm == "l2") scale = norm_l2<T>(v);
  else throw ParseError("unknown --norm '" + norm + "'", 0);
  for (T& x : v) x /= scale;
}

std::optional<double> parse_number(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t used = 0;
  try {
    const double x = std::stod(text, &used);
    if (used == text.size()) return x;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

NormConvention convention_of(const std::string& norm) {
  if (norm == "l1") return NormConvention::l1;
  if (norm == "l2") return NormConvention::l2;
  if (norm == "l2mu") return NormConvention::l2_mu;
  if (norm == "last") return NormConvention::last_component_one;
  throw ParseError("unknown --norm '" + norm + "'", 0);
}

V0Choice v0_choice(const std::string& v0) {
  if (v0.empty() || v0 == "efficient") return V0Choice::efficient;
  if (v0 == "uniform") return V0Choice::uniform;
  throw ParseError("unknown --v0 '" + v0 + "'", 0);
}

/// What every method hands back to the printer, in the reported convention.
struct Outcome {
  bool complex = false;
  std::vector<TraceRow> rows;
  Complex eigenvalue;
  std::vector<Complex> eigenvector;
  int iterations = 0;
  double residual = 0.0;
  std::string termination;
  std::string norm;
  std::vector<std::string> notes;
};

template <Scalar T>
std::vector<Complex> widen(const Vector<T>& v) {
  return std::vector<Complex>(v.begin(), v.end());
}

/// Maps lambda_min(-Q^c) values to the reported convention.
void remap_lambda_rows(std::vector<TraceRow>& rows, double m, bool negate) {
  for (auto& r : rows) r.z_re = negate ? r.z_re - m : m - r.z_re;
}

Outcome solve_power(const Loaded& in, const SolveArgs& args, bool negate, bool tol_set) {
  PowerOptions opts;
  opts.steps = args.steps;
  if (tol_set) opts.tol = args.tol;
  const std::string norm = args.norm.empty() ? "l1" : args.norm;
  if (norm == "l1") opts.norm = PowerNorm::l1;
  else if (norm == "l2") opts.norm = PowerNorm::l2;
  else throw ParseError("power iteration supports --norm l1 or l2", 0);

  Outcome out;
  out.norm = norm;
  if (is_complex(in.matrix)) {
    if (negate) throw InvalidInput("--negate needs a real matrix");
    if (!args.v0.empty() && args.v0 != "uniform") throw InvalidInput("complex input supports --v0 uniform only");
    const auto& a = std::get<DenseMatrix<Complex>>(in.matrix);
    auto run = power_iteration(a, uniform_vector<Complex>(a.order()), opts);
    out.complex = true;
    out.rows = trace_rows(run.trace);
    out.eigenvalue = run.trace.back().z;
    out.residual = pair_residual<Complex>(a, out.eigenvalue, run.vector);
    out.eigenvector = widen(run.vector);
    out.iterations = run.trace.back().k;
    out.termination = std::string(to_string(run.trace.termination()));
    return out;
  }

  const DenseMatrix<double> a = dense_real(in.matrix);
  Vector<double> v0;
  const bool tridiagonal = std::holds_alternative<TridiagonalSystem>(in.matrix);
  const std::string v0_name = args.v0.empty() ? (tridiagonal ? "efficient" : "uniform") : args.v0;
  if (v0_choice(v0_name) == V0Choice::efficient) {
    if (tridiagonal) {
      const HTransform transform = compute_h(std::get<TridiagonalSystem>(in.matrix));
      const InitialData init = compute_initials(transform.transformed);
      v0 = init.v0_tilde;
      for (std::size_t i = 0; i < v0.size(); ++i) v0[i] *= transform.h[i];
    } else {
      const GeneralInitials init = compute_general_initials(a);
      v0 = init.start.v0;
      for (std::size_t i = 0; i < v0.size(); ++i) v0[i] *= init.h[i];
    }
  } else {
    v0 = uniform_vector<double>(a.order());
  }

  if (negate) {
    opts.target = Target::min_of_negated;
    for (std::size_t i = 0; i < a.order(); ++i) opts.shift = std::max(opts.shift, std::abs(a(i, i)));
  }
  auto run = power_iteration(a, std::move(v0), opts);
  out.rows = trace_rows(run.trace);
  const double z = run.trace.back().z;
  out.eigenvalue = z;
  out.residual = pair_residual<double>(a, negate ? -z : z, run.vector);
  out.eigenvector = widen(run.vector);
  out.iterations = run.trace.back().k;
  out.termination = std::string(to_string(run.trace.termination()));
  if (opts.shift != 0.0) out.notes.push_back("iterated on A + " + format_double(opts.shift) + " I");
  return out;
}

Outcome solve_rqi_tridiag(const Loaded& in, const SolveArgs& args, bool negate) {
  if (is_complex(in.matrix)) throw InvalidInput("rqi-tridiag needs a real tridiagonal matrix");
  double m = 0.0;
  std::optional<TridiagonalSystem> system;
  if (const auto* t = std::get_if<TridiagonalSystem>(&in.matrix)) {
    system = *t;
  } else {
    const ShiftedMatrix shifted = shift_to_qc(std::get<DenseMatrix<double>>(in.matrix));
    m = shifted.m;
    system = as_tridiagonal(shifted.qc);
    if (!system) throw InvalidInput("rqi-tridiag needs a tridiagonal matrix with positive off-diagonals");
  }

  TridiagOptions opts;
  opts.tol = args.tol;
  if (args.max_iter > 0) opts.max_iterations = args.max_iter;
  opts.v0 = v0_choice(args.v0);
  if (args.z0.empty() || args.z0 == "combination") {
    opts.z0 = Z0Choice::combination;
  } else if (args.z0 == "rayleigh") {
    opts.z0 = Z0Choice::rayleigh;
  } else if (args.z0 == "delta") {
    opts.z0 = Z0Choice::inverse_delta;
  } else if (const auto x = parse_number(args.z0)) {
    opts.z0 = Z0Choice::value;
    opts.z0_value = negate ? *x + m : m - *x;
  } else {
    throw ParseError("rqi-tridiag supports --z0 combination, rayleigh, delta or a number", 0);
  }

  const TridiagRun run = tridiag_rqi(*system, opts);
  const std::string norm = args.norm.empty() ? "last" : args.norm;
  const auto pair = recover_original(run.result, run.transform, m, convention_of(norm));

  Outcome out;
  out.norm = norm;
  out.rows = trace_rows(run.trace);
  remap_lambda_rows(out.rows, m, negate);
  out.eigenvalue = negate ? -pair.eigenvalue : pair.eigenvalue;
  out.eigenvector = widen(pair.eigenvector);
  out.iterations = run.result.iterations;
  out.residual = pair_residual<double>(dense_real(in.matrix), pair.eigenvalue, pair.eigenvector);
  out.termination = std::string(to_string(run.trace.termination()));
  return out;
}

Outcome solve_rqi_general(const Loaded& in, const SolveArgs& args, bool negate) {
  if (is_complex(in.matrix)) throw InvalidInput("rqi-general needs a real matrix");
  const DenseMatrix<double> a = dense_real(in.matrix);
  const double m = shift_to_qc(a).m;

  GeneralOptions opts;
  opts.tol = args.tol;
  if (args.max_iter > 0) opts.max_iterations = args.max_iter;
  opts.v0 = v0_choice(args.v0);
  const std::string norm = args.norm.empty() ? "last" : args.norm;
  opts.output_norm = convention_of(norm);
  if (args.z0.empty() || args.z0 == "safe") {
    opts.z0 = GeneralZ0::safe;
  } else if (args.z0 == "rayleigh") {
    opts.z0 = GeneralZ0::rayleigh;
  } else if (const auto x = parse_number(args.z0)) {
    opts.z0 = GeneralZ0::value;
    opts.z0_value = negate ? *x + m : m - *x;
  } else {
    throw ParseError("rqi-general supports --z0 safe, rayleigh or a number", 0);
  }

  const GeneralRun run = general_rqi(a, opts);
  Outcome out;
  out.norm = norm;
  out.rows = trace_rows(run.trace);
  remap_lambda_rows(out.rows, run.m, negate);
  out.eigenvalue = negate ? -run.original.eigenvalue : run.original.eigenvalue;
  out.eigenvector = widen(run.original.eigenvector);
  out.iterations = run.original.iterations;
  out.residual = run.original.residual;
  out.termination = std::string(to_string(run.trace.termination()));
  if (run.safe_z0_unavailable) out.notes.push_back("safe z0 unavailable (phi_1 >= 1); used the Rayleigh shift");
  if (run.used_tridiagonal_path) out.notes.push_back("tridiagonal input: used the O(N) recurrences");
  return out;
}

template <Scalar T>
Outcome finish_dense(const DenseMatrix<T>& a, RqiRun<T>& run, const std::string& norm, bool negate) {
  Outcome out;
  out.complex = std::same_as<T, Complex>;
  out.norm = norm;
  out.rows = trace_rows(run.trace);
  out.eigenvalue = run.result.eigenvalue;
  auto v = run.result.eigenvector;
  normalize(v, norm);
  const T rho = negate ? T{} - run.result.eigenvalue : run.result.eigenvalue;
  out.residual = pair_residual<T>(a, rho, v);
  out.eigenvector = widen(v);
  out.iterations = run.result.iterations;
  out.termination = std::string(to_string(run.trace.termination()));
  return out;
}

Outcome solve_dense_algorithm(const Loaded& in, const SolveArgs& args, bool negate, bool second) {
  IterOptions opts;
  opts.tol = args.tol;
  if (args.max_iter > 0) opts.max_iterations = args.max_iter;
  if (negate) opts.target = Target::min_of_negated;
  if (!args.v0.empty() && args.v0 != "uniform") throw ParseError("alg1 and alg2 start from the uniform vector", 0);
  const std::string norm = args.norm.empty() ? "l2" : args.norm;
  if (norm == "l2mu") throw ParseError("--norm l2mu needs rqi-tridiag or rqi-general", 0);

  std::optional<double> z0;
  if (const auto x = parse_number(args.z0)) {
    z0 = negate ? -*x : *x;
  } else if (!args.z0.empty() && args.z0 != "max-ratio" && args.z0 != "rayleigh") {
    throw ParseError("alg1/alg2 support --z0 max-ratio, rayleigh or a number", 0);
  }

  if (is_complex(in.matrix)) {
    if (second) throw InvalidInput("alg2 needs a real matrix; use alg1 for complex input");
    if (negate) throw InvalidInput("--negate needs a real matrix");
    const auto& a = std::get<DenseMatrix<Complex>>(in.matrix);
    if (args.z0 == "rayleigh") {
      const auto v = uniform_vector<Complex>(a.order());
      const auto av = matvec(a, std::span<const Complex>(v));
      Complex z{};
      for (std::size_t i = 0; i < v.size(); ++i) z += std::conj(v[i]) * av[i];
      auto run = rqi(a, v, z, ZUpdate::rayleigh, opts);
      return finish_dense(a, run, norm, false);
    }
    if (z0) opts.z0 = z0;
    auto run = algorithm1(a, opts);
    return finish_dense(a, run, norm, false);
  }

  const DenseMatrix<double> a = dense_real(in.matrix);
  if (args.z0 == "rayleigh") {
    const auto v = uniform_vector<double>(a.order());
    z0 = weighted_inner<double>(v, matvec(a, std::span<const double>(v)), Measure::uniform(v.size()));
  }
  if (z0) opts.z0 = z0;
  auto run = second ? algorithm2(a, opts) : algorithm1(a, opts);
  return finish_dense(a, run, norm, negate);
}

std::string six(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string six(Complex z) {
  if (z.imag() == 0.0) return six(z.real());
  return six(z.real()) + (z.imag() < 0.0 ? " - " : " + ") + six(std::abs(z.imag())) + "i";
}

/// First trace index from which every value prints like the last one.
int stable_from(const std::vector<TraceRow>& rows) {
  if (rows.empty()) return 0;
  const std::string last = six(Complex(rows.back().z_re, rows.back().z_im));
  int first = static_cast<int>(rows.size()) - 1;
  for (int k = first; k >= 0; --k) {
    if (six(Complex(rows[k].z_re, rows[k].z_im)) != last) break;
    first = k;
  }
  return first;
}

int solve_loaded(const Loaded& in, const SolveArgs& args, bool negate, bool tol_set,
                 std::chrono::steady_clock::time_point started, std::ostream& out);

int cmd_solve(const SolveArgs& args, bool tol_set, std::ostream& out) {
  const auto started = std::chrono::steady_clock::now();
  const Loaded in = load(args.source);
  if (args.negate && args.no_negate) throw ParseError("--negate and --no-negate are exclusive", 0);

  bool negate = args.negate;
  if (!args.negate && !args.no_negate && !is_complex(in.matrix)) negate = is_q_matrix(dense_real(in.matrix));

  SolveArgs resolved = args;
  if (resolved.method.empty()) resolved.method = is_complex(in.matrix) ? "alg1" : "alg2";
  return solve_loaded(in, resolved, negate, tol_set, started, out);
}

int solve_loaded(const Loaded& in, const SolveArgs& args, bool negate, bool tol_set,
                 std::chrono::steady_clock::time_point started, std::ostream& out) {
  Outcome result;
  if (args.method == "power") result = solve_power(in, args, negate, tol_set);
  else if (args.method == "rqi-tridiag") result = solve_rqi_tridiag(in, args, negate);
  else if (args.method == "rqi-general") result = solve_rqi_general(in, args, negate);
  else if (args.method == "alg1") result = solve_dense_algorithm(in, args, negate, false);
  else if (args.method == "alg2") result = solve_dense_algorithm(in, args, negate, true);
  else throw ParseError("unknown --method '" + args.method + "'", 0);

  RunRecord record;
  record.model = in.spec;
  record.input_path = in.path;
  record.method = args.method;
  record.options = {{"tol", format_double(args.tol)},
                    {"max_iter", std::to_string(args.max_iter)},
                    {"z0", args.z0.empty() ? "default" : args.z0},
                    {"v0", args.v0.empty() ? "default" : args.v0},
                    {"negate", negate ? "true" : "false"}};
  if (args.method == "power") record.options["steps"] = std::to_string(args.steps);

  std::optional<CaptureCheck> capture;
  std::string capture_note;
  const bool checkable = args.method == "rqi-tridiag" || args.method == "rqi-general" || args.method == "alg1";
  if (checkable && !result.complex) {
    const DenseMatrix<double> a = dense_real(in.matrix);
    if (a.order() <= kCaptureCheckLimit) {
      try {
        capture = check_maximal_capture(a, result.eigenvalue.real(),
                                        negate ? Target::min_of_negated : Target::maximal);
      } catch (const Error& e) {
        capture_note = std::string("maximal-capture check unavailable: ") + e.what();
      }
    }
  }

  record.complex = result.complex;
  record.trace = result.rows;
  record.termination = result.termination;
  record.eigenvalue_re = result.eigenvalue.real();
  record.eigenvalue_im = result.eigenvalue.imag();
  for (const auto& x : result.eigenvector) {
    record.eigenvector_re.push_back(x.real());
    if (result.complex) record.eigenvector_im.push_back(x.imag());
  }
  record.iterations = result.iterations;
  record.residual = result.residual;
  record.norm = result.norm;
  if (capture) {
    record.maximal_capture = capture->maximal;
    record.capture_reference = capture->reference;
  }
  record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  if (!args.trace_out.empty()) {
    std::ofstream csv(args.trace_out);
    if (!csv) throw InvalidInput("cannot write '" + args.trace_out + "'");
    write_trace_csv(csv, record.trace, record.complex);
  }

  if (args.json) {
    out << run_record_to_json(record) << '\n';
    return kExitOk;
  }
  out << "method: " << args.method << '\n';
  out << "quantity: " << (negate ? "lambda_min(-A)" : "rho(A)") << '\n';
  out << "eigenvalue: " << six(result.eigenvalue) << '\n';
  out << "iterations: " << result.iterations << '\n';
  out << "stable from iteration: " << stable_from(result.rows) << '\n';
  out << "residual: " << six(result.residual) << '\n';
  out << "termination: " << result.termination << '\n';
  out << "trace:";
  for (const auto& r : result.rows) out << ' ' << six(Complex(r.z_re, r.z_im));
  out << '\n';
  if (result.eigenvector.size() <= 20) {
    out << "eigenvector (" << result.norm << "):";
    for (const auto& x : result.eigenvector) out << ' ' << six(x);
    out << '\n';
  }
  for (const auto& note : result.notes) out << "note: " << note << '\n';
  if (!capture_note.empty()) out << "note: " << capture_note << '\n';
  if (capture && !capture->maximal) {
    out << "WARNING: non-maximal eigenvalue captured (pitfall); algorithm 2 gives " << six(capture->reference)
        << '\n';
  }
  return kExitOk;
}

int cmd_model(const ModelArgs& args, const std::string& emit, const std::string& format, bool print_spec,
              std::ostream& out) {
  const Loaded in = load(args);
  if (print_spec && in.spec) out << model_spec_to_json(*in.spec) << '\n';
  if (print_spec && emit.empty()) return kExitOk;

  AnyMatrix matrix = in.matrix;
  if (format == "coordinate") {
    if (const auto* t = std::get_if<TridiagonalSystem>(&matrix)) matrix = t->dense();
  } else if (format == "tridiag") {
    if (!std::holds_alternative<TridiagonalSystem>(matrix)) {
      const auto* d = std::get_if<DenseMatrix<double>>(&matrix);
      std::optional<TridiagonalSystem> t = d && is_q_matrix(*d) ? as_tridiagonal(*d) : std::nullopt;
      if (!t) throw InvalidInput("matrix is not a tridiagonal Q-matrix");
      matrix = *t;
    }
  } else if (format != "auto") {
    throw ParseError("unknown --format '" + format + "'", 0);
  }

  if (emit.empty() || emit == "-") {
    write_matrix(out, matrix);
  } else {
    write_matrix_file(emit, matrix);
  }
  return kExitOk;
}

int cmd_reproduce(const std::vector<std::string>& tables, int max_size, bool serial, std::ostream& out) {
  ReproduceOptions opts;
  opts.max_size = max_size;
  opts.parallel = !serial;
  const ReproduceReport report = reproduce(tables.empty() ? std::vector<std::string>{"all"} : tables, opts);
  print_report(out, report);
  return report.ok() ? kExitOk : kExitFailure;
}

void add_model_options(CLI::App& cmd, ModelArgs& args) {
  cmd.add_option("--model", args.model, "bd_squares, poisson_block, toeplitz, triangular, branching, negative3, complex3");
  cmd.add_option("--n", args.n, "Size parameter of the model");
  cmd.add_option("--alpha", args.alpha, "Branching parameter in (0, 2)");
  cmd.add_option("--rule", args.rule, "Triangular model rates: inv_kp1, one, k, k2");
  cmd.add_option("--block-size", args.block_size, "Poisson block size (default: --n)");
  cmd.add_option("--spec", args.spec, "Model spec as JSON text, or @file");
  cmd.add_option("--input", args.input, "Matrix file (coordinate or TRIDIAG format)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximal eigenpairs by Rayleigh quotient and shifted inverse iteration"};
  app.set_version_flag("--version", std::string(kLibraryVersion));
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute the maximal eigenpair of a matrix");
  add_model_options(*solve_cmd, solve.source);
  solve_cmd->add_option("--method", solve.method, "power, rqi-tridiag, rqi-general, alg1, alg2 (default: alg2, alg1 for complex input)");
  auto* tol_opt = solve_cmd->add_option("--tol", solve.tol, "Stopping tolerance on successive shifts");
  solve_cmd->add_option("--max-iter", solve.max_iter, "Iteration limit");
  solve_cmd->add_option("--z0", solve.z0, "number, safe, rayleigh, max-ratio, combination, delta");
  solve_cmd->add_option("--v0", solve.v0, "efficient or uniform");
  solve_cmd->add_option("--norm", solve.norm, "Eigenvector normalization: l1, l2, l2mu, last");
  solve_cmd->add_flag("--negate", solve.negate, "Q-matrix mode: report lambda_min(-A)");
  solve_cmd->add_flag("--no-negate", solve.no_negate, "Report rho(A) even for Q-matrices");
  solve_cmd->add_option("--steps", solve.steps, "Power iteration steps");
  solve_cmd->add_option("--trace-out", solve.trace_out, "Write the trace as CSV");
  solve_cmd->add_flag("--json", solve.json, "Print the run record as JSON");

  ModelArgs model;
  std::string emit;
  std::string format = "auto";
  bool print_spec = false;
  auto* model_cmd = app.add_subcommand("model", "Write a built-in model as a matrix file");
  add_model_options(*model_cmd, model);
  model_cmd->add_option("--emit", emit, "Output path ('-' or omitted: stdout)");
  model_cmd->add_option("--format", format, "auto, coordinate or tridiag");
  model_cmd->add_flag("--print-spec", print_spec, "Print the model spec as JSON first");

  std::vector<std::string> tables;
  int max_size = 2000;
  bool serial = false;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "Recompute the reference tables");
  reproduce_cmd->add_option("tables", tables, "t1 t2 t3 t4 t5 t6 t7 e11 e12 e13 or all");
  reproduce_cmd->add_option("--max-size", max_size, "Skip rows above this size");
  reproduce_cmd->add_flag("--serial", serial, "Evaluate one cell group at a time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, tol_opt->count() > 0, out);
    if (*model_cmd) return cmd_model(model, emit, format, print_spec, out);
    if (*reproduce_cmd) return cmd_reproduce(tables, max_size, serial, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const MaxIterationsExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace maxeig
