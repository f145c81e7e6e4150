#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "maxeig/cli.hpp"
#include "maxeig/io.hpp"
#include "maxeig/models.hpp"

using namespace maxeig;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"maxeig"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string line_with(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(prefix, 0) == 0) return line;
  }
  return {};
}

std::filesystem::path tmp(const std::string& name) { return std::filesystem::path(MAXEIG_TEST_TMPDIR) / name; }

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("solve the birth-death example with the tridiagonal pipeline") {
  const auto r = run({"solve", "--model", "bd_squares", "--n", "7", "--method", "rqi-tridiag"});
  CHECK(r.code == kExitOk);
  CHECK(line_with(r.out, "eigenvalue:") == "eigenvalue: 0.525268");
  CHECK(line_with(r.out, "stable from iteration:") == "stable from iteration: 1");
  CHECK(line_with(r.out, "eigenvector (last):").find("55.878 26.5271") != std::string::npos);

  const auto rayleigh = run({"solve", "--model", "bd_squares", "--n", "7", "--method", "rqi-tridiag", "--z0", "rayleigh"});
  CHECK(line_with(rayleigh.out, "trace:").rfind("trace: 0.78458 0.528215 0.525268", 0) == 0);
  CHECK(line_with(rayleigh.out, "stable from iteration:") == "stable from iteration: 2");
}

TEST_CASE("solve the negative example with algorithm 2") {
  const auto r = run({"solve", "--model", "negative3", "--method", "alg2"});
  CHECK(r.code == kExitOk);
  CHECK(line_with(r.out, "eigenvalue:") == "eigenvalue: 17.5124");
  CHECK(line_with(r.out, "stable from iteration:") == "stable from iteration: 3");
  CHECK(line_with(run({"solve", "--model", "negative3"}).out, "method:") == "method: alg2");
}

TEST_CASE("the Rayleigh pitfall is flagged") {
  const auto r = run({"solve", "--model", "bd_squares", "--n", "7", "--method", "rqi-general", "--z0", "rayleigh",
                      "--v0", "uniform"});
  CHECK(r.code == kExitOk);
  CHECK(line_with(r.out, "eigenvalue:") == "eigenvalue: 5.91867");
  CHECK(r.out.find("WARNING: non-maximal eigenvalue captured") != std::string::npos);
  CHECK(r.out.find("0.525268") != std::string::npos);

  const auto safe = run({"solve", "--model", "bd_squares", "--n", "7", "--method", "rqi-general"});
  CHECK(line_with(safe.out, "eigenvalue:") == "eigenvalue: 0.525268");
  CHECK(safe.out.find("WARNING") == std::string::npos);
}

TEST_CASE("complex input defaults to algorithm 1") {
  const auto r = run({"solve", "--model", "complex3"});
  CHECK(r.code == kExitOk);
  CHECK(line_with(r.out, "method:") == "method: alg1");
  CHECK(line_with(r.out, "eigenvalue:").rfind("eigenvalue: 2.99997", 0) == 0);
}

TEST_CASE("Q-matrix models report the minimal eigenvalue of the negation") {
  const auto r = run({"solve", "--model", "triangular", "--n", "7"});
  CHECK(r.code == kExitOk);
  CHECK(line_with(r.out, "quantity:") == "quantity: lambda_min(-A)");
  CHECK(line_with(r.out, "eigenvalue:") == "eigenvalue: 0.452339");
  const auto raw = run({"solve", "--model", "triangular", "--n", "7", "--no-negate"});
  CHECK(line_with(raw.out, "quantity:") == "quantity: rho(A)");
  CHECK(line_with(raw.out, "eigenvalue:") == "eigenvalue: -0.452339");
}

TEST_CASE("exit codes") {
  CHECK(run({"solve", "--model", "nope"}).code == kExitParse);
  CHECK(run({"solve", "--model", "negative3", "--tol", "abc"}).code == kExitParse);
  CHECK(run({"solve", "--spec", "{\"name\":"}).code == kExitParse);
  CHECK(run({"solve"}).code == kExitParse);
  CHECK(run({"solve", "--model", "negative3", "--input", "x.txt"}).code == kExitParse);
  CHECK(run({"bogus"}).code == kExitParse);
  CHECK(run({"solve", "--model", "toeplitz", "--n", "30", "--method", "alg1", "--max-iter", "1"}).code ==
        kExitConvergence);
  CHECK(run({"solve", "--model", "toeplitz", "--n", "5", "--method", "rqi-tridiag"}).code == kExitDomain);
  CHECK(run({"solve", "--model", "complex3", "--method", "alg2"}).code == kExitDomain);
  CHECK(run({"solve", "--model", "negative3", "--method", "rqi-general"}).code == kExitDomain);
  const auto missing = run({"solve", "--input", "/nonexistent/matrix.txt"});
  CHECK(missing.code == kExitParse);
  CHECK(missing.err.find("error:") != std::string::npos);
}

TEST_CASE("inline and file specs") {
  const auto inline_spec = run({"solve", "--spec", R"({"name":"bd_squares","size":7})", "--method", "rqi-tridiag"});
  CHECK(line_with(inline_spec.out, "eigenvalue:") == "eigenvalue: 0.525268");
  const auto path = tmp("cli_spec.json");
  {
    std::ofstream(path) << R"({"name":"triangular","size":7,"params":{"rule":"inv_kp1"}})";
  }
  const std::string arg = "@" + path.string();
  const auto from_file = run({"solve", "--spec", arg.c_str()});
  CHECK(line_with(from_file.out, "eigenvalue:") == "eigenvalue: 0.452339");
}

TEST_CASE("json output round-trips as a run record") {
  const auto r = run({"solve", "--model", "negative3", "--method", "alg2", "--json"});
  REQUIRE(r.code == kExitOk);
  const auto record = run_record_from_json(r.out);
  CHECK(record.method == "alg2");
  REQUIRE(record.model.has_value());
  CHECK(record.model->name == ModelName::negative3);
  CHECK(std::abs(record.eigenvalue_re - 17.5123717) < 1e-6);
  CHECK(record.trace.size() >= 4);
  CHECK(record.trace[0].z_re == 24.0);
  CHECK(record.termination == "converged");
  CHECK(record.version == kLibraryVersion);
  CHECK(record.eigenvector_re.size() == 3);

  const auto pitfall = run({"solve", "--model", "bd_squares", "--n", "7", "--method", "rqi-general", "--z0", "rayleigh",
                            "--v0", "uniform", "--json"});
  const auto flagged = run_record_from_json(pitfall.out);
  REQUIRE(flagged.maximal_capture.has_value());
  CHECK_FALSE(*flagged.maximal_capture);
  CHECK(std::abs(*flagged.capture_reference - 0.525268) < 1e-6);
}

TEST_CASE("trace output") {
  const auto path = tmp("cli_trace.csv");
  const std::string arg = path.string();
  const auto r = run({"solve", "--model", "bd_squares", "--n", "7", "--method", "power", "--steps", "1000",
                      "--trace-out", arg.c_str()});
  CHECK(r.code == kExitOk);
  const std::string csv = slurp(path);
  CHECK(csv.rfind("k,z,residual,seconds\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == 1002);
}

TEST_CASE("model emission") {
  const auto tri = run({"model", "--model", "bd_squares", "--n", "1", "--emit", "-"});
  CHECK(tri.code == kExitOk);
  CHECK(tri.out == "TRIDIAG 1\n0 1 0\n1 0 4\n");
  const auto coord = run({"model", "--model", "bd_squares", "--n", "1", "--emit", "-", "--format", "coordinate"});
  CHECK(coord.out == "2 4 real\n0 0 -1\n0 1 1\n1 0 1\n1 1 -5\n");
  CHECK(run({"model", "--model", "toeplitz", "--n", "4", "--emit", "-", "--format", "tridiag"}).code == kExitDomain);

  const auto path = tmp("cli_complex3.txt");
  const std::string arg = path.string();
  CHECK(run({"model", "--model", "complex3", "--emit", arg.c_str()}).code == kExitOk);
  CHECK(read_matrix_file(path) == AnyMatrix(complex3()));
  const auto solved = run({"solve", "--input", arg.c_str()});
  CHECK(line_with(solved.out, "method:") == "method: alg1");

  const auto spec = run({"model", "--model", "branching", "--n", "4", "--print-spec"});
  CHECK(spec.out.rfind(R"({"name":"branching","params":{"alpha":1.75},"size":4})", 0) == 0);
}

TEST_CASE("reproduce command") {
  const auto ok = run({"reproduce", "e11", "e12", "t6"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("gated cells:") != std::string::npos);
  const auto complex_table = run({"reproduce", "t7"});
  CHECK(complex_table.code == kExitFailure);
  CHECK(run({"reproduce", "t99"}).code != kExitOk);
  const auto serial = run({"reproduce", "t1", "--max-size", "100", "--serial"});
  const auto parallel = run({"reproduce", "t1", "--max-size", "100"});
  CHECK(serial.code == kExitOk);
  CHECK(serial.out == parallel.out);
}

TEST_CASE("version") {
  const auto r = run({"--version"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find(kLibraryVersion) != std::string::npos);
}
