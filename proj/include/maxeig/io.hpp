#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maxeig/models.hpp"
#include "maxeig/numat.hpp"
#include "maxeig/trace.hpp"

namespace maxeig {

inline constexpr const char* kLibraryVersion = "1.0.0";

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

/// Coordinate text format:
///   <order> <count> real|complex
///   i j value        (or  i j re im)
/// 0-indexed, one nonzero entry per line. Lines starting with '#' are comments.
template <Scalar T>
void write_coordinate(std::ostream& out, const DenseMatrix<T>& a);

/// Compact tridiagonal format:
///   TRIDIAG N
///   a_i b_i c_i      (N + 1 lines, a_0 = 0 and b_N = 0)
void write_tridiag(std::ostream& out, const TridiagonalSystem& t);

/// Writes tridiagonal systems in the compact format and dense matrices in
/// coordinate format.
void write_matrix(std::ostream& out, const AnyMatrix& m);

/// Accepts either format. Throws ParseError with the 1-based line number.
AnyMatrix read_matrix(std::istream& in);

AnyMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const AnyMatrix& m);

/// CSV with header `k,z,residual,seconds`. Complex z is written as `re+imi`.
template <Scalar T>
void write_trace_csv(std::ostream& out, const IterationTrace<T>& trace);

struct TraceRow {
  int k = 0;
  double z_re = 0.0;
  double z_im = 0.0;
  double residual = 0.0;
  double seconds = 0.0;

  bool operator==(const TraceRow&) const = default;
};

/// Everything `solve` knows about one run.
struct RunRecord {
  std::optional<ModelSpec> model;
  std::string input_path;
  std::string method;
  std::map<std::string, std::string> options;
  bool complex = false;
  std::vector<TraceRow> trace;
  std::string termination;
  double eigenvalue_re = 0.0;
  double eigenvalue_im = 0.0;
  std::vector<double> eigenvector_re;
  std::vector<double> eigenvector_im;  ///< empty for real runs
  int iterations = 0;
  double residual = 0.0;
  std::string norm;
  std::optional<bool> maximal_capture;
  std::optional<double> capture_reference;
  double wall_seconds = 0.0;
  std::string version = kLibraryVersion;

  bool operator==(const RunRecord&) const = default;
};

std::string run_record_to_json(const RunRecord& record, int indent = 2);
RunRecord run_record_from_json(const std::string& text);

/// Trace rows in the record's convention; the caller may remap z afterwards.
template <Scalar T>
std::vector<TraceRow> trace_rows(const IterationTrace<T>& trace);

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows, bool complex);

}  // namespace maxeig
