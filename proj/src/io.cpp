#include "maxeig/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "maxeig/errors.hpp"

namespace maxeig {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string format_scalar(double x) { return format_double(x); }
std::string format_scalar(const Complex& x) { return format_double(x.real()) + " " + format_double(x.imag()); }

std::string format_trace_value(double x) { return format_double(x); }
std::string format_trace_value(const Complex& x) {
  std::string im = format_double(x.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_double(x.real()) + im + "i";
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-blank, non-comment line split into tokens.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#' || line[first] == '%') continue;
      tokens.clear();
      std::istringstream ss(line);
      for (std::string tok; ss >> tok;) tokens.push_back(tok);
      return true;
    }
    return false;
  }

  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_); }

  double number(const std::string& tok) const {
    double x = 0.0;
    const char* end = tok.data() + tok.size();
    const auto res = std::from_chars(tok.data(), end, x);
    if (res.ec != std::errc() || res.ptr != end) fail("not a number: '" + tok + "'");
    if (!std::isfinite(x)) fail("non-finite value: '" + tok + "'");
    return x;
  }

  std::size_t index(const std::string& tok, std::size_t bound) const {
    std::size_t i = 0;
    const char* end = tok.data() + tok.size();
    const auto res = std::from_chars(tok.data(), end, i);
    if (res.ec != std::errc() || res.ptr != end) fail("not an index: '" + tok + "'");
    if (i >= bound) fail("index " + tok + " out of range");
    return i;
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

AnyMatrix read_tridiag_body(LineReader& reader, std::size_t n) {
  std::vector<double> lower(n), upper(n), killing(n + 1);
  std::vector<std::string> tok;
  for (std::size_t i = 0; i <= n; ++i) {
    if (!reader.next(tok)) reader.fail("expected " + std::to_string(n + 1) + " rate lines");
    if (tok.size() != 3) reader.fail("expected 'a b c'");
    const double a = reader.number(tok[0]);
    const double b = reader.number(tok[1]);
    const double c = reader.number(tok[2]);
    if (i == 0 && a != 0.0) reader.fail("a_0 must be 0");
    if (i == n && b != 0.0) reader.fail("b_N must be 0");
    if (i > 0) lower[i - 1] = a;
    if (i < n) upper[i] = b;
    killing[i] = c;
  }
  if (reader.next(tok)) reader.fail("trailing data");
  try {
    return TridiagonalSystem(std::move(lower), std::move(upper), std::move(killing));
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), reader.line());
  }
}

template <Scalar T>
AnyMatrix read_coordinate_body(LineReader& reader, std::size_t order, std::size_t count) {
  DenseMatrix<T> m(order);
  std::vector<std::string> tok;
  constexpr std::size_t width = kind_of<T>() == ScalarKind::real ? 3 : 4;
  for (std::size_t e = 0; e < count; ++e) {
    if (!reader.next(tok)) reader.fail("expected " + std::to_string(count) + " entries");
    if (tok.size() != width) reader.fail("expected " + std::to_string(width) + " fields");
    const std::size_t i = reader.index(tok[0], order);
    const std::size_t j = reader.index(tok[1], order);
    if constexpr (std::same_as<T, double>) {
      m(i, j) = reader.number(tok[2]);
    } else {
      m(i, j) = Complex(reader.number(tok[2]), reader.number(tok[3]));
    }
  }
  if (reader.next(tok)) reader.fail("trailing data");
  return m;
}

}  // namespace

template <Scalar T>
void write_coordinate(std::ostream& out, const DenseMatrix<T>& a) {
  std::size_t count = 0;
  for (const T& x : a.data()) count += x != T{} ? 1 : 0;
  out << a.order() << ' ' << count << (kind_of<T>() == ScalarKind::real ? " real\n" : " complex\n");
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j)
      if (a(i, j) != T{}) out << i << ' ' << j << ' ' << format_scalar(a(i, j)) << '\n';
}

void write_tridiag(std::ostream& out, const TridiagonalSystem& t) {
  const std::size_t n = t.n();
  out << "TRIDIAG " << n << '\n';
  for (std::size_t i = 0; i <= n; ++i) {
    out << format_double(t.a(i)) << ' ' << format_double(i < n ? t.b(i) : 0.0) << ' ' << format_double(t.c(i))
        << '\n';
  }
}

void write_matrix(std::ostream& out, const AnyMatrix& m) {
  std::visit(
      [&out](const auto& x) {
        using M = std::decay_t<decltype(x)>;
        if constexpr (std::same_as<M, TridiagonalSystem>) {
          write_tridiag(out, x);
        } else {
          write_coordinate(out, x);
        }
      },
      m);
}

AnyMatrix read_matrix(std::istream& in) {
  LineReader reader(in);
  std::vector<std::string> tok;
  if (!reader.next(tok)) throw ParseError("empty input", reader.line());
  if (tok[0] == "TRIDIAG") {
    if (tok.size() != 2) reader.fail("expected 'TRIDIAG N'");
    const std::size_t n = reader.index(tok[1], std::size_t(-1));
    if (n == 0) reader.fail("N must be at least 1");
    return read_tridiag_body(reader, n);
  }
  if (tok.size() != 3) reader.fail("expected '<order> <count> real|complex' or 'TRIDIAG N'");
  const std::size_t order = reader.index(tok[0], std::size_t(-1));
  if (order == 0) reader.fail("order must be positive");
  const std::size_t count = reader.index(tok[1], order * order + 1);
  if (tok[2] == "real") return read_coordinate_body<double>(reader, order, count);
  if (tok[2] == "complex") return read_coordinate_body<Complex>(reader, order, count);
  reader.fail("field must be 'real' or 'complex'");
}

AnyMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
  return read_matrix(in);
}

void write_matrix_file(const std::filesystem::path& path, const AnyMatrix& m) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  write_matrix(out, m);
  if (!out) throw InvalidInput("write failed for '" + path.string() + "'");
}

template <Scalar T>
void write_trace_csv(std::ostream& out, const IterationTrace<T>& trace) {
  out << "k,z,residual,seconds\n";
  for (const auto& s : trace.steps()) {
    out << s.k << ',' << format_trace_value(s.z) << ',' << format_double(s.residual) << ','
        << format_double(s.seconds) << '\n';
  }
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows, bool complex) {
  out << "k,z,residual,seconds\n";
  for (const auto& r : rows) {
    out << r.k << ',';
    if (complex) {
      out << format_trace_value(Complex(r.z_re, r.z_im));
    } else {
      out << format_double(r.z_re);
    }
    out << ',' << format_double(r.residual) << ',' << format_double(r.seconds) << '\n';
  }
}

template <Scalar T>
std::vector<TraceRow> trace_rows(const IterationTrace<T>& trace) {
  std::vector<TraceRow> rows;
  rows.reserve(trace.steps().size());
  for (const auto& s : trace.steps()) {
    TraceRow row{s.k, 0.0, 0.0, s.residual, s.seconds};
    if constexpr (std::same_as<T, double>) {
      row.z_re = s.z;
    } else {
      row.z_re = s.z.real();
      row.z_im = s.z.imag();
    }
    rows.push_back(row);
  }
  return rows;
}

std::string run_record_to_json(const RunRecord& r, int indent) {
  json doc;
  if (r.model) doc["model"] = json::parse(model_spec_to_json(*r.model));
  if (!r.input_path.empty()) doc["input"] = r.input_path;
  doc["method"] = r.method;
  doc["options"] = r.options;
  doc["complex"] = r.complex;
  json trace = json::array();
  for (const auto& row : r.trace) {
    json step = {{"k", row.k}, {"z", row.z_re}, {"residual", row.residual}, {"seconds", row.seconds}};
    if (r.complex) step["z_im"] = row.z_im;
    trace.push_back(step);
  }
  doc["trace"] = trace;
  json result = {{"eigenvalue", r.eigenvalue_re},
                 {"eigenvector", r.eigenvector_re},
                 {"iterations", r.iterations},
                 {"residual", r.residual},
                 {"norm", r.norm},
                 {"termination", r.termination}};
  if (r.complex) {
    result["eigenvalue_im"] = r.eigenvalue_im;
    result["eigenvector_im"] = r.eigenvector_im;
  }
  if (r.maximal_capture) result["maximal_capture"] = *r.maximal_capture;
  if (r.capture_reference) result["capture_reference"] = *r.capture_reference;
  doc["result"] = result;
  doc["wall_seconds"] = r.wall_seconds;
  doc["version"] = r.version;
  return doc.dump(indent);
}

RunRecord run_record_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    RunRecord r;
    if (doc.contains("model")) r.model = model_spec_from_json(doc.at("model").dump());
    r.input_path = doc.value("input", std::string());
    r.method = doc.at("method").get<std::string>();
    r.options = doc.value("options", std::map<std::string, std::string>{});
    r.complex = doc.value("complex", false);
    for (const auto& step : doc.at("trace")) {
      TraceRow row;
      row.k = step.at("k").get<int>();
      row.z_re = step.at("z").get<double>();
      row.z_im = step.value("z_im", 0.0);
      row.residual = step.at("residual").get<double>();
      row.seconds = step.at("seconds").get<double>();
      r.trace.push_back(row);
    }
    const json& result = doc.at("result");
    r.eigenvalue_re = result.at("eigenvalue").get<double>();
    r.eigenvalue_im = result.value("eigenvalue_im", 0.0);
    r.eigenvector_re = result.at("eigenvector").get<std::vector<double>>();
    r.eigenvector_im = result.value("eigenvector_im", std::vector<double>{});
    r.iterations = result.at("iterations").get<int>();
    r.residual = result.at("residual").get<double>();
    r.norm = result.value("norm", std::string());
    r.termination = result.value("termination", std::string());
    if (result.contains("maximal_capture")) r.maximal_capture = result.at("maximal_capture").get<bool>();
    if (result.contains("capture_reference")) r.capture_reference = result.at("capture_reference").get<double>();
    r.wall_seconds = doc.value("wall_seconds", 0.0);
    r.version = doc.value("version", std::string());
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("run record: ") + e.what(), 0);
  }
}

template void write_coordinate(std::ostream&, const DenseMatrix<double>&);
template void write_coordinate(std::ostream&, const DenseMatrix<Complex>&);
template void write_trace_csv(std::ostream&, const IterationTrace<double>&);
template void write_trace_csv(std::ostream&, const IterationTrace<Complex>&);
template std::vector<TraceRow> trace_rows(const IterationTrace<double>&);
template std::vector<TraceRow> trace_rows(const IterationTrace<Complex>&);

}  // namespace maxeig
