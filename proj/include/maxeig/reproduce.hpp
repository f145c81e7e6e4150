#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace maxeig {

enum class CellStatus { pass, fail, skipped, reference_match, reference_differs };

struct CellResult {
  int size = 0;
  std::string quantity;
  double reference = 0.0;
  std::optional<double> computed;
  double tol = 0.0;
  bool relative = true;
  bool gated = true;
  CellStatus status = CellStatus::skipped;
  std::string note;
};

struct TableReport {
  std::string key;
  std::string title;
  std::vector<CellResult> cells;
};

struct ReproduceReport {
  std::vector<TableReport> tables;

  int gated_failures() const;
  bool ok() const { return gated_failures() == 0; }
};

struct ReproduceOptions {
  int max_size = 2000;  ///< rows with a larger size are skipped
  bool parallel = true;
};

/// Keys of the embedded reference tables, in file order.
std::vector<std::string> reference_table_keys();

/// Raw text of the embedded reference data.
std::string reference_data_text();

/// Computes every cell of the requested tables ("all" selects everything).
/// Throws InvalidInput for an unknown key.
ReproduceReport reproduce(const std::vector<std::string>& keys, const ReproduceOptions& opts = {});

/// One line per cell with 6 significant digits, then a summary line.
void print_report(std::ostream& out, const ReproduceReport& report);

}  // namespace maxeig
