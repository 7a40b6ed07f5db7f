#ifndef SKEWFORMS_REPORT_HPP
#define SKEWFORMS_REPORT_HPP

// Runs one analysis command over a parsed document and renders the result as
// text or JSON lines. Shared by the C API and the command-line tool.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "skewforms/analysis.hpp"
#include "skewforms/dsl.hpp"

namespace skewforms {

enum class OutputFormat : std::uint8_t { Text, JsonLines };

struct RunOptions {
  /// d, wedge, star, classify, relation, frobenius, characteristics,
  /// pseudostructure, stokes, balance-scan or table.
  std::string command;
  /// Declarations to analyze; empty selects every applicable one.
  std::vector<std::string> names;
  OutputFormat format = OutputFormat::Text;
  std::optional<Box> box;  // default [-1, 1]^n
  int grid = 101;
  double h = 1e-3;
  int steps = 10000;
  double tol = 1e-6;
  std::optional<std::array<double, 2>> start;
  Rect rect;
  int stride = 1000;
  int table_p = 0;
  int table_n = 0;
};

struct RunResult {
  std::string output;
  /// Some verdict came out unknown.
  bool has_unknown = false;
};

/// doc may be null for the table command. Throws InvalidArgument for bad
/// options, NameNotFound for unknown names and DomainError from evaluation.
RunResult run_command(const Document* doc, const RunOptions& options);

/// Names of the supported commands.
const std::vector<std::string>& command_names();

}  // namespace skewforms

#endif  // SKEWFORMS_REPORT_HPP
