#pragma once

#include "blochring/config.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace blochring {

/// Failure to read or write a result file (CLI exit code 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rectangular numeric table with provenance lines written as `#` comments.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> provenance;

  void add_row(std::vector<double> row);
  /// Index of a column by name; throws std::out_of_range when absent.
  std::size_t column(std::string_view name) const;
};

/// Serializes a table. Numbers use 17 significant digits, lines end in LF.
/// csv: comma separated with a bare column-name row; plotdata: whitespace
/// separated with the column-name row commented out.
std::string format_table(const ResultTable& table, OutputFormat format);

void emit(const ResultTable& table, OutputFormat format, const std::filesystem::path& path);

/// Parses a CSV written by `emit` (provenance lines are kept verbatim).
ResultTable read_csv(const std::filesystem::path& path);

std::string_view file_extension(OutputFormat format);

}  // namespace blochring
