#include "blochring/table.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace blochring {

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("row has " + std::to_string(row.size()) + " cells, table has " +
                                std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

std::size_t ResultTable::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column named " + std::string(name));
  return static_cast<std::size_t>(it - columns.begin());
}

std::string_view file_extension(OutputFormat format) {
  return format == OutputFormat::Csv ? ".csv" : ".dat";
}

std::string format_table(const ResultTable& table, OutputFormat format) {
  const char* sep = format == OutputFormat::Csv ? "," : " ";
  std::string out;
  for (const auto& line : table.provenance) out += "# " + line + "\n";
  if (format == OutputFormat::PlotData) out += "# ";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += sep;
    out += table.columns[c];
  }
  out += "\n";
  char buf[40];
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw std::logic_error("ragged result table");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += sep;
      std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

void emit(const ResultTable& table, OutputFormat format, const std::filesystem::path& path) {
  const std::string text = format_table(table, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

ResultTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  ResultTable table;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      table.provenance.push_back(line.substr(2));
      continue;
    }
    std::stringstream cells(line);
    std::string cell;
    if (!header) {
      while (std::getline(cells, cell, ',')) table.columns.push_back(cell);
      header = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(cells, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0')
        throw IoError("'" + path.string() + "': bad number '" + cell + "'");
      row.push_back(v);
    }
    try {
      table.add_row(std::move(row));
    } catch (const std::invalid_argument& e) {
      throw IoError("'" + path.string() + "': " + e.what());
    }
  }
  if (!header) throw IoError("'" + path.string() + "' has no column row");
  return table;
}

}  // namespace blochring
