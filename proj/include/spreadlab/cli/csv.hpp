#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace spreadlab::cli {

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless
};

/// One measured curve. Written as `# key: value` metadata, a `# units:` line,
/// the column-name row, then rows with 17 significant digits.
struct CsvTable {
  std::string name;  // file stem
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

/// Throws spreadlab::Error on a non-finite value or a ragged row.
void write_csv(std::ostream& out, const CsvTable& table);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

}  // namespace spreadlab::cli
