#include "spreadlab/cli/csv.hpp"

#include <cmath>
#include <fstream>

#include "spreadlab/cli/config.hpp"
#include "spreadlab/errors.hpp"

namespace spreadlab::cli {

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw Error(name + ": row has " + std::to_string(row.size()) + " values for " +
                std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << '\n';
  out << "# units:";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : " ") << table.columns[c].unit;
  }
  out << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c].name;
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!std::isfinite(row[c])) {
        throw Error(table.name + ": non-finite value in column " + table.columns[c].name);
      }
      out << (c ? "," : "") << format_real(row[c]);
    }
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_csv(out, table);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace spreadlab::cli
