#include "coagkit/result_table.hpp"

#include <cstdio>
#include <sstream>

#include "coagkit/errors.hpp"

namespace coagkit {

ResultTable::ResultTable(std::vector<std::string> header)
    : header_(std::move(header)) {}

void ResultTable::add_metadata(const std::string& key,
                               const std::string& value) {
  metadata_.emplace_back(key, value);
}

void ResultTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw DimensionMismatchError("row width does not match table header");
  }
  rows_.push_back(std::move(cells));
}

const std::string& ResultTable::cell(std::size_t row,
                                     const std::string& column) const {
  for (std::size_t c = 0; c < header_.size(); ++c) {
    if (header_[c] == column) return rows_.at(row)[c];
  }
  throw DomainError("no such column: " + column);
}

double ResultTable::cell_as_double(std::size_t row,
                                   const std::string& column) const {
  return std::stod(cell(row, column));
}

void ResultTable::write_csv(std::ostream& os) const {
  for (const auto& [key, value] : metadata_) {
    os << "# " << key << " = " << value << "\n";
  }
  for (std::size_t c = 0; c < header_.size(); ++c) {
    if (c) os << ",";
    os << header_[c];
  }
  os << "\n";
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ",";
      os << row[c];
    }
    os << "\n";
  }
}

std::string ResultTable::to_csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

std::string ResultTable::format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string ResultTable::format_size(std::uint64_t v) {
  return std::to_string(v);
}

}  // namespace coagkit
