#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace coagkit {

// Rectangular named-column table with a metadata block (the resolved
// experiment configuration). Serializes to RFC-4180-style CSV with '#'
// comment lines for the metadata; doubles are written in scientific
// notation with 17 significant digits so identical runs give identical
// bytes.
class ResultTable {
 public:
  explicit ResultTable(std::vector<std::string> header);

  void add_metadata(const std::string& key, const std::string& value);
  void add_row(std::vector<std::string> cells);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const {
    return metadata_;
  }

  // cell value at (row, column name); throws if the column does not exist
  const std::string& cell(std::size_t row, const std::string& column) const;
  double cell_as_double(std::size_t row, const std::string& column) const;

  void write_csv(std::ostream& os) const;
  std::string to_csv() const;

  static std::string format_double(double v);
  static std::string format_size(std::uint64_t v);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

}  // namespace coagkit
