#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cvt {

// Decimal text with at most 12 significant digits, '.' separator, no
// locale dependence; NaN renders as "nan".
std::string csv_number(double value);

// FNV-1a over the bytes of `text`.
std::uint64_t fnv1a_64(const std::string& text);
std::string to_hex(std::uint64_t value);

// Rectangular CSV with a header row and a reproducibility footer.  Cells
// are preformatted strings; numeric cells should come from csv_number so
// reruns are byte-identical.
class ReportTable {
 public:
  explicit ReportTable(std::vector<std::string> columns);

  void add_row(std::vector<std::string> cells);  // must match the header width
  std::size_t rows() const { return rows_.size(); }

  // Footer: "# config_hash=<hex> seed=<seed> version=<name>-<version>".
  std::string to_csv(std::uint64_t config_hash, std::uint64_t seed) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace cvt
