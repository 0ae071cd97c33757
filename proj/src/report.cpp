#include "cvteleport/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cvteleport/version.hpp"

namespace cvt {

std::string csv_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  // to_chars is locale independent, so the separator is always '.'.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a_64(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (const char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string to_hex(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

ReportTable::ReportTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) {
    throw std::invalid_argument("ReportTable: needs at least one column");
  }
}

void ReportTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw std::invalid_argument("ReportTable: row width must match the header");
  }
  rows_.push_back(std::move(cells));
}

std::string ReportTable::to_csv(std::uint64_t config_hash, std::uint64_t seed) const {
  std::ostringstream out;
  for (std::size_t k = 0; k < columns_.size(); ++k) {
    if (k > 0) out << ',';
    out << columns_[k];
  }
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) out << ',';
      out << row[k];
    }
    out << '\n';
  }
  out << "# config_hash=" << to_hex(config_hash) << " seed=" << seed << " version="
      << kProjectName << '-' << kVersion << '\n';
  return out.str();
}

}  // namespace cvt
