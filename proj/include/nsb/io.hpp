#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nsb/errors.hpp"

namespace nsb {

/// Scientific notation with 17 significant digits; round-trips any double.
inline std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

/// Comma-separated, header row, LF line endings, no quoting.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> columns)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(columns.size()) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    bool first = true;
    for (auto c : columns) {
      if (!first) out_ << ',';
      out_ << c;
      first = false;
    }
    out_ << '\n';
  }

  /// Numbers are written with format_double, integers and text as-is.
  template <class... Cells>
  void write(const Cells&... cells) {
    if (sizeof...(Cells) != columns_) throw std::logic_error("CSV row width mismatch in " + path_.string());
    bool first = true;
    ((out_ << (first ? "" : ",") << to_cell(cells), first = false), ...);
    out_ << '\n';
    ++rows_;
  }

  std::size_t rows() const { return rows_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  static std::string to_cell(double x) { return format_double(x); }
  static std::string to_cell(int x) { return std::to_string(x); }
  static std::string to_cell(long long x) { return std::to_string(x); }
  static std::string to_cell(std::string_view s) { return std::string(s); }
  static std::string to_cell(const char* s) { return s; }

  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
  std::size_t rows_ = 0;
};

}  // namespace nsb
