#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wsncal::csv {

// Shortest representation that parses back to the same double.
void append_number(std::string& out, double value);
void append_number(std::string& out, std::size_t value);

// Buffered comma-separated writer. Rows are assembled field by field and
// flushed in large blocks.
class Writer {
 public:
  explicit Writer(const std::filesystem::path& path);
  ~Writer();
  Writer(const Writer&) = delete;
  Writer& operator=(const Writer&) = delete;

  void header(const std::vector<std::string>& columns);
  Writer& field(double value);
  Writer& field(std::size_t value);
  Writer& field(std::string_view text);
  void end_row();
  void close();

 private:
  void separator();
  void flush_if_large();

  std::filesystem::path path_;
  std::ofstream file_;
  std::string buffer_;
  bool row_open_ = false;
};

// Whole-file reader for headered, unquoted CSV. Lines starting with '#'
// before the header are collected as comments.
class Table {
 public:
  static Table read(const std::filesystem::path& path);

  const std::vector<std::string>& comments() const { return comments_; }
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return cells_.size() / std::max<std::size_t>(1, columns_.size()); }
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;

  std::string_view text(std::size_t row, std::size_t col) const;
  double number(std::size_t row, std::size_t col) const;
  std::size_t index(std::size_t row, std::size_t col) const;

 private:
  std::filesystem::path path_;
  std::unique_ptr<std::string> data_;  // cells_ view into this buffer
  std::vector<std::string> comments_;
  std::vector<std::string> columns_;
  std::unordered_map<std::string, std::size_t> lookup_;
  std::vector<std::string_view> cells_;
};

}  // namespace wsncal::csv
