#include "wsncal/csv.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "wsncal/errors.hpp"

namespace wsncal::csv {

void append_number(std::string& out, double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

void append_number(std::string& out, std::size_t value) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

Writer::Writer(const std::filesystem::path& path)
    : path_(path), file_(path, std::ios::binary | std::ios::trunc) {
  if (!file_) throw DataError("cannot open " + path.string() + " for writing");
  buffer_.reserve(1 << 20);
}

Writer::~Writer() {
  try {
    close();
  } catch (...) {
  }
}

void Writer::header(const std::vector<std::string>& columns) {
  for (const auto& c : columns) field(std::string_view(c));
  end_row();
}

void Writer::separator() {
  if (row_open_) buffer_.push_back(',');
  row_open_ = true;
}

Writer& Writer::field(double value) {
  separator();
  append_number(buffer_, value);
  return *this;
}

Writer& Writer::field(std::size_t value) {
  separator();
  append_number(buffer_, value);
  return *this;
}

Writer& Writer::field(std::string_view text) {
  separator();
  buffer_.append(text);
  return *this;
}

void Writer::end_row() {
  buffer_.push_back('\n');
  row_open_ = false;
  flush_if_large();
}

void Writer::flush_if_large() {
  if (buffer_.size() < (1 << 20)) return;
  file_.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
  buffer_.clear();
}

void Writer::close() {
  if (!file_.is_open()) return;
  file_.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
  buffer_.clear();
  file_.close();
  if (file_.fail()) throw DataError("write failed: " + path_.string());
}

Table Table::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();

  Table t;
  t.path_ = path;
  t.data_ = std::make_unique<std::string>(std::move(ss).str());
  const std::string_view all(*t.data_);

  std::size_t pos = 0;
  bool have_header = false;
  std::size_t line_no = 0;
  while (pos < all.size()) {
    std::size_t eol = all.find('\n', pos);
    if (eol == std::string_view::npos) eol = all.size();
    std::string_view line = all.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!have_header && line.front() == '#') {
      t.comments_.emplace_back(line.substr(1));
      continue;
    }

    const std::size_t before = t.cells_.size();
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string_view::npos) {
        t.cells_.push_back(line.substr(start));
        break;
      }
      t.cells_.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }

    if (!have_header) {
      for (std::size_t i = before; i < t.cells_.size(); ++i) {
        t.columns_.emplace_back(t.cells_[i]);
        t.lookup_.emplace(t.columns_.back(), t.columns_.size() - 1);
      }
      t.cells_.clear();
      have_header = true;
    } else if (t.cells_.size() - before != t.columns_.size()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(t.columns_.size()) + " fields");
    }
  }
  if (!have_header) throw DataError(path.string() + ": missing header row");
  return t;
}

std::size_t Table::column(std::string_view name) const {
  const auto it = lookup_.find(std::string(name));
  if (it == lookup_.end())
    throw DataError(path_.string() + ": missing column '" + std::string(name) + "'");
  return it->second;
}

bool Table::has_column(std::string_view name) const {
  return lookup_.count(std::string(name)) > 0;
}

std::string_view Table::text(std::size_t row, std::size_t col) const {
  return cells_[row * columns_.size() + col];
}

double Table::number(std::size_t row, std::size_t col) const {
  const auto cell = text(row, col);
  double v = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
    throw DataError(path_.string() + ": row " + std::to_string(row + 1) + ", column '" +
                    columns_[col] + "': not a number: '" + std::string(cell) + "'");
  return v;
}

std::size_t Table::index(std::size_t row, std::size_t col) const {
  const auto cell = text(row, col);
  std::size_t v = 0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
    throw DataError(path_.string() + ": row " + std::to_string(row + 1) + ", column '" +
                    columns_[col] + "': not an index: '" + std::string(cell) + "'");
  return v;
}

}  // namespace wsncal::csv
