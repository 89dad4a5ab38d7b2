#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "afdm/types.hpp"

namespace afdm::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_number(long long value) { return std::to_string(value); }

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), columns_(header.size()) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (const auto& h : header) cell(h);
  end_row();
}

CsvWriter& CsvWriter::cell(std::string_view text) {
  if (filled_ == columns_) throw std::logic_error("CSV row has too many cells");
  if (filled_++ > 0) out_ << ',';
  if (text.find_first_of(",\"\n") != std::string_view::npos) {
    out_ << '"';
    for (char c : text) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  } else {
    out_ << text;
  }
  return *this;
}

CsvWriter& CsvWriter::cell(double value) { return cell(format_number(value)); }
CsvWriter& CsvWriter::cell(long long value) { return cell(format_number(value)); }
CsvWriter& CsvWriter::cell(unsigned long long value) { return cell(std::to_string(value)); }

void CsvWriter::end_row() {
  if (filled_ != columns_) throw std::logic_error("CSV row has too few cells");
  out_ << '\n';
  filled_ = 0;
  if (!out_) throw std::runtime_error("CSV write failed");
}

int CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

const std::string& CsvTable::at(std::size_t row, std::string_view name) const {
  const int c = column(name);
  if (c < 0) throw ValidationError("CSV has no column '" + std::string(name) + "'");
  return rows.at(row).at(static_cast<std::size_t>(c));
}

double CsvTable::number(std::size_t row, std::string_view name) const { return parse_number(at(row, name), name); }

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open CSV file " + path.string());
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (first) {
      table.header = std::move(cells);
      first = false;
      continue;
    }
    if (cells.size() != table.header.size())
      throw ValidationError(path.string() + ": row with " + std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(table.header.size()));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

double parse_number(std::string_view text, std::string_view what) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ValidationError(std::string(what) + ": '" + std::string(text) + "' is not a number");
  return v;
}

}  // namespace afdm::cli
