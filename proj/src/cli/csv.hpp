#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace afdm::cli {

// 17 significant digits, '.' separator, independent of the locale.
std::string format_number(double value);
std::string format_number(long long value);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  CsvWriter& cell(std::string_view text);
  CsvWriter& cell(double value);
  CsvWriter& cell(long long value);
  CsvWriter& cell(int value) { return cell(static_cast<long long>(value)); }
  CsvWriter& cell(unsigned long long value);
  CsvWriter& cell(unsigned long value) { return cell(static_cast<unsigned long long>(value)); }
  void end_row();

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column, or -1.
  int column(std::string_view name) const;
  bool has(std::string_view name) const { return column(name) >= 0; }
  const std::string& at(std::size_t row, std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

// Parses a decimal, "inf" or "-inf"; throws ValidationError naming `what`.
double parse_number(std::string_view text, std::string_view what);

}  // namespace afdm::cli
