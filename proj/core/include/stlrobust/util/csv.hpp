#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stlrobust::util {

/// Shortest decimal text that reads back to exactly the same double.
std::string format_number(double value);

/// Minimal CSV writer for numeric tables. Cells are never quoted, so callers
/// must not pass text containing commas or newlines.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  CsvWriter& cell(double value);
  CsvWriter& cell(std::int64_t value);
  CsvWriter& cell(std::string_view text);
  void end_row();

  const std::string& str() const noexcept { return text_; }

 private:
  void separator();

  std::string text_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws std::out_of_range when absent.
  std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);

/// Splitmix64 finaliser; used to derive independent seeds.
std::uint64_t mix64(std::uint64_t value) noexcept;
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace stlrobust::util
