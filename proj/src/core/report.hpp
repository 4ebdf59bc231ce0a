#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace tailspace {

using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

enum class ReportFormat { csv, json };

ReportFormat parse_report_format(const std::string& name);

/// Homogeneous table of rows plus a machine-readable failure list.
class Report {
 public:
  explicit Report(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  void add_row(std::vector<Cell> row);
  /// Records a failed check or solve; `row` is the index of the offending
  /// row, or -1.
  void add_failure(long row, std::string reason);

  bool passed() const { return failures_.empty(); }
  const nlohmann::ordered_json& failures() const { return failures_; }

  /// Header plus one line per row; doubles with 17 significant digits.
  std::string to_csv() const;
  /// Array of flat objects keyed by column.
  std::string to_json() const;
  std::string render(ReportFormat format) const;

  /// Writes render(format) to path.
  void write(ReportFormat format, const std::filesystem::path& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  nlohmann::ordered_json failures_ = nlohmann::ordered_json::array();
};

/// 17 significant digits with a '.' decimal point; nan and inf spelled out.
std::string format_double(double v);

}  // namespace tailspace
