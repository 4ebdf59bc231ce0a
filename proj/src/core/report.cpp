#include "report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "errors.hpp"

namespace tailspace {

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  fail(ErrorCode::invalid_argument, "unknown format '" + name + "' (csv or json)");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Report::Report(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Report::add_row(std::vector<Cell> row) {
  require(row.size() == columns_.size(), ErrorCode::internal,
          "report row has " + std::to_string(row.size()) + " cells, expected " +
              std::to_string(columns_.size()));
  rows_.push_back(std::move(row));
}

void Report::add_failure(long row, std::string reason) {
  nlohmann::ordered_json f;
  f["row"] = row;
  f["reason"] = std::move(reason);
  failures_.push_back(std::move(f));
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(const std::string& s) const { return csv_escape(s); }
  } visitor;
  return std::visit(visitor, c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  struct {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(bool b) const { return b; }
    nlohmann::ordered_json operator()(std::int64_t i) const { return i; }
    nlohmann::ordered_json operator()(double d) const {
      if (!std::isfinite(d)) return nullptr;
      return d;
    }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  } visitor;
  return std::visit(visitor, c);
}

}  // namespace

std::string Report::to_csv() const {
  std::string out;
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (j) out += ',';
    out += csv_escape(columns_[j]);
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += csv_cell(row[j]);
    }
    out += '\n';
  }
  return out;
}

std::string Report::to_json() const {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t j = 0; j < row.size(); ++j) obj[columns_[j]] = json_cell(row[j]);
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::string Report::render(ReportFormat format) const {
  return format == ReportFormat::csv ? to_csv() : to_json();
}

void Report::write(ReportFormat format, const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::io, "cannot open " + path.string() + " for writing");
  out << render(format);
  out.flush();
  require(out.good(), ErrorCode::io, "write failed for " + path.string());
}

}  // namespace tailspace
