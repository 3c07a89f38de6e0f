#include "kresling/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "kresling/errors.hpp"

namespace kresling {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& text, int line_no, const char* field) {
  if (text.empty()) return std::nan("");
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size()) return value;
  } catch (const std::logic_error&) {
  }
  throw InputError(fmt::format("line {}: {} is not a number ('{}')", line_no, field, text));
}

void check_qualifier(const std::string& q, int line_no) {
  if (q.empty() || q == "~" || q == "<" || q == ">") return;
  throw InputError(fmt::format("line {}: unknown qualifier '{}'", line_no, q));
}

const char* kComparisonHeader =
    "name,rotation_deg,rotation_qualifier,aspect_ratio,aspect_qualifier,pressure_change_kpa,"
    "pressure_qualifier,printed_er";

}  // namespace

std::string fixed(double value, int decimals) {
  if (std::isnan(value)) return {};
  std::string text = fmt::format("{:.{}f}", value, decimals);
  // -0.00 and 0.00 must print identically.
  if (text.front() == '-' && text.find_first_not_of("-0.") == std::string::npos) text.erase(0, 1);
  return text;
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header.size()) {
    throw ArgumentError(
        fmt::format("row has {} cells but the header has {}", cells.size(), header.size()));
  }
  rows.push_back(std::move(cells));
}

void write_csv(const CsvTable& table, std::ostream& out, const std::optional<std::string>& meta) {
  if (table.rows.empty()) throw InputError("refusing to write a report with no rows");
  if (meta) out << "# " << *meta << '\n';
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
}

void write_csv(const CsvTable& table, const std::filesystem::path& path,
               const std::optional<std::string>& meta) {
  std::ostringstream buffer;
  write_csv(table, buffer, meta);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << buffer.str();
  if (!out.flush()) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

bool ComparisonRow::approximate() const noexcept {
  return rotation_qualifier == "~" || aspect_qualifier == "~";
}

std::string ComparisonRow::ratio_bound() const {
  // E_r falls as the aspect ratio grows.
  if (aspect_qualifier == ">") return "<";
  if (aspect_qualifier == "<") return ">";
  if (rotation_qualifier == "<" || rotation_qualifier == ">") return rotation_qualifier;
  return {};
}

std::vector<ComparisonRow> read_comparison(std::istream& in) {
  std::vector<ComparisonRow> rows;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kComparisonHeader) {
        throw InputError(fmt::format("line {}: expected header '{}'", line_no, kComparisonHeader));
      }
      header_seen = true;
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != 8) {
      throw InputError(fmt::format("line {}: expected 8 fields, got {}", line_no, cells.size()));
    }
    ComparisonRow row{cells[0],
                      parse_number(cells[1], line_no, "rotation_deg"),
                      cells[2],
                      parse_number(cells[3], line_no, "aspect_ratio"),
                      cells[4],
                      parse_number(cells[5], line_no, "pressure_change_kpa"),
                      cells[6],
                      cells[7]};
    check_qualifier(row.rotation_qualifier, line_no);
    check_qualifier(row.aspect_qualifier, line_no);
    check_qualifier(row.pressure_qualifier, line_no);
    if (!(row.rotation_deg > 0.0) || !(row.aspect_ratio > 0.0)) {
      throw InputError(fmt::format(
          "line {}: rotation_deg and aspect_ratio must be > 0 (got {}, {})", line_no,
          row.rotation_deg, row.aspect_ratio));
    }
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw InputError(fmt::format("missing header '{}'", kComparisonHeader));
  return rows;
}

std::vector<ComparisonRow> read_comparison(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  return read_comparison(in);
}

CsvTable comparison_table(const std::vector<ComparisonRow>& rows) {
  CsvTable table{{"name", "rotation_deg", "aspect_ratio", "pressure_change_kpa", "e_r_deg",
                  "e_r_bound", "approx", "printed_e_r_deg"},
                 {}};
  for (const auto& r : rows) {
    table.add_row({r.name, fixed(r.rotation_deg, precision::kAngle),
                   fixed(r.aspect_ratio, 2), fixed(r.pressure_change_kpa, precision::kPressure),
                   fixed(r.rotation_ratio(), precision::kRatio), r.ratio_bound(),
                   r.approximate() ? "1" : "0", r.printed_er});
  }
  return table;
}

}  // namespace kresling
