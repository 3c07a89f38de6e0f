#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kresling {

/// Fixed-point text for a value; NaN prints as an empty field.
std::string fixed(double value, int decimals);

namespace precision {
inline constexpr int kAngle = 2;
inline constexpr int kLength = 2;
inline constexpr int kPressure = 3;
inline constexpr int kRatio = 1;
}  // namespace precision

/// Comma-delimited table with a single header line. Header names carry units,
/// e.g. `theta_u_deg`.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells);
};

/// Throws InputError for an empty table; `meta`, when given, is written as a
/// leading `# ` comment line.
void write_csv(const CsvTable& table, std::ostream& out,
               const std::optional<std::string>& meta = std::nullopt);
/// Throws IoError when the destination cannot be written.
void write_csv(const CsvTable& table, const std::filesystem::path& path,
               const std::optional<std::string>& meta = std::nullopt);

/// One entry of the twisting-actuator comparison table. Qualifiers are "" for
/// an exact value, "~" for approximate, ">" or "<" for a bound.
struct ComparisonRow {
  std::string name;
  double rotation_deg;
  std::string rotation_qualifier;
  double aspect_ratio;
  std::string aspect_qualifier;
  double pressure_change_kpa;  ///< NaN when not reported
  std::string pressure_qualifier;
  std::string printed_er;  ///< as published, kept only for side-by-side display

  /// Rotation ratio, recomputed from rotation and aspect ratio.
  double rotation_ratio() const noexcept { return rotation_deg / aspect_ratio; }
  bool approximate() const noexcept;
  /// "" for a value, "<" or ">" when a bound on an input makes E_r a bound.
  std::string ratio_bound() const;
};

/// Reads the comparison table: header
/// `name,rotation_deg,rotation_qualifier,aspect_ratio,aspect_qualifier,pressure_change_kpa,pressure_qualifier,printed_er`.
std::vector<ComparisonRow> read_comparison(std::istream& in);
std::vector<ComparisonRow> read_comparison(const std::filesystem::path& path);

CsvTable comparison_table(const std::vector<ComparisonRow>& rows);

}  // namespace kresling
