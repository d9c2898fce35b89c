#pragma once

#include <string>
#include <vector>

#include "inflab/spectral_field.hpp"

namespace inflab {

/// %.17g, the round-trip format used by every writer.
std::string format_double(double v);

/// Rectangular numeric table with a header row.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string str() const;
  /// Column by name; IOError when missing.
  std::vector<double> column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

/// Writes `content` to `path`, creating parent directories. IOError on failure.
void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

/// NIFS snapshot layout, all little-endian: "NIFS", u32 version (1),
/// u32 dims[3], f64 spacing[3], f64 time, u32 ncomp, then ncomp arrays of
/// dims[0]*dims[1]*dims[2] f64 values in row-major order (z fastest).
void write_nifs(const std::string& path, const SpectralField& field);
SpectralField read_nifs(const std::string& path);

/// One polyline of a chart.
struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
  /// Draw markers only.
  bool points = false;
};

/// Static line chart with linear axes fitted to the data.
std::string svg_chart(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                      const std::vector<SvgSeries>& series);

}  // namespace inflab
