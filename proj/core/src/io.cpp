#include "inflab/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "inflab/errors.hpp"

namespace inflab {

static_assert(std::endian::native == std::endian::little, "NIFS I/O assumes a little-endian host");

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + format_double(row[c]);
    out += '\n';
  }
  return out;
}

std::vector<double> CsvTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw IOError("csv: no column '" + name + "'");
  const auto c = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.at(c));
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& s) {
  if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw IOError("csv: not a number: '" + s + "'");
  return v;
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (header) {
      t.columns = std::move(cells);
      header = false;
      continue;
    }
    if (cells.size() != t.columns.size()) throw IOError("csv: ragged row");
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_cell(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable read_csv(const std::string& path) { return parse_csv(read_text(path)); }

void write_text(const std::string& path, const std::string& content) {
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IOError("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IOError("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

template <class T>
void put(std::string& buf, T v) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  buf.append(bytes, sizeof(T));
}

template <class T>
T take(const std::string& buf, std::size_t& pos) {
  if (pos + sizeof(T) > buf.size()) throw IOError("nifs: truncated file");
  T v;
  std::memcpy(&v, buf.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

}  // namespace

void write_nifs(const std::string& path, const SpectralField& field) {
  std::string buf = "NIFS";
  put<std::uint32_t>(buf, 1);
  for (int a = 0; a < 3; ++a) put<std::uint32_t>(buf, static_cast<std::uint32_t>(field.grid.n[a]));
  for (int a = 0; a < 3; ++a) put<double>(buf, field.grid.h(a));
  put<double>(buf, field.time);
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(field.ncomp()));
  for (const auto& comp : field.components)
    buf.append(reinterpret_cast<const char*>(comp.data()), comp.size() * sizeof(double));
  write_text(path, buf);
}

SpectralField read_nifs(const std::string& path) {
  const std::string buf = read_text(path);
  if (buf.size() < 4 || buf.compare(0, 4, "NIFS") != 0) throw IOError("nifs: bad magic in " + path);
  std::size_t pos = 4;
  if (take<std::uint32_t>(buf, pos) != 1) throw IOError("nifs: unsupported version");
  SpectralField f;
  for (int a = 0; a < 3; ++a) f.grid.n[a] = static_cast<int>(take<std::uint32_t>(buf, pos));
  for (int a = 0; a < 3; ++a) f.grid.L[a] = take<double>(buf, pos) * f.grid.n[a];
  f.time = take<double>(buf, pos);
  const auto ncomp = take<std::uint32_t>(buf, pos);
  const std::size_t n = f.grid.size();
  if (buf.size() != pos + static_cast<std::size_t>(ncomp) * n * sizeof(double)) throw IOError("nifs: size mismatch");
  f.components.assign(ncomp, std::vector<double>(n));
  for (auto& comp : f.components) {
    std::memcpy(comp.data(), buf.data() + pos, n * sizeof(double));
    pos += n * sizeof(double);
  }
  return f;
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

}  // namespace

std::string svg_chart(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                      const std::vector<SvgSeries>& series) {
  const double W = 640, H = 420, ml = 70, mr = 150, mt = 40, mb = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const auto X = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
  const auto Y = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" font-family=\"sans-serif\" "
                    "font-size=\"12\">\n";
  out += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
  out += "<text x=\"320\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + escape(title) + "</text>\n";
  out += "<rect x=\"" + fmt("%.1f", ml) + "\" y=\"" + fmt("%.1f", mt) + "\" width=\"" + fmt("%.1f", W - ml - mr) +
         "\" height=\"" + fmt("%.1f", H - mt - mb) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    out += "<text x=\"" + fmt("%.1f", X(xv)) + "\" y=\"" + fmt("%.1f", H - mb + 16) + "\" text-anchor=\"middle\">" +
           fmt("%.3g", xv) + "</text>\n";
    out += "<text x=\"" + fmt("%.1f", ml - 6) + "\" y=\"" + fmt("%.1f", Y(yv) + 4) + "\" text-anchor=\"end\">" +
           fmt("%.3g", yv) + "</text>\n";
  }
  out += "<text x=\"" + fmt("%.1f", (ml + W - mr) / 2) + "\" y=\"" + fmt("%.1f", H - 12) +
         "\" text-anchor=\"middle\">" + escape(xlabel) + "</text>\n";
  out += "<text x=\"16\" y=\"" + fmt("%.1f", (mt + H - mb) / 2) + "\" transform=\"rotate(-90 16 " +
         fmt("%.1f", (mt + H - mb) / 2) + ")\" text-anchor=\"middle\">" + escape(ylabel) + "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const std::string color = colors[k % 6];
    if (s.points) {
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
        if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
          out += "<circle cx=\"" + fmt("%.2f", X(s.x[i])) + "\" cy=\"" + fmt("%.2f", Y(s.y[i])) +
                 "\" r=\"3\" fill=\"" + color + "\"/>\n";
    } else {
      out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
        if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
          out += fmt("%.2f", X(s.x[i])) + "," + fmt("%.2f", Y(s.y[i])) + " ";
      out += "\"/>\n";
    }
    const double ly = mt + 16 + 18 * k;
    out += "<rect x=\"" + fmt("%.1f", W - mr + 10) + "\" y=\"" + fmt("%.1f", ly - 9) +
           "\" width=\"12\" height=\"12\" fill=\"" + color + "\"/>\n";
    out += "<text x=\"" + fmt("%.1f", W - mr + 28) + "\" y=\"" + fmt("%.1f", ly + 2) + "\">" + escape(s.label) +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace inflab
