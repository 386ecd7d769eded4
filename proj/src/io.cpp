#include "wnr/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wnr {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// line/column of a byte offset, for parse diagnostics
std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(where + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                         e.what(),
                     line, col);
  }
}

}  // namespace

ComplexMatrix parse_matrix_json(const std::string& text, const std::string& where) {
  const json j = parse_json(text, where);
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw ParseError(where + ": expected an object with \"n\" and \"entries\"");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    throw ParseError(where + ": \"n\" must be a positive integer");
  const int n = j["n"].get<int>();
  const json& rows = j["entries"];
  if (!rows.is_array() || int(rows.size()) != n)
    throw ParseError(where + ": \"entries\" must be an array of " + std::to_string(n) + " rows");
  std::vector<cplx> entries;
  entries.reserve(std::size_t(n) * n);
  for (int i = 0; i < n; ++i) {
    const json& row = rows[std::size_t(i)];
    if (!row.is_array() || int(row.size()) != n)
      throw ParseError(where + ": row " + std::to_string(i) + " is not square (expected " +
                       std::to_string(n) + " entries)");
    for (int k = 0; k < n; ++k) {
      const json& e = row[std::size_t(k)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError(where + ": entry (" + std::to_string(i) + "," + std::to_string(k) +
                         ") must be [re, im]");
      entries.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
  }
  try {
    return ComplexMatrix(n, std::move(entries));
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

ComplexMatrix parse_matrix_file(const std::filesystem::path& path) {
  return parse_matrix_json(read_file(path), path.string());
}

WeightVector parse_weights_json(const std::string& text, const std::string& where) {
  const json j = parse_json(text, where);
  if (!j.is_object() || !j.contains("c") || !j["c"].is_array() || j["c"].empty())
    throw ParseError(where + ": expected an object with a nonempty array \"c\"");
  std::vector<double> c;
  for (const json& e : j["c"]) {
    if (!e.is_number()) throw ParseError(where + ": weights must be real numbers");
    c.push_back(e.get<double>());
  }
  try {
    return WeightVector(std::move(c));
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

WeightVector parse_weights_file(const std::filesystem::path& path) {
  return parse_weights_json(read_file(path), path.string());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

std::string boundary_csv(const ConvexRegion& region) {
  std::ostringstream ss;
  ss << "theta,x,y\n";
  const auto& v = region.vertices();
  cplx mean = 0.0;
  for (const cplx& p : v) mean += p;
  if (!v.empty()) mean /= double(v.size());
  for (const cplx& p : v) {
    double theta = std::atan2(p.imag() - mean.imag(), p.real() - mean.real());
    if (theta < 0.0) theta += 6.283185307179586476925286766559;
    if (v.size() == 1) theta = 0.0;
    ss << format_double(theta) << ',' << format_double(p.real()) << ','
       << format_double(p.imag()) << '\n';
  }
  return ss.str();
}

std::string profile_csv(const SupportProfile& profile) {
  std::ostringstream ss;
  ss << "theta,value,derivative\n";
  for (std::size_t i = 0; i < profile.grid.size(); ++i)
    ss << format_double(profile.grid[i]) << ',' << format_double(profile.values[i]) << ','
       << format_double(profile.derivatives[i]) << '\n';
  return ss.str();
}

std::string region_svg(const std::vector<const ConvexRegion*>& regions,
                       const std::vector<cplx>& eigenvalues, const std::vector<cplx>& cvalues,
                       const std::vector<cplx>& markers) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  const auto grow = [&](cplx p) {
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  };
  for (const ConvexRegion* r : regions)
    for (const cplx& p : r->vertices()) grow(p);
  for (const cplx& p : eigenvalues) grow(p);
  for (const cplx& p : cvalues) grow(p);
  for (const cplx& p : markers) grow(p);
  if (xmin > xmax) {
    xmin = ymin = -1.0;
    xmax = ymax = 1.0;
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-6});
  const double margin = 0.1 * span;
  xmin -= margin;
  xmax += margin;
  ymin -= margin;
  ymax += margin;

  // SVG y runs downward; emit with y negated so the plot reads math-style.
  std::ostringstream ss;
  ss << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(xmin) << ' '
     << format_double(-ymax) << ' ' << format_double(xmax - xmin) << ' '
     << format_double(ymax - ymin) << "\">\n";
  const double stroke = 0.004 * span;
  ss << "<line x1=\"" << format_double(xmin) << "\" y1=\"0\" x2=\"" << format_double(xmax)
     << "\" y2=\"0\" stroke=\"#bbb\" stroke-width=\"" << format_double(0.5 * stroke) << "\"/>\n";
  ss << "<line x1=\"0\" y1=\"" << format_double(-ymax) << "\" x2=\"0\" y2=\""
     << format_double(-ymin) << "\" stroke=\"#bbb\" stroke-width=\""
     << format_double(0.5 * stroke) << "\"/>\n";

  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  int ci = 0;
  for (const ConvexRegion* r : regions) {
    const auto& v = r->vertices();
    if (v.empty()) continue;
    ss << "<path d=\"";
    for (std::size_t i = 0; i < v.size(); ++i)
      ss << (i == 0 ? 'M' : 'L') << format_double(v[i].real()) << ' '
         << format_double(-v[i].imag());
    if (v.size() >= 3) ss << 'Z';
    ss << "\" fill=\"none\" stroke=\"" << colors[ci % 4] << "\" stroke-width=\""
       << format_double(stroke) << "\"/>\n";
    if (v.size() == 1)
      ss << "<circle cx=\"" << format_double(v[0].real()) << "\" cy=\""
         << format_double(-v[0].imag()) << "\" r=\"" << format_double(stroke * 2.0)
         << "\" fill=\"" << colors[ci % 4] << "\"/>\n";
    ++ci;
  }
  const double cr = 0.012 * span;
  for (const cplx& p : eigenvalues) {  // crosses
    const double x = p.real(), y = -p.imag();
    ss << "<path d=\"M" << format_double(x - cr) << ' ' << format_double(y - cr) << 'L'
       << format_double(x + cr) << ' ' << format_double(y + cr) << 'M'
       << format_double(x - cr) << ' ' << format_double(y + cr) << 'L'
       << format_double(x + cr) << ' ' << format_double(y - cr)
       << "\" stroke=\"#000\" stroke-width=\"" << format_double(0.5 * stroke) << "\"/>\n";
  }
  for (const cplx& p : cvalues)
    ss << "<circle cx=\"" << format_double(p.real()) << "\" cy=\"" << format_double(-p.imag())
       << "\" r=\"" << format_double(0.6 * cr) << "\" fill=\"#ff7f0e\" fill-opacity=\"0.7\"/>\n";
  for (const cplx& p : markers)
    ss << "<circle cx=\"" << format_double(p.real()) << "\" cy=\"" << format_double(-p.imag())
       << "\" r=\"" << format_double(0.5 * cr)
       << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"" << format_double(0.5 * stroke)
       << "\"/>\n";
  ss << "</svg>\n";
  return ss.str();
}

}  // namespace wnr
