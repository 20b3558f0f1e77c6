#include "akpz/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "akpz/errors.hpp"

namespace akpz {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_real(const std::string& s) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double x = 0.0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  auto res = std::from_chars(first, s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty())
    throw InputError("not a real number: '" + s + "'");
  return x;
}

long parse_int(const std::string& s) {
  long x = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty())
    throw InputError("not an integer: '" + s + "'");
  return x;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_field(fields[i]);
  }
  os << '\n';
}

std::vector<std::string> parse_csv_row(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  if (quoted) throw InputError("unterminated quote in CSV record");
  return out;
}

void write_config(std::ostream& os, const ParticleConfig& cfg) {
  for (int l = cfg.first_line(); l <= cfg.last_line(); ++l) {
    const auto& ln = cfg.line(l);
    os << "line " << l << " base " << ln.base_label << " span " << ln.lo2 << ' '
       << ln.hi2 << " z2";
    for (int z : ln.z2) os << ' ' << z;
    os << '\n';
  }
}

ParticleConfig read_config(std::istream& is) {
  std::vector<ParticleLine> lines;
  int first = 0;
  std::string text;
  int lineno = 0;
  while (std::getline(is, text)) {
    ++lineno;
    if (text.empty() || text[0] == '#') continue;
    std::istringstream ss(text);
    auto fail = [&](const std::string& what) {
      return InputError("configuration line " + std::to_string(lineno) + ": " + what);
    };
    std::string kw_line, kw_base, kw_span, kw_z2;
    int l = 0;
    ParticleLine ln;
    if (!(ss >> kw_line >> l >> kw_base >> ln.base_label >> kw_span >> ln.lo2 >> ln.hi2 >> kw_z2) ||
        kw_line != "line" || kw_base != "base" || kw_span != "span" || kw_z2 != "z2")
      throw fail("expected 'line <l> base <b> span <lo2> <hi2> z2 ...'");
    std::string tok;
    while (ss >> tok) ln.z2.push_back(static_cast<int>(parse_int(tok)));
    if (lines.empty())
      first = l;
    else if (l != first + static_cast<int>(lines.size()))
      throw fail("lines must be consecutive");
    lines.push_back(std::move(ln));
  }
  if (lines.empty()) throw InputError("configuration has no lines");
  return ParticleConfig(first, std::move(lines));
}

void write_height_csv(std::ostream& os, const HeightField& h) {
  os << "x1,x2,h\n";
  const Rect& w = h.window;
  for (int x1 = w.x1_min; x1 <= w.x1_max; ++x1)
    for (int x2 = w.x2_min; x2 <= w.x2_max; ++x2)
      os << x1 << ',' << x2 << ',' << h.at({x1, x2}) << '\n';
}

HeightField read_height_csv(std::istream& is) {
  std::string text;
  if (!std::getline(is, text) || parse_csv_row(text) != std::vector<std::string>{"x1", "x2", "h"})
    throw InputError("height CSV: expected header x1,x2,h");
  std::map<StarVertex, int> rows;
  Rect r{std::numeric_limits<int>::max(), std::numeric_limits<int>::min(),
         std::numeric_limits<int>::max(), std::numeric_limits<int>::min()};
  while (std::getline(is, text)) {
    if (text.empty()) continue;
    auto f = parse_csv_row(text);
    if (f.size() != 3) throw InputError("height CSV: expected 3 fields");
    StarVertex v{static_cast<int>(parse_int(f[0])), static_cast<int>(parse_int(f[1]))};
    if (!rows.emplace(v, static_cast<int>(parse_int(f[2]))).second)
      throw InputError("height CSV: duplicate vertex");
    r.x1_min = std::min(r.x1_min, v.x1);
    r.x1_max = std::max(r.x1_max, v.x1);
    r.x2_min = std::min(r.x2_min, v.x2);
    r.x2_max = std::max(r.x2_max, v.x2);
  }
  if (rows.empty() || static_cast<long>(rows.size()) != long(r.width()) * r.height())
    throw InputError("height CSV: rows do not fill a rectangle");
  Eigen::MatrixXi values(r.width(), r.height());
  for (auto [v, h] : rows) values(v.x1 - r.x1_min, v.x2 - r.x2_min) = h;
  return make_height_field(r, std::move(values));
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr, double horizon) {
  os << "time,x1,x2,h\n";
  auto block = [&](double t, const std::vector<int>& hs) {
    for (std::size_t k = 0; k < tr.probes.size(); ++k)
      os << format_real(t) << ',' << tr.probes[k].x1 << ',' << tr.probes[k].x2 << ','
         << hs[k] << '\n';
  };
  block(0.0, tr.initial_heights);
  for (const auto& s : tr.samples) block(s.time, s.heights);
  block(horizon, tr.final_heights());
}

namespace {

std::vector<std::string> header_line(std::istream& is, const std::string& key,
                                     std::size_t fields) {
  std::string text;
  if (!std::getline(is, text)) throw InputError("grid CSV: missing '" + key + "' line");
  auto f = parse_csv_row(text);
  if (f.empty() || f[0] != key || f.size() != fields + 1)
    throw InputError("grid CSV: malformed '" + key + "' line");
  return {f.begin() + 1, f.end()};
}

template <typename Visit>
void read_rows(std::istream& is, std::size_t fields, std::size_t expected, Visit&& visit) {
  std::string text;
  std::size_t k = 0;
  while (std::getline(is, text)) {
    if (text.empty()) continue;
    auto f = parse_csv_row(text);
    if (f.size() != fields) throw InputError("grid CSV: wrong field count");
    if (k >= expected) throw InputError("grid CSV: too many rows");
    visit(k++, parse_real(f.back()));
  }
  if (k != expected) throw InputError("grid CSV: too few rows");
}

}  // namespace

void write_grid_csv(std::ostream& os, const GridFunction1D<double>& f) {
  write_csv_row(os, {"domain", format_real(f.grid.lo), format_real(f.grid.hi)});
  write_csv_row(os, {"resolution", std::to_string(f.grid.n)});
  for (Eigen::Index i = 0; i < f.grid.n; ++i)
    os << format_real(f.grid.node(i)) << ',' << format_real(f.values[i]) << '\n';
}

void write_grid_csv(std::ostream& os, const GridFunction2D<double>& f) {
  const auto& g = f.grid;
  write_csv_row(os, {"domain", format_real(g.axis1.lo), format_real(g.axis1.hi),
                     format_real(g.axis2.lo), format_real(g.axis2.hi)});
  write_csv_row(os, {"resolution", std::to_string(g.axis1.n), std::to_string(g.axis2.n)});
  for (Eigen::Index i = 0; i < g.axis1.n; ++i)
    for (Eigen::Index j = 0; j < g.axis2.n; ++j)
      os << format_real(g.axis1.node(i)) << ',' << format_real(g.axis2.node(j)) << ','
         << format_real(f.values(i, j)) << '\n';
}

GridFunction1D<double> read_grid1d_csv(std::istream& is) {
  auto d = header_line(is, "domain", 2);
  auto r = header_line(is, "resolution", 1);
  Grid1D<double> g{parse_real(d[0]), parse_real(d[1]), parse_int(r[0])};
  g.validate();
  GridFunction1D<double> f{g, Eigen::ArrayXd(g.n)};
  read_rows(is, 2, static_cast<std::size_t>(g.n), [&](std::size_t k, double v) {
    f.values[static_cast<Eigen::Index>(k)] = v;
  });
  return f;
}

GridFunction2D<double> read_grid2d_csv(std::istream& is) {
  auto d = header_line(is, "domain", 4);
  auto r = header_line(is, "resolution", 2);
  Grid2D<double> g{{parse_real(d[0]), parse_real(d[1]), parse_int(r[0])},
                   {parse_real(d[2]), parse_real(d[3]), parse_int(r[1])}};
  g.validate();
  GridFunction2D<double> f{g, GridFunction2D<double>::Values(g.axis1.n, g.axis2.n)};
  const auto n2 = static_cast<std::size_t>(g.axis2.n);
  read_rows(is, 3, static_cast<std::size_t>(g.axis1.n) * n2, [&](std::size_t k, double v) {
    f.values(static_cast<Eigen::Index>(k / n2), static_cast<Eigen::Index>(k % n2)) = v;
  });
  return f;
}

void write_tiling_svg(std::ostream& os, const HeightField& h, double unit) {
  // Triangular embedding e1 -> (1, 0), e2 -> (1/2, -sqrt(3)/2) (SVG y points
  // down). An edge is interior to a lozenge when h increases by one along e1
  // or e2, or stays constant along e1 + e2.
  const Rect& w = h.window;
  const double s3 = std::sqrt(3.0) / 2.0;
  const double x0 = w.x1_min + 0.5 * w.x2_min, y0 = -s3 * w.x2_max;
  auto px = [&](int x1, int x2) { return unit * (x1 + 0.5 * x2 - x0 + 1); };
  auto py = [&](int x2) { return unit * (-s3 * x2 - y0 + 1); };
  const double width = unit * (w.width() + 0.5 * w.height() + 2);
  const double height = unit * (s3 * w.height() + 2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_real(width)
     << "\" height=\"" << format_real(height) << "\">\n";
  auto quad = [&](const StarVertex (&v)[4], const char* fill) {
    for (const auto& p : v)
      if (!w.contains(p)) return;
    os << "<polygon points=\"";
    for (int k = 0; k < 4; ++k)
      os << (k ? " " : "") << format_real(px(v[k].x1, v[k].x2)) << ','
         << format_real(py(v[k].x2));
    os << "\" fill=\"" << fill << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  };
  for (int x1 = w.x1_min; x1 <= w.x1_max; ++x1)
    for (int x2 = w.x2_min; x2 <= w.x2_max; ++x2) {
      StarVertex x{x1, x2};
      StarVertex e1{x1 + 1, x2}, e2{x1, x2 + 1}, d{x1 + 1, x2 + 1};
      if (w.contains(e1) && h.at(e1) == h.at(x) + 1) {
        const StarVertex q[4] = {{x1, x2 - 1}, e1, d, x};
        quad(q, "#e4b363");
      }
      if (w.contains(e2) && h.at(e2) == h.at(x) + 1) {
        const StarVertex q[4] = {{x1 - 1, x2}, x, d, e2};
        quad(q, "#6b9ac4");
      }
      if (w.contains(d) && h.at(d) == h.at(x)) {
        const StarVertex q[4] = {x, e1, d, e2};
        quad(q, "#d9d9d9");
      }
    }
  os << "</svg>\n";
}

}  // namespace akpz
