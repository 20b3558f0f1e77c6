#include "akpz/height.hpp"

#include <algorithm>
#include <sstream>

namespace akpz {

namespace {

struct LineRange {
  int x1_first;
  int x1_last;
};

// Vertices of `window` on `line`: x2 = x1 + line.
LineRange vertices_on_line(const Rect& w, int line) {
  return {std::max(w.x1_min, w.x2_min - line), std::min(w.x1_max, w.x2_max - line)};
}

void require_valid(const ParticleConfig& cfg) {
  auto report = validate_config(cfg);
  if (!report.ok())
    throw InputError("invalid particle configuration: " +
                     report.violations.front().message);
}

}  // namespace

int gauge_for_anchor(const ParticleConfig& cfg, HeightAnchor anchor) {
  auto s = star_coords(anchor.vertex);
  return anchor.value - anchor.vertex.x1 + cfg.label_left_of(s.line, s.z2);
}

HeightField height_from_config(const ParticleConfig& cfg, const Rect& window,
                               HeightAnchor anchor) {
  require_valid(cfg);
  HeightField h;
  h.window = window;
  h.anchor = anchor;
  h.gauge = gauge_for_anchor(cfg, anchor);
  h.values.resize(window.width(), window.height());
  for (int x1 = window.x1_min; x1 <= window.x1_max; ++x1)
    for (int x2 = window.x2_min; x2 <= window.x2_max; ++x2)
      h.at({x1, x2}) = height_at(cfg, {x1, x2}, h.gauge);
  return h;
}

HeightField make_height_field(const Rect& window, Eigen::MatrixXi values) {
  HeightField h;
  h.window = window;
  h.values = std::move(values);
  if (window.contains({0, 0})) {
    h.anchor = {{0, 0}, h.at({0, 0})};
    h.gauge = h.anchor.value - 1;
  } else {
    StarVertex c{window.x1_min, window.x2_min};
    h.anchor = {c, h.at(c)};
    h.gauge = h.anchor.value - c.x1 - 1;
  }
  return h;
}

std::vector<std::string> check_increments(const HeightField& h) {
  std::vector<std::string> bad;
  const Rect& w = h.window;
  auto check = [&](StarVertex a, StarVertex b) {
    if (!w.contains(b)) return;
    int d = h.at(b) - h.at(a);
    if (d != 0 && d != 1) {
      std::ostringstream os;
      os << "increment " << d << " from (" << a.x1 << "," << a.x2 << ") to ("
         << b.x1 << "," << b.x2 << ")";
      bad.push_back(os.str());
    }
  };
  for (int x1 = w.x1_min; x1 <= w.x1_max; ++x1)
    for (int x2 = w.x2_min; x2 <= w.x2_max; ++x2) {
      StarVertex x{x1, x2};
      check(x, {x1 + 1, x2});
      check(x, {x1, x2 + 1});
      check(x, {x1 + 1, x2 + 1});
    }
  return bad;
}

ParticleConfig config_from_height(const HeightField& h) {
  auto bad = check_increments(h);
  if (!bad.empty()) throw InputError("height field: " + bad.front());
  const Rect& w = h.window;
  int first = w.x2_min - w.x1_max;
  int last = w.x2_max - w.x1_min;
  std::vector<ParticleLine> lines;
  lines.reserve(last - first + 1);
  for (int l = first; l <= last; ++l) {
    auto r = vertices_on_line(w, l);
    ParticleLine ln;
    int z2_first = 2 * r.x1_first + l - 1;
    int z2_last = 2 * r.x1_last + l - 1;
    ln.lo2 = z2_first + 1;
    ln.hi2 = z2_last - 1;
    StarVertex v0{r.x1_first, r.x1_first + l};
    ln.base_label = v0.x1 - h.at(v0) + h.gauge + 1;
    for (int x1 = r.x1_first; x1 < r.x1_last; ++x1) {
      StarVertex a{x1, x1 + l};
      StarVertex b{x1 + 1, x1 + 1 + l};
      if (h.at(b) == h.at(a)) ln.z2.push_back(2 * x1 + l);
    }
    lines.push_back(std::move(ln));
  }
  return ParticleConfig(first, std::move(lines));
}

ParticleConfig config_from_heights(const std::function<int(StarVertex)>& h,
                                   int gauge, const Window& window) {
  std::vector<ParticleLine> lines;
  lines.reserve(window.line_max - window.line_min + 1);
  for (int l = window.line_min; l <= window.line_max; ++l) {
    ParticleLine ln;
    ln.lo2 = window.z2_min + (same_parity(window.z2_min, l) ? 0 : 1);
    ln.hi2 = window.z2_max - (same_parity(window.z2_max, l) ? 0 : 1);
    StarVertex prev = star_vertex(l, ln.lo2 - 1);
    int h_prev = h(prev);
    ln.base_label = prev.x1 - h_prev + gauge + 1;
    for (int site = ln.lo2; site <= ln.hi2; site += 2) {
      StarVertex next = star_vertex(l, site + 1);
      int h_next = h(next);
      int d = h_next - h_prev;
      if (d == 0) {
        ln.z2.push_back(site);
      } else if (d != 1) {
        std::ostringstream os;
        os << "slope escapes the admissible set: diagonal increment " << d
           << " at site " << site << "/2 on line " << l;
        throw InputError(os.str());
      }
      h_prev = h_next;
    }
    lines.push_back(std::move(ln));
  }
  return ParticleConfig(window.line_min, std::move(lines));
}

}  // namespace akpz
