#pragma once

// Height functions on G* and the bijection with particle configurations.
//
// With P(x) the label of the rightmost particle strictly left of x on its
// line, every height function of a labeled configuration has the form
//
//   h(x) = x1 - P(x) + gauge
//
// (one unit up per empty site crossed along a line, no change across a
// particle). The gauge ties the additive constant of h to particle labels;
// the labeling convention "particle (0,0) is the left-most one on line 0 with
// non-negative position" together with h(0,0) = c is gauge = c - 1.

#include <functional>

#include <Eigen/Core>

#include "akpz/lattice.hpp"

namespace akpz {

/// Inclusive rectangle of dual vertices in (x1, x2) coordinates.
struct Rect {
  int x1_min = 0;
  int x1_max = 0;
  int x2_min = 0;
  int x2_max = 0;

  int width() const { return x1_max - x1_min + 1; }
  int height() const { return x2_max - x2_min + 1; }
  bool contains(StarVertex v) const {
    return v.x1 >= x1_min && v.x1 <= x1_max && v.x2 >= x2_min &&
           v.x2 <= x2_max;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Lines [line_min, line_max]; sites with doubled position in [z2_min, z2_max]
/// are known on every line.
struct Window {
  int line_min = 0;
  int line_max = 0;
  int z2_min = 0;
  int z2_max = 0;
};

struct HeightAnchor {
  StarVertex vertex{0, 0};
  int value = 0;
};

struct HeightField {
  Rect window;
  Eigen::MatrixXi values;  // values(x1 - x1_min, x2 - x2_min)
  HeightAnchor anchor;
  int gauge = -1;

  int at(StarVertex v) const {
    return values(v.x1 - window.x1_min, v.x2 - window.x2_min);
  }
  int& at(StarVertex v) {
    return values(v.x1 - window.x1_min, v.x2 - window.x2_min);
  }
  bool contains(StarVertex v) const { return window.contains(v); }

  friend bool operator==(const HeightField& a, const HeightField& b) {
    return a.window == b.window && a.values == b.values &&
           a.anchor.vertex == b.anchor.vertex &&
           a.anchor.value == b.anchor.value && a.gauge == b.gauge;
  }
};

/// Height of `cfg` at `v` for a given gauge.
inline int height_at(const ParticleConfig& cfg, StarVertex v, int gauge) {
  auto s = star_coords(v);
  return v.x1 - cfg.label_left_of(s.line, s.z2) + gauge;
}

/// Gauge for which `cfg` has height `anchor.value` at `anchor.vertex`.
int gauge_for_anchor(const ParticleConfig& cfg, HeightAnchor anchor);

HeightField height_from_config(const ParticleConfig& cfg, const Rect& window,
                               HeightAnchor anchor = {});

/// Builds a field from raw values; gauge follows the (0,0) labeling
/// convention when (0,0) is in the window, otherwise the lower-left corner
/// vertex gets P = -1.
HeightField make_height_field(const Rect& window, Eigen::MatrixXi values);

/// Descriptions of increments of `h` outside {0,1}; empty when
/// every increment lies in {0,1}.
std::vector<std::string> check_increments(const HeightField& h);

/// The particle configuration encoded by `h`, on the lines crossing the window
/// with the spans of sites strictly between the window's vertices.
ParticleConfig config_from_height(const HeightField& h);

/// Same construction for a height function given pointwise; site spans come
/// from `window`. Diagonal increments outside {0,1} throw InputError.
ParticleConfig config_from_heights(const std::function<int(StarVertex)>& h,
                                   int gauge, const Window& window);

}  // namespace akpz
