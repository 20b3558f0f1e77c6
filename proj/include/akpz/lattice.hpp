#pragma once

// Particle sites, dual-lattice coordinates and interlaced particle
// configurations on finite windows.
//
// Horizontal positions are half-integers; everywhere in the library they are
// stored doubled ("z2 = 2z") so that parity is exact integer arithmetic:
// a site on line l has z2 = l (mod 2), a dual vertex on line l has
// z2 = l + 1 (mod 2).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "akpz/errors.hpp"

namespace akpz {

/// Parity-respecting floor division helpers for doubled coordinates.
inline constexpr int floor_div(int a, int b) {
  int q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}
inline constexpr bool same_parity(int a, int b) { return ((a - b) & 1) == 0; }

struct SiteCoord {
  int line = 0;
  int z2 = 0;  // 2 * horizontal position

  friend bool operator==(const SiteCoord&, const SiteCoord&) = default;
  friend auto operator<=>(const SiteCoord&, const SiteCoord&) = default;
};

/// Vertex of the dual lattice G*, in the (x1, x2) coordinates.
struct StarVertex {
  int x1 = 0;
  int x2 = 0;

  friend bool operator==(const StarVertex&, const StarVertex&) = default;
  friend auto operator<=>(const StarVertex&, const StarVertex&) = default;
};

/// Line and doubled horizontal coordinate of a dual vertex.
struct StarPosition {
  int line = 0;
  int z2 = 0;
  friend bool operator==(const StarPosition&, const StarPosition&) = default;
};

inline constexpr StarPosition star_coords(StarVertex v) {
  return {v.x2 - v.x1, v.x1 + v.x2 - 1};
}

/// Inverse of star_coords; requires z2 to have the dual parity of `line`.
inline constexpr StarVertex star_vertex(int line, int z2) {
  // x1 + x2 = z2 + 1, x2 - x1 = line
  return {(z2 + 1 - line) / 2, (z2 + 1 + line) / 2};
}

struct ParticleLabel {
  int p = 0;
  int line = 0;
  friend bool operator==(const ParticleLabel&, const ParticleLabel&) = default;
  friend auto operator<=>(const ParticleLabel&, const ParticleLabel&) = default;
};

/// The two particles that can block (p, line): the one directly to the left
/// on the line above, and the one directly to the left on the line below.
inline constexpr std::pair<ParticleLabel, ParticleLabel> neighbor_labels(
    int p, int line) {
  return {{p - 1, line + 1}, {p, line - 1}};
}

struct Slope {
  double rho1 = 0.0;
  double rho2 = 0.0;

  double rho3() const { return 1.0 - rho1 - rho2; }
  bool in_interior(double margin = 0.0) const {
    return rho1 >= margin && rho2 >= margin && rho1 + rho2 <= 1.0 - margin &&
           rho1 > 0.0 && rho2 > 0.0 && rho1 + rho2 < 1.0;
  }
};

/// Region where Poisson clocks are active: lines strictly inside
/// (ell_minus, ell_plus), doubled positions in [z2_minus, z2_plus].
struct LocalizationBox {
  int ell_minus = 0;
  int ell_plus = 0;
  int z2_minus = 0;
  int z2_plus = 0;

  bool contains_site(int line, int z2) const {
    return line > ell_minus && line < ell_plus && z2 >= z2_minus &&
           z2 <= z2_plus;
  }
  /// Dual vertices of D(ell_-, ell_+, z_-, z_+) (both bounds inclusive).
  bool contains_vertex(StarVertex v) const {
    auto s = star_coords(v);
    return s.line >= ell_minus && s.line <= ell_plus && s.z2 >= z2_minus &&
           s.z2 <= z2_plus;
  }
  std::vector<StarVertex> vertices() const;
  std::int64_t site_count() const;
  void validate() const;
};

/// Particles of one line: labels base_label, base_label+1, ... at strictly
/// increasing doubled positions, all inside the known span [lo2, hi2].
/// Occupancy of sites outside the span is unknown.
struct ParticleLine {
  int base_label = 0;
  int lo2 = 0;
  int hi2 = -1;
  std::vector<int> z2;

  friend bool operator==(const ParticleLine&, const ParticleLine&) = default;
};

struct Violation {
  enum class Kind { Order, Parity, Span, Interlacement, Label };
  Kind kind;
  ParticleLabel label;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

class ParticleConfig {
 public:
  ParticleConfig() = default;
  ParticleConfig(int first_line, std::vector<ParticleLine> lines);

  int first_line() const { return first_line_; }
  int last_line() const {
    return first_line_ + static_cast<int>(lines_.size()) - 1;
  }
  int line_count() const { return static_cast<int>(lines_.size()); }
  bool has_line(int line) const {
    return line >= first_line_ && line <= last_line();
  }
  const ParticleLine& line(int l) const { return lines_.at(l - first_line_); }
  ParticleLine& line(int l) { return lines_.at(l - first_line_); }
  const std::vector<ParticleLine>& lines() const { return lines_; }

  bool has(ParticleLabel q) const;
  int z2(ParticleLabel q) const;  // throws WindowError when not stored
  std::optional<int> find_z2(ParticleLabel q) const;

  /// Label of the rightmost particle strictly left of doubled coordinate
  /// `pos2` on `line`. Defined when pos2 - 1 <= hi2 and pos2 - 1 >= lo2 - 1.
  int label_left_of(int line, int pos2) const;
  bool occupied(int line, int pos2) const;

  std::size_t particle_count() const;

  friend bool operator==(const ParticleConfig&,
                         const ParticleConfig&) = default;

 private:
  int first_line_ = 0;
  std::vector<ParticleLine> lines_;
};

ValidationReport validate_config(const ParticleConfig& cfg);

/// max over lines and labels of (z_(p) - z_(p-k)) / k.
double max_gap(const ParticleConfig& cfg, int k);

/// max over k = 1..k_max of max_gap(cfg, k); cfg is in Omega_M over the
/// window iff this is <= M.
double omega_m_bound(const ParticleConfig& cfg, int k_max);

}  // namespace akpz
