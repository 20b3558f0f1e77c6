#pragma once

// Text formats: particle configurations, height fields, trajectories and grid
// functions as CSV, tilings as SVG. Reals are written with 17 significant
// digits so that every value reads back bit-exactly.

#include <iosfwd>
#include <string>
#include <vector>

#include "akpz/dynamics.hpp"
#include "akpz/grid.hpp"
#include "akpz/height.hpp"

namespace akpz {

/// 17 significant digits with '.' as separator; `inf`, `-inf` and `nan` for
/// the special values.
std::string format_real(double x);
/// Inverse of format_real (accepts any decimal form). Throws InputError.
double parse_real(const std::string& s);
/// Integer parse of the whole string. Throws InputError.
long parse_int(const std::string& s);

/// RFC 4180 quoting: fields with a comma, quote or line break are quoted and
/// inner quotes doubled.
std::string csv_field(const std::string& s);
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);
/// Splits one record; throws InputError on an unterminated quote.
std::vector<std::string> parse_csv_row(const std::string& line);

/// One text line per particle line:
///   line <l> base <b> span <lo2> <hi2> z2 <z2_1> <z2_2> ...
/// Lines appear in increasing order without gaps.
void write_config(std::ostream& os, const ParticleConfig& cfg);
ParticleConfig read_config(std::istream& is);

/// Header x1,x2,h then one row per vertex, x2 fastest.
void write_height_csv(std::ostream& os, const HeightField& h);
/// Rebuilds the field on the bounding rectangle of the rows (which must
/// cover it exactly once); the gauge follows make_height_field.
HeightField read_height_csv(std::istream& is);

/// Header time,x1,x2,h: the initial heights at time 0, every sample, then
/// the final heights at `horizon`.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr, double horizon);

/// Two header lines, `domain,lo[,hi...]` and `resolution,n[,...]`, then
/// x,value (1D) or x1,x2,value (2D) rows with the first axis outermost.
void write_grid_csv(std::ostream& os, const GridFunction1D<double>& f);
void write_grid_csv(std::ostream& os, const GridFunction2D<double>& f);
GridFunction1D<double> read_grid1d_csv(std::istream& is);
GridFunction2D<double> read_grid2d_csv(std::istream& is);

/// Lozenge picture of the tiling encoded by `h`: one rhombus per lattice
/// edge whose triangles pair up, colored by the edge direction.
void write_tiling_svg(std::ostream& os, const HeightField& h, double unit = 12.0);

}  // namespace akpz
