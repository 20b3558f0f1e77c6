#pragma once

// Hydrodynamic-limit experiments: discretize phi0 at scale L, run the growth
// dynamics to time tL, and compare H(floor(xL), tL) / L with the PDE
// solution phi(x, t) at macroscopic probes.

#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "akpz/profile.hpp"

namespace akpz {

enum class HydroMode { Smooth, Shock };

struct Experiment {
  HydroMode mode = HydroMode::Smooth;
  ProfileSpec profile;
  double t = 0.0;
  std::vector<int> Ls{32, 64, 128};
  std::vector<Eigen::Vector2d> probes;
  int seeds_per_L = 8;
  double kappa = 4.0;
  std::uint64_t seed = 1;
  /// Verdict threshold on the median error at the largest L.
  double threshold = 0.05;
  /// Shock mode: probes closer than half this width to a detected gradient
  /// jump are dropped.
  double shock_strip = 0.1;
  /// Smooth mode: t must not exceed this fraction of the estimated Tf.
  double max_tf_fraction = 0.8;
  /// Guard on (active sites) x (time) per run.
  double max_work = 2e9;
  int threads = 1;
};

struct ConvergenceRow {
  int L = 0;
  int seed_index = 0;
  std::uint64_t seed = 0;
  Eigen::Vector2d x = Eigen::Vector2d::Zero();
  double simulated = 0.0;  // H(floor(xL), tL) / L
  double reference = 0.0;  // phi(x, t)
  double error = 0.0;
  /// H_floor <= H_round <= H_floor + 1 for the floor and rounded
  /// discretizations driven by the same clocks.
  bool sandwich_ok = true;
};

struct HydroTable {
  std::vector<ConvergenceRow> rows;
  std::vector<Eigen::Vector2d> probes;    // kept probes
  std::vector<Eigen::Vector2d> excluded;  // shock mode: inside the strip
  double tf_estimate = std::numeric_limits<double>::infinity();
  /// Max |hopf - riemann reduction| at the kept probes (max_affine profiles in
  /// shock mode), NaN otherwise.
  double riemann_crosscheck = std::numeric_limits<double>::quiet_NaN();
};

struct LevelSummary {
  int L = 0;
  std::size_t rows = 0;
  double median = 0.0;
  double max = 0.0;
  bool sandwich_ok = true;
};

struct HydroSummary {
  std::vector<LevelSummary> levels;  // ascending L
  bool monotone = false;
  double final_median = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// One run at scale L: heights at the probe vertices floor(xL) after time tL
/// for the floor (offset 0) and rounded (offset 1/2) discretizations.
struct ScaledRun {
  std::vector<StarVertex> vertices;
  std::vector<int> floor_heights;
  std::vector<int> round_heights;
  std::size_t events = 0;
  int margin = 0;
};

/// Clock box: the hull of `vertices` widened by 2 margin in lines and in
/// doubled positions.
LocalizationBox scaled_box(const std::vector<StarVertex>& vertices, int margin);

/// Window of known sites around `box` for a run of length T started from a
/// discretization of phi0.
Window scaled_window(const ProfileSpec& phi0, const LocalizationBox& box, double T);

/// Margin ceil(kappa tL) (at least 1). Throws ResourceError when the box
/// exceeds `max_work` site-time units.
ScaledRun run_scaled(const ProfileSpec& phi0, int L, double t,
                     const std::vector<Eigen::Vector2d>& probes, double kappa,
                     std::uint64_t seed, double max_work = 2e9);

/// Seed of the k-th run at scale L.
std::uint64_t derive_seed(std::uint64_t base, int L, int k);

HydroTable run_smooth(const Experiment& exp);
HydroTable run_shock(const Experiment& exp);
HydroTable run_experiment(const Experiment& exp);

/// Per-L median and max error; pass iff the medians are nonincreasing in L
/// and the last one is at most `threshold`. Throws InputError on an empty
/// table.
HydroSummary aggregate(const std::vector<ConvergenceRow>& rows, double threshold);

/// Bump of curvature 0.48 and width 1/4 around slope (1/3,1/3) at half the
/// shock time estimated on [-1.5, 1.5]^2, with a 7x7 probe grid following
/// the characteristic of the center.
Experiment default_smooth_experiment();

/// max(rho_-.x, rho_+.x) with rho_+- = (1/3,1/3) +- 0.1 (1,-1), a shock along
/// x1 = x2, at t = 1/4 with a 9x9 probe grid.
Experiment default_shock_experiment();

}  // namespace akpz
