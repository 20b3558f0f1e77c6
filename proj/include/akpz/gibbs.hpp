#pragma once

// Monte Carlo sampling of lozenge tilings of the torus with fixed slope, and
// equilibrium statistics of the resulting stationary states.
//
// A tiling of period N is stored as its height on the fundamental domain
// [0,N)^2 of G*, extended quasi-periodically:
//   h(x + N e1) = h(x) + n1,   h(x + N e2) = h(x) + n2,
// so the realized slope is (n1/N, n2/N) and every line carries N - n1 - n2
// particles per period.

#include <cstdint>
#include <random>
#include <vector>

#include "akpz/height.hpp"

namespace akpz {

class TorusTiling {
 public:
  /// Maximally even tiling h(x) = floor((n1 x1 + n2 x2) / N),
  /// n_i = round(N rho_i). Throws InputError when N - n1 - n2 < 2.
  TorusTiling(const Slope& rho, int N);

  int period() const { return N_; }
  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int particles_per_line() const { return N_ - n1_ - n2_; }
  Slope slope() const {
    return {static_cast<double>(n1_) / N_, static_cast<double>(n2_) / N_};
  }

  /// Height at any vertex of G*.
  int height(StarVertex x) const;

  /// Proposes h(v) += delta (delta = +-1) at v in the fundamental domain;
  /// applies it and returns true iff all six neighbor increments stay in
  /// {0,1}.
  bool try_flip(int i, int j, int delta);

  /// Sum of heights over the fundamental domain (changes by +-1 per flip).
  long volume() const;

  /// Particle configuration of the unrolled tiling on `window`.
  ParticleConfig config(const Window& window) const;
  /// Gauge of config(): (0,0) labeling convention.
  int gauge() const { return h_[0] - 1; }

  friend bool operator==(const TorusTiling&, const TorusTiling&) = default;

 private:
  int at(int i, int j) const { return h_[static_cast<std::size_t>(j) * N_ + i]; }

  int N_ = 0;
  int n1_ = 0;
  int n2_ = 0;
  std::vector<int> h_;  // h_(i + N j) = h(i, j), 0 <= i, j < N
};

/// Default burn-in: 10 N^2 sweeps.
inline long default_sweeps(int N) { return 10L * N * N; }

/// Runs `sweeps` sweeps (N^2 proposals each) of uniform +-1 single-vertex
/// moves from the maximally even tiling.
TorusTiling sample_gibbs(const Slope& rho, int N, long sweeps,
                         std::uint64_t seed);

/// Particles on `line` with horizontal coordinate in {1/2,1,...,r} intersected
/// with the sites of the line, i.e. doubled position in (0, 2r].
int density_stats(const ParticleConfig& cfg, int line, int r);
int density_stats(const TorusTiling& t, int line, int r);

/// max over |x1|, |x2| <= Lwin of |h(x) - h(0) - rho.x|.
double fluctuation_stats(const TorusTiling& t, const Slope& rho, int Lwin);
double fluctuation_stats(const HeightField& h, const Slope& rho, int Lwin);

struct DriftOptions {
  double kappa = 4.0;       // information speed, sites per unit time
  long sweeps = -1;         // -1: default_sweeps(N)
  int probe_radius = 2;     // probes: |line| <= r, |z| <= r around the origin
};

struct DriftEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // over seeds
  std::vector<double> per_seed;
  int margin = 0;
};

/// Localization box and window used by drift_estimate for margin n and probe
/// radius r: lines strictly inside +-(2n + r), |z| <= n + r. Contains R_n(x)
/// for every probe x.
LocalizationBox drift_box(int margin, int probe_radius);

/// (H(x,0) - H(x,T)) / T averaged over center probes, for the growth dynamics
/// started from Gibbs samples unrolled into a frozen-boundary box.
DriftEstimate drift_estimate(const Slope& rho, int N, double T,
                             const std::vector<std::uint64_t>& seeds,
                             const DriftOptions& opt = {});

}  // namespace akpz
