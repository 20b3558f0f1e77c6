#pragma once

// Coupled runs of the growth dynamics on a shared event stream: monotone
// coupling of ordered initial data, and the finite-speed-of-propagation check
// comparing full-box and sub-box dynamics.

#include <optional>
#include <vector>

#include "akpz/dynamics.hpp"

namespace akpz {

struct CouplingReport {
  bool ordered = true;  // H_low <= H_high at every probe after every event
  bool equal = true;    // H_low == H_high throughout
  std::size_t comparisons = 0;
  std::optional<StarVertex> first_violation;
  double violation_time = 0.0;
};

/// Runs both configurations against the same events and compares heights at
/// `probes` after every event. Throws InputError if h_low > h_high at some
/// probe initially.
CouplingReport couple_monotone(const ParticleConfig& low, int gauge_low,
                               const ParticleConfig& high, int gauge_high,
                               std::span<const Event> events,
                               const std::vector<StarVertex>& probes);

/// R_n around x: z in [zbar - n, zbar + n], lines strictly inside
/// (lbar - 2n, lbar + 2n).
LocalizationBox propagation_box(StarVertex x, int n);

struct PropagationResult {
  bool agree = true;
  double first_disagreement = 0.0;
  std::size_t events_full = 0;
  std::size_t events_sub = 0;
};

/// Simulates cfg with the stream of (seed, full, T) and with its restriction
/// to R_n(x), and reports whether H(x, .) agrees on [0, T]. Throws InputError
/// when R_n(x) is not inside `full`.
PropagationResult propagation_check(const ParticleConfig& cfg, int gauge,
                                    StarVertex x, int n, double T,
                                    std::uint64_t seed,
                                    const LocalizationBox& full);

}  // namespace akpz
