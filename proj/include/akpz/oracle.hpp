#pragma once

// Exhaustive evaluation of the variational characterization of the dynamics:
//
//   z_(p,l)(T) = min over admissible xi of x0(xi)
//
// where xi ranges over finite sets of clock rings with particle labels that
// satisfy conditions (I)-(V) (a causal cascade of jumps ending with (p,l)
// landing at x0). Meant for tiny instances only; used as an independent check
// of the sequential simulator.

#include <cstddef>
#include <span>
#include <vector>

#include "akpz/events.hpp"
#include "akpz/lattice.hpp"

namespace akpz {

struct XiPoint {
  std::size_t event = 0;  // index into the event list
  ParticleLabel label;

  friend bool operator==(const XiPoint&, const XiPoint&) = default;
};

struct XiCandidate {
  std::vector<XiPoint> points;
};

struct XiConditions {
  bool rings = true;        // (I)
  bool unique_max = true;   // (II)
  bool blockers = true;     // (III)
  bool unique_blocker = true;  // (IV)
  bool needed = true;       // (V)
  int x0_z2 = 0;

  bool admissible() const {
    return rings && unique_max && blockers && unique_blocker && needed;
  }
};

/// Evaluates conditions (I)-(V) for `xi` as a member of Xi_{target, cfg, W, T}.
XiConditions check_xi(const ParticleConfig& cfg, std::span<const Event> events,
                      double horizon, ParticleLabel target, const XiCandidate& xi);

struct OracleLimits {
  std::size_t max_events = 8;
  std::size_t max_candidate_points = 20;
};

/// Position at time T of every stored particle, by exhaustive enumeration.
/// Throws ResourceError when the instance exceeds `limits`.
ParticleConfig variational_oracle(const ParticleConfig& cfg,
                                  std::span<const Event> events, double horizon,
                                  const OracleLimits& limits = {});

}  // namespace akpz
