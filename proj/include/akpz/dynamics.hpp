#pragma once

// Sequential jump dynamics: when the clock of a free site (l, z) rings, the
// left-most particle of line l to the right of z jumps to z, provided both of
// its blocking partners (p-1, l+1) and (p, l-1) are already left of z.
//
// Heights follow the particles: H(x, t) = h(x, 0) - J_x(t), where J_x counts
// the particles that crossed x from right to left. Counters are kept only at
// requested probe vertices.

#include <span>
#include <vector>

#include "akpz/events.hpp"
#include "akpz/height.hpp"

namespace akpz {

struct StepResult {
  bool moved = false;
  ParticleLabel label;
  int from_z2 = 0;
  int to_z2 = 0;
};

/// Applies one clock ring to `cfg` in place.
/// Throws WindowError when the window does not contain the particle to the
/// right of the site or one of its blocking partners.
StepResult step(ParticleConfig& cfg, int line, int z2);

struct HeightSample {
  double time = 0.0;
  std::vector<int> heights;  // H at the probes, same order

  friend bool operator==(const HeightSample&, const HeightSample&) = default;
};

struct Trajectory {
  ParticleConfig initial;
  ParticleConfig final_cfg;
  int gauge = 0;
  std::vector<StarVertex> probes;
  std::vector<int> initial_heights;    // h(x, 0) at probes
  std::vector<long> crossings;          // J_x(T) at probes
  std::vector<HeightSample> samples;  // at the requested sample times
  std::size_t events_applied = 0;
  std::size_t jumps = 0;

  std::vector<int> final_heights() const;
};

/// Owns a configuration and applies events, tracking crossings at probes.
class GrowthSimulator {
 public:
  GrowthSimulator(ParticleConfig cfg, std::vector<StarVertex> probes, int gauge);

  StepResult apply(const Event& e);
  const ParticleConfig& config() const { return cfg_; }
  const std::vector<StarVertex>& probes() const { return probes_; }
  const std::vector<long>& crossings() const { return crossings_; }
  std::vector<int> heights() const;  // h(x,0) - J_x at probes
  const std::vector<int>& initial_heights() const { return h0_; }

 private:
  struct ProbeRef {
    int z2;
    std::size_t index;
  };

  ParticleConfig cfg_;
  std::vector<StarVertex> probes_;
  std::vector<int> h0_;
  std::vector<long> crossings_;
  std::vector<std::vector<ProbeRef>> by_line_;  // sorted by z2
};

/// Runs `events` (time-ordered) on `cfg`; snapshots probe heights at each of
/// `sample_times` (ascending; a snapshot at s includes all events <= s).
Trajectory simulate(const ParticleConfig& cfg, std::span<const Event> events,
                    const std::vector<StarVertex>& probes, int gauge,
                    const std::vector<double>& sample_times = {});

/// Streaming variant: pulls events from `source` until it is exhausted.
Trajectory simulate(const ParticleConfig& cfg, EventSource& source,
                    const std::vector<StarVertex>& probes, int gauge,
                    const std::vector<double>& sample_times = {});

}  // namespace akpz
