#pragma once

// Seeded realizations of independent rate-1 Poisson clocks, one per site of a
// localization box.
//
// The clocks are realized as their superposition: a rate-|box| Poisson process
// in time whose marks are sites drawn uniformly. The stream is produced in
// time order from a single generator, so a stream to horizon T is a prefix of
// the stream to any T' > T with the same seed and box. Restriction to a
// sub-box or to a time window is done by filtering.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "akpz/lattice.hpp"

namespace akpz {

struct Event {
  double time = 0.0;
  int line = 0;
  int z2 = 0;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Lazy, time-ordered generator of the events of (seed, box) up to a horizon.
class EventSource {
 public:
  EventSource(std::uint64_t seed, const LocalizationBox& box, double horizon);

  std::optional<Event> next();
  const LocalizationBox& box() const { return box_; }
  double horizon() const { return horizon_; }

 private:
  SiteCoord site_at(std::int64_t index) const;

  LocalizationBox box_;
  double horizon_;
  double time_ = 0.0;
  std::mt19937_64 rng_;
  std::vector<std::int64_t> line_offsets_;  // prefix counts per active line
  std::vector<int> line_first_z2_;
  std::int64_t site_count_ = 0;
};

struct EventStream {
  std::uint64_t seed = 0;
  LocalizationBox box;
  double horizon = 0.0;
  std::vector<Event> events;
};

EventStream generate_events(std::uint64_t seed, const LocalizationBox& box,
                            double horizon);

/// Events of `stream` inside `sub` (same seed and horizon).
EventStream restrict_to_box(const EventStream& stream, const LocalizationBox& sub);

/// Events with time <= s, and events with time > s shifted by -s.
std::pair<EventStream, EventStream> split_at(const EventStream& stream, double s);

}  // namespace akpz
