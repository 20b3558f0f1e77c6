#include "akpz/events.hpp"

#include <algorithm>

namespace akpz {

EventSource::EventSource(std::uint64_t seed, const LocalizationBox& box,
                         double horizon)
    : box_(box), horizon_(horizon) {
  box.validate();
  if (!(horizon >= 0.0)) throw InputError("event horizon must be >= 0");
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), 0x6b7a70u};
  rng_.seed(seq);
  line_offsets_.push_back(0);
  for (int l = box.ell_minus + 1; l < box.ell_plus; ++l) {
    int start = box.z2_minus + (same_parity(box.z2_minus, l) ? 0 : 1);
    std::int64_t n = start <= box.z2_plus ? (box.z2_plus - start) / 2 + 1 : 0;
    line_first_z2_.push_back(start);
    line_offsets_.push_back(line_offsets_.back() + n);
  }
  site_count_ = line_offsets_.back();
}

SiteCoord EventSource::site_at(std::int64_t index) const {
  auto it = std::upper_bound(line_offsets_.begin(), line_offsets_.end(), index);
  auto k = static_cast<std::size_t>(it - line_offsets_.begin()) - 1;
  int line = box_.ell_minus + 1 + static_cast<int>(k);
  int z2 = line_first_z2_[k] + 2 * static_cast<int>(index - line_offsets_[k]);
  return {line, z2};
}

std::optional<Event> EventSource::next() {
  if (site_count_ == 0) return std::nullopt;
  std::exponential_distribution<double> gap(static_cast<double>(site_count_));
  time_ += gap(rng_);
  if (time_ > horizon_) {
    time_ = horizon_;  // stays exhausted
    return std::nullopt;
  }
  std::uniform_int_distribution<std::int64_t> pick(0, site_count_ - 1);
  auto s = site_at(pick(rng_));
  return Event{time_, s.line, s.z2};
}

EventStream generate_events(std::uint64_t seed, const LocalizationBox& box,
                            double horizon) {
  EventStream out{seed, box, horizon, {}};
  EventSource src(seed, box, horizon);
  while (auto e = src.next()) out.events.push_back(*e);
  return out;
}

EventStream restrict_to_box(const EventStream& stream,
                            const LocalizationBox& sub) {
  EventStream out{stream.seed, sub, stream.horizon, {}};
  std::copy_if(stream.events.begin(), stream.events.end(),
               std::back_inserter(out.events),
               [&](const Event& e) { return sub.contains_site(e.line, e.z2); });
  return out;
}

std::pair<EventStream, EventStream> split_at(const EventStream& stream,
                                             double s) {
  EventStream head{stream.seed, stream.box, std::min(s, stream.horizon), {}};
  EventStream tail{stream.seed, stream.box, std::max(0.0, stream.horizon - s), {}};
  for (const auto& e : stream.events) {
    if (e.time <= s)
      head.events.push_back(e);
    else
      tail.events.push_back({e.time - s, e.line, e.z2});
  }
  return {std::move(head), std::move(tail)};
}

}  // namespace akpz
