#include "akpz/coupling.hpp"

namespace akpz {

CouplingReport couple_monotone(const ParticleConfig& low, int gauge_low,
                               const ParticleConfig& high, int gauge_high,
                               std::span<const Event> events,
                               const std::vector<StarVertex>& probes) {
  GrowthSimulator a(low, probes, gauge_low);
  GrowthSimulator b(high, probes, gauge_high);
  for (std::size_t i = 0; i < probes.size(); ++i)
    if (a.initial_heights()[i] > b.initial_heights()[i])
      throw InputError("couple_monotone: initial heights are not ordered");

  CouplingReport r;
  auto compare = [&](double t) {
    auto ha = a.heights();
    auto hb = b.heights();
    for (std::size_t i = 0; i < ha.size(); ++i) {
      ++r.comparisons;
      if (ha[i] != hb[i]) r.equal = false;
      if (ha[i] > hb[i] && r.ordered) {
        r.ordered = false;
        r.first_violation = probes[i];
        r.violation_time = t;
      }
    }
  };
  compare(0.0);
  for (const Event& e : events) {
    bool moved = a.apply(e).moved;
    moved |= b.apply(e).moved;
    if (moved) compare(e.time);
  }
  return r;
}

LocalizationBox propagation_box(StarVertex x, int n) {
  auto s = star_coords(x);
  return {s.line - 2 * n, s.line + 2 * n, s.z2 - 2 * n, s.z2 + 2 * n};
}

PropagationResult propagation_check(const ParticleConfig& cfg, int gauge,
                                    StarVertex x, int n, double T,
                                    std::uint64_t seed,
                                    const LocalizationBox& full) {
  LocalizationBox sub = propagation_box(x, n);
  if (sub.ell_minus < full.ell_minus || sub.ell_plus > full.ell_plus ||
      sub.z2_minus < full.z2_minus || sub.z2_plus > full.z2_plus)
    throw InputError("propagation_check: R_n does not fit in the box");

  std::vector<StarVertex> probe{x};
  GrowthSimulator all(cfg, probe, gauge);
  GrowthSimulator local(cfg, probe, gauge);
  PropagationResult r;
  EventSource src(seed, full, T);
  while (auto e = src.next()) {
    bool moved = all.apply(*e).moved;
    ++r.events_full;
    if (sub.contains_site(e->line, e->z2)) {
      moved |= local.apply(*e).moved;
      ++r.events_sub;
    }
    if (moved && all.heights()[0] != local.heights()[0]) {
      r.agree = false;
      r.first_disagreement = e->time;
      break;
    }
  }
  return r;
}

}  // namespace akpz
