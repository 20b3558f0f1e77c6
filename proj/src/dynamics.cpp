#include "akpz/dynamics.hpp"

#include <algorithm>
#include <sstream>

namespace akpz {

StepResult step(ParticleConfig& cfg, int line, int z2) {
  if (!cfg.has_line(line - 1) || !cfg.has_line(line + 1)) {
    std::ostringstream os;
    os << "site on line " << line << " has no neighboring lines in the window";
    throw WindowError(os.str());
  }
  auto& ln = cfg.line(line);
  if (z2 < ln.lo2 || z2 > ln.hi2) {
    std::ostringstream os;
    os << "site " << z2 << "/2 on line " << line << " is outside the known span";
    throw WindowError(os.str());
  }
  auto it = std::upper_bound(ln.z2.begin(), ln.z2.end(), z2);
  if (it != ln.z2.begin() && *(it - 1) == z2) return {};
  if (it == ln.z2.end()) {
    std::ostringstream os;
    os << "window exhausted: no particle right of " << z2 << "/2 on line "
       << line;
    throw WindowError(os.str());
  }
  const int p = ln.base_label + static_cast<int>(it - ln.z2.begin());
  auto [above, below] = neighbor_labels(p, line);
  if (cfg.z2(above) < z2 && cfg.z2(below) < z2) {
    StepResult r{true, {p, line}, *it, z2};
    *it = z2;
    return r;
  }
  return {};
}

std::vector<int> Trajectory::final_heights() const {
  std::vector<int> h(initial_heights.size());
  for (std::size_t i = 0; i < h.size(); ++i)
    h[i] = initial_heights[i] - static_cast<int>(crossings[i]);
  return h;
}

GrowthSimulator::GrowthSimulator(ParticleConfig cfg,
                                 std::vector<StarVertex> probes, int gauge)
    : cfg_(std::move(cfg)), probes_(std::move(probes)) {
  h0_.reserve(probes_.size());
  crossings_.assign(probes_.size(), 0);
  by_line_.resize(cfg_.line_count());
  for (std::size_t i = 0; i < probes_.size(); ++i) {
    auto s = star_coords(probes_[i]);
    h0_.push_back(height_at(cfg_, probes_[i], gauge));  // checks the span
    by_line_[s.line - cfg_.first_line()].push_back({s.z2, i});
  }
  for (auto& v : by_line_)
    std::sort(v.begin(), v.end(),
              [](const ProbeRef& a, const ProbeRef& b) { return a.z2 < b.z2; });
}

StepResult GrowthSimulator::apply(const Event& e) {
  StepResult r = step(cfg_, e.line, e.z2);
  if (r.moved) {
    const auto& refs = by_line_[e.line - cfg_.first_line()];
    auto lo = std::upper_bound(refs.begin(), refs.end(), r.to_z2,
                               [](int z, const ProbeRef& p) { return z < p.z2; });
    for (auto it = lo; it != refs.end() && it->z2 < r.from_z2; ++it)
      ++crossings_[it->index];
  }
  return r;
}

std::vector<int> GrowthSimulator::heights() const {
  std::vector<int> h(h0_.size());
  for (std::size_t i = 0; i < h.size(); ++i)
    h[i] = h0_[i] - static_cast<int>(crossings_[i]);
  return h;
}

namespace {

template <typename NextEvent>
Trajectory run(const ParticleConfig& cfg, NextEvent&& next,
               const std::vector<StarVertex>& probes, int gauge,
               const std::vector<double>& sample_times) {
  if (!std::is_sorted(sample_times.begin(), sample_times.end()))
    throw InputError("sample times must be ascending");
  GrowthSimulator sim(cfg, probes, gauge);
  Trajectory tr;
  tr.initial = cfg;
  tr.gauge = gauge;
  tr.probes = probes;
  tr.initial_heights = sim.initial_heights();
  std::size_t next_sample = 0;
  while (auto e = next()) {
    while (next_sample < sample_times.size() && sample_times[next_sample] < e->time)
      tr.samples.push_back({sample_times[next_sample++], sim.heights()});
    if (sim.apply(*e).moved) ++tr.jumps;
    ++tr.events_applied;
  }
  while (next_sample < sample_times.size())
    tr.samples.push_back({sample_times[next_sample++], sim.heights()});
  tr.final_cfg = sim.config();
  tr.crossings = sim.crossings();
  return tr;
}

}  // namespace

Trajectory simulate(const ParticleConfig& cfg, std::span<const Event> events,
                    const std::vector<StarVertex>& probes, int gauge,
                    const std::vector<double>& sample_times) {
  std::size_t i = 0;
  auto next = [&]() -> std::optional<Event> {
    if (i == events.size()) return std::nullopt;
    return events[i++];
  };
  return run(cfg, next, probes, gauge, sample_times);
}

Trajectory simulate(const ParticleConfig& cfg, EventSource& source,
                    const std::vector<StarVertex>& probes, int gauge,
                    const std::vector<double>& sample_times) {
  return run(cfg, [&] { return source.next(); }, probes, gauge, sample_times);
}

}  // namespace akpz
