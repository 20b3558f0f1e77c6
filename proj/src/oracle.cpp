#include "akpz/oracle.hpp"

#include <algorithm>

namespace akpz {

namespace {

struct PointView {
  int x;  // doubled space label
  double s;
  ParticleLabel q;
};

std::vector<PointView> view(std::span<const Event> events, const XiCandidate& xi) {
  std::vector<PointView> v;
  v.reserve(xi.points.size());
  for (const auto& pt : xi.points) {
    const Event& e = events[pt.event];
    v.push_back({e.z2, e.time, pt.label});
  }
  return v;
}

// q'' in I_{q'}: the blocking partners of q'.
bool blocks(ParticleLabel blocker, ParticleLabel q) {
  auto [a, b] = neighbor_labels(q.p, q.line);
  return blocker == a || blocker == b;
}

}  // namespace

XiConditions check_xi(const ParticleConfig& cfg, std::span<const Event> events,
                      double horizon, ParticleLabel target,
                      const XiCandidate& xi) {
  XiConditions c;
  const auto pts = view(events, xi);

  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Event& e = events[xi.points[i].event];
    if (!(e.time >= 0.0 && e.time <= horizon) || e.line != pts[i].q.line ||
        !same_parity(e.z2, e.line))
      c.rings = false;
    for (std::size_t j = 0; j < i; ++j)
      if (xi.points[j] == xi.points[i]) c.rings = false;  // a set, not a multiset
  }

  if (pts.empty()) {
    c.x0_z2 = cfg.z2(target);
    return c;
  }

  int x_max = pts[0].x;
  for (const auto& p : pts) x_max = std::max(x_max, p.x);
  int at_max = 0;
  ParticleLabel max_label{};
  for (const auto& p : pts)
    if (p.x == x_max) {
      ++at_max;
      max_label = p.q;
    }
  c.x0_z2 = x_max;
  if (at_max != 1 || max_label != target) c.unique_max = false;

  // (III) and (IV): every blocker still to the right of x has exactly one
  // earlier jump of its own to the left of x.
  for (const auto& w : pts) {
    auto [a, b] = neighbor_labels(w.q.p, w.q.line);
    for (ParticleLabel blocker : {a, b}) {
      if (!(w.x < cfg.z2(blocker))) continue;
      int witnesses = 0;
      for (const auto& u : pts)
        if (u.q == blocker && u.x < w.x && u.s <= w.s) ++witnesses;
      if (witnesses == 0) c.blockers = false;
      if (witnesses > 1) c.unique_blocker = false;
    }
  }

  // (V): every point other than the final one unblocks some point of xi.
  for (const auto& u : pts) {
    if (u.x == c.x0_z2) continue;
    bool ok = false;
    for (const auto& w : pts)
      if (blocks(u.q, w.q) && w.x < cfg.z2(u.q) && w.x > u.x && w.s >= u.s) {
        ok = true;
        break;
      }
    if (!ok) c.needed = false;
  }
  return c;
}

namespace {

struct Candidate {
  std::size_t event;
  ParticleLabel label;
  int x;
  double s;
};

// Smallest admissible x0 for `target`, or its initial position.
int minimize_x0(const ParticleConfig& cfg, std::span<const Event> events,
                double horizon, ParticleLabel target,
                const std::vector<Candidate>& all, const OracleLimits& limits) {
  const int z_target = cfg.z2(target);
  std::vector<const Candidate*> finals;
  for (const auto& c : all)
    if (c.label == target && c.x < z_target) finals.push_back(&c);
  std::sort(finals.begin(), finals.end(),
            [](const Candidate* a, const Candidate* b) { return a->x < b->x; });

  for (const Candidate* w0 : finals) {
    // Points that could satisfy (V) inside some xi ending at w0: reachable
    // backwards from w0 through the unblocking relation.
    std::vector<const Candidate*> pool;
    std::vector<const Candidate*> frontier{w0};
    std::vector<bool> taken(all.size(), false);
    while (!frontier.empty()) {
      const Candidate* w = frontier.back();
      frontier.pop_back();
      for (std::size_t i = 0; i < all.size(); ++i) {
        const Candidate& u = all[i];
        if (taken[i] || &u == w0 || u.x >= w0->x) continue;
        auto zu = cfg.find_z2(u.label);
        if (!zu) continue;
        if (blocks(u.label, w->label) && w->x < *zu && w->x > u.x && w->s >= u.s) {
          taken[i] = true;
          pool.push_back(&u);
          frontier.push_back(&u);
        }
      }
    }
    if (pool.size() > limits.max_candidate_points)
      throw ResourceError("variational oracle: too many candidate points");

    const std::size_t n = pool.size();
    XiCandidate xi;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      xi.points.clear();
      xi.points.push_back({w0->event, w0->label});
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) xi.points.push_back({pool[i]->event, pool[i]->label});
      if (check_xi(cfg, events, horizon, target, xi).admissible()) return w0->x;
    }
  }
  return z_target;
}

}  // namespace

ParticleConfig variational_oracle(const ParticleConfig& cfg,
                                  std::span<const Event> events, double horizon,
                                  const OracleLimits& limits) {
  if (events.size() > limits.max_events)
    throw ResourceError("variational oracle: too many events");

  // Candidate points: a ring can only matter for a particle initially to its
  // right on the same line.
  std::vector<Candidate> all;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Event& e = events[i];
    if (e.time > horizon || !cfg.has_line(e.line)) continue;
    const auto& ln = cfg.line(e.line);
    for (std::size_t k = 0; k < ln.z2.size(); ++k)
      if (ln.z2[k] > e.z2)
        all.push_back({i, {ln.base_label + static_cast<int>(k), e.line}, e.z2, e.time});
  }

  ParticleConfig out = cfg;
  for (int l = cfg.first_line(); l <= cfg.last_line(); ++l) {
    const auto& ln = cfg.line(l);
    for (std::size_t k = 0; k < ln.z2.size(); ++k) {
      ParticleLabel q{ln.base_label + static_cast<int>(k), l};
      out.line(l).z2[k] = minimize_x0(cfg, events, horizon, q, all, limits);
    }
  }
  return out;
}

}  // namespace akpz
