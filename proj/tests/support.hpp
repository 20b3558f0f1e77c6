#pragma once

// Test-only generators of random valid configurations.

#include <algorithm>
#include <cmath>
#include <random>

#include "akpz/dynamics.hpp"
#include "akpz/height.hpp"

namespace akpz::testing {

inline bool increments_ok(const HeightField& h, StarVertex x) {
  const Rect& w = h.window;
  const StarVertex nbrs[] = {{x.x1 + 1, x.x2}, {x.x1, x.x2 + 1},
                             {x.x1 + 1, x.x2 + 1}, {x.x1 - 1, x.x2},
                             {x.x1, x.x2 - 1},     {x.x1 - 1, x.x2 - 1}};
  for (int k = 0; k < 6; ++k) {
    StarVertex y = nbrs[k];
    if (!w.contains(y)) continue;
    int d = k < 3 ? h.at(y) - h.at(x) : h.at(x) - h.at(y);
    if (d != 0 && d != 1) return false;
  }
  return true;
}

/// floor(rho . x) on `w`, then `flips` random +-1 moves at interior vertices
/// that keep every increment in {0,1}. The boundary stays on the plane.
template <typename Rng>
HeightField random_height(const Rect& w, double rho1, double rho2, int flips,
                          Rng& rng) {
  Eigen::MatrixXi v(w.width(), w.height());
  for (int i = 0; i < w.width(); ++i)
    for (int j = 0; j < w.height(); ++j)
      v(i, j) = static_cast<int>(
          std::floor(rho1 * (w.x1_min + i) + rho2 * (w.x2_min + j) + 0.37));
  HeightField h = make_height_field(w, std::move(v));
  std::uniform_int_distribution<int> pick1(w.x1_min + 1, w.x1_max - 1);
  std::uniform_int_distribution<int> pick2(w.x2_min + 1, w.x2_max - 1);
  std::bernoulli_distribution up(0.5);
  for (int k = 0; k < flips; ++k) {
    StarVertex x{pick1(rng), pick2(rng)};
    if (x == h.anchor.vertex) continue;
    int d = up(rng) ? 1 : -1;
    h.at(x) += d;
    if (!increments_ok(h, x)) h.at(x) -= d;
  }
  return h;
}

/// Random valid configuration on the lines/spans induced by `w`.
template <typename Rng>
ParticleConfig random_config(const Rect& w, int flips, Rng& rng) {
  std::uniform_real_distribution<double> r(0.2, 0.45);
  return config_from_height(random_height(w, r(rng), r(rng), flips, rng));
}

struct TinyInstance {
  ParticleConfig cfg;
  std::vector<Event> events;
  double horizon = 1.0;
};

/// Random configuration on a 9x9 window plus 1..max_events rings at sites of
/// lines -1, 0, 1 with |z| <= 3/2.
template <typename Rng>
TinyInstance tiny_instance(Rng& rng, int max_events = 8) {
  TinyInstance t;
  t.cfg = random_config(Rect{-4, 4, -4, 4}, 300, rng);
  std::uniform_int_distribution<int> count(1, max_events);
  std::uniform_int_distribution<int> line(-1, 1);
  std::uniform_int_distribution<int> pos(-3, 3);
  std::uniform_real_distribution<double> time(0.0, t.horizon);
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    int l = line(rng);
    int z2 = pos(rng);
    if (!same_parity(z2, l)) z2 += z2 < 3 ? 1 : -1;
    t.events.push_back({time(rng), l, z2});
  }
  std::sort(t.events.begin(), t.events.end(),
            [](const Event& a, const Event& b) { return a.time < b.time; });
  return t;
}

}  // namespace akpz::testing
