#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "akpz/coupling.hpp"
#include "akpz/dynamics.hpp"
#include "akpz/profile.hpp"
#include "support.hpp"

using namespace akpz;

namespace {

// Particle (1,0) at z = 4 with partners (0,1) at 3/2 and (1,-1) at 5/2.
ParticleConfig blocked_example() {
  return ParticleConfig(-1, {ParticleLine{1, 1, 7, {5}},
                             ParticleLine{0, -2, 10, {0, 8}},
                             ParticleLine{0, 1, 7, {3}}});
}

std::vector<StarVertex> all_vertices(const Rect& w) {
  std::vector<StarVertex> v;
  for (int x1 = w.x1_min; x1 <= w.x1_max; ++x1)
    for (int x2 = w.x2_min; x2 <= w.x2_max; ++x2) v.push_back({x1, x2});
  return v;
}

}  // namespace

TEST_CASE("hand example is a valid configuration") {
  CHECK(validate_config(blocked_example()).ok());
}

TEST_CASE("ring at an occupied site does nothing") {
  auto cfg = blocked_example();
  auto before = cfg;
  CHECK_FALSE(step(cfg, 0, 0).moved);
  CHECK(cfg == before);
}

TEST_CASE("blocked target: a partner is still to the right") {
  auto cfg = blocked_example();
  auto before = cfg;
  CHECK_FALSE(step(cfg, 0, 4).moved);  // (1,-1) at 5/2 > 2
  CHECK_FALSE(step(cfg, 0, 2).moved);
  CHECK(cfg == before);
}

TEST_CASE("allowed target: the particle jumps there") {
  auto cfg = blocked_example();
  auto r = step(cfg, 0, 6);
  CHECK(r.moved);
  CHECK(r.label == ParticleLabel{1, 0});
  CHECK(r.from_z2 == 8);
  CHECK(r.to_z2 == 6);
  CHECK(cfg.z2({1, 0}) == 6);
  CHECK(validate_config(cfg).ok());
}

TEST_CASE("window exhaustion is reported") {
  auto cfg = blocked_example();
  CHECK_THROWS_AS(step(cfg, 0, 10), WindowError);  // nothing right of z = 5
  CHECK_THROWS_AS(step(cfg, 1, 5), WindowError);   // line 2 not stored
}

TEST_CASE("empty stream leaves the configuration unchanged") {
  std::mt19937_64 rng(11);
  auto cfg = testing::random_config({-5, 5, -5, 5}, 500, rng);
  auto tr = simulate(cfg, std::span<const Event>{}, {{0, 0}}, -1);
  CHECK(tr.final_cfg == cfg);
  CHECK(tr.crossings[0] == 0);
}

TEST_CASE("every event keeps the configuration valid; jumps go left past partners") {
  Eigen::Vector2d rho(1.0 / 3.0, 1.0 / 3.0);
  auto phi = bump_profile(rho, 0.4, 0.3);
  std::mt19937_64 rng(12);
  for (int seed = 0; seed < 20; ++seed) {
    Window win{-8, 8, -40, 40};
    auto cfg = config_from_profile(phi, 10, win);
    auto stream = generate_events(seed, {-6, 6, -12, 12}, 2.0);
    std::size_t jumps = 0;
    for (const auto& e : stream.events) {
      auto r = step(cfg, e.line, e.z2);
      if (!r.moved) continue;
      ++jumps;
      CHECK(r.to_z2 < r.from_z2);
      auto [a, b] = neighbor_labels(r.label.p, r.label.line);
      CHECK(cfg.z2(a) < r.to_z2);
      CHECK(cfg.z2(b) < r.to_z2);
      if (jumps % 7 == 0) REQUIRE(validate_config(cfg).ok());
    }
    CHECK(validate_config(cfg).ok());
    CHECK(jumps > 0);
  }
}

TEST_CASE("H = h0 - J agrees with the height of the final configuration") {
  Eigen::Vector2d rho(0.3, 0.4);
  auto phi = affine_profile(rho);
  Window win{-10, 10, -40, 40};
  auto cfg = config_from_profile(phi, 1, win);
  int gauge = profile_gauge(phi, 1);
  auto probes = all_vertices({-4, 4, -4, 4});
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto stream = generate_events(seed, {-7, 7, -20, 20}, 3.0);
    auto tr = simulate(cfg, stream.events, probes, gauge, {0.5, 1.0, 2.0, 3.0});
    auto h = tr.final_heights();
    for (std::size_t i = 0; i < probes.size(); ++i)
      CHECK(h[i] == height_at(tr.final_cfg, probes[i], gauge));
    // samples: nonincreasing in time, final sample equals the end state
    REQUIRE(tr.samples.size() == 4);
    for (std::size_t k = 1; k < tr.samples.size(); ++k)
      for (std::size_t i = 0; i < probes.size(); ++i)
        CHECK(tr.samples[k].heights[i] <= tr.samples[k - 1].heights[i]);
    CHECK(tr.samples.back().heights == h);
  }
}

TEST_CASE("height at a probe drops by exactly one per crossing") {
  Eigen::Vector2d rho(1.0 / 3.0, 1.0 / 3.0);
  auto phi = affine_profile(rho);
  auto cfg = config_from_profile(phi, 1, Window{-8, 8, -30, 30});
  GrowthSimulator sim(cfg, {{0, 0}, {1, 1}}, profile_gauge(phi, 1));
  auto prev = sim.heights();
  EventSource src(8, {-6, 6, -10, 10}, 4.0);
  while (auto e = src.next()) {
    sim.apply(*e);
    auto now = sim.heights();
    for (int i = 0; i < 2; ++i) CHECK((now[i] == prev[i] || now[i] == prev[i] - 1));
    prev = now;
  }
}

TEST_CASE("split-stream semigroup") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    auto cfg = testing::random_config({-10, 10, -10, 10}, 3000, rng);
    auto stream = generate_events(trial, {-4, 4, -4, 4}, 2.0);
    std::vector<StarVertex> probes{{0, 0}, {1, 0}, {0, 1}};
    auto whole = simulate(cfg, stream.events, probes, -1);
    auto [head, tail] = split_at(stream, 0.8);
    auto first = simulate(cfg, head.events, probes, -1);
    auto second = simulate(first.final_cfg, tail.events, probes, -1);
    CHECK(second.final_cfg == whole.final_cfg);
    for (std::size_t i = 0; i < probes.size(); ++i)
      CHECK(first.crossings[i] + second.crossings[i] == whole.crossings[i]);
  }
}

TEST_CASE("streaming and materialized runs agree") {
  auto phi = affine_profile(Eigen::Vector2d(0.25, 0.35));
  auto cfg = config_from_profile(phi, 1, Window{-10, 10, -30, 30});
  LocalizationBox box{-7, 7, -15, 15};
  auto stream = generate_events(77, box, 2.5);
  EventSource src(77, box, 2.5);
  auto a = simulate(cfg, stream.events, {{0, 0}}, 0, {1.0});
  auto b = simulate(cfg, src, {{0, 0}}, 0, {1.0});
  CHECK(a.final_cfg == b.final_cfg);
  CHECK(a.samples == b.samples);
  CHECK(a.events_applied == b.events_applied);
}

TEST_CASE("monotone coupling: identical data stays identical") {
  auto phi = affine_profile(Eigen::Vector2d(1.0 / 3.0, 1.0 / 3.0));
  auto cfg = config_from_profile(phi, 1, Window{-10, 10, -30, 30});
  auto stream = generate_events(5, {-7, 7, -16, 16}, 2.0);
  auto r = couple_monotone(cfg, 0, cfg, 0, stream.events, all_vertices({-3, 3, -3, 3}));
  CHECK(r.ordered);
  CHECK(r.equal);
}

TEST_CASE("monotone coupling: ordering preserved over 100 streams") {
  std::mt19937_64 rng(14);
  Rect w{-9, 9, -9, 9};
  auto probes = all_vertices({-3, 3, -3, 3});
  int broken = 0;
  for (int trial = 0; trial < 100; ++trial) {
    // Two random fields ordered pointwise: take the min and max of two samples
    // drawn with the same anchor (min/max of height functions are heights).
    auto h1 = testing::random_height(w, 0.33, 0.33, 4000, rng);
    auto h2 = testing::random_height(w, 0.33, 0.33, 4000, rng);
    HeightField lo = h1, hi = h1;
    lo.values = h1.values.cwiseMin(h2.values);
    hi.values = h1.values.cwiseMax(h2.values);
    auto cl = config_from_height(lo);
    auto ch = config_from_height(hi);
    auto stream = generate_events(1000 + trial, {-3, 3, -4, 4}, 1.5);
    auto r = couple_monotone(cl, lo.gauge, ch, hi.gauge, stream.events, probes);
    broken += !r.ordered;
  }
  CHECK(broken == 0);
}

TEST_CASE("monotone coupling: shift by one everywhere") {
  auto phi = affine_profile(Eigen::Vector2d(1.0 / 3.0, 1.0 / 3.0));
  Window win{-10, 10, -30, 30};
  auto cfg = config_from_profile(phi, 1, win);
  int gauge = profile_gauge(phi, 1);
  auto probes = all_vertices({-3, 3, -3, 3});
  for (int seed = 0; seed < 100; ++seed) {
    auto stream = generate_events(seed, {-7, 7, -16, 16}, 1.0);
    auto r = couple_monotone(cfg, gauge, cfg, gauge + 1, stream.events, probes);
    CHECK(r.ordered);
    CHECK_FALSE(r.equal);
  }
  CHECK_THROWS_AS(couple_monotone(cfg, gauge + 1, cfg, gauge, {}, probes), InputError);
}

TEST_CASE("localization: equal data on the box gives equal evolution inside") {
  std::mt19937_64 rng(15);
  Rect w{-12, 12, -12, 12};
  LocalizationBox box{-4, 4, -6, 6};
  std::vector<StarVertex> inside;
  for (auto v : box.vertices())
    if (w.contains(v)) inside.push_back(v);
  int ran = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto h = testing::random_height(w, 0.3, 0.35, 6000, rng);
    HeightField g = h;
    // random flips strictly outside the box
    std::uniform_int_distribution<int> pick(-11, 11);
    std::bernoulli_distribution up(0.5);
    int changed = 0;
    for (int k = 0; k < 6000; ++k) {
      StarVertex x{pick(rng), pick(rng)};
      if (box.contains_vertex(x) || x == g.anchor.vertex) continue;
      int d = up(rng) ? 1 : -1;
      g.at(x) += d;
      if (!testing::increments_ok(g, x)) g.at(x) -= d; else ++changed;
    }
    REQUIRE(changed > 0);
    auto a = config_from_height(h);
    auto b = config_from_height(g);
    auto stream = generate_events(trial, box, 3.0);
    try {
      auto ta = simulate(a, stream.events, inside, h.gauge);
      auto tb = simulate(b, stream.events, inside, g.gauge);
      CHECK(ta.final_heights() == tb.final_heights());
      ++ran;
    } catch (const WindowError&) {
      // a long empty stretch pushed the moving particle out of the window
    }
  }
  CHECK(ran >= 20);
}

TEST_CASE("propagation_check geometry") {
  auto phi = affine_profile(Eigen::Vector2d(1.0 / 3.0, 1.0 / 3.0));
  auto cfg = config_from_profile(phi, 1, Window{-30, 30, -80, 80});
  int gauge = profile_gauge(phi, 1);
  LocalizationBox full{-12, 12, -24, 24};
  // R_n covering the whole box: identical streams
  auto r = propagation_check(cfg, gauge, {0, 0}, 12, 2.0, 3, propagation_box({0, 0}, 12));
  CHECK(r.agree);
  CHECK(r.events_full == r.events_sub);
  CHECK_THROWS_AS(propagation_check(cfg, gauge, {0, 0}, 20, 1.0, 3, full), InputError);
  // a tiny R_n with a long horizon must feel the outside
  int disagreements = 0;
  for (int seed = 0; seed < 10; ++seed)
    disagreements += !propagation_check(cfg, gauge, {0, 0}, 1, 20.0, seed, full).agree;
  CHECK(disagreements > 0);
}
