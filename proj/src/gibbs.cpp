#include "akpz/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "akpz/dynamics.hpp"

namespace akpz {

TorusTiling::TorusTiling(const Slope& rho, int N) : N_(N) {
  if (N < 2) throw InputError("torus period must be >= 2");
  if (!rho.in_interior()) throw InputError("slope must lie in the open triangle");
  n1_ = static_cast<int>(std::lround(N * rho.rho1));
  n2_ = static_cast<int>(std::lround(N * rho.rho2));
  if (N - n1_ - n2_ < 2 || n1_ < 0 || n2_ < 0)
    throw InputError("slope infeasible on this torus: need N rho3 >= 2");
  h_.resize(static_cast<std::size_t>(N) * N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      h_[static_cast<std::size_t>(j) * N + i] = floor_div(n1_ * i + n2_ * j, N);
}

int TorusTiling::height(StarVertex x) const {
  int q1 = floor_div(x.x1, N_);
  int q2 = floor_div(x.x2, N_);
  return at(x.x1 - q1 * N_, x.x2 - q2 * N_) + q1 * n1_ + q2 * n2_;
}

bool TorusTiling::try_flip(int i, int j, int delta) {
  const int v = at(i, j);
  const int ip = i + 1 == N_ ? 0 : i + 1, im = i == 0 ? N_ - 1 : i - 1;
  const int jp = j + 1 == N_ ? 0 : j + 1, jm = j == 0 ? N_ - 1 : j - 1;
  const int s1p = i + 1 == N_ ? n1_ : 0, s1m = i == 0 ? n1_ : 0;
  const int s2p = j + 1 == N_ ? n2_ : 0, s2m = j == 0 ? n2_ : 0;
  // Current increments, each 0 or 1. A cube can be added at v iff the three
  // forward ones are 1 and the three backward ones are 0, removed iff the
  // reverse holds.
  const int f1 = at(ip, j) + s1p - v, f2 = at(i, jp) + s2p - v,
            f3 = at(ip, jp) + s1p + s2p - v;
  const int b1 = v - at(im, j) + s1m, b2 = v - at(i, jm) + s2m,
            b3 = v - at(im, jm) + s1m + s2m;
  const bool ok = delta > 0 ? ((f1 & f2 & f3) & ~(b1 | b2 | b3) & 1)
                            : (~(f1 | f2 | f3) & (b1 & b2 & b3) & 1);
  if (ok) h_[static_cast<std::size_t>(j) * N_ + i] = v + delta;
  return ok;
}

long TorusTiling::volume() const {
  return std::accumulate(h_.begin(), h_.end(), 0L);
}

ParticleConfig TorusTiling::config(const Window& window) const {
  return config_from_heights([this](StarVertex x) { return height(x); },
                             gauge(), window);
}

TorusTiling sample_gibbs(const Slope& rho, int N, long sweeps,
                         std::uint64_t seed) {
  TorusTiling t(rho, N);
  if (sweeps < 0) throw InputError("sweeps must be >= 0");
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), 0x67696262u};
  std::mt19937_64 rng(seq);
  const long proposals = sweeps * static_cast<long>(N) * N;
  // One 64-bit draw per proposal: two 31-bit halves scaled to [0, N) by
  // multiply-shift (bias below N / 2^31) and one bit for the direction.
  const std::uint64_t n = static_cast<std::uint64_t>(N);
  for (long k = 0; k < proposals; ++k) {
    const std::uint64_t r = rng();
    const int i = static_cast<int>(((r & 0x7fffffffu) * n) >> 31);
    const int j = static_cast<int>((((r >> 31) & 0x7fffffffu) * n) >> 31);
    t.try_flip(i, j, (r >> 63) ? 1 : -1);
  }
  return t;
}

int density_stats(const ParticleConfig& cfg, int line, int r) {
  const auto& ln = cfg.line(line);
  if (ln.lo2 > 1 || ln.hi2 < 2 * r - 1)
    throw WindowError("density_stats: interval not inside the known span");
  auto lo = std::upper_bound(ln.z2.begin(), ln.z2.end(), 0);
  auto hi = std::upper_bound(ln.z2.begin(), ln.z2.end(), 2 * r);
  return static_cast<int>(hi - lo);
}

int density_stats(const TorusTiling& t, int line, int r) {
  return density_stats(t.config(Window{line, line, 0, 2 * r + 1}), line, r);
}

double fluctuation_stats(const TorusTiling& t, const Slope& rho, int Lwin) {
  const int h0 = t.height({0, 0});
  double worst = 0.0;
  for (int x1 = -Lwin; x1 <= Lwin; ++x1)
    for (int x2 = -Lwin; x2 <= Lwin; ++x2)
      worst = std::max(worst, std::abs(t.height({x1, x2}) - h0 -
                                       rho.rho1 * x1 - rho.rho2 * x2));
  return worst;
}

double fluctuation_stats(const HeightField& h, const Slope& rho, int Lwin) {
  if (!h.contains({-Lwin, -Lwin}) || !h.contains({Lwin, Lwin}))
    throw WindowError("fluctuation_stats: window smaller than Lwin");
  const int h0 = h.at({0, 0});
  double worst = 0.0;
  for (int x1 = -Lwin; x1 <= Lwin; ++x1)
    for (int x2 = -Lwin; x2 <= Lwin; ++x2)
      worst = std::max(worst, std::abs(h.at({x1, x2}) - h0 - rho.rho1 * x1 -
                                       rho.rho2 * x2));
  return worst;
}

LocalizationBox drift_box(int margin, int probe_radius) {
  int n = margin, r = probe_radius;
  return {-(2 * n + r), 2 * n + r, -2 * (n + r), 2 * (n + r)};
}

DriftEstimate drift_estimate(const Slope& rho, int N, double T,
                             const std::vector<std::uint64_t>& seeds,
                             const DriftOptions& opt) {
  if (!(T > 0.0)) throw InputError("drift_estimate: T must be > 0");
  if (seeds.empty()) throw InputError("drift_estimate: no seeds");
  DriftEstimate out;
  out.margin = static_cast<int>(std::ceil(opt.kappa * T));
  const int r = opt.probe_radius;
  LocalizationBox box = drift_box(out.margin, r);
  // Every line holds N rho3 >= 2 particles per period. Rings inside the box
  // pull particles in from the right, at most about T per line at rate one
  // per unit time; the right pad is one period plus 2T/rho3 sites.
  TorusTiling shape(rho, N);
  const int pull = static_cast<int>(
      std::ceil(2.0 * T * N / shape.particles_per_line()));
  Window win{box.ell_minus, box.ell_plus, box.z2_minus - 2 * N - 2,
             box.z2_plus + 2 * N + 2 + 2 * pull};
  std::vector<StarVertex> probes;
  for (int l = -r; l <= r; ++l)
    for (int z2 = -2 * r; z2 <= 2 * r; ++z2)
      if (!same_parity(z2, l)) probes.push_back(star_vertex(l, z2));

  const long sweeps = opt.sweeps < 0 ? default_sweeps(N) : opt.sweeps;
  for (auto seed : seeds) {
    TorusTiling t = sample_gibbs(rho, N, sweeps, seed);
    ParticleConfig cfg = t.config(win);
    EventSource src(seed ^ 0x9e3779b97f4a7c15ull, box, T);
    Trajectory tr = simulate(cfg, src, probes, t.gauge());
    double sum = std::accumulate(tr.crossings.begin(), tr.crossings.end(), 0.0);
    out.per_seed.push_back(sum / probes.size() / T);
  }
  const double k = static_cast<double>(out.per_seed.size());
  out.mean = std::accumulate(out.per_seed.begin(), out.per_seed.end(), 0.0) / k;
  if (k > 1) {
    double ss = 0.0;
    for (double v : out.per_seed) ss += (v - out.mean) * (v - out.mean);
    out.std_error = std::sqrt(ss / (k - 1) / k);
  }
  return out;
}

}  // namespace akpz
