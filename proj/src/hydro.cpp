#include "akpz/hydro.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <Eigen/Geometry>

#include "akpz/dynamics.hpp"
#include "akpz/errors.hpp"
#include "akpz/hj.hpp"

namespace akpz {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

StarVertex scaled_vertex(const Eigen::Vector2d& x, int L) {
  return {static_cast<int>(std::floor(x[0] * L)), static_cast<int>(std::floor(x[1] * L))};
}

// Runs body(k) for k in [0, n) on `threads` workers.
template <typename F>
void parallel_for(std::size_t n, int threads, F&& body) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t k; !failed && (k = next++) < n;) {
        try {
          body(k);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  pool.clear();
  if (error) std::rethrow_exception(error);
}

double median(std::vector<double> v) {
  const std::size_t m = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + m, v.end());
  double hi = v[m];
  if (v.size() % 2 == 1) return hi;
  double lo = *std::max_element(v.begin(), v.begin() + m);
  return 0.5 * (lo + hi);
}

void validate_experiment(const Experiment& exp) {
  if (exp.Ls.empty()) throw InputError("experiment: empty L list");
  for (int L : exp.Ls)
    if (L < 1) throw InputError("experiment: L must be positive");
  if (exp.probes.empty()) throw InputError("experiment: no probes");
  if (exp.seeds_per_L < 1) throw InputError("experiment: seeds_per_L must be >= 1");
  if (!(exp.t >= 0.0)) throw InputError("experiment: t must be >= 0");
  if (!(exp.kappa > 0.0)) throw InputError("experiment: kappa must be > 0");
  if (!exp.profile.eval) throw InputError("experiment: no profile");
}

Eigen::AlignedBox2d bounding_box(const std::vector<Eigen::Vector2d>& pts) {
  Eigen::AlignedBox2d box;
  for (const auto& p : pts) box.extend(p);
  return box;
}

Grid2D<double> covering_grid(const Eigen::AlignedBox2d& box, double pad, Eigen::Index n) {
  return {{box.min()[0] - pad, box.max()[0] + pad, n},
          {box.min()[1] - pad, box.max()[1] + pad, n}};
}

// Rows for every (L, seed) at the given probes against `reference`.
std::vector<ConvergenceRow> simulate_rows(const Experiment& exp,
                                          const std::vector<double>& reference) {
  struct Task {
    int L;
    int k;
  };
  std::vector<Task> tasks;
  for (int L : exp.Ls)
    for (int k = 0; k < exp.seeds_per_L; ++k) tasks.push_back({L, k});
  std::vector<std::vector<ConvergenceRow>> out(tasks.size());
  parallel_for(tasks.size(), exp.threads, [&](std::size_t i) {
    const auto [L, k] = tasks[i];
    const std::uint64_t seed = derive_seed(exp.seed, L, k);
    ScaledRun run = run_scaled(exp.profile, L, exp.t, exp.probes, exp.kappa, seed,
                               exp.max_work);
    for (std::size_t p = 0; p < exp.probes.size(); ++p) {
      ConvergenceRow r;
      r.L = L;
      r.seed_index = k;
      r.seed = seed;
      r.x = exp.probes[p];
      r.simulated = static_cast<double>(run.floor_heights[p]) / L;
      r.reference = reference[p];
      r.error = std::abs(r.simulated - r.reference);
      const int lo = run.floor_heights[p], mid = run.round_heights[p];
      r.sandwich_ok = lo <= mid && mid <= lo + 1;
      out[i].push_back(r);
    }
  });
  std::vector<ConvergenceRow> rows;
  for (auto& v : out) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, int L, int k) {
  return splitmix64(splitmix64(base ^ (static_cast<std::uint64_t>(L) << 32)) ^
                    static_cast<std::uint64_t>(k));
}

LocalizationBox scaled_box(const std::vector<StarVertex>& vertices, int margin) {
  if (vertices.empty()) throw InputError("scaled_box: no vertices");
  int lmin = std::numeric_limits<int>::max(), lmax = std::numeric_limits<int>::min();
  int zmin = lmin, zmax = lmax;
  for (const auto& v : vertices) {
    auto s = star_coords(v);
    lmin = std::min(lmin, s.line);
    lmax = std::max(lmax, s.line);
    zmin = std::min(zmin, s.z2);
    zmax = std::max(zmax, s.z2);
  }
  const int n = std::max(margin, 1);
  return {lmin - 2 * n, lmax + 2 * n, zmin - 2 * n, zmax + 2 * n};
}

Window scaled_window(const ProfileSpec& phi0, const LocalizationBox& box, double T) {
  // Gaps between particles stay below about 1/rho3; rings pull at most about
  // 2T particles per line in from the right.
  const double rho3 = 1.0 - phi0.slope_range.max_sum();
  const int gap = 2 * (static_cast<int>(std::ceil(2.0 / rho3)) + 4);
  const int pull =
      2 * static_cast<int>(std::ceil((2.0 * T + 6.0 * std::sqrt(T) + 4.0) / rho3));
  return {box.ell_minus, box.ell_plus, box.z2_minus - gap, box.z2_plus + gap + pull};
}

ScaledRun run_scaled(const ProfileSpec& phi0, int L, double t,
                     const std::vector<Eigen::Vector2d>& probes, double kappa,
                     std::uint64_t seed, double max_work) {
  if (L < 1) throw InputError("run_scaled: L must be positive");
  if (probes.empty()) throw InputError("run_scaled: no probes");
  ScaledRun out;
  const double T = t * L;
  out.margin = std::max(1, static_cast<int>(std::ceil(kappa * T)));
  for (const auto& x : probes) out.vertices.push_back(scaled_vertex(x, L));
  LocalizationBox box = scaled_box(out.vertices, out.margin);
  if (static_cast<double>(box.site_count()) * std::max(T, 1.0) > max_work)
    throw ResourceError("run_scaled: box of " + std::to_string(box.site_count()) +
                        " sites over time " + std::to_string(T) + " exceeds the work guard");
  Window win = scaled_window(phi0, box, T);

  GrowthSimulator low(config_from_profile(phi0, L, win, 0.0), out.vertices,
                      profile_gauge(phi0, L, 0.0));
  GrowthSimulator high(config_from_profile(phi0, L, win, 0.5), out.vertices,
                       profile_gauge(phi0, L, 0.5));
  EventSource src(seed, box, T);
  while (auto e = src.next()) {
    low.apply(*e);
    high.apply(*e);
    ++out.events;
  }
  out.floor_heights = low.heights();
  out.round_heights = high.heights();
  return out;
}

HydroTable run_smooth(const Experiment& exp) {
  validate_experiment(exp);
  const ProfileSpec& phi0 = exp.profile;
  HydroTable table;
  table.probes = exp.probes;

  // Feet of the characteristics through the probes lie within t times the
  // range of grad_v over the slope box.
  std::vector<Eigen::Vector2d> region = exp.probes;
  const SlopeBox& sb = phi0.slope_range;
  for (const auto& x : exp.probes)
    for (Eigen::Vector2d c : {sb.lo, sb.hi, Eigen::Vector2d(sb.lo[0], sb.hi[1]),
                              Eigen::Vector2d(sb.hi[0], sb.lo[1])})
      region.push_back(x - exp.t * grad_v<double>(c, 0.0));
  table.tf_estimate = estimate_Tf(phi0, covering_grid(bounding_box(region), 0.25, 81));
  if (exp.t > exp.max_tf_fraction * table.tf_estimate)
    throw InputError("run_smooth: t = " + std::to_string(exp.t) + " exceeds " +
                     std::to_string(exp.max_tf_fraction) + " x Tf = " +
                     std::to_string(table.tf_estimate));

  std::vector<double> reference;
  for (const auto& x : exp.probes) {
    FootPoint f = solve_foot(phi0, x, exp.t);
    if (!f.converged) throw NumericalError("run_smooth: characteristic foot did not converge");
    reference.push_back(characteristic_value(phi0, f.x0, exp.t));
  }
  table.rows = simulate_rows(exp, reference);
  return table;
}

HydroTable run_shock(const Experiment& exp) {
  validate_experiment(exp);
  const ProfileSpec& phi0 = exp.profile;
  if (!phi0.convex) throw InputError("run_shock: profile must be convex");
  const bool segment = phi0.name == "max_affine";
  HopfSolver hopf(phi0, segment ? 2001 : 161);
  HydroTable table;

  // Drop probes near gradient jumps of the reference solution.
  const auto grid = covering_grid(bounding_box(exp.probes), exp.shock_strip, 121);
  const double h = std::max(grid.axis1.step(), grid.axis2.step());
  const double threshold =
      std::max(default_jump_threshold(h, phi0.curvature),
               0.25 * (phi0.slope_range.hi - phi0.slope_range.lo).norm());
  std::vector<Eigen::Vector2d> jumps;
  if (exp.t > 0.0 || segment)
    for (const auto& j : detect_gradient_jumps(hopf.solve(grid, exp.t), threshold))
      jumps.push_back(grid.node(j.i, j.j));
  for (const auto& x : exp.probes) {
    bool near = std::any_of(jumps.begin(), jumps.end(), [&](const Eigen::Vector2d& y) {
      return (x - y).norm() < 0.5 * exp.shock_strip;
    });
    (near ? table.excluded : table.probes).push_back(x);
  }
  if (table.probes.empty()) throw InputError("run_shock: every probe lies in the shock strip");

  std::vector<double> reference;
  for (const auto& x : table.probes) reference.push_back(hopf(x, exp.t));
  if (segment) {
    const auto& p = phi0.params;
    RiemannSpec spec = riemann_from_slopes({p.at("rho_minus1"), p.at("rho_minus2")},
                                           {p.at("rho_plus1"), p.at("rho_plus2")});
    std::vector<double> ys;
    for (const auto& x : table.probes) ys.push_back(x.dot(spec.n));
    auto sol = riemann_solve(spec, ys, exp.t);
    table.riemann_crosscheck = 0.0;
    for (std::size_t k = 0; k < ys.size(); ++k)
      table.riemann_crosscheck =
          std::max(table.riemann_crosscheck,
                   std::abs(spec.c * table.probes[k].dot(spec.beta) + sol[k].psi - reference[k]));
  }
  Experiment kept = exp;
  kept.probes = table.probes;
  table.rows = simulate_rows(kept, reference);
  return table;
}

HydroTable run_experiment(const Experiment& exp) {
  return exp.mode == HydroMode::Smooth ? run_smooth(exp) : run_shock(exp);
}

HydroSummary aggregate(const std::vector<ConvergenceRow>& rows, double threshold) {
  if (rows.empty()) throw InputError("aggregate: empty table");
  std::vector<int> Ls;
  for (const auto& r : rows) Ls.push_back(r.L);
  std::sort(Ls.begin(), Ls.end());
  Ls.erase(std::unique(Ls.begin(), Ls.end()), Ls.end());
  HydroSummary s;
  s.threshold = threshold;
  for (int L : Ls) {
    LevelSummary lv;
    lv.L = L;
    std::vector<double> errors;
    for (const auto& r : rows)
      if (r.L == L) {
        errors.push_back(r.error);
        lv.sandwich_ok = lv.sandwich_ok && r.sandwich_ok;
      }
    lv.rows = errors.size();
    lv.max = *std::max_element(errors.begin(), errors.end());
    lv.median = median(std::move(errors));
    s.levels.push_back(lv);
  }
  s.monotone = true;
  for (std::size_t k = 1; k < s.levels.size(); ++k)
    s.monotone = s.monotone && s.levels[k].median <= s.levels[k - 1].median;
  s.final_median = s.levels.back().median;
  s.pass = s.monotone && s.final_median <= threshold;
  return s;
}

Experiment default_smooth_experiment() {
  Experiment exp;
  exp.mode = HydroMode::Smooth;
  const Eigen::Vector2d rho(1.0 / 3.0, 1.0 / 3.0);
  exp.profile = bump_profile(rho, 0.48, 0.25);
  exp.t = 0.5 * estimate_Tf(exp.profile, square_grid(-1.5, 1.5, 121));
  const Eigen::Vector2d center = exp.t * grad_v<double>(rho);
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j) exp.probes.push_back(center + 0.1 * Eigen::Vector2d(i, j));
  exp.threshold = 0.05;
  return exp;
}

Experiment default_shock_experiment() {
  Experiment exp;
  exp.mode = HydroMode::Shock;
  const Eigen::Vector2d rho(1.0 / 3.0, 1.0 / 3.0), d(0.1, -0.1);
  exp.profile = max_affine_profile(rho - d, rho + d);
  exp.t = 0.25;
  const Eigen::Vector2d center = exp.t * grad_v<double>(rho);
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j) exp.probes.push_back(center + 0.075 * Eigen::Vector2d(i, j));
  exp.threshold = 0.07;
  return exp;
}

}  // namespace akpz
