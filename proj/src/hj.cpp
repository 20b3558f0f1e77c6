#include "akpz/hj.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

namespace akpz {

namespace {

struct Residual {
  Eigen::Vector2d F;
  Eigen::Matrix2d J;
};

Residual residual(const ProfileSpec& phi0, const Eigen::Vector2d& x0,
                  const Eigen::Vector2d& x, double t) {
  const Eigen::Vector2d p = phi0.grad(x0);
  Residual r;
  r.F = x0 + t * grad_v<double>(p) - x;
  r.J = Eigen::Matrix2d::Identity() + t * hessian_v<double>(p) * phi0.hess(x0);
  return r;
}

}  // namespace

FootPoint solve_foot(const ProfileSpec& phi0, const Eigen::Vector2d& x, double t,
                     const NewtonOptions& opt) {
  FootPoint fp;
  fp.x0 = x;
  try {
    // explicit first guess along the characteristic through x
    Eigen::Vector2d guess = x - t * grad_v<double>(phi0.grad(x));
    Residual r0 = residual(phi0, x, x, t);
    Residual rg = residual(phi0, guess, x, t);
    Residual r = rg.F.norm() < r0.F.norm() ? rg : r0;
    if (rg.F.norm() < r0.F.norm()) fp.x0 = guess;
    for (; fp.iterations < opt.max_iterations; ++fp.iterations) {
      fp.residual = r.F.norm();
      if (fp.residual <= opt.tolerance) {
        fp.converged = true;
        return fp;
      }
      Eigen::FullPivLU<Eigen::Matrix2d> lu(r.J);
      if (!lu.isInvertible()) return fp;
      const Eigen::Vector2d dx = lu.solve(r.F);
      double lambda = 1.0;
      bool improved = false;
      for (int k = 0; k < 30 && !improved; ++k, lambda *= 0.5) {
        try {
          Residual trial = residual(phi0, fp.x0 - lambda * dx, x, t);
          if (trial.F.norm() < fp.residual) {
            fp.x0 -= lambda * dx;
            r = trial;
            improved = true;
          }
        } catch (const std::domain_error&) {
          // step left the slope domain; shorten it
        }
      }
      if (!improved) return fp;
    }
    fp.residual = r.F.norm();
    fp.converged = fp.residual <= opt.tolerance;
  } catch (const std::domain_error&) {
    fp.converged = false;
  }
  return fp;
}

double characteristic_value(const ProfileSpec& phi0, const Eigen::Vector2d& x0,
                            double t) {
  const Eigen::Vector2d p = phi0.grad(x0);
  return phi0.eval(x0) + t * (p.dot(grad_v<double>(p)) - drift_v<double>(p));
}

double first_singular_time(const Eigen::Matrix2d& M) {
  const double a = M.determinant(), b = M.trace();
  const double inf = std::numeric_limits<double>::infinity();
  const double scale = std::max(std::abs(a), b * b);
  if (scale == 0.0) return inf;
  if (std::abs(a) <= 1e-14 * scale) return b < 0.0 ? -1.0 / b : inf;
  const double disc = b * b - 4.0 * a;
  if (disc < 0.0) return inf;  // det stays positive
  // roots of a t^2 + b t + 1, computed without cancellation
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double best = inf;
  for (double r : {q / a, q != 0.0 ? 1.0 / q : inf})
    if (r > 0.0) best = std::min(best, r);
  return best;
}

double estimate_Tf(const ProfileSpec& phi0, const Grid2D<double>& grid,
                   double horizon) {
  grid.validate();
  double tf = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < grid.axis1.n; ++i)
    for (Eigen::Index j = 0; j < grid.axis2.n; ++j) {
      const Eigen::Vector2d x0 = grid.node(i, j);
      const Eigen::Matrix2d M = hessian_v<double>(phi0.grad(x0)) * phi0.hess(x0);
      tf = std::min(tf, first_singular_time(M));
    }
  return tf < horizon ? tf : std::numeric_limits<double>::infinity();
}

CharacteristicsResult characteristics_solve(const ProfileSpec& phi0, double t,
                                            const Grid2D<double>& grid,
                                            double safety,
                                            const NewtonOptions& opt) {
  if (!(t >= 0.0)) throw InputError("characteristics_solve: t must be >= 0");
  const double tf = estimate_Tf(phi0, grid);
  if (!(t < tf - safety))
    throw NumericalError("characteristics_solve: t is not below the shock time");
  CharacteristicsResult out;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto blank = [&] {
    return GridFunction2D<double>{grid, GridFunction2D<double>::Values::Constant(
                                            grid.axis1.n, grid.axis2.n, nan)};
  };
  out.phi = blank();
  out.grad1 = blank();
  out.grad2 = blank();
  out.t_converged = t;
  for (Eigen::Index i = 0; i < grid.axis1.n; ++i)
    for (Eigen::Index j = 0; j < grid.axis2.n; ++j) {
      const Eigen::Vector2d x = grid.node(i, j);
      FootPoint fp = solve_foot(phi0, x, t, opt);
      if (!fp.converged) {
        out.failed.emplace_back(i, j);
        continue;
      }
      out.max_residual = std::max(out.max_residual, fp.residual);
      out.phi.values(i, j) = characteristic_value(phi0, fp.x0, t);
      const Eigen::Vector2d g = phi0.grad(fp.x0);
      out.grad1.values(i, j) = g[0];
      out.grad2.values(i, j) = g[1];
    }
  if (!out.failed.empty()) {
    double lo = 0.0, hi = t;
    for (int k = 0; k < 40; ++k) {
      const double mid = 0.5 * (lo + hi);
      bool ok = true;
      for (auto [i, j] : out.failed)
        ok = ok && solve_foot(phi0, grid.node(i, j), mid, opt).converged;
      (ok ? lo : hi) = mid;
    }
    out.t_converged = lo;
  }
  return out;
}

HopfSolver::HopfSolver(const ProfileSpec& phi0, int samples_per_axis,
                       double margin) {
  if (!phi0.convex || !phi0.dual_samples)
    throw InputError("hopf_solve needs a convex profile with a known conjugate");
  for (const auto& s : phi0.dual_samples(samples_per_axis)) {
    try {
      drift_.push_back(drift_v<double>(s.slope, margin));
    } catch (const std::domain_error&) {
      continue;
    }
    slopes_.push_back(s.slope);
    conj_.push_back(s.conjugate);
  }
  if (slopes_.empty()) throw InputError("hopf_solve: slope grid is empty");
}

double HopfSolver::operator()(const Eigen::Vector2d& x, double t) const {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < slopes_.size(); ++k)
    best = std::max(best, slopes_[k].dot(x) - t * drift_[k] - conj_[k]);
  return best;
}

GridFunction2D<double> HopfSolver::solve(const Grid2D<double>& grid, double t) const {
  return sample(grid, [&](const Eigen::Vector2d& x) { return (*this)(x, t); });
}

double hopf_solve(const ProfileSpec& phi0, const Eigen::Vector2d& x, double t,
                  int samples_per_axis) {
  return HopfSolver(phi0, samples_per_axis)(x, t);
}

void RiemannSpec::validate(double margin) const {
  if (std::abs(n.norm() - 1.0) > 1e-12 || std::abs(beta.norm() - 1.0) > 1e-12)
    throw InputError("RiemannSpec: beta and n must be unit vectors");
  for (double u : {u_minus, u_plus}) {
    try {
      check_slope_domain<double>(slope(u), margin);
    } catch (const std::domain_error&) {
      throw InputError("RiemannSpec: c beta + u n leaves the slope triangle");
    }
  }
}

RiemannSpec riemann_from_slopes(const Eigen::Vector2d& rho_minus,
                                const Eigen::Vector2d& rho_plus) {
  RiemannSpec s;
  const Eigen::Vector2d d = rho_plus - rho_minus;
  if (d.norm() == 0.0) {
    s.n = Eigen::Vector2d(1.0, 0.0);
  } else {
    s.n = d.normalized();
  }
  s.beta = Eigen::Vector2d(-s.n[1], s.n[0]);
  s.c = rho_minus.dot(s.beta);
  s.u_minus = rho_minus.dot(s.n);
  s.u_plus = rho_plus.dot(s.n);
  return s;
}

GridFunction1D<double> riemann_flux(const RiemannSpec& spec, Eigen::Index nodes) {
  spec.validate();
  const double lo = std::min(spec.u_minus, spec.u_plus);
  const double hi = std::max(spec.u_minus, spec.u_plus);
  const double sign = spec.u_minus <= spec.u_plus ? 1.0 : -1.0;
  return sample(Grid1D<double>{lo, hi, nodes},
                [&](double s) { return sign * drift_v<double>(spec.slope(s)); });
}

double flat_piece_tolerance(const GridFunction1D<double>& V) {
  // The grid double transform undershoots the hull by at most
  // (dual step) x (interval length).
  const Grid1D<double> dual = default_dual_grid(V);
  return 2.0 * dual.step() * (V.grid.hi - V.grid.lo);
}

std::vector<FlatPiece> flat_pieces_hull(const GridFunction1D<double>& V, double tol) {
  // A hull edge spanning nodes that lie above it by more than tol is a flat
  // piece; its endpoints are the contact nodes.
  const Eigen::Index n = V.values.size();
  Eigen::ArrayXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = V.grid.node(i);
  auto hull = lower_hull<double>(x, V.values);
  std::vector<FlatPiece> out;
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const auto a = hull[e], b = hull[e + 1];
    double gap = 0.0;
    for (Eigen::Index k = a + 1; k < b; ++k)
      gap = std::max(gap, V.values[k] - V.values[a] -
                              (V.values[b] - V.values[a]) * (x[k] - x[a]) / (x[b] - x[a]));
    if (gap <= tol) continue;
    if (!out.empty() && out.back().s_hi == x[a])
      out.back().s_hi = x[b];
    else
      out.push_back({x[a], x[b]});
  }
  return out;
}

std::vector<FlatPiece> flat_pieces_envelope(const GridFunction1D<double>& V,
                                            double tol) {
  // Runs of nodes with V - env > tol. Each end then moves to the node
  // closest to the chord L of the run, searched while V - L <= tol.
  const Eigen::ArrayXd env = convex_envelope(V).values;
  const Eigen::Index n = V.values.size();
  std::vector<FlatPiece> out;
  Eigen::Index i = 0;
  while (i < n) {
    if (!(V.values[i] - env[i] > tol)) {
      ++i;
      continue;
    }
    Eigen::Index j = i;
    while (j + 1 < n && V.values[j + 1] - env[j + 1] > tol) ++j;
    Eigen::Index lo = std::max<Eigen::Index>(i - 1, 0);
    Eigen::Index hi = std::min<Eigen::Index>(j + 1, n - 1);
    if (hi > lo) {
      const double x0 = V.grid.node(lo);
      const double m = (env[hi] - env[lo]) / (V.grid.node(hi) - x0);
      auto above = [&](Eigen::Index k) {
        return V.values[k] - (env[lo] + m * (V.grid.node(k) - x0));
      };
      auto settle = [&](Eigen::Index start, int dir) {
        Eigen::Index best = start;
        for (Eigen::Index k = start; k >= 0 && k < n && above(k) <= tol; k += dir)
          if (above(k) < above(best)) best = k;
        return best;
      };
      const Eigen::Index new_lo = settle(lo, -1), new_hi = settle(hi, +1);
      lo = new_lo;
      hi = new_hi;
    }
    out.push_back({V.grid.node(lo), V.grid.node(hi)});
    i = j + 1;
  }
  return out;
}

namespace {

struct RiemannTable {
  RiemannKind kind = RiemannKind::Constant;
  std::vector<FlatPiece> flats;
  Eigen::ArrayXd s;
  Eigen::ArrayXd V;  // unsigned flux v(c beta + s n)
  bool inf = false;  // decreasing data: the sup becomes an inf
};

RiemannTable riemann_table(const RiemannSpec& spec, const RiemannOptions& opt) {
  RiemannTable tab;
  spec.validate();
  if (spec.u_minus == spec.u_plus) {
    tab.s = Eigen::ArrayXd::Constant(1, spec.u_minus);
    tab.V = Eigen::ArrayXd::Constant(1, drift_v<double>(spec.slope(spec.u_minus)));
    return tab;
  }
  auto flux = riemann_flux(spec, opt.nodes);
  tab.inf = spec.u_minus > spec.u_plus;
  tab.flats = flat_pieces_hull(flux, flat_piece_tolerance(flux));
  tab.kind = tab.flats.empty() ? RiemannKind::Rarefaction : RiemannKind::Shock;
  tab.s.resize(opt.nodes);
  for (Eigen::Index i = 0; i < opt.nodes; ++i) tab.s[i] = flux.grid.node(i);
  tab.V = tab.inf ? Eigen::ArrayXd(-flux.values) : flux.values;
  return tab;
}

double riemann_psi(const RiemannTable& tab, double y, double t) {
  const Eigen::ArrayXd vals = tab.s * y - t * tab.V;
  return tab.inf ? vals.minCoeff() : vals.maxCoeff();
}

RiemannSolution riemann_point(const RiemannTable& tab, double y, double t,
                              const RiemannOptions& opt) {
  RiemannSolution r;
  r.kind = tab.kind;
  r.flats = tab.flats;
  r.psi = riemann_psi(tab, y, t);
  const double d = opt.derivative_step;
  r.u = (riemann_psi(tab, y + d, t) - riemann_psi(tab, y - d, t)) / (2 * d);
  return r;
}

}  // namespace

RiemannSolution riemann_solve(const RiemannSpec& spec, double y, double t,
                              const RiemannOptions& opt) {
  if (!(t >= 0.0)) throw InputError("riemann_solve: t must be >= 0");
  return riemann_point(riemann_table(spec, opt), y, t, opt);
}

std::vector<RiemannSolution> riemann_solve(const RiemannSpec& spec,
                                           const std::vector<double>& ys, double t,
                                           const RiemannOptions& opt) {
  if (!(t >= 0.0)) throw InputError("riemann_solve: t must be >= 0");
  auto tab = riemann_table(spec, opt);
  std::vector<RiemannSolution> out;
  out.reserve(ys.size());
  for (double y : ys) out.push_back(riemann_point(tab, y, t, opt));
  return out;
}

double default_jump_threshold(double h, double curvature_bound) {
  return 10.0 * h * curvature_bound;
}

std::vector<GradientJump> detect_gradient_jumps(const GridFunction2D<double>& phi,
                                                double threshold) {
  std::vector<GradientJump> out;
  const auto& v = phi.values;
  const double h1 = phi.grid.axis1.step(), h2 = phi.grid.axis2.step();
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      if (i > 0 && i + 1 < v.rows()) {
        double m = std::abs((v(i + 1, j) - v(i, j)) / h1 - (v(i, j) - v(i - 1, j)) / h1);
        if (m > threshold) out.push_back({i, j, 1, m});
      }
      if (j > 0 && j + 1 < v.cols()) {
        double m = std::abs((v(i, j + 1) - v(i, j)) / h2 - (v(i, j) - v(i, j - 1)) / h2);
        if (m > threshold) out.push_back({i, j, 2, m});
      }
    }
  return out;
}

}  // namespace akpz
