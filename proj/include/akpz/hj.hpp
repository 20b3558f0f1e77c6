#pragma once

// Macroscopic evolution d_t phi + v(grad phi) = 0: classical solutions by
// characteristics before the shock time, viscosity solutions of convex data
// by the Hopf formula, and the one-dimensional Riemann reduction.

#include <limits>
#include <vector>

#include "akpz/drift.hpp"
#include "akpz/grid.hpp"
#include "akpz/profile.hpp"

namespace akpz {

struct NewtonOptions {
  double tolerance = 1e-11;  // on |F(x0)|
  int max_iterations = 60;
};

struct FootPoint {
  Eigen::Vector2d x0 = Eigen::Vector2d::Zero();
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Solves x0 + t grad_v(grad phi0(x0)) = x by damped Newton iteration with
/// Jacobian I + t Hv Hphi0.
FootPoint solve_foot(const ProfileSpec& phi0, const Eigen::Vector2d& x,
                     double t, const NewtonOptions& opt = {});

/// phi0(x0) + t (p.grad_v(p) - v(p)) with p = grad phi0(x0).
double characteristic_value(const ProfileSpec& phi0, const Eigen::Vector2d& x0,
                            double t);

struct CharacteristicsResult {
  GridFunction2D<double> phi;
  GridFunction2D<double> grad1;  // d phi / dx1 = d phi0 / dx1 at the foot
  GridFunction2D<double> grad2;
  double max_residual = 0.0;
  /// Nodes where Newton failed (values there are NaN).
  std::vector<std::pair<Eigen::Index, Eigen::Index>> failed;
  /// t itself when nothing failed, else the largest time (by bisection) at
  /// which the failed nodes converge.
  double t_converged = 0.0;
};

/// Throws NumericalError when t is not below estimate_Tf(phi0, grid) - safety.
CharacteristicsResult characteristics_solve(const ProfileSpec& phi0, double t,
                                            const Grid2D<double>& grid,
                                            double safety = 1e-3,
                                            const NewtonOptions& opt = {});

/// First t > 0 with det(I + t Hv(grad phi0) Hphi0) <= 0 over the nodes of
/// `grid` (taken as starting points x0); +inf if none below `horizon`.
double estimate_Tf(const ProfileSpec& phi0, const Grid2D<double>& grid,
                   double horizon = 1e6);

/// First positive root of det(I + t M) = 1 + t tr M + t^2 det M, or +inf.
double first_singular_time(const Eigen::Matrix2d& M);

/// Hopf formula max over slopes y of (y.x - t v(y) - phi0*(y)), with the
/// slopes and conjugate values sampled once from the profile.
class HopfSolver {
 public:
  HopfSolver(const ProfileSpec& phi0, int samples_per_axis = 161,
             double margin = kDefaultSlopeMargin);

  double operator()(const Eigen::Vector2d& x, double t) const;
  GridFunction2D<double> solve(const Grid2D<double>& grid, double t) const;
  std::size_t sample_count() const { return slopes_.size(); }

 private:
  std::vector<Eigen::Vector2d> slopes_;
  std::vector<double> conj_;
  std::vector<double> drift_;
};

double hopf_solve(const ProfileSpec& phi0, const Eigen::Vector2d& x, double t,
                  int samples_per_axis = 161);

/// phi0(x) = c x.beta + psi0(x.n), psi0(y) = u_- y for y < 0, u_+ y for y > 0.
struct RiemannSpec {
  double c = 0.0;
  Eigen::Vector2d beta{0.0, 1.0};
  Eigen::Vector2d n{1.0, 0.0};
  double u_minus = 0.0;
  double u_plus = 0.0;

  Eigen::Vector2d slope(double s) const { return c * beta + s * n; }
  /// Throws InputError unless c beta + u n is in the margin simplex for both
  /// endpoints (hence along the whole segment).
  void validate(double margin = kDefaultSlopeMargin) const;
};

/// The spec with phi0 = max(rho_-.x, rho_+.x): n along rho_+ - rho_-, beta
/// orthogonal to it.
RiemannSpec riemann_from_slopes(const Eigen::Vector2d& rho_minus,
                                const Eigen::Vector2d& rho_plus);

enum class RiemannKind { Constant, Rarefaction, Shock };

struct FlatPiece {
  double s_lo = 0.0;
  double s_hi = 0.0;
};

struct RiemannOptions {
  Eigen::Index nodes = 2001;
  double derivative_step = 1e-6;
};

struct RiemannSolution {
  double psi = 0.0;
  double u = 0.0;
  RiemannKind kind = RiemannKind::Constant;
  std::vector<FlatPiece> flats;
};

/// V(s) = v(c beta + s n) on the interval between u_- and u_+; negated when
/// u_- > u_+ so that in both cases the relevant envelope is the lower convex
/// one.
GridFunction1D<double> riemann_flux(const RiemannSpec& spec,
                                    Eigen::Index nodes = 2001);

/// Threshold above which a node lying over the envelope counts as part of a
/// flat piece: twice the worst error of the grid double transform.
double flat_piece_tolerance(const GridFunction1D<double>& V);

/// Flat pieces of the lower convex envelope of V, from the exact lower hull.
std::vector<FlatPiece> flat_pieces_hull(const GridFunction1D<double>& V, double tol);
/// Same, from convex_envelope (double Legendre transform).
std::vector<FlatPiece> flat_pieces_envelope(const GridFunction1D<double>& V,
                                            double tol);

RiemannSolution riemann_solve(const RiemannSpec& spec, double y, double t,
                              const RiemannOptions& opt = {});

/// psi at many points for one (spec, t); classification computed once.
std::vector<RiemannSolution> riemann_solve(const RiemannSpec& spec,
                                           const std::vector<double>& ys, double t,
                                           const RiemannOptions& opt = {});

struct GradientJump {
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  int axis = 1;
  double size = 0.0;  // |forward - backward difference quotient|
};

/// 10 h K: the largest one-sided-difference mismatch a function with
/// curvature bounded by K can show on a grid of step h, with room to spare.
double default_jump_threshold(double h, double curvature_bound);

std::vector<GradientJump> detect_gradient_jumps(const GridFunction2D<double>& phi,
                                                double threshold);

}  // namespace akpz
