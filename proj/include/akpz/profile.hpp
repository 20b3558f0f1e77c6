#pragma once

// Catalog of analytic macroscopic initial profiles phi0 : R^2 -> R.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "akpz/height.hpp"

namespace akpz {

/// Axis-aligned box of slopes; must sit inside the open triangle.
struct SlopeBox {
  Eigen::Vector2d lo;
  Eigen::Vector2d hi;

  double max_sum() const { return hi[0] + hi[1]; }
  bool contains(const Eigen::Vector2d& r, double tol = 1e-12) const {
    return (r.array() >= lo.array() - tol).all() &&
           (r.array() <= hi.array() + tol).all();
  }
};

/// A slope in the effective domain of phi0* with the value phi0*(slope).
struct DualSample {
  Eigen::Vector2d slope;
  double conjugate = 0.0;
};

struct ProfileSpec {
  std::string name;
  std::map<std::string, double> params;  // for manifests
  std::function<double(const Eigen::Vector2d&)> eval;
  std::function<Eigen::Vector2d(const Eigen::Vector2d&)> grad;
  std::function<Eigen::Matrix2d(const Eigen::Vector2d&)> hess;
  SlopeBox slope_range;
  bool convex = false;
  /// Curvature bound sup |H phi0|, 0 for piecewise-affine profiles.
  double curvature = 0.0;
  /// Closed-form conjugate sampled with about n points per axis of the
  /// slope set (convex profiles only).
  std::function<std::vector<DualSample>(int n)> dual_samples;
};

ProfileSpec affine_profile(const Eigen::Vector2d& rho);

/// rho.x + a w^2 (sqrt(1 + |x - x0|^2 / w^2) - 1): curvature a at x0, gradient
/// within the disc of radius a*w around rho, convex.
ProfileSpec bump_profile(const Eigen::Vector2d& rho, double a, double w,
                         const Eigen::Vector2d& x0 = Eigen::Vector2d::Zero());

/// max(rho_minus.x, rho_plus.x); the kink is a gradient discontinuity.
ProfileSpec max_affine_profile(const Eigen::Vector2d& rho_minus,
                               const Eigen::Vector2d& rho_plus);

/// Rebuilds a catalog profile from its name and params (manifest round trip).
ProfileSpec profile_from_params(const std::string& name,
                                const std::map<std::string, double>& params);

/// floor(L phi0(x/L) + offset), the initial height at scale L.
int discretized_height(const ProfileSpec& phi0, int L, StarVertex x,
                       double offset = 0.0);

/// Gauge making particle (0,0) the left-most non-negative one on line 0.
int profile_gauge(const ProfileSpec& phi0, int L, double offset = 0.0);

/// Particle configuration with height floor(L phi0(x/L)) on `window`.
/// Throws InputError when the slope range leaves the interior of the
/// triangle or a discretized increment leaves {0,1}.
ParticleConfig config_from_profile(const ProfileSpec& phi0, int L,
                                   const Window& window);

/// Same, with the height shifted by `offset` before flooring
/// (floor(L phi0(x/L) + offset)); offset 0.5 gives nearest-integer rounding.
ParticleConfig config_from_profile(const ProfileSpec& phi0, int L,
                                   const Window& window, double offset);

}  // namespace akpz
