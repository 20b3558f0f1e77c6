#include "akpz/profile.hpp"

#include <algorithm>
#include <cmath>

namespace akpz {

namespace {

void check_range(const SlopeBox& box) {
  if (!(box.lo[0] > 0.0 && box.lo[1] > 0.0 && box.max_sum() < 1.0))
    throw InputError("profile slope range is not inside the open triangle");
}

}  // namespace

ProfileSpec affine_profile(const Eigen::Vector2d& rho) {
  ProfileSpec p;
  p.name = "affine";
  p.params = {{"rho1", rho[0]}, {"rho2", rho[1]}};
  p.eval = [rho](const Eigen::Vector2d& x) { return rho.dot(x); };
  p.grad = [rho](const Eigen::Vector2d&) -> Eigen::Vector2d { return rho; };
  p.hess = [](const Eigen::Vector2d&) -> Eigen::Matrix2d {
    return Eigen::Matrix2d::Zero();
  };
  p.slope_range = {rho, rho};
  p.convex = true;
  p.dual_samples = [rho](int) { return std::vector<DualSample>{{rho, 0.0}}; };
  check_range(p.slope_range);
  return p;
}

ProfileSpec bump_profile(const Eigen::Vector2d& rho, double a, double w,
                         const Eigen::Vector2d& x0) {
  if (!(a >= 0.0) || !(w > 0.0))
    throw InputError("bump profile needs a >= 0 and w > 0");
  ProfileSpec p;
  p.name = "bump";
  p.params = {{"rho1", rho[0]}, {"rho2", rho[1]}, {"a", a},
              {"w", w},         {"x01", x0[0]},   {"x02", x0[1]}};
  const double w2 = w * w;
  p.eval = [=](const Eigen::Vector2d& x) {
    Eigen::Vector2d r = x - x0;
    return rho.dot(x) + a * w2 * (std::sqrt(1.0 + r.squaredNorm() / w2) - 1.0);
  };
  p.grad = [=](const Eigen::Vector2d& x) -> Eigen::Vector2d {
    Eigen::Vector2d r = x - x0;
    return rho + a * r / std::sqrt(1.0 + r.squaredNorm() / w2);
  };
  p.hess = [=](const Eigen::Vector2d& x) -> Eigen::Matrix2d {
    Eigen::Vector2d r = x - x0;
    const double s = std::sqrt(1.0 + r.squaredNorm() / w2);
    return a * (Eigen::Matrix2d::Identity() / s - r * r.transpose() / (w2 * s * s * s));
  };
  const Eigen::Vector2d reach = Eigen::Vector2d::Constant(a * w);
  p.slope_range = {rho - reach, rho + reach};
  p.convex = true;
  p.curvature = a;
  // phi0*(y) = x0.(y - rho) + g*(y - rho) with g(u) = a w sqrt(w^2 + |u|^2) - a w^2,
  // g*(q) = a w^2 - w sqrt(a^2 w^2 - |q|^2) on the closed disc |q| <= a w.
  p.dual_samples = [=](int n) {
    const double R = a * w;
    std::vector<DualSample> out;
    if (R == 0.0 || n < 2) return std::vector<DualSample>{{rho, 0.0}};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Eigen::Vector2d q(-R + 2 * R * i / (n - 1), -R + 2 * R * j / (n - 1));
        const double r2 = q.squaredNorm();
        if (r2 > R * R) continue;
        out.push_back({rho + q, x0.dot(q) + a * w2 - w * std::sqrt(R * R - r2)});
      }
    return out;
  };
  check_range(p.slope_range);
  return p;
}

ProfileSpec max_affine_profile(const Eigen::Vector2d& rho_minus,
                               const Eigen::Vector2d& rho_plus) {
  ProfileSpec p;
  p.name = "max_affine";
  p.params = {{"rho_minus1", rho_minus[0]},
              {"rho_minus2", rho_minus[1]},
              {"rho_plus1", rho_plus[0]},
              {"rho_plus2", rho_plus[1]}};
  p.eval = [=](const Eigen::Vector2d& x) {
    return std::max(rho_minus.dot(x), rho_plus.dot(x));
  };
  // At the kink either one-sided gradient is a subgradient; take rho_plus.
  p.grad = [=](const Eigen::Vector2d& x) -> Eigen::Vector2d {
    return rho_minus.dot(x) > rho_plus.dot(x) ? rho_minus : rho_plus;
  };
  p.hess = [](const Eigen::Vector2d&) -> Eigen::Matrix2d {
    return Eigen::Matrix2d::Zero();
  };
  p.slope_range = {rho_minus.cwiseMin(rho_plus), rho_minus.cwiseMax(rho_plus)};
  p.convex = true;
  // conjugate: 0 on the segment [rho_minus, rho_plus], +inf elsewhere
  p.dual_samples = [=](int n) {
    n = std::max(n, 2);
    std::vector<DualSample> out;
    for (int i = 0; i < n; ++i) {
      double s = static_cast<double>(i) / (n - 1);
      out.push_back({(1 - s) * rho_minus + s * rho_plus, 0.0});
    }
    return out;
  };
  check_range(p.slope_range);
  return p;
}

ProfileSpec profile_from_params(const std::string& name,
                                const std::map<std::string, double>& params) {
  auto get = [&](const std::string& key) {
    auto it = params.find(key);
    if (it == params.end())
      throw InputError("profile '" + name + "' is missing parameter '" + key + "'");
    return it->second;
  };
  if (name == "affine") return affine_profile({get("rho1"), get("rho2")});
  if (name == "bump")
    return bump_profile({get("rho1"), get("rho2")}, get("a"), get("w"),
                        {get("x01"), get("x02")});
  if (name == "max_affine")
    return max_affine_profile({get("rho_minus1"), get("rho_minus2")},
                              {get("rho_plus1"), get("rho_plus2")});
  throw InputError("unknown profile '" + name + "'");
}

int discretized_height(const ProfileSpec& phi0, int L, StarVertex x,
                       double offset) {
  Eigen::Vector2d p(x.x1, x.x2);
  return static_cast<int>(std::floor(L * phi0.eval(p / L) + offset));
}

int profile_gauge(const ProfileSpec& phi0, int L, double offset) {
  return discretized_height(phi0, L, {0, 0}, offset) - 1;
}

ParticleConfig config_from_profile(const ProfileSpec& phi0, int L,
                                   const Window& window) {
  return config_from_profile(phi0, L, window, 0.0);
}

ParticleConfig config_from_profile(const ProfileSpec& phi0, int L,
                                   const Window& window, double offset) {
  if (L < 1) throw InputError("scale L must be positive");
  check_range(phi0.slope_range);
  auto h = [&](StarVertex x) { return discretized_height(phi0, L, x, offset); };
  return config_from_heights(h, profile_gauge(phi0, L, offset), window);
}

}  // namespace akpz
