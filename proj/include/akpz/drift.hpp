#pragma once

// The drift function v(rho) = sin(pi rho1) sin(pi rho2) / (pi sin(pi (rho1+rho2)))
// of the growth process, with closed-form gradient and Hessian.
//
// Gradient:  (sin^2(pi rho2), sin^2(pi rho1)) / sin^2(pi (rho1+rho2))
// Hessian:   2 pi / s12^3 * [[-s2^2 c12, s1 s2], [s1 s2, -s1^2 c12]]
// so det Hv = -4 pi^2 s1^2 s2^2 / s12^4 < 0 everywhere in the open triangle.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

namespace akpz {

inline constexpr double kDefaultSlopeMargin = 0.02;

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;

/// Throws std::domain_error unless rho is in the margin-m simplex.
template <typename Scalar>
void check_slope_domain(const Vec2<Scalar>& rho, Scalar margin) {
  using std::isfinite;
  if (!(isfinite(rho[0]) && isfinite(rho[1])) || !(rho[0] > Scalar(0)) ||
      !(rho[1] > Scalar(0)) || !(rho[0] + rho[1] < Scalar(1) - margin))
    throw std::domain_error("slope outside the margin simplex");
}

template <typename Scalar>
Scalar drift_v(const Vec2<Scalar>& rho,
               Scalar margin = Scalar(kDefaultSlopeMargin)) {
  using std::sin;
  check_slope_domain(rho, margin);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return sin(pi * rho[0]) * sin(pi * rho[1]) / (pi * sin(pi * (rho[0] + rho[1])));
}

template <typename Scalar>
Vec2<Scalar> grad_v(const Vec2<Scalar>& rho,
                    Scalar margin = Scalar(kDefaultSlopeMargin)) {
  using std::sin;
  check_slope_domain(rho, margin);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar s1 = sin(pi * rho[0]);
  const Scalar s2 = sin(pi * rho[1]);
  const Scalar s12 = sin(pi * (rho[0] + rho[1]));
  return Vec2<Scalar>(s2 * s2, s1 * s1) / (s12 * s12);
}

template <typename Scalar>
Mat2<Scalar> hessian_v(const Vec2<Scalar>& rho,
                       Scalar margin = Scalar(kDefaultSlopeMargin)) {
  using std::cos;
  using std::sin;
  check_slope_domain(rho, margin);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar s1 = sin(pi * rho[0]);
  const Scalar s2 = sin(pi * rho[1]);
  const Scalar s12 = sin(pi * (rho[0] + rho[1]));
  const Scalar c12 = cos(pi * (rho[0] + rho[1]));
  const Scalar k = Scalar(2) * pi / (s12 * s12 * s12);
  Mat2<Scalar> h;
  h << -s2 * s2 * c12, s1 * s2, s1 * s2, -s1 * s1 * c12;
  return k * h;
}

struct HessianSignature {
  Eigen::Matrix2d hessian;
  Eigen::Vector2d eigenvalues;  // ascending
  Eigen::Matrix2d eigenvectors;
  int positive = 0;
  int negative = 0;

  double det() const { return hessian.determinant(); }
  bool is_akpz() const { return positive == 1 && negative == 1; }
};

inline HessianSignature hessian_signature(const Eigen::Vector2d& rho,
                                          double margin = kDefaultSlopeMargin) {
  HessianSignature s;
  s.hessian = hessian_v<double>(rho, margin);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(s.hessian);
  s.eigenvalues = es.eigenvalues();
  s.eigenvectors = es.eigenvectors();
  for (int i = 0; i < 2; ++i) {
    if (s.eigenvalues[i] > 0) ++s.positive;
    if (s.eigenvalues[i] < 0) ++s.negative;
  }
  return s;
}

}  // namespace akpz
