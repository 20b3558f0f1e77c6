#pragma once

// Regular grids and grid functions with +inf marking nodes outside the
// effective domain, discrete Legendre-Fenchel transforms and convex
// envelopes.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "akpz/errors.hpp"

namespace akpz {

template <typename Scalar = double>
struct Grid1D {
  Scalar lo = 0;
  Scalar hi = 1;
  Eigen::Index n = 2;

  Scalar step() const { return (hi - lo) / Scalar(n - 1); }
  Scalar node(Eigen::Index i) const {
    return i + 1 == n ? hi : lo + Scalar(i) * step();
  }
  void validate() const {
    if (n < 2 || !(hi > lo)) throw InputError("grid needs n >= 2 and hi > lo");
  }
};

template <typename Scalar = double>
struct Grid2D {
  Grid1D<Scalar> axis1;
  Grid1D<Scalar> axis2;

  Eigen::Matrix<Scalar, 2, 1> node(Eigen::Index i, Eigen::Index j) const {
    return {axis1.node(i), axis2.node(j)};
  }
  void validate() const {
    axis1.validate();
    axis2.validate();
  }
};

template <typename Scalar>
inline Grid2D<Scalar> square_grid(Scalar lo, Scalar hi, Eigen::Index n) {
  return {{lo, hi, n}, {lo, hi, n}};
}

template <typename Scalar = double>
struct GridFunction1D {
  using Values = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  Grid1D<Scalar> grid;
  Values values;

  Scalar resolution() const { return grid.step(); }
};

template <typename Scalar = double>
struct GridFunction2D {
  using Values = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Grid2D<Scalar> grid;
  Values values;  // values(i, j) at grid.node(i, j)

  Eigen::Matrix<Scalar, 2, 1> resolution() const {
    return {grid.axis1.step(), grid.axis2.step()};
  }
};

template <typename Scalar>
inline constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

template <typename Scalar, typename F>
GridFunction1D<Scalar> sample(const Grid1D<Scalar>& g, F&& f) {
  g.validate();
  GridFunction1D<Scalar> out{g, typename GridFunction1D<Scalar>::Values(g.n)};
  for (Eigen::Index i = 0; i < g.n; ++i) out.values[i] = f(g.node(i));
  return out;
}

template <typename Scalar, typename F>
GridFunction2D<Scalar> sample(const Grid2D<Scalar>& g, F&& f) {
  g.validate();
  GridFunction2D<Scalar> out{g, typename GridFunction2D<Scalar>::Values(
                                    g.axis1.n, g.axis2.n)};
  for (Eigen::Index j = 0; j < g.axis2.n; ++j)
    for (Eigen::Index i = 0; i < g.axis1.n; ++i)
      out.values(i, j) = f(g.node(i, j));
  return out;
}

/// f*(y) = max over finite nodes z of (z y - f(z)), on the dual grid.
template <typename Scalar>
GridFunction1D<Scalar> legendre_transform(const GridFunction1D<Scalar>& f,
                                          const Grid1D<Scalar>& dual) {
  dual.validate();
  std::vector<Eigen::Index> finite;
  for (Eigen::Index i = 0; i < f.values.size(); ++i)
    if (std::isfinite(f.values[i])) finite.push_back(i);
  if (finite.empty()) throw InputError("legendre_transform: no finite node");
  GridFunction1D<Scalar> out{dual, typename GridFunction1D<Scalar>::Values(dual.n)};
  for (Eigen::Index k = 0; k < dual.n; ++k) {
    const Scalar y = dual.node(k);
    Scalar best = -kInf<Scalar>;
    for (auto i : finite) best = std::max(best, f.grid.node(i) * y - f.values[i]);
    out.values[k] = best;
  }
  return out;
}

/// Two-dimensional transform. The sup over z = (z1, z2) is taken as
/// max over z1 of (z1 y1 + max over z2 of (z2 y2 - f(z1, z2))): the same
/// finite set of candidates, reordered.
template <typename Scalar>
GridFunction2D<Scalar> legendre_transform(const GridFunction2D<Scalar>& f,
                                          const Grid2D<Scalar>& dual) {
  dual.validate();
  const auto& g = f.grid;
  const Eigen::Index n1 = g.axis1.n, n2 = g.axis2.n;
  const Eigen::Index m1 = dual.axis1.n, m2 = dual.axis2.n;
  if (!f.values.isFinite().any())
    throw InputError("legendre_transform: no finite node");

  // inner(i, k) = max_j (z2_j y2_k - f(i, j)); -inf for empty columns
  Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> inner(n1, m2);
  for (Eigen::Index k = 0; k < m2; ++k) {
    const Scalar y2 = dual.axis2.node(k);
    for (Eigen::Index i = 0; i < n1; ++i) {
      Scalar best = -kInf<Scalar>;
      for (Eigen::Index j = 0; j < n2; ++j) {
        const Scalar fv = f.values(i, j);
        if (std::isfinite(fv)) best = std::max(best, g.axis2.node(j) * y2 - fv);
      }
      inner(i, k) = best;
    }
  }
  GridFunction2D<Scalar> out{dual, typename GridFunction2D<Scalar>::Values(m1, m2)};
  for (Eigen::Index k = 0; k < m2; ++k)
    for (Eigen::Index l = 0; l < m1; ++l) {
      const Scalar y1 = dual.axis1.node(l);
      Scalar best = -kInf<Scalar>;
      for (Eigen::Index i = 0; i < n1; ++i)
        if (inner(i, k) > -kInf<Scalar>)
          best = std::max(best, g.axis1.node(i) * y1 + inner(i, k));
      out.values(l, k) = best;
    }
  return out;
}

namespace detail {

// Range of difference quotients between consecutive finite nodes.
template <typename Scalar, typename Get>
void slope_bounds(Eigen::Index n, Scalar h, Get&& get, Scalar& lo, Scalar& hi) {
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    Scalar a = get(i), b = get(i + 1);
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    Scalar s = (b - a) / h;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
}

template <typename Scalar>
Grid1D<Scalar> padded_axis(Scalar lo, Scalar hi, Eigen::Index n) {
  if (!(lo <= hi)) lo = hi = Scalar(0);  // no finite pair: any slope works
  Scalar pad = std::max<Scalar>(Scalar(1e-9), Scalar(1e-6) * (hi - lo));
  return {lo - pad, hi + pad, n};
}

template <typename Scalar>
Scalar cross(const Eigen::Matrix<Scalar, 2, 1>& o,
             const Eigen::Matrix<Scalar, 2, 1>& a,
             const Eigen::Matrix<Scalar, 2, 1>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace detail

/// Dual grid spanning the discrete slopes of f, with `factor` times as many
/// nodes as f.
template <typename Scalar>
Grid1D<Scalar> default_dual_grid(const GridFunction1D<Scalar>& f, int factor = 2) {
  Scalar lo = kInf<Scalar>, hi = -kInf<Scalar>;
  detail::slope_bounds(f.values.size(), f.grid.step(),
                       [&](Eigen::Index i) { return f.values[i]; }, lo, hi);
  return detail::padded_axis(lo, hi, factor * f.grid.n);
}

template <typename Scalar>
Grid2D<Scalar> default_dual_grid(const GridFunction2D<Scalar>& f, int factor = 2) {
  Scalar lo1 = kInf<Scalar>, hi1 = -kInf<Scalar>;
  Scalar lo2 = kInf<Scalar>, hi2 = -kInf<Scalar>;
  const auto& g = f.grid;
  for (Eigen::Index j = 0; j < g.axis2.n; ++j)
    detail::slope_bounds(g.axis1.n, g.axis1.step(),
                         [&](Eigen::Index i) { return f.values(i, j); }, lo1, hi1);
  for (Eigen::Index i = 0; i < g.axis1.n; ++i)
    detail::slope_bounds(g.axis2.n, g.axis2.step(),
                         [&](Eigen::Index j) { return f.values(i, j); }, lo2, hi2);
  return {detail::padded_axis(lo1, hi1, factor * g.axis1.n),
          detail::padded_axis(lo2, hi2, factor * g.axis2.n)};
}

/// Lower convex envelope f** as a double transform through `dual`; +inf
/// outside the hull of the finite nodes.
template <typename Scalar>
GridFunction1D<Scalar> convex_envelope(const GridFunction1D<Scalar>& f,
                                       const Grid1D<Scalar>& dual) {
  auto env = legendre_transform(legendre_transform(f, dual), f.grid);
  const auto& v = f.values;
  Eigen::Index first = 0, last = v.size() - 1;
  while (!std::isfinite(v[first])) ++first;
  while (!std::isfinite(v[last])) --last;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (i < first || i > last) env.values[i] = kInf<Scalar>;
  return env;
}

template <typename Scalar>
GridFunction1D<Scalar> convex_envelope(const GridFunction1D<Scalar>& f) {
  return convex_envelope(f, default_dual_grid(f));
}

template <typename Scalar>
GridFunction2D<Scalar> convex_envelope(const GridFunction2D<Scalar>& f,
                                       const Grid2D<Scalar>& dual) {
  using P = Eigen::Matrix<Scalar, 2, 1>;
  auto env = legendre_transform(legendre_transform(f, dual), f.grid);
  // Convex hull of the finite nodes (monotone chain), then mask outside it.
  std::vector<P> pts;
  for (Eigen::Index i = 0; i < f.values.rows(); ++i)
    for (Eigen::Index j = 0; j < f.values.cols(); ++j)
      if (std::isfinite(f.values(i, j))) pts.push_back(f.grid.node(i, j));
  std::sort(pts.begin(), pts.end(), [](const P& a, const P& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  std::vector<P> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && detail::cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && detail::cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  const Scalar tol = Scalar(1e-9) * (f.grid.axis1.step() + f.grid.axis2.step());
  auto inside = [&](const P& x) {
    if (hull.size() == 1) return (x - hull[0]).norm() <= tol;
    if (hull.size() == 2) {
      P d = hull[1] - hull[0];
      Scalar s = (x - hull[0]).dot(d) / d.squaredNorm();
      return s >= -tol && s <= 1 + tol && std::abs(detail::cross(hull[0], hull[1], x)) <= tol * d.norm();
    }
    for (std::size_t e = 0; e < hull.size(); ++e)
      if (detail::cross(hull[e], hull[(e + 1) % hull.size()], x) < -tol) return false;
    return true;
  };
  for (Eigen::Index i = 0; i < env.values.rows(); ++i)
    for (Eigen::Index j = 0; j < env.values.cols(); ++j)
      if (!inside(f.grid.node(i, j))) env.values(i, j) = kInf<Scalar>;
  return env;
}

template <typename Scalar>
GridFunction2D<Scalar> convex_envelope(const GridFunction2D<Scalar>& f) {
  return convex_envelope(f, default_dual_grid(f));
}

/// Indices of the lower convex hull of the points (x_i, v_i), i ascending
/// in x. Points exactly on a hull edge are dropped.
template <typename Scalar>
std::vector<Eigen::Index> lower_hull(const Eigen::Array<Scalar, Eigen::Dynamic, 1>& x,
                                     const Eigen::Array<Scalar, Eigen::Dynamic, 1>& v) {
  std::vector<Eigen::Index> h;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    while (h.size() >= 2) {
      auto a = h[h.size() - 2], b = h.back();
      Scalar c = (x[b] - x[a]) * (v[i] - v[a]) - (v[b] - v[a]) * (x[i] - x[a]);
      if (c <= 0) h.pop_back(); else break;
    }
    h.push_back(i);
  }
  return h;
}

}  // namespace akpz
