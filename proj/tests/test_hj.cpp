#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "akpz/hj.hpp"

using namespace akpz;
using Eigen::Vector2d;

namespace {

constexpr double kPi = std::numbers::pi;

// Nodes of the margin-m simplex on a k x k lattice of the unit square.
std::vector<Vector2d> simplex_nodes(int k, double m = kDefaultSlopeMargin) {
  std::vector<Vector2d> out;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) {
      Vector2d r(i / (k + 1.0), j / (k + 1.0));
      if (r.sum() < 1.0 - m) out.push_back(r);
    }
  return out;
}

// Central differences in long double.
Vector2d fd_gradient(const Vector2d& r) {
  const long double h = 1e-6L;
  auto v = [](long double a, long double b) {
    const long double pi = std::numbers::pi_v<long double>;
    return std::sin(pi * a) * std::sin(pi * b) / (pi * std::sin(pi * (a + b)));
  };
  long double a = r[0], b = r[1];
  return Vector2d(static_cast<double>((v(a + h, b) - v(a - h, b)) / (2 * h)),
                  static_cast<double>((v(a, b + h) - v(a, b - h)) / (2 * h)));
}

// First t with min over grid of det(I + t M) <= 0, by bisection.
double tf_bisection(const ProfileSpec& phi0, const Grid2D<double>& g, double t_max) {
  auto min_det = [&](double t) {
    double m = 1.0;
    for (Eigen::Index i = 0; i < g.axis1.n; ++i)
      for (Eigen::Index j = 0; j < g.axis2.n; ++j) {
        Vector2d x = g.node(i, j);
        Eigen::Matrix2d M = hessian_v<double>(phi0.grad(x)) * phi0.hess(x);
        m = std::min(m, (Eigen::Matrix2d::Identity() + t * M).determinant());
      }
    return m;
  };
  if (min_det(t_max) > 0) return std::numeric_limits<double>::infinity();
  double lo = 0, hi = t_max;
  while (hi - lo > 1e-3 * 1e-3) {
    double mid = 0.5 * (lo + hi);
    (min_det(mid) > 0 ? lo : hi) = mid;
  }
  return hi;
}

bool midpoint_convex(const GridFunction1D<double>& f, double tol) {
  for (Eigen::Index i = 1; i + 1 < f.values.size(); ++i) {
    double a = f.values[i - 1], b = f.values[i], c = f.values[i + 1];
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) continue;
    if (a + c - 2 * b < -tol) return false;
  }
  return true;
}

bool midpoint_convex(const GridFunction2D<double>& f, double tol) {
  const auto& v = f.values;
  for (Eigen::Index i = 1; i + 1 < v.rows(); ++i)
    for (Eigen::Index j = 1; j + 1 < v.cols(); ++j) {
      if (!v.block(i - 1, j - 1, 3, 3).isFinite().all()) continue;
      if (v(i - 1, j) + v(i + 1, j) - 2 * v(i, j) < -tol) return false;
      if (v(i, j - 1) + v(i, j + 1) - 2 * v(i, j) < -tol) return false;
      if (v(i - 1, j - 1) + v(i + 1, j + 1) - 2 * v(i, j) < -tol) return false;
      if (v(i - 1, j + 1) + v(i + 1, j - 1) - 2 * v(i, j) < -tol) return false;
    }
  return true;
}

// Lower convex envelope at each node: min over chords through it.
Eigen::ArrayXd brute_envelope(const GridFunction1D<double>& f) {
  const Eigen::Index n = f.values.size();
  Eigen::ArrayXd env = f.values;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a + 2; b < n; ++b)
      for (Eigen::Index k = a + 1; k < b; ++k) {
        double s = double(k - a) / double(b - a);
        env[k] = std::min(env[k], (1 - s) * f.values[a] + s * f.values[b]);
      }
  return env;
}

}  // namespace

TEST_CASE("drift values") {
  CHECK(drift_v<double>(Vector2d(1.0 / 3, 1.0 / 3)) ==
        doctest::Approx(0.275664447710896024755663249156).epsilon(1e-14));
  CHECK(drift_v<double>(Vector2d(0.5, 0.25)) ==
        doctest::Approx(0.318309886183790671537767526745).epsilon(1e-14));
  CHECK(drift_v<double>(Vector2d(0.2, 0.3)) ==
        doctest::Approx(0.151365345728131395846566301282).epsilon(1e-14));
  CHECK_THROWS_AS(drift_v<double>(Vector2d(0.6, 0.5)), std::domain_error);
  CHECK_THROWS_AS(drift_v<double>(Vector2d(0.0, 0.5)), std::domain_error);
  CHECK_THROWS_AS(drift_v<double>(Vector2d(0.5, 0.49)), std::domain_error);  // margin
  CHECK_NOTHROW(drift_v<double>(Vector2d(0.5, 0.49), 0.0));
  // symmetric in its arguments
  CHECK(drift_v<double>(Vector2d(0.1, 0.6)) == doctest::Approx(drift_v<double>(Vector2d(0.6, 0.1))));
}

TEST_CASE("gradient of the drift") {
  Vector2d g = grad_v<double>(Vector2d(1.0 / 3, 1.0 / 3));
  CHECK(g[0] == doctest::Approx(1.0));
  CHECK(g[1] == doctest::Approx(1.0));
  g = grad_v<double>(Vector2d(0.5, 0.25));
  CHECK(g[0] == doctest::Approx(1.0));
  CHECK(g[1] == doctest::Approx(2.0));
  double worst = 0;
  for (const auto& r : simplex_nodes(50)) {
    Vector2d a = grad_v<double>(r), b = fd_gradient(r);
    worst = std::max(worst, (a - b).cwiseAbs().cwiseQuotient(b.cwiseAbs()).maxCoeff());
  }
  CHECK(worst <= 1e-5);
  for (const auto& r : simplex_nodes(100)) {
    Vector2d a = grad_v<double>(r);
    CHECK((a.array() > 0).all());
  }
}

TEST_CASE("Hessian of the drift has signature (+,-)") {
  auto nodes = simplex_nodes(100);
  int akpz = 0;
  for (const auto& r : nodes) {
    auto s = hessian_signature(r);
    akpz += s.det() < 0 && s.is_akpz();
  }
  CHECK(akpz == static_cast<int>(nodes.size()));

  for (Vector2d r : {Vector2d(1.0 / 3, 1.0 / 3), Vector2d(0.2, 0.3), Vector2d(0.1, 0.7)}) {
    Eigen::Matrix2d H = hessian_v<double>(r);
    CHECK(std::abs(H(0, 1) - H(1, 0)) <= 1e-8);
    // against differences of the gradient
    const double h = 1e-6;
    for (int k = 0; k < 2; ++k) {
      Vector2d e = Vector2d::Unit(k) * h;
      Vector2d col = (grad_v<double>(Vector2d(r + e)) - grad_v<double>(Vector2d(r - e))) / (2 * h);
      CHECK((col - H.col(k)).norm() <= 1e-6 * H.norm());
    }
  }
  // at (1/3,1/3): (1,1) is the positive direction, (1,-1) the negative one
  Eigen::Matrix2d H = hessian_v<double>(Vector2d(1.0 / 3, 1.0 / 3));
  Vector2d d(1, 1), e(1, -1);
  CHECK(d.dot(H * d) > 0);
  CHECK(e.dot(H * e) < 0);
}

TEST_CASE("Legendre transform: quadratic and point indicator") {
  auto f = sample(square_grid(-1.0, 1.0, 81), [](const Vector2d& z) { return 0.5 * z.squaredNorm(); });
  auto fs = legendre_transform(f, square_grid(-0.5, 0.5, 41));
  double err = 0;
  for (Eigen::Index i = 0; i < 41; ++i)
    for (Eigen::Index j = 0; j < 41; ++j)
      err = std::max(err, std::abs(fs.values(i, j) - 0.5 * fs.grid.node(i, j).squaredNorm()));
  CHECK(err <= f.resolution()[0] * f.resolution()[0]);
  CHECK(midpoint_convex(fs, 1e-12));

  // indicator of a single slope
  Vector2d rho(0.3, -0.2);
  auto ind = sample(Grid2D<double>{{0.0, 0.6, 7}, {-0.4, 0.2, 7}}, [&](const Vector2d& z) {
    return (z - rho).norm() < 1e-9 ? 0.0 : kInf<double>;
  });
  REQUIRE(ind.values.isFinite().count() == 1);
  auto lin = legendre_transform(ind, square_grid(-2.0, 2.0, 9));
  for (Eigen::Index i = 0; i < 9; ++i)
    for (Eigen::Index j = 0; j < 9; ++j)
      CHECK(lin.values(i, j) == doctest::Approx(rho.dot(lin.grid.node(i, j))).epsilon(1e-14));

  GridFunction1D<double> empty{{0.0, 1.0, 3}, Eigen::ArrayXd::Constant(3, kInf<double>)};
  CHECK_THROWS_AS(legendre_transform(empty, Grid1D<double>{-1, 1, 3}), InputError);
}

TEST_CASE("double-well envelope is flat on [-1,1]") {
  auto f = sample(Grid1D<double>{-1.5, 1.5, 121}, [](double z) { return (z * z - 1) * (z * z - 1); });
  const auto dual = default_dual_grid(f, 20);
  auto env = convex_envelope(f, dual);
  auto brute = brute_envelope(f);
  const double tol = 2 * dual.step() * 3.0;
  for (Eigen::Index i = 0; i < 121; ++i) {
    CHECK(env.values[i] <= f.values[i] + 1e-12);
    CHECK(std::abs(env.values[i] - brute[i]) <= tol);
    double z = f.grid.node(i);
    if (std::abs(z) <= 1.0) CHECK(std::abs(env.values[i]) <= tol);
  }
  CHECK(midpoint_convex(env, 1e-9));
  // idempotence and f*** = f*
  auto env2 = convex_envelope(env, dual);
  CHECK((env2.values - env.values).abs().maxCoeff() <= tol);
  auto a = legendre_transform(f, dual), b = legendre_transform(env, dual);
  CHECK((a.values - b.values).abs().maxCoeff() <= tol);
  auto pieces_h = flat_pieces_hull(f, flat_piece_tolerance(f));
  auto pieces_e = flat_pieces_envelope(f, flat_piece_tolerance(f));
  REQUIRE(pieces_h.size() == 1);
  REQUIRE(pieces_e.size() == 1);
  CHECK(pieces_h[0].s_lo == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(pieces_h[0].s_hi == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pieces_e[0].s_lo == doctest::Approx(-1.0).epsilon(0.03));
  CHECK(pieces_e[0].s_hi == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("convex functions are fixed by the envelope") {
  auto f = sample(square_grid(-1.0, 1.0, 41), [](const Vector2d& z) {
    return std::sqrt(1 + z.squaredNorm()) + 0.3 * z[0];
  });
  auto env = convex_envelope(f);
  const double lip = 1.3;
  CHECK((env.values - f.values).abs().maxCoeff() <= 2 * f.resolution()[0] * lip);
  CHECK((env.values <= f.values + 1e-12).all());

  // a non-convex 2D function: envelope below, convex, idempotent
  auto g = sample(square_grid(-1.0, 1.0, 31), [](const Vector2d& z) {
    return std::pow(z[0] * z[0] - 0.5, 2) + 0.5 * z[1] * z[1];
  });
  auto eg = convex_envelope(g);
  CHECK((eg.values <= g.values + 1e-12).all());
  CHECK(midpoint_convex(eg, 1e-9));
  auto eg2 = convex_envelope(eg);
  CHECK((eg2.values - eg.values).abs().maxCoeff() <= 2 * g.resolution()[0] * 2.0);

  // +inf outside the hull of the effective domain
  auto disc = sample(square_grid(-1.0, 1.0, 21), [](const Vector2d& z) {
    return z.norm() <= 0.6 ? z.squaredNorm() : kInf<double>;
  });
  auto ed = convex_envelope(disc);
  CHECK(std::isinf(ed.values(0, 0)));
  CHECK(std::isfinite(ed.values(10, 10)));
}

TEST_CASE("characteristics: affine data is exact") {
  Vector2d rho(0.2, 0.5);
  auto phi0 = affine_profile(rho);
  auto grid = square_grid(-1.0, 1.0, 11);
  auto r = characteristics_solve(phi0, 2.0, grid);
  CHECK(r.failed.empty());
  for (Eigen::Index i = 0; i < 11; ++i)
    for (Eigen::Index j = 0; j < 11; ++j)
      CHECK(r.phi.values(i, j) ==
            doctest::Approx(rho.dot(grid.node(i, j)) - 2.0 * drift_v<double>(rho)).epsilon(1e-12));
  CHECK(std::isinf(estimate_Tf(phi0, grid)));
}

TEST_CASE("shock time of the bump") {
  Vector2d rho(1.0 / 3, 1.0 / 3);
  auto grid = square_grid(-1.0, 1.0, 41);
  std::vector<double> tf;
  for (double a : {0.05, 0.1, 0.2}) {
    auto phi0 = bump_profile(rho, a, 0.5);
    double analytic = estimate_Tf(phi0, grid);
    double oracle = tf_bisection(phi0, grid, 100.0);
    CHECK(analytic == doctest::Approx(oracle).epsilon(1e-5));
    tf.push_back(analytic);
  }
  CHECK(tf[0] > tf[1]);
  CHECK(tf[1] > tf[2]);
  // ~ 1/a for small a: a Tf nearly constant, close to the center value
  for (std::size_t k = 1; k < 3; ++k)
    CHECK(0.05 * (1 << k) * tf[k] == doctest::Approx(0.05 * tf[0]).epsilon(0.1));
  // at the center Hphi0 = a I, so the bound is 1 / (a |lambda_min(Hv)|)
  double lambda_min = -(2 * kPi / std::sin(kPi / 3)) * 0.5;
  CHECK(tf[0] <= 1.0 / (0.05 * -lambda_min) + 1e-9);
  CHECK(tf[0] >= 0.9 / (0.05 * -lambda_min));
}

TEST_CASE("characteristics: gradient transport and agreement with Hopf") {
  Vector2d rho(1.0 / 3, 1.0 / 3);
  auto phi0 = bump_profile(rho, 0.3, 0.4);
  auto grid = square_grid(-0.8, 0.8, 33);
  const double tf = estimate_Tf(phi0, grid);
  REQUIRE(std::isfinite(tf));
  const double t = 0.5 * tf;
  auto r = characteristics_solve(phi0, t, grid);
  REQUIRE(r.failed.empty());
  CHECK(r.max_residual <= 1e-9);

  // gradient identity at probe nodes, by differencing the solution itself
  const double d = 1e-4;
  auto value = [&](Vector2d x) {
    auto fp = solve_foot(phi0, x, t);
    REQUIRE(fp.converged);
    return characteristic_value(phi0, fp.x0, t);
  };
  for (auto [i, j] : {std::pair{5, 7}, std::pair{16, 16}, std::pair{25, 12}}) {
    Vector2d x = grid.node(i, j);
    double g1 = (value(x + Vector2d(d, 0)) - value(x - Vector2d(d, 0))) / (2 * d);
    double g2 = (value(x + Vector2d(0, d)) - value(x - Vector2d(0, d))) / (2 * d);
    CHECK(std::abs(g1 - r.grad1.values(i, j)) <= 1e-6);
    CHECK(std::abs(g2 - r.grad2.values(i, j)) <= 1e-6);
  }

  HopfSolver hopf(phi0);
  auto hv = hopf.solve(grid, t);
  CHECK((hv.values - r.phi.values).abs().maxCoeff() <= 1e-2);
  CHECK(midpoint_convex(hv, 1e-12));

  CHECK_THROWS_AS(characteristics_solve(phi0, 1.01 * tf, grid), NumericalError);
}

TEST_CASE("Hopf formula: affine data, t = 0, and the transform identity") {
  Vector2d rho(0.25, 0.4);
  auto aff = affine_profile(rho);
  Vector2d x(0.3, -0.7);
  CHECK(hopf_solve(aff, x, 1.5) == doctest::Approx(rho.dot(x) - 1.5 * drift_v<double>(rho)));

  auto phi0 = bump_profile(Vector2d(1.0 / 3, 1.0 / 3), 0.3, 0.4, Vector2d(0.1, 0.0));
  HopfSolver hopf(phi0, 201);
  for (Vector2d p : {Vector2d(0, 0), Vector2d(0.3, -0.2), Vector2d(-0.5, 0.4)})
    CHECK(std::abs(hopf(p, 0.0) - phi0.eval(p)) <= 1e-3);

  // hopf = [t v + phi0*]* computed through the generic grid transform, and
  // unchanged by convexifying t v + phi0* first.
  const int n = 61;
  const double R = 0.3 * 0.4, t = 0.4;
  Vector2d c(1.0 / 3, 1.0 / 3);
  Grid2D<double> slopes{{c[0] - R, c[0] + R, n}, {c[1] - R, c[1] + R, n}};
  GridFunction2D<double> G{slopes, GridFunction2D<double>::Values::Constant(n, n, kInf<double>)};
  for (const auto& s : phi0.dual_samples(n)) {
    Eigen::Index i = std::lround((s.slope[0] - slopes.axis1.lo) / slopes.axis1.step());
    Eigen::Index j = std::lround((s.slope[1] - slopes.axis2.lo) / slopes.axis2.step());
    G.values(i, j) = t * drift_v<double>(s.slope) + s.conjugate;
  }
  auto xs = square_grid(-0.6, 0.6, 13);
  auto via_grid = legendre_transform(G, xs);
  auto via_env = legendre_transform(convex_envelope(G), xs);
  auto direct = HopfSolver(phi0, n).solve(xs, t);
  CHECK((via_grid.values - direct.values).abs().maxCoeff() <= 1e-12);
  CHECK((via_env.values - direct.values).abs().maxCoeff() <= 2e-3);
}

TEST_CASE("Riemann reduction") {
  SUBCASE("equal states") {
    RiemannSpec s = riemann_from_slopes(Vector2d(0.3, 0.3), Vector2d(0.4, 0.2));
    s.u_plus = s.u_minus;
    auto r = riemann_solve(s, 0.7, 2.0);
    CHECK(r.kind == RiemannKind::Constant);
    CHECK(r.psi == doctest::Approx(s.u_minus * 0.7 - 2.0 * drift_v<double>(s.slope(s.u_minus))));
    CHECK(r.u == doctest::Approx(s.u_minus));
  }
  SUBCASE("convex direction: rarefaction with continuous u") {
    auto s = riemann_from_slopes(Vector2d(0.25, 0.25), Vector2d(0.4, 0.4));
    std::vector<double> ys;
    for (int k = -200; k <= 500; ++k) ys.push_back(k * 0.01);
    auto sol = riemann_solve(s, ys, 1.0);
    CHECK(sol[0].kind == RiemannKind::Rarefaction);
    double max_step = 0;
    for (std::size_t k = 1; k < sol.size(); ++k) {
      CHECK(sol[k].u >= sol[k - 1].u - 1e-9);
      max_step = std::max(max_step, sol[k].u - sol[k - 1].u);
    }
    CHECK(max_step <= 0.02);
    CHECK(sol.front().u == doctest::Approx(s.u_minus).epsilon(1e-6));
    CHECK(sol.back().u == doctest::Approx(s.u_plus).epsilon(1e-6));
  }
  SUBCASE("concave direction: a shock between the envelope endpoints") {
    Vector2d c(1.0 / 3, 1.0 / 3), e(0.1, -0.1);
    auto s = riemann_from_slopes(c - e, c + e);
    std::vector<double> ys;
    for (int k = -100; k <= 100; ++k) ys.push_back(k * 0.01);
    auto sol = riemann_solve(s, ys, 1.0);
    REQUIRE(sol[0].kind == RiemannKind::Shock);
    REQUIRE(sol[0].flats.size() == 1);
    CHECK(sol[0].flats[0].s_lo == doctest::Approx(s.u_minus));
    CHECK(sol[0].flats[0].s_hi == doctest::Approx(s.u_plus));
    auto e_pieces = flat_pieces_envelope(riemann_flux(s), flat_piece_tolerance(riemann_flux(s)));
    REQUIRE(e_pieces.size() == 1);
    CHECK(std::abs(e_pieces[0].s_lo - s.u_minus) <= 0.02 * (s.u_plus - s.u_minus));
    CHECK(std::abs(e_pieces[0].s_hi - s.u_plus) <= 0.02 * (s.u_plus - s.u_minus));
    // u jumps straight from u_- to u_+ (the shock sits at y = 0 by symmetry)
    for (std::size_t k = 0; k < ys.size(); ++k) {
      if (ys[k] < -1e-9) CHECK(sol[k].u == doctest::Approx(s.u_minus).epsilon(1e-6));
      if (ys[k] > 1e-9) CHECK(sol[k].u == doctest::Approx(s.u_plus).epsilon(1e-6));
    }
    // exact solution: max of the two affine solutions
    for (std::size_t k = 0; k < ys.size(); ++k) {
      double y = ys[k];
      double exact = std::max(s.u_minus * y - drift_v<double>(s.slope(s.u_minus)),
                              s.u_plus * y - drift_v<double>(s.slope(s.u_plus)));
      CHECK(sol[k].psi == doctest::Approx(exact).epsilon(1e-12));
    }
  }
  SUBCASE("decreasing data uses the upper envelope") {
    auto inc = riemann_from_slopes(Vector2d(0.25, 0.25), Vector2d(0.4, 0.4));
    RiemannSpec dec = inc;
    std::swap(dec.u_minus, dec.u_plus);
    CHECK(riemann_solve(dec, 0.0, 1.0).kind == RiemannKind::Shock);
    Vector2d c(1.0 / 3, 1.0 / 3), e(0.1, -0.1);
    RiemannSpec dec2 = riemann_from_slopes(c - e, c + e);
    std::swap(dec2.u_minus, dec2.u_plus);
    CHECK(riemann_solve(dec2, 0.0, 1.0).kind == RiemannKind::Rarefaction);
    // psi is an inf: below every affine piece
    auto r = riemann_solve(dec, 0.3, 1.0);
    CHECK(r.psi <= dec.u_minus * 0.3 - drift_v<double>(dec.slope(dec.u_minus)) + 1e-12);
  }
  SUBCASE("invalid spec") {
    CHECK_THROWS_AS(riemann_solve(riemann_from_slopes(Vector2d(0.3, 0.3), Vector2d(0.7, 0.3)),
                                  0.0, 1.0),
                    InputError);
  }
}

TEST_CASE("Hopf agrees with the Riemann reduction for two affine pieces") {
  Vector2d c(1.0 / 3, 1.0 / 3), e(0.1, -0.1);
  for (auto [rm, rp] : {std::pair{Vector2d(c - e), Vector2d(c + e)},
                        std::pair{Vector2d(0.25, 0.25), Vector2d(0.4, 0.4)}}) {
    auto phi0 = max_affine_profile(rm, rp);
    auto spec = riemann_from_slopes(rm, rp);
    HopfSolver hopf(phi0, 2001);
    double worst = 0;
    for (double x1 = -1; x1 <= 1; x1 += 0.1)
      for (double x2 = -1; x2 <= 1; x2 += 0.1) {
        Vector2d x(x1, x2);
        double red = spec.c * x.dot(spec.beta) + riemann_solve(spec, x.dot(spec.n), 1.5).psi;
        worst = std::max(worst, std::abs(red - hopf(x, 1.5)));
      }
    CHECK(worst <= 1e-2);
  }
}

TEST_CASE("classification: hull and envelope code paths agree") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.08, 0.6);
  int shocks = 0, fans = 0, done = 0;
  while (done < 20) {
    Vector2d a(u(rng), u(rng)), b(u(rng), u(rng));
    if (a.sum() > 0.9 || b.sum() > 0.9 || (a - b).norm() < 0.05) continue;
    auto spec = riemann_from_slopes(a, b);
    if (rng() & 1) std::swap(spec.u_minus, spec.u_plus);
    auto V = riemann_flux(spec, 801);
    double tol = flat_piece_tolerance(V);
    auto h = flat_pieces_hull(V, tol);
    auto e = flat_pieces_envelope(V, tol);
    CHECK(h.empty() == e.empty());
    CHECK(h.size() == e.size());
    auto kind = riemann_solve(spec, 0.0, 1.0, {801, 1e-6}).kind;
    CHECK((kind == RiemannKind::Shock) == !e.empty());
    (h.empty() ? fans : shocks)++;
    ++done;
  }
  CHECK(shocks > 0);
  CHECK(fans > 0);
}

TEST_CASE("gradient jumps") {
  auto grid = square_grid(-1.0, 1.0, 41);
  auto aff = sample(grid, [](const Vector2d& x) { return 0.3 * x[0] + 0.2 * x[1]; });
  CHECK(detect_gradient_jumps(aff, 1e-6).empty());
  auto absx = sample(grid, [](const Vector2d& x) { return std::abs(x[0]); });
  auto jumps = detect_gradient_jumps(absx, default_jump_threshold(0.05, 1.0));
  REQUIRE_FALSE(jumps.empty());
  for (const auto& j : jumps) {
    CHECK(j.i == 20);
    CHECK(j.axis == 1);
  }
  CHECK(jumps.size() == 41);

  // a genuinely 2D convex profile develops kinks at large times
  auto phi0 = bump_profile(Vector2d(1.0 / 3, 1.0 / 3), 0.3, 0.4);
  const double tf = estimate_Tf(phi0, square_grid(-1.0, 1.0, 81));
  HopfSolver hopf(phi0, 161);
  // the structure travels with speed grad_v(1/3,1/3) = (1,1)
  for (double f : {0.3, 3.0}) {
    const double t = f * tf;
    auto g = square_grid(t - 1.0, t + 1.0, 81);
    const double thr = default_jump_threshold(g.axis1.step(), phi0.curvature);
    CAPTURE(f);
    CHECK(detect_gradient_jumps(hopf.solve(g, t), thr).empty() == (f < 1));
  }
}
