#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hypersw/distributions.hpp"
#include "hypersw/sliced.hpp"
#include "oracles.hpp"

#include <Eigen/LU>

#include <cmath>

using namespace hypersw;

namespace {

LorentzPoint point3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return make_lorentz(std::move(v));
}

}  // namespace

TEST_CASE("sampling pipeline fundamentals") {
  const LorentzPoint mu = point3(std::cosh(1.2), std::sinh(1.2), 0.0);

  const WrappedNormal tight = make_wrapped_normal_iso(mu, 1e-12);
  const Matrix close = sample_wnd(tight, 200, 1);
  for (int i = 0; i < close.rows(); ++i) {
    CHECK(lorentz_distance(LorentzPoint{close.row(i).transpose()}, mu) <= 1e-4);
  }

  const WrappedNormal wide = make_wrapped_normal_iso(mu, 1.0);
  const Matrix pts = sample_wnd(wide, 500, 2);
  for (int i = 0; i < pts.rows(); ++i) {
    CHECK(std::abs(minkowski_norm2(pts.row(i).transpose()) + 1.0) <= 1e-9);
  }
  CHECK(sample_wnd(wide, 50, 9) == sample_wnd(wide, 50, 9));
  CHECK(sample_wnd(wide, 50, 9) != sample_wnd(wide, 50, 10));

  Matrix bad_cov(2, 2);
  bad_cov << 1.0, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(make_wrapped_normal(mu, bad_cov), std::domain_error);
  Matrix asym(2, 2);
  asym << 1.0, 0.2, -0.2, 1.0;
  CHECK_THROWS_AS(make_wrapped_normal(mu, asym), std::domain_error);
}

TEST_CASE("centered samples have symmetric projections") {
  const WrappedNormal g = make_wrapped_normal_iso(lorentz_origin(2), 1.0);
  const int n = 100000;
  const Matrix pts = sample_wnd(g, n, 3);
  const Direction v = make_direction(Vector::Unit(2, 0));
  Vector coords(n);
  for (int i = 0; i < n; ++i) {
    coords[i] = minkowski_inner(pts.row(i).transpose(), v.lift());
  }
  const double mean = coords.mean();
  const double sd = std::sqrt((coords.array() - mean).square().sum() / (n - 1));
  CHECK(std::abs(mean) <= 3.0 * sd / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("log density at the mean is the gaussian normalizer") {
  Matrix cov(2, 2);
  cov << 0.5, 0.1, 0.1, 0.3;
  const LorentzPoint mu = point3(std::cosh(0.7), 0.0, std::sinh(0.7));
  const WrappedNormal g = make_wrapped_normal(mu, cov);
  const double expected =
      -0.5 * (2.0 * std::log(2.0 * M_PI) + std::log(cov.determinant()));
  CHECK(log_prob_wnd(g, mu) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("density integrates to one over the hyperboloid") {
  const WrappedNormal g =
      make_wrapped_normal_iso(point3(std::cosh(0.5), std::sinh(0.5), 0.0), 1.0);
  // Polar quadrature around the origin, radius truncated at 8.
  const int nr = 400, na = 256;
  const double rmax = 8.0;
  const double dr = rmax / nr, da = 2.0 * M_PI / na;
  double mass = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double r = (i + 0.5) * dr;
    for (int j = 0; j < na; ++j) {
      const double a = (j + 0.5) * da;
      Vector x(3);
      x << std::cosh(r), std::sinh(r) * std::cos(a), std::sinh(r) * std::sin(a);
      mass += std::exp(log_prob_wnd(g, LorentzPoint{renormalize_lorentz(x)})) * std::sinh(r);
    }
  }
  mass *= dr * da;
  CHECK(std::abs(mass - 1.0) <= 1e-2);
}

TEST_CASE("samples follow the density (kolmogorov-smirnov)") {
  Matrix cov(2, 2);
  cov << 0.8, 0.25, 0.25, 1.1;
  const LorentzPoint mu = point3(std::cosh(1.0), std::sinh(1.0), 0.0);
  const WrappedNormal g = make_wrapped_normal(mu, cov);
  const int n = 100000;
  const Matrix pts = sample_wnd(g, n, 12);
  // Invert the pipeline and check the first tangent coordinate against its
  // exact marginal law.
  std::vector<double> z1(n);
  const LorentzPoint origin = lorentz_origin(2);
  for (int i = 0; i < n; ++i) {
    const Vector u = log_lorentz(mu, LorentzPoint{pts.row(i).transpose()});
    const Vector z = parallel_transport(TangentVector{mu.coords, u}, origin).vec;
    z1[i] = z[1];
  }
  const double sd = std::sqrt(cov(0, 0));
  const double ks =
      oracles::ks_statistic(z1, [&](double x) { return oracles::normal_cdf(x, 0.0, sd); });
  CHECK(ks <= 1.628 / std::sqrt(static_cast<double>(n)));  // 1% critical value
}

TEST_CASE("sampling commutes with moving the mean") {
  const int n = 100000;
  const double var = 0.6;
  const LorentzPoint mu = point3(std::cosh(1.4), 0.3, std::sqrt(std::cosh(1.4) * std::cosh(1.4) - 1.09));
  const Matrix at_mu = sample_wnd(make_wrapped_normal_iso(mu, var), n, 21);
  const Matrix at_origin = sample_wnd(make_wrapped_normal_iso(lorentz_origin(2), var), n, 22);
  auto dist_moments = [](const Matrix& pts, const LorentzPoint& center) {
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < pts.rows(); ++i) {
      const double d = lorentz_distance(LorentzPoint{pts.row(i).transpose()}, center);
      m1 += d;
      m2 += d * d;
    }
    return std::pair<double, double>{m1 / pts.rows(), m2 / pts.rows()};
  };
  const auto [a1, a2] = dist_moments(at_mu, mu);
  const auto [b1, b2] = dist_moments(at_origin, lorentz_origin(2));
  // Monte-Carlo band: var(d) <= E[d^2], two independent draws.
  const double band1 = 4.0 * std::sqrt(2.0 * a2 / n);
  CHECK(std::abs(a1 - b1) <= band1);
  CHECK(std::abs(a2 - b2) <= 8.0 * std::sqrt(2.0 * a2 * a2 / n));
}

TEST_CASE("mixture sampling") {
  const LorentzPoint m1 = point3(std::cosh(2.0), std::sinh(2.0), 0.0);
  const LorentzPoint m2 = point3(std::cosh(2.0), -std::sinh(2.0), 0.0);

  // One component: exactly the single-distribution pipeline.
  const WrappedNormal solo = make_wrapped_normal_iso(m1, 0.3);
  const WrappedMixture trivial = make_wrapped_mixture({solo}, Vector::Ones(1));
  CHECK(sample_mixture(trivial, 64, 5) == sample_wnd(solo, 64, 5));

  // Two far components with tiny spread: assignments are recoverable.
  const WrappedMixture two = make_wrapped_mixture(
      {make_wrapped_normal_iso(m1, 1e-4), make_wrapped_normal_iso(m2, 1e-4)},
      Vector::Constant(2, 0.5));
  const int n = 4000;
  const Matrix pts = sample_mixture(two, n, 6);
  int first = 0;
  for (int i = 0; i < n; ++i) {
    const LorentzPoint x{pts.row(i).transpose()};
    const double d1 = lorentz_distance(x, m1);
    const double d2 = lorentz_distance(x, m2);
    CHECK(std::min(d1, d2) <= 0.1);
    if (d1 < d2) ++first;
  }
  const double phat = static_cast<double>(first) / n;
  CHECK(std::abs(phat - 0.5) <= 3.0 * std::sqrt(0.25 / n));

  CHECK_THROWS_AS(make_wrapped_mixture({}, Vector()), std::domain_error);
}

TEST_CASE("five-component configuration stays in the ball") {
  const std::vector<std::pair<double, double>> means{
      {0.0, -0.5}, {0.0, 0.5}, {0.5, 0.0}, {-0.5, 0.0}, {0.0, 0.1}};
  std::vector<WrappedNormal> comps;
  for (const auto& [x, y] : means) {
    Vector b(2);
    b << x, y;
    comps.push_back(make_wrapped_normal_iso(to_lorentz(make_poincare(b)), 0.01));
  }
  const WrappedMixture mix = make_wrapped_mixture(std::move(comps), Vector::Constant(5, 0.2));
  const Matrix pts = sample_mixture(mix, 2000, 8);
  for (int i = 0; i < pts.rows(); ++i) {
    CHECK(to_ball(LorentzPoint{pts.row(i).transpose()}).coords.norm() < 1.0);
  }
}
