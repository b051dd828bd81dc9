#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hypersw/projections.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace hypersw;

namespace {

Direction unit2(double a, double b) {
  Vector v(2);
  v << a, b;
  return make_direction(v);
}

}  // namespace

TEST_CASE("geodesic projection fixes the geodesic and maps orthogonal points to the origin") {
  const Direction e1 = unit2(1, 0);
  for (double t : {-3.0, -0.5, 0.0, 1.7, 4.0}) {
    const LorentzPoint g = geodesic_point(e1, t);
    CHECK((geodesic_project(g, e1).coords - g.coords).norm() <= 1e-10 * g.coords.norm());
  }
  Vector x(3);
  x << std::sqrt(2.0), 0.0, 1.0;
  const LorentzPoint proj = geodesic_project(make_lorentz(x), e1);
  CHECK((proj.coords - lorentz_origin(2).coords).norm() <= 1e-12);
}

TEST_CASE("geodesic projection matches the grid-search minimizer") {
  auto eng = make_engine(41);
  for (int d : {2, 10}) {
    for (int k = 0; k < 20; ++k) {
      const Vector x = oracles::random_lorentz(d, eng, 1.2);
      const Vector v = oracles::random_unit(d, eng);
      const double closed = geodesic_coordinate(LorentzPoint{x}, Direction{v});
      const double grid = oracles::grid_argmin_coordinate(x, v, -12.0, 12.0, 1e-4);
      CHECK(std::abs(closed - grid) <= 1e-3);
    }
  }
}

TEST_CASE("geodesic projection minimizes the distance to the geodesic") {
  auto eng = make_engine(43);
  std::uniform_real_distribution<double> unif(-6.0, 6.0);
  for (int k = 0; k < 30; ++k) {
    const LorentzPoint x{oracles::random_lorentz(2, eng, 1.2)};
    const Direction v{oracles::random_unit(2, eng)};
    const LorentzPoint p = geodesic_project(x, v);
    const double dp = lorentz_distance(x, p);
    for (int j = 0; j < 50; ++j) {
      CHECK(dp <= lorentz_distance(x, geodesic_point(v, unif(eng))) + 1e-10);
    }
    // Idempotence.
    CHECK((geodesic_project(p, v).coords - p.coords).norm() <= 1e-9 * p.coords.norm());
  }
}

TEST_CASE("geodesic coordinate identities") {
  const Direction e1 = unit2(1, 0);
  CHECK(geodesic_coordinate(lorentz_origin(2), e1) == 0.0);
  for (double t : {-3.0, -1.0, 0.5, 4.0}) {
    CHECK_NEAR(geodesic_coordinate(geodesic_point(e1, t), e1), t, 1e-10);
  }
  auto eng = make_engine(47);
  for (int k = 0; k < 300; ++k) {
    const LorentzPoint x{oracles::random_lorentz(3, eng, 1.5)};
    const Direction v{oracles::random_unit(3, eng)};
    const double t = geodesic_coordinate(x, v);
    // Antipodal direction flips the sign.
    CHECK_NEAR(geodesic_coordinate(x, Direction{-v.unit}), -t, 1e-12);
    // Equals the signed distance of the projected point from the origin.
    const LorentzPoint p = geodesic_project(x, v);
    const double sign = p.coords.tail(3).dot(v.unit) >= 0.0 ? 1.0 : -1.0;
    const double composed = sign * lorentz_distance(p, lorentz_origin(3));
    CHECK_NEAR(t, composed, 1e-9);
    // Ball-side formula agrees through the conversion.
    CHECK_NEAR(geodesic_coordinate(to_ball(x), v), t, 1e-9);
  }
}

TEST_CASE("denominator of the projection stays above one") {
  auto eng = make_engine(53);
  for (int k = 0; k < 100000; ++k) {
    const Vector x = oracles::random_lorentz(3, eng, 1.5);
    const Vector v = oracles::random_unit(3, eng);
    const double a = v.dot(x.tail(3));
    CHECK(x[0] * x[0] - a * a >= 1.0 - 1e-9);
  }
}

TEST_CASE("busemann function on the hyperboloid") {
  const Direction e1 = unit2(1, 0);
  CHECK(busemann_lorentz(lorentz_origin(2), e1) == 0.0);
  for (double t : {-4.0, -1.0, 0.5, 3.0}) {
    CHECK_NEAR(busemann_lorentz(geodesic_point(e1, t), e1), -t, 1e-12);
  }
  auto eng = make_engine(59);
  for (int k = 0; k < 1000; ++k) {
    const LorentzPoint x{oracles::random_lorentz(2, eng, 1.5)};
    const LorentzPoint y{oracles::random_lorentz(2, eng, 1.5)};
    const Direction v{oracles::random_unit(2, eng)};
    CHECK(std::abs(busemann_lorentz(x, v) - busemann_lorentz(y, v)) <=
          lorentz_distance(x, y) + 1e-12);
  }
}

TEST_CASE("busemann function on the ball") {
  const Direction e1 = unit2(1, 0);
  CHECK(busemann_ball(make_poincare(Vector::Zero(2)), e1) == 0.0);
  for (double r : {-0.8, -0.25, 0.1, 0.9}) {
    Vector x(2);
    x << r, 0.0;
    CHECK_NEAR(busemann_ball(make_poincare(x), e1), -2.0 * std::atanh(r), 1e-12);
  }
  auto eng = make_engine(61);
  std::uniform_real_distribution<double> unif(0.0, 0.95);
  for (int k = 0; k < 1000; ++k) {
    const PoincarePoint x{unif(eng) * oracles::random_unit(3, eng)};
    const Direction v{oracles::random_unit(3, eng)};
    CHECK_NEAR(busemann_ball(x, v), busemann_lorentz(to_lorentz(x), v), 1e-9);
  }
}

TEST_CASE("horospherical projection preserves the busemann value") {
  const Direction e1 = unit2(1, 0);
  CHECK((horo_project_lorentz(lorentz_origin(2), e1).coords - lorentz_origin(2).coords).norm() <=
        1e-12);
  for (double t : {-2.0, 0.4, 3.0}) {
    const LorentzPoint g = geodesic_point(e1, t);
    CHECK((horo_project_lorentz(g, e1).coords - g.coords).norm() <= 1e-9 * g.coords.norm());
  }
  auto eng = make_engine(67);
  for (int k = 0; k < 1000; ++k) {
    const LorentzPoint x{oracles::random_lorentz(3, eng, 1.5)};
    const Direction v{oracles::random_unit(3, eng)};
    const LorentzPoint p = horo_project_lorentz(x, v);
    CHECK_NEAR(busemann_lorentz(p, v), busemann_lorentz(x, v), 1e-9);
    // Idempotence.
    CHECK((horo_project_lorentz(p, v).coords - p.coords).norm() <= 1e-9 * p.coords.norm());
    // The coordinate shortcut equals the explicit projection's coordinate.
    CHECK_NEAR(horo_coordinate(x, v), geodesic_coordinate(p, v), 1e-9);
  }
}

TEST_CASE("horospherical projection on the ball commutes with the conversion") {
  const Direction e1 = unit2(1, 0);
  const PoincarePoint o = make_poincare(Vector::Zero(2));
  CHECK(horo_project_ball(o, e1).coords.norm() == 0.0);
  Vector x(2);
  x << 0.37, 0.0;
  CHECK((horo_project_ball(make_poincare(x), e1).coords - x).norm() <= 1e-12);

  auto eng = make_engine(71);
  std::uniform_real_distribution<double> unif(0.0, 0.95);
  for (int k = 0; k < 1000; ++k) {
    const PoincarePoint b{unif(eng) * oracles::random_unit(2, eng)};
    const Direction v{oracles::random_unit(2, eng)};
    const PoincarePoint pb = horo_project_ball(b, v);
    CHECK((to_lorentz(pb).coords - horo_project_lorentz(to_lorentz(b), v).coords).norm() <= 1e-8);
    CHECK((horo_project_ball(pb, v).coords - pb.coords).norm() <= 1e-9);
    CHECK_NEAR(horo_coordinate(b, v), horo_coordinate(to_lorentz(b), v), 1e-9);
  }
}

TEST_CASE("horospherical coordinate of geodesic points") {
  const Direction e1 = unit2(1, 0);
  CHECK(horo_coordinate(lorentz_origin(2), e1) == 0.0);
  for (double t : {-3.0, 0.25, 2.0}) {
    CHECK_NEAR(horo_coordinate(geodesic_point(e1, t), e1), t, 1e-12);
  }
}
