#include "hypersw/projections.hpp"

#include <cassert>
#include <cfloat>
#include <cmath>

namespace hypersw {

namespace {

void check_direction_for(const Direction& v, int d, const char* what) {
  if (v.dim() != d) {
    throw std::invalid_argument(std::string(what) + ": direction dimension mismatch");
  }
}

}  // namespace

LorentzPoint geodesic_project(const LorentzPoint& x, const Direction& v) {
  check_lorentz(x.coords);
  check_direction_for(v, x.dim(), "geodesic_project");
  const double x0 = x.coords[0];                      // = -<x, origin>_M
  const double a = v.unit.dot(x.coords.tail(x.dim()));  // = <x, lift(v)>_M
  const double den2 = x0 * x0 - a * a;
  // On the hyperboloid x0^2 - a^2 >= 1 by Cauchy-Schwarz on the space part.
  assert(den2 >= 1.0 - 1e-9);
  const double s = std::sqrt(std::max(den2, DBL_MIN));
  Vector out = (a / s) * v.lift();
  out[0] = x0 / s;
  return LorentzPoint{renormalize_lorentz(std::move(out))};
}

double geodesic_coordinate(const LorentzPoint& x, const Direction& v) {
  check_lorentz(x.coords);
  check_direction_for(v, x.dim(), "geodesic_coordinate");
  const double u = v.unit.dot(x.coords.tail(x.dim())) / x.coords[0];
  return std::atanh(std::clamp(u, -1.0 + DBL_EPSILON, 1.0 - DBL_EPSILON));
}

double geodesic_coordinate(const PoincarePoint& x, const Direction& v) {
  check_poincare(x.coords);
  check_direction_for(v, x.dim(), "geodesic_coordinate");
  const double u = 2.0 * v.unit.dot(x.coords) / (1.0 + x.coords.squaredNorm());
  return std::atanh(std::clamp(u, -1.0 + DBL_EPSILON, 1.0 - DBL_EPSILON));
}

double busemann_lorentz(const LorentzPoint& x, const Direction& v) {
  check_lorentz(x.coords);
  check_direction_for(v, x.dim(), "busemann_lorentz");
  // -<x, origin + lift(v)> = x0 - <space part, v>; positive on the sheet but
  // guarded against round-off at extreme points.
  const double arg = x.coords[0] - v.unit.dot(x.coords.tail(x.dim()));
  return std::log(std::max(arg, DBL_MIN));
}

double busemann_ball(const PoincarePoint& x, const Direction& v) {
  check_poincare(x.coords);
  check_direction_for(v, x.dim(), "busemann_ball");
  const double arg = (v.unit - x.coords).squaredNorm() / (1.0 - x.coords.squaredNorm());
  return std::log(std::max(arg, DBL_MIN));
}

LorentzPoint horo_project_lorentz(const LorentzPoint& x, const Direction& v) {
  check_lorentz(x.coords);
  check_direction_for(v, x.dim(), "horo_project_lorentz");
  const double c = v.unit.dot(x.coords.tail(x.dim())) - x.coords[0];  // <x, origin + lift(v)>_M
  const double u = (1.0 + c) / (1.0 - c);
  assert(std::abs(u) < 1.0);
  const double den = 1.0 - u * u;
  Vector out = (2.0 * u / den) * v.lift();
  out[0] = (1.0 + u * u) / den;
  return LorentzPoint{renormalize_lorentz(std::move(out))};
}

PoincarePoint horo_project_ball(const PoincarePoint& x, const Direction& v) {
  check_poincare(x.coords);
  check_direction_for(v, x.dim(), "horo_project_ball");
  const double nx = x.coords.squaredNorm();
  const double nvx = (v.unit - x.coords).squaredNorm();
  const double lambda = (1.0 - nx - nvx) / (1.0 - nx + nvx);
  return PoincarePoint{lambda * v.unit};
}

double horo_coordinate(const LorentzPoint& x, const Direction& v) {
  return -busemann_lorentz(x, v);
}

double horo_coordinate(const PoincarePoint& x, const Direction& v) {
  return -busemann_ball(x, v);
}

}  // namespace hypersw
