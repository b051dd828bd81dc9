#include "hypersw/manifold.hpp"

#include <cmath>

namespace hypersw {

namespace {

// sinh(t)/t with a series branch near zero.
double sinhc(double t) {
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 1.0 + t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sinh(t) / t;
}

}  // namespace

double minkowski_inner(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("minkowski_inner: dimension mismatch");
  }
  if (x.size() < 2) {
    throw std::invalid_argument("minkowski_inner: need at least 2 coordinates");
  }
  return -x[0] * y[0] + x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

double minkowski_norm2(const Vector& x) {
  return -x[0] * x[0] + x.tail(x.size() - 1).squaredNorm();
}

void check_lorentz(const Vector& coords) {
  if (coords.size() < 2) {
    throw std::invalid_argument("lorentz point: need at least 2 coordinates");
  }
  if (!coords.allFinite()) {
    throw std::domain_error("lorentz point: non-finite coordinates");
  }
  if (coords[0] <= 0.0) {
    throw std::domain_error("lorentz point: first coordinate must be positive");
  }
  // Absolute tolerance scaled by the coordinate magnitude: the quadratic form
  // of a far point cancels ~|x|^2 sized terms.
  const double scale = std::max(1.0, coords.squaredNorm());
  if (std::abs(minkowski_norm2(coords) + 1.0) > kOnManifoldTol * scale) {
    throw std::domain_error("lorentz point: not on the hyperboloid");
  }
}

void check_poincare(const Vector& coords) {
  if (coords.size() < 1) {
    throw std::invalid_argument("poincare point: need at least 1 coordinate");
  }
  if (!coords.allFinite()) {
    throw std::domain_error("poincare point: non-finite coordinates");
  }
  if (coords.norm() >= 1.0) {
    throw std::domain_error("poincare point: not strictly inside the unit ball");
  }
}

Vector renormalize_lorentz(Vector coords) {
  const double q = -minkowski_norm2(coords);
  if (q > 0.0 && std::isfinite(q)) {
    coords /= std::sqrt(q);
  }
  return coords;
}

LorentzPoint lorentz_origin(int d) {
  Vector c = Vector::Zero(d + 1);
  c[0] = 1.0;
  return LorentzPoint{std::move(c)};
}

LorentzPoint make_lorentz(Vector coords) {
  check_lorentz(coords);
  return LorentzPoint{renormalize_lorentz(std::move(coords))};
}

PoincarePoint make_poincare(Vector coords) {
  check_poincare(coords);
  return PoincarePoint{std::move(coords)};
}

Direction make_direction(Vector unit) {
  if (unit.size() < 1) {
    throw std::invalid_argument("direction: need at least 1 coordinate");
  }
  const double n = unit.norm();
  if (!std::isfinite(n) || n < 1e-12) {
    throw std::domain_error("direction: vector has no usable norm");
  }
  unit /= n;
  return Direction{std::move(unit)};
}

double lorentz_distance(const LorentzPoint& x, const LorentzPoint& y) {
  check_lorentz(x.coords);
  check_lorentz(y.coords);
  if (x.coords.size() != y.coords.size()) {
    throw std::invalid_argument("lorentz_distance: dimension mismatch");
  }
  // arccosh(-<x,y>) evaluated as 2 asinh(|x-y|_M / 2): the difference vector
  // keeps full precision for nearby points where -<x,y> rounds to 1.
  const double q = std::max(0.0, minkowski_norm2(x.coords - y.coords));
  return 2.0 * std::asinh(0.5 * std::sqrt(q));
}

double poincare_distance(const PoincarePoint& x, const PoincarePoint& y) {
  check_poincare(x.coords);
  check_poincare(y.coords);
  if (x.coords.size() != y.coords.size()) {
    throw std::invalid_argument("poincare_distance: dimension mismatch");
  }
  const double r = (x.coords - y.coords).squaredNorm() /
                   ((1.0 - x.coords.squaredNorm()) * (1.0 - y.coords.squaredNorm()));
  return 2.0 * std::asinh(std::sqrt(std::max(0.0, r)));
}

PoincarePoint to_ball(const LorentzPoint& x) {
  check_lorentz(x.coords);
  Vector b = x.coords.tail(x.dim()) / (1.0 + x.coords[0]);
  // Round-off at the far end of the sheet may land exactly on the sphere.
  const double n = b.norm();
  if (n >= 1.0) {
    b *= (1.0 - 1e-16) / n;
  }
  return PoincarePoint{std::move(b)};
}

LorentzPoint to_lorentz(const PoincarePoint& x) {
  check_poincare(x.coords);
  const double s = x.coords.squaredNorm();
  Vector y(x.coords.size() + 1);
  y[0] = (1.0 + s) / (1.0 - s);
  y.tail(x.coords.size()) = 2.0 * x.coords / (1.0 - s);
  return LorentzPoint{renormalize_lorentz(std::move(y))};
}

LorentzPoint geodesic_point(const Direction& v, double t) {
  Vector g = v.lift() * std::sinh(t);
  g[0] = std::cosh(t);
  return LorentzPoint{renormalize_lorentz(std::move(g))};
}

TangentVector parallel_transport(const TangentVector& v, const LorentzPoint& y) {
  check_lorentz(v.base);
  check_lorentz(y.coords);
  const double xy = minkowski_inner(v.base, y.coords);
  const double yv = minkowski_inner(y.coords, v.vec);
  Vector w = v.vec + (yv / (1.0 - xy)) * (v.base + y.coords);
  // Re-project onto the destination tangent space to absorb round-off.
  w += minkowski_inner(y.coords, w) * y.coords;
  return TangentVector{y.coords, std::move(w)};
}

LorentzPoint exp_lorentz(const LorentzPoint& x, const Vector& v) {
  check_lorentz(x.coords);
  if (v.size() != x.coords.size()) {
    throw std::invalid_argument("exp_lorentz: dimension mismatch");
  }
  double q = minkowski_norm2(v);
  if (q <= 0.0) {
    if (q < -1e-10 * std::max(1.0, v.squaredNorm())) {
      throw std::domain_error("exp_lorentz: vector is not spacelike");
    }
    q = 0.0;
  }
  const double r = std::sqrt(q);
  if (r == 0.0) {
    return x;
  }
  Vector out = std::cosh(r) * x.coords + sinhc(r) * v;
  return LorentzPoint{renormalize_lorentz(std::move(out))};
}

Vector log_lorentz(const LorentzPoint& mu, const LorentzPoint& x) {
  const double r = lorentz_distance(mu, x);
  if (r < 1e-14) {
    return Vector::Zero(mu.coords.size());
  }
  Vector w = x.coords + minkowski_inner(mu.coords, x.coords) * mu.coords;
  const double wn = std::sqrt(std::max(0.0, minkowski_norm2(w)));
  if (wn == 0.0) {
    return Vector::Zero(mu.coords.size());
  }
  return (r / wn) * w;
}

Vector mobius_add(const Vector& a, const Vector& b) {
  const double ab = a.dot(b);
  const double na = a.squaredNorm();
  const double nb = b.squaredNorm();
  const double den = 1.0 + 2.0 * ab + na * nb;
  return ((1.0 + 2.0 * ab + nb) * a + (1.0 - na) * b) / den;
}

PoincarePoint exp_poincare(const PoincarePoint& x, const Vector& v) {
  check_poincare(x.coords);
  if (v.size() != x.coords.size()) {
    throw std::invalid_argument("exp_poincare: dimension mismatch");
  }
  const double nv = v.norm();
  if (nv == 0.0) {
    return x;
  }
  Vector out = mobius_add(x.coords, std::tanh(0.5 * nv) / nv * v);
  const double n = out.norm();
  if (n >= 1.0) {
    out *= (1.0 - 1e-16) / n;
  }
  return PoincarePoint{std::move(out)};
}

}  // namespace hypersw
