#pragma once

#include <Eigen/Core>

#include <stdexcept>

namespace hypersw {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Tolerance for accepting points as lying on a manifold. Produced points are
// renormalized to machine precision after every manifold-producing operation.
inline constexpr double kOnManifoldTol = 1e-6;

// Point on the upper hyperboloid sheet: <x,x> = -1 (Minkowski), x[0] > 0.
// Stored as the d+1 ambient coordinates.
struct LorentzPoint {
  Vector coords;
  int dim() const { return static_cast<int>(coords.size()) - 1; }
};

// Point of the open unit ball, d coordinates.
struct PoincarePoint {
  Vector coords;
  int dim() const { return static_cast<int>(coords.size()); }
};

// Unit vector of S^{d-1}. Indexes a geodesic through the origin: on the
// hyperboloid via the lift (0, unit), on the ball as an ideal boundary point.
struct Direction {
  Vector unit;
  int dim() const { return static_cast<int>(unit.size()); }
  Vector lift() const {
    Vector v(unit.size() + 1);
    v[0] = 0.0;
    v.tail(unit.size()) = unit;
    return v;
  }
};

// Tangent vector at a hyperboloid point: <vec, base> = 0 (Minkowski).
struct TangentVector {
  Vector base;  // ambient coordinates of the foot point
  Vector vec;
};

// Minkowski (signature -,+,...,+) bilinear form.
double minkowski_inner(const Vector& x, const Vector& y);

// <x,x> of the Minkowski form; negative for timelike vectors.
double minkowski_norm2(const Vector& x);

// Validation helpers; throw std::domain_error / std::invalid_argument.
void check_lorentz(const Vector& coords);
void check_poincare(const Vector& coords);

// Rescale onto the hyperboloid: x / sqrt(-<x,x>).
Vector renormalize_lorentz(Vector coords);

LorentzPoint lorentz_origin(int d);
LorentzPoint make_lorentz(Vector coords);      // validates, then renormalizes
PoincarePoint make_poincare(Vector coords);    // validates strict interior
Direction make_direction(Vector unit);         // validates, then normalizes

double lorentz_distance(const LorentzPoint& x, const LorentzPoint& y);
double poincare_distance(const PoincarePoint& x, const PoincarePoint& y);

PoincarePoint to_ball(const LorentzPoint& x);
LorentzPoint to_lorentz(const PoincarePoint& x);

// gamma(t) = cosh(t) x0 + sinh(t) (0, v): unit-speed geodesic through the
// origin of the hyperboloid.
LorentzPoint geodesic_point(const Direction& v, double t);

// Transport of a tangent vector along the geodesic from its foot point to y.
TangentVector parallel_transport(const TangentVector& v, const LorentzPoint& y);

// Exponential map on the hyperboloid; v must be tangent at x. A zero vector
// maps to x itself.
LorentzPoint exp_lorentz(const LorentzPoint& x, const Vector& v);

// Inverse of exp_lorentz: the tangent u at mu with exp_mu(u) = x.
Vector log_lorentz(const LorentzPoint& mu, const LorentzPoint& x);

// Exponential map on the ball, normalized so that the image lies at
// hyperbolic distance |v|_2 from x. At the origin: tanh(|v|/2) v/|v|.
PoincarePoint exp_poincare(const PoincarePoint& x, const Vector& v);

// Gyrovector translation a (+) b of the ball; T_a = mobius_add(a, .) is the
// isometry moving the origin to a.
Vector mobius_add(const Vector& a, const Vector& b);

}  // namespace hypersw
