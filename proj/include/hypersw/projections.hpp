#pragma once

#include "hypersw/manifold.hpp"

namespace hypersw {

// Closest-point projection of x onto the origin-geodesic indexed by v.
LorentzPoint geodesic_project(const LorentzPoint& x, const Direction& v);

// Signed unit-speed coordinate of the geodesic projection of x, i.e. the
// parameter t with geodesic_point(v, t) == geodesic_project(x, v).
double geodesic_coordinate(const LorentzPoint& x, const Direction& v);
double geodesic_coordinate(const PoincarePoint& x, const Direction& v);

// Busemann function of the geodesic ray toward the ideal point of v.
double busemann_lorentz(const LorentzPoint& x, const Direction& v);
double busemann_ball(const PoincarePoint& x, const Direction& v);

// Projection of x onto the origin-geodesic along the horosphere through x,
// i.e. the point of the geodesic with the same Busemann value.
LorentzPoint horo_project_lorentz(const LorentzPoint& x, const Direction& v);
PoincarePoint horo_project_ball(const PoincarePoint& x, const Direction& v);

// Signed coordinate of the horospherical projection. Computed directly as
// -B_v(x); the explicit projection above is never evaluated on this path.
double horo_coordinate(const LorentzPoint& x, const Direction& v);
double horo_coordinate(const PoincarePoint& x, const Direction& v);

}  // namespace hypersw
