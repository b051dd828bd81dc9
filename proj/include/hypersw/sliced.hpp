#pragma once

#include "hypersw/manifold.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace hypersw {

enum class Model { Lorentz, Poincare };

// Weighted point cloud on one hyperbolic model. One row per atom: d+1
// ambient columns on the Lorentz model, d on the ball.
struct DiscreteMeasure {
  Model model = Model::Lorentz;
  Matrix points;
  Vector weights;
  int size() const { return static_cast<int>(points.rows()); }
  int dim() const {
    return static_cast<int>(model == Model::Lorentz ? points.cols() - 1 : points.cols());
  }
};

DiscreteMeasure make_measure(Model model, Matrix points, Vector weights);
DiscreteMeasure make_uniform_measure(Model model, Matrix points);
DiscreteMeasure convert_measure(const DiscreteMeasure& m, Model target);

struct SlicedConfig {
  int num_projections = 50;
  double order = 2.0;
  std::uint64_t seed = 0;
  Model model = Model::Lorentz;  // evaluation model for HHSW / euclidean SW
  int threads = 1;
};

// Exact W_p^p between weighted samples on the line, O(n log n) via the merged
// quantile ladder of the two cumulative-weight staircases.
double wasserstein_1d(const Vector& a_values, const Vector& a_weights,
                      const Vector& b_values, const Vector& b_weights, double p);

// L unit vectors of S^{dim-1}, one row each; deterministic in the seed and
// marginally uniform on the sphere.
Matrix sample_sphere(int dim, int L, std::uint64_t seed);
std::vector<Direction> sample_directions(int d, int L, std::uint64_t seed);

enum class SliceLoss { GHSW, HHSW, SWL, SWP };

// Ambient dimension of the direction vectors used by a loss on a model.
int direction_dim(SliceLoss loss, Model model, int d);

// 1D coordinates of every row of `points` (given in `model` coordinates)
// along one direction. Pure closed forms; no manifold validation.
void slice_coords(SliceLoss loss, Model model, const Matrix& points,
                  const Eigen::Ref<const Vector>& dir, Vector& out);

// Mean over the given directions of the per-slice W_p^p. Bit-identical for
// every thread count: slices are reduced in a fixed block order.
double sliced_discrepancy(SliceLoss loss, const DiscreteMeasure& mu,
                          const DiscreteMeasure& nu, const Matrix& directions,
                          double p, int threads = 1);

// Monte-Carlo sliced discrepancies. All return the mean W_p^p (the p-th
// power); p_root() gives the distance-like value.
double ghsw(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const SlicedConfig& cfg);
double hhsw(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const SlicedConfig& cfg);
double euclidean_sw(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const SlicedConfig& cfg);

inline double p_root(double wpp, double p) {
  return std::pow(std::max(wpp, 0.0), 1.0 / p);
}

// Cap on the exact reference solver, which is cubic in the support size.
inline constexpr int kExactSupportCap = 2000;

// Exact W_p^p under the model's geodesic metric, solved as an optimal
// assignment. Requires uniform weights and equal support sizes.
double wasserstein_geodesic_ref(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p);

// Minimum-cost perfect matching value of a square cost matrix.
double assignment_min_cost(const Matrix& cost);

}  // namespace hypersw
