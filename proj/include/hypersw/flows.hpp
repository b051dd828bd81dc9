#pragma once

#include "hypersw/sliced.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypersw {

// Uniform atoms of the optimized measure, one ambient row per particle.
struct ParticleCloud {
  Model model = Model::Lorentz;
  Matrix points;
  int size() const { return static_cast<int>(points.rows()); }
};

struct FlowConfig {
  SliceLoss loss = SliceLoss::GHSW;
  double learning_rate = 5.0;
  int iterations = 2000;
  int num_projections = 1000;
  int batch_size = 500;
  std::uint64_t seed = 0;
  Model model = Model::Lorentz;
  double order = 2.0;
  int log_every = 50;
  // Stop as soon as a logged exact W2 falls at or below this value (absolute)
  // or below this fraction of the first logged W2 (relative); zero disables.
  double stop_when_w2_below = 0.0;
  double stop_when_w2_ratio_below = 0.0;
  bool poincare_exact_exp = false;
  bool record_snapshots = false;
  int threads = 1;
};

struct GradResult {
  double value;  // the sliced W_p^p estimate at the current particles
  Matrix grad;   // one row per particle, ambient coordinates
};

// Derivative of the sliced loss with respect to the ambient coordinates of
// every particle, directions held fixed by cfg.seed. Analytic adjoint of the
// project -> sort -> quantile pipeline; requires equal-size uniform supports
// so the sorted matching is the exact optimal coupling. Ties are matched by
// stable sort on (coordinate, original index).
GradResult euclidean_grad(SliceLoss loss, const ParticleCloud& particles,
                          const DiscreteMeasure& target_batch, const SlicedConfig& cfg);

// Euclidean-to-Riemannian gradient conversion on each model.
TangentVector riemannian_grad_lorentz(const LorentzPoint& x, const Vector& g);
Vector riemannian_grad_poincare(const PoincarePoint& x, const Vector& g);

// One descent step. The Lorentz step is the exponential map of -lr * tangent;
// the ball step retracts x - lr * g and pulls escapees back to radius
// 1 - kBallProjEps, or uses the exponential map when exact_exp is set.
LorentzPoint step_lorentz(const LorentzPoint& x, const TangentVector& tangent, double lr);
PoincarePoint step_poincare(const PoincarePoint& x, const Vector& riem_grad, double lr,
                            bool exact_exp = false);

inline constexpr double kBallProjEps = 1e-5;

// Abort threshold: a single step of hyperbolic length beyond this indicates a
// diverging run and is reported instead of producing non-finite coordinates.
inline constexpr double kStepNormCap = 50.0;

class FlowBlowupError : public std::runtime_error {
 public:
  FlowBlowupError(int iteration, const std::string& message)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + message),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

struct FlowRow {
  int iter;
  double w2_exact;
  double loss_estimate;
  double wallclock_ms;
};

struct FlowResult {
  ParticleCloud particles;
  std::vector<FlowRow> log;
  std::vector<Matrix> snapshots;  // filled when cfg.record_snapshots
};

// Draws `n` target rows in cfg.model coordinates for a derived seed.
using TargetSampler = std::function<Matrix(int n, std::uint64_t seed)>;

// Riemannian gradient descent of the sliced loss toward the target. Particles
// start from a near-origin wrapped normal under the run seed unless
// `initial_particles` is given. Logs the exact W2 to a fixed reference draw
// of the target every cfg.log_every iterations.
FlowResult run_flow(const TargetSampler& target, const FlowConfig& cfg,
                    const std::function<void(const FlowRow&)>& on_log = {},
                    const Matrix* initial_particles = nullptr);

}  // namespace hypersw
