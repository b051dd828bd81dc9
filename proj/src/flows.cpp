#include "hypersw/flows.hpp"

#include "hypersw/distributions.hpp"
#include "hypersw/parallel.hpp"
#include "hypersw/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace hypersw {

namespace {

constexpr std::uint64_t kInitStream = 0xf10a;
constexpr std::uint64_t kRefStream = 0xf10b;
constexpr std::uint64_t kBatchStreamBase = 0x100000;
constexpr std::uint64_t kDirStreamBase = 0x200000;

// Gradient of the per-slice coordinate map with respect to the ambient
// coordinates of one point (given as a contiguous column), written into `out`.
void coord_grad(SliceLoss loss, Model model, const Eigen::Ref<const Vector>& x,
                const Vector& dir, Vector& out) {
  if (model == Model::Lorentz) {
    const Eigen::Index d = x.size() - 1;
    switch (loss) {
      case SliceLoss::GHSW: {
        const double a = x.tail(d).dot(dir);
        const double u = a / x[0];
        const double f = 1.0 / ((1.0 - u * u) * x[0]);
        out[0] = -u * f;
        out.tail(d) = f * dir;
        break;
      }
      case SliceLoss::HHSW: {
        const double w = x[0] - x.tail(d).dot(dir);
        out[0] = -1.0 / w;
        out.tail(d) = dir / w;
        break;
      }
      case SliceLoss::SWL:
        out = dir;
        break;
      case SliceLoss::SWP: {
        const double s = x.tail(d).dot(dir);
        const double c = 1.0 + x[0];
        out[0] = -s / (c * c);
        out.tail(d) = dir / c;
        break;
      }
    }
  } else {
    const Eigen::Index d = x.size();
    switch (loss) {
      case SliceLoss::GHSW: {
        const double s = x.dot(dir);
        const double q = 1.0 + x.squaredNorm();
        const double u = 2.0 * s / q;
        out = (2.0 / q) * dir - (4.0 * s / (q * q)) * x;
        out /= 1.0 - u * u;
        break;
      }
      case SliceLoss::HHSW: {
        out = dir - x;
        out *= 2.0 / out.squaredNorm();
        out -= (2.0 / (1.0 - x.squaredNorm())) * x;
        break;
      }
      case SliceLoss::SWP:
        out = dir;
        break;
      case SliceLoss::SWL: {
        const double n2 = x.squaredNorm();
        const double den = 1.0 - n2;
        const double num = dir[0] * (1.0 + n2) + 2.0 * x.dot(dir.tail(d));
        out = (2.0 / den) * dir.tail(d);
        out += (2.0 * dir[0] / den + 2.0 * num / (den * den)) * x;
        break;
      }
    }
  }
}

// (value, original index) pairs ordered lexicographically: the pair order is
// the stable tie rule for the sorted matching.
void sorted_with_index(const Vector& v, std::vector<std::pair<double, int>>& out) {
  out.resize(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = {v[i], static_cast<int>(i)};
  std::sort(out.begin(), out.end());
}

Vector lorentz_riem_grad_row(const Vector& x, const Vector& g) {
  Vector jg = g;
  jg[0] = -jg[0];
  return jg + minkowski_inner(x, jg) * x;
}

}  // namespace

GradResult euclidean_grad(SliceLoss loss, const ParticleCloud& particles,
                          const DiscreteMeasure& target_batch, const SlicedConfig& cfg) {
  if (particles.model != target_batch.model) {
    throw std::domain_error("euclidean_grad: particles and target on different models");
  }
  if (particles.points.cols() != target_batch.points.cols()) {
    throw std::invalid_argument("euclidean_grad: dimension mismatch");
  }
  const int n = particles.size();
  if (n == 0 || target_batch.size() != n) {
    throw std::invalid_argument("euclidean_grad: equal-size supports required");
  }
  const double u = 1.0 / n;
  if ((target_batch.weights.array() - u).abs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("euclidean_grad: uniform target weights required");
  }
  const double p = cfg.order;
  if (!(p >= 1.0)) {
    throw std::domain_error("euclidean_grad: order p must be >= 1");
  }
  const Model model = particles.model;
  const int d =
      model == Model::Lorentz ? static_cast<int>(particles.points.cols()) - 1
                              : static_cast<int>(particles.points.cols());
  const Matrix dirs = sample_sphere(direction_dim(loss, model, d), cfg.num_projections, cfg.seed);
  const int L = static_cast<int>(dirs.rows());
  const int dim = static_cast<int>(particles.points.cols());
  // Column-per-point copy so the per-particle gradient reads are contiguous.
  const Matrix pts_t = particles.points.transpose();

  constexpr int kBlock = 16;
  const int blocks = num_blocks(L, kBlock);
  std::vector<Matrix> block_grad(blocks);
  std::vector<double> slice_val(L);

  parallel_blocks(L, kBlock, cfg.threads, [&](int b, int begin, int end) {
    Matrix G = Matrix::Zero(dim, n);
    Vector cx, cy, cg(dim);
    std::vector<std::pair<double, int>> sx;
    std::vector<double> sy;
    for (int l = begin; l < end; ++l) {
      const Vector dir = dirs.row(l).transpose();
      slice_coords(loss, model, particles.points, dir, cx);
      slice_coords(loss, model, target_batch.points, dir, cy);
      sorted_with_index(cx, sx);
      sy.assign(cy.data(), cy.data() + cy.size());
      std::sort(sy.begin(), sy.end());
      double wpp = 0.0;
      for (int k = 0; k < n; ++k) {
        const int i = sx[k].second;
        const double diff = sx[k].first - sy[k];
        const double a = std::abs(diff);
        double g1d;
        if (p == 2.0) {
          wpp += a * a;
          g1d = 2.0 * diff * u;
        } else if (p == 1.0) {
          wpp += a;
          g1d = (diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0)) * u;
        } else {
          wpp += std::pow(a, p);
          g1d = diff == 0.0 ? 0.0
                            : p * (diff > 0.0 ? 1.0 : -1.0) * std::pow(a, p - 1.0) * u;
        }
        if (g1d != 0.0) {
          coord_grad(loss, model, pts_t.col(i), dir, cg);
          G.col(i) += g1d * cg;
        }
      }
      slice_val[l] = wpp * u;
    }
    block_grad[b] = std::move(G);
  });

  GradResult res;
  res.value = 0.0;
  for (int l = 0; l < L; ++l) res.value += slice_val[l];
  res.value /= L;
  Matrix G = Matrix::Zero(dim, n);
  for (int b = 0; b < blocks; ++b) G += block_grad[b];
  res.grad = G.transpose() / L;
  return res;
}

TangentVector riemannian_grad_lorentz(const LorentzPoint& x, const Vector& g) {
  check_lorentz(x.coords);
  if (g.size() != x.coords.size()) {
    throw std::invalid_argument("riemannian_grad_lorentz: dimension mismatch");
  }
  return TangentVector{x.coords, lorentz_riem_grad_row(x.coords, g)};
}

Vector riemannian_grad_poincare(const PoincarePoint& x, const Vector& g) {
  check_poincare(x.coords);
  if (g.size() != x.coords.size()) {
    throw std::invalid_argument("riemannian_grad_poincare: dimension mismatch");
  }
  const double f = 1.0 - x.coords.squaredNorm();
  return (f * f / 4.0) * g;
}

LorentzPoint step_lorentz(const LorentzPoint& x, const TangentVector& tangent, double lr) {
  return exp_lorentz(x, (-lr) * tangent.vec);
}

PoincarePoint step_poincare(const PoincarePoint& x, const Vector& riem_grad, double lr,
                            bool exact_exp) {
  check_poincare(x.coords);
  if (exact_exp) {
    return exp_poincare(x, (-lr) * riem_grad);
  }
  Vector y = x.coords - lr * riem_grad;
  const double n = y.norm();
  if (n >= 1.0) {
    y *= (1.0 - kBallProjEps) / n;
  }
  return PoincarePoint{std::move(y)};
}

FlowResult run_flow(const TargetSampler& target, const FlowConfig& cfg,
                    const std::function<void(const FlowRow&)>& on_log,
                    const Matrix* initial_particles) {
  if (!(cfg.learning_rate > 0.0)) throw std::domain_error("run_flow: learning rate must be positive");
  if (cfg.iterations < 1) throw std::domain_error("run_flow: need at least one iteration");
  if (cfg.batch_size < 1) throw std::domain_error("run_flow: need at least one particle");
  if (cfg.num_projections < 1) throw std::domain_error("run_flow: need at least one projection");
  if (cfg.log_every < 1) throw std::domain_error("run_flow: log_every must be positive");

  const int n = cfg.batch_size;
  const Matrix ref_target = target(n, derive_seed(cfg.seed, kRefStream));
  const DiscreteMeasure ref_measure = make_uniform_measure(cfg.model, ref_target);
  const int d = ref_measure.dim();

  ParticleCloud cloud;
  cloud.model = cfg.model;
  if (initial_particles != nullptr) {
    cloud.points = *initial_particles;
    if (cloud.points.rows() != n || cloud.points.cols() != ref_target.cols()) {
      throw std::invalid_argument("run_flow: initial particle cloud has wrong shape");
    }
  } else {
    const WrappedNormal init = make_wrapped_normal_iso(lorentz_origin(d), 0.1);
    Matrix pts = sample_wnd(init, n, derive_seed(cfg.seed, kInitStream));
    cloud.points = cfg.model == Model::Lorentz
                       ? std::move(pts)
                       : convert_measure(make_uniform_measure(Model::Lorentz, pts), Model::Poincare)
                             .points;
  }

  FlowResult result;
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };
  auto log_state = [&](int iter, double loss_estimate) {
    const DiscreteMeasure current = make_uniform_measure(cfg.model, cloud.points);
    const double w2 = std::sqrt(wasserstein_geodesic_ref(current, ref_measure, 2.0));
    const FlowRow row{iter, w2, loss_estimate, elapsed_ms()};
    result.log.push_back(row);
    if (cfg.record_snapshots) result.snapshots.push_back(cloud.points);
    if (on_log) on_log(row);
  };

  SlicedConfig grad_cfg;
  grad_cfg.num_projections = cfg.num_projections;
  grad_cfg.order = cfg.order;
  grad_cfg.model = cfg.model;
  grad_cfg.threads = cfg.threads;

  for (int k = 0; k < cfg.iterations; ++k) {
    const Matrix batch = target(n, derive_seed(cfg.seed, kBatchStreamBase + k));
    const DiscreteMeasure batch_measure = make_uniform_measure(cfg.model, batch);
    grad_cfg.seed = derive_seed(cfg.seed, kDirStreamBase + k);

    GradResult g;
    try {
      g = euclidean_grad(cfg.loss, cloud, batch_measure, grad_cfg);
    } catch (const std::domain_error& e) {
      throw FlowBlowupError(k, e.what());
    }
    if (k == 0) log_state(0, g.value);

    try {
      if (cfg.model == Model::Lorentz) {
        for (int i = 0; i < n; ++i) {
          const Vector rg = lorentz_riem_grad_row(cloud.points.row(i).transpose(),
                                                  g.grad.row(i).transpose());
          const double sn =
              std::sqrt(std::max(0.0, minkowski_norm2(rg))) * cfg.learning_rate;
          if (!(sn <= kStepNormCap)) {
            throw FlowBlowupError(k, "step norm " + std::to_string(sn) + " exceeds cap");
          }
          cloud.points.row(i) =
              exp_lorentz(LorentzPoint{cloud.points.row(i).transpose()},
                          (-cfg.learning_rate) * rg)
                  .coords.transpose();
        }
      } else {
        for (int i = 0; i < n; ++i) {
          const PoincarePoint x{cloud.points.row(i).transpose()};
          const Vector rg = riemannian_grad_poincare(x, g.grad.row(i).transpose());
          if (!(cfg.learning_rate * rg.norm() <= kStepNormCap)) {
            throw FlowBlowupError(k, "step norm exceeds cap");
          }
          cloud.points.row(i) =
              step_poincare(x, rg, cfg.learning_rate, cfg.poincare_exact_exp)
                  .coords.transpose();
        }
      }
    } catch (const std::domain_error& e) {
      throw FlowBlowupError(k, e.what());
    }
    if (!cloud.points.allFinite()) {
      throw FlowBlowupError(k, "non-finite particle coordinate");
    }
    if ((k + 1) % cfg.log_every == 0 || k + 1 == cfg.iterations) {
      log_state(k + 1, g.value);
      const double w2 = result.log.back().w2_exact;
      if (cfg.stop_when_w2_below > 0.0 && w2 <= cfg.stop_when_w2_below) break;
      if (cfg.stop_when_w2_ratio_below > 0.0 &&
          w2 <= cfg.stop_when_w2_ratio_below * result.log.front().w2_exact) {
        break;
      }
    }
  }
  result.particles = std::move(cloud);
  return result;
}

}  // namespace hypersw
