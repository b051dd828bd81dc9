#include "hypersw/sliced.hpp"

#include "hypersw/parallel.hpp"
#include "hypersw/rng.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>

namespace hypersw {

namespace {

constexpr std::uint64_t kDirectionStream = 0x5d1ec7;

double pow_p(double diff, double p) {
  const double a = std::abs(diff);
  if (p == 2.0) return a * a;
  if (p == 1.0) return a;
  return std::pow(a, p);
}

void check_weights(const Vector& w, double tol) {
  if (w.size() == 0) {
    throw std::domain_error("measure: empty support");
  }
  if (w.minCoeff() < 0.0) {
    throw std::domain_error("measure: negative weight");
  }
  if (std::abs(w.sum() - 1.0) > tol) {
    throw std::domain_error("measure: weights do not sum to 1");
  }
}

void check_order(double p) {
  if (!(p >= 1.0)) {
    throw std::domain_error("order p must be >= 1");
  }
}

// W_p^p of two sorted equally weighted samples of the same size.
double w1d_uniform_sorted(const std::vector<double>& a, const std::vector<double>& b, double p) {
  const int n = static_cast<int>(a.size());
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += pow_p(a[i] - b[i], p);
  return s / n;
}

// General merged quantile ladder over sorted (value, weight) sequences.
double w1d_merged(const std::vector<double>& av, const std::vector<double>& aw,
                  const std::vector<double>& bv, const std::vector<double>& bw, double p) {
  const int n = static_cast<int>(av.size());
  const int m = static_cast<int>(bv.size());
  double cost = 0.0;
  double ca = aw[0], cb = bw[0];  // cumulative weight through the current atom
  double u = 0.0;                 // quantile level consumed so far
  int i = 0, j = 0;
  while (i < n && j < m) {
    const double next = std::min(ca, cb);
    const double mass = next - u;
    if (mass > 0.0) cost += mass * pow_p(av[i] - bv[j], p);
    u = next;
    if (ca <= cb) {
      if (++i < n) ca += aw[i];
    } else {
      if (++j < m) cb += bw[j];
    }
  }
  return cost;
}

struct SortedSample {
  std::vector<double> values;
  std::vector<double> weights;
};

SortedSample sort_sample(const Vector& values, const Vector& weights) {
  const int n = static_cast<int>(values.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return values[a] < values[b]; });
  SortedSample out;
  out.values.resize(n);
  out.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = values[idx[k]];
    out.weights[k] = weights[idx[k]];
  }
  return out;
}

bool is_uniform(const Vector& w) {
  const double u = 1.0 / static_cast<double>(w.size());
  return (w.array() - u).abs().maxCoeff() <= 1e-12;
}

void check_pair(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.model != nu.model) {
    throw std::domain_error("measures live on different models");
  }
  if (mu.points.cols() != nu.points.cols()) {
    throw std::invalid_argument("measures have different dimensions");
  }
}

void check_config(const SlicedConfig& cfg) {
  if (cfg.num_projections < 1) {
    throw std::domain_error("need at least one projection");
  }
  check_order(cfg.order);
}

}  // namespace

DiscreteMeasure make_measure(Model model, Matrix points, Vector weights) {
  if (points.rows() == 0) {
    throw std::domain_error("measure: empty support");
  }
  if (points.rows() != weights.size()) {
    throw std::invalid_argument("measure: points/weights size mismatch");
  }
  check_weights(weights, 1e-12);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    Vector row = points.row(i).transpose();
    if (model == Model::Lorentz) {
      check_lorentz(row);
      points.row(i) = renormalize_lorentz(std::move(row)).transpose();
    } else {
      check_poincare(row);
    }
  }
  return DiscreteMeasure{model, std::move(points), std::move(weights)};
}

DiscreteMeasure make_uniform_measure(Model model, Matrix points) {
  const Eigen::Index n = points.rows();
  return make_measure(model, std::move(points), Vector::Constant(n, 1.0 / static_cast<double>(n)));
}

DiscreteMeasure convert_measure(const DiscreteMeasure& m, Model target) {
  if (m.model == target) return m;
  DiscreteMeasure out;
  out.model = target;
  out.weights = m.weights;
  if (target == Model::Lorentz) {
    out.points.resize(m.points.rows(), m.points.cols() + 1);
    for (Eigen::Index i = 0; i < m.points.rows(); ++i) {
      out.points.row(i) = to_lorentz(PoincarePoint{m.points.row(i).transpose()}).coords.transpose();
    }
  } else {
    out.points.resize(m.points.rows(), m.points.cols() - 1);
    for (Eigen::Index i = 0; i < m.points.rows(); ++i) {
      out.points.row(i) = to_ball(LorentzPoint{m.points.row(i).transpose()}).coords.transpose();
    }
  }
  return out;
}

double wasserstein_1d(const Vector& a_values, const Vector& a_weights,
                      const Vector& b_values, const Vector& b_weights, double p) {
  if (a_values.size() == 0 || b_values.size() == 0) {
    throw std::domain_error("wasserstein_1d: empty support");
  }
  if (a_values.size() != a_weights.size() || b_values.size() != b_weights.size()) {
    throw std::invalid_argument("wasserstein_1d: values/weights size mismatch");
  }
  check_order(p);
  check_weights(a_weights, 1e-9);
  check_weights(b_weights, 1e-9);
  SortedSample a = sort_sample(a_values, a_weights);
  SortedSample b = sort_sample(b_values, b_weights);
  if (a.values.size() == b.values.size() && is_uniform(a_weights) && is_uniform(b_weights)) {
    return w1d_uniform_sorted(a.values, b.values, p);
  }
  return w1d_merged(a.values, a.weights, b.values, b.weights, p);
}

Matrix sample_sphere(int dim, int L, std::uint64_t seed) {
  if (dim < 1) {
    throw std::domain_error("sample_sphere: dimension must be >= 1");
  }
  if (L < 1) {
    throw std::domain_error("sample_sphere: need at least one sample");
  }
  auto eng = make_engine(derive_seed(seed, kDirectionStream));
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix dirs(L, dim);
  for (int l = 0; l < L; ++l) {
    double norm = 0.0;
    do {
      for (int j = 0; j < dim; ++j) dirs(l, j) = gauss(eng);
      norm = dirs.row(l).norm();
    } while (norm < 1e-12);
    dirs.row(l) /= norm;
  }
  return dirs;
}

std::vector<Direction> sample_directions(int d, int L, std::uint64_t seed) {
  const Matrix dirs = sample_sphere(d, L, seed);
  std::vector<Direction> out;
  out.reserve(L);
  for (int l = 0; l < L; ++l) {
    out.push_back(Direction{dirs.row(l).transpose()});
  }
  return out;
}

int direction_dim(SliceLoss loss, Model model, int d) {
  if (loss == SliceLoss::SWL) return d + 1;  // ambient sphere of the hyperboloid
  (void)model;
  return d;
}

void slice_coords(SliceLoss loss, Model model, const Matrix& points,
                  const Eigen::Ref<const Vector>& dir, Vector& out) {
  const Eigen::Index n = points.rows();
  out.resize(n);
  if (model == Model::Lorentz) {
    const Eigen::Index d = points.cols() - 1;
    switch (loss) {
      case SliceLoss::GHSW: {
        out.noalias() = points.rightCols(d) * dir;
        for (Eigen::Index i = 0; i < n; ++i) {
          const double u = out[i] / points(i, 0);
          out[i] = std::atanh(std::clamp(u, -1.0 + DBL_EPSILON, 1.0 - DBL_EPSILON));
        }
        break;
      }
      case SliceLoss::HHSW: {
        out.noalias() = points.rightCols(d) * dir;
        for (Eigen::Index i = 0; i < n; ++i) {
          out[i] = -std::log(std::max(points(i, 0) - out[i], DBL_MIN));
        }
        break;
      }
      case SliceLoss::SWL:
        out.noalias() = points * dir;
        break;
      case SliceLoss::SWP: {
        out.noalias() = points.rightCols(d) * dir;
        out.array() /= 1.0 + points.col(0).array();
        break;
      }
    }
  } else {
    switch (loss) {
      case SliceLoss::GHSW: {
        out.noalias() = points * dir;
        for (Eigen::Index i = 0; i < n; ++i) {
          const double u = 2.0 * out[i] / (1.0 + points.row(i).squaredNorm());
          out[i] = std::atanh(std::clamp(u, -1.0 + DBL_EPSILON, 1.0 - DBL_EPSILON));
        }
        break;
      }
      case SliceLoss::HHSW: {
        for (Eigen::Index i = 0; i < n; ++i) {
          const double n2 = points.row(i).squaredNorm();
          const double vx2 = (dir.transpose() - points.row(i)).squaredNorm();
          out[i] = std::log(std::max(1.0 - n2, DBL_MIN)) - std::log(std::max(vx2, DBL_MIN));
        }
        break;
      }
      case SliceLoss::SWP:
        out.noalias() = points * dir;
        break;
      case SliceLoss::SWL: {
        // Coordinates of the lift (1+|x|^2, 2x)/(1-|x|^2) along an ambient direction.
        const Eigen::Index d = points.cols();
        Vector num = 2.0 * (points * dir.tail(d));
        for (Eigen::Index i = 0; i < n; ++i) {
          const double n2 = points.row(i).squaredNorm();
          out[i] = (dir[0] * (1.0 + n2) + num[i]) / (1.0 - n2);
        }
        break;
      }
    }
  }
}

double sliced_discrepancy(SliceLoss loss, const DiscreteMeasure& mu,
                          const DiscreteMeasure& nu, const Matrix& directions,
                          double p, int threads) {
  check_pair(mu, nu);
  check_order(p);
  const int d = mu.dim();
  if (directions.cols() != direction_dim(loss, mu.model, d)) {
    throw std::invalid_argument("sliced_discrepancy: direction dimension mismatch");
  }
  const int L = static_cast<int>(directions.rows());
  const bool fast_uniform = mu.size() == nu.size() && is_uniform(mu.weights) && is_uniform(nu.weights);
  std::vector<double> per_slice(L);

  parallel_blocks(L, 16, threads, [&](int, int begin, int end) {
    Vector ca, cb;
    std::vector<double> sa, sb;
    for (int l = begin; l < end; ++l) {
      slice_coords(loss, mu.model, mu.points, directions.row(l).transpose(), ca);
      slice_coords(loss, nu.model, nu.points, directions.row(l).transpose(), cb);
      if (fast_uniform) {
        sa.assign(ca.data(), ca.data() + ca.size());
        sb.assign(cb.data(), cb.data() + cb.size());
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        per_slice[l] = w1d_uniform_sorted(sa, sb, p);
      } else {
        SortedSample a = sort_sample(ca, mu.weights);
        SortedSample b = sort_sample(cb, nu.weights);
        per_slice[l] = w1d_merged(a.values, a.weights, b.values, b.weights, p);
      }
    }
  });

  double total = 0.0;
  for (int l = 0; l < L; ++l) total += per_slice[l];
  return total / L;
}

double ghsw(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const SlicedConfig& cfg) {
  check_pair(mu, nu);
  check_config(cfg);
  const DiscreteMeasure a = convert_measure(mu, Model::Lorentz);
  const DiscreteMeasure b = convert_measure(nu, Model::Lorentz);
  const Matrix dirs = sample_sphere(a.dim(), cfg.num_projections, cfg.seed);
  return sliced_discrepancy(SliceLoss::GHSW, a, b, dirs, cfg.order, cfg.threads);
}

double hhsw(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const SlicedConfig& cfg) {
  check_pair(mu, nu);
  check_config(cfg);
  const DiscreteMeasure a = convert_measure(mu, cfg.model);
  const DiscreteMeasure b = convert_measure(nu, cfg.model);
  const Matrix dirs = sample_sphere(a.dim(), cfg.num_projections, cfg.seed);
  return sliced_discrepancy(SliceLoss::HHSW, a, b, dirs, cfg.order, cfg.threads);
}

double euclidean_sw(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const SlicedConfig& cfg) {
  check_pair(mu, nu);
  check_config(cfg);
  const DiscreteMeasure a = convert_measure(mu, cfg.model);
  const DiscreteMeasure b = convert_measure(nu, cfg.model);
  const SliceLoss loss = cfg.model == Model::Lorentz ? SliceLoss::SWL : SliceLoss::SWP;
  const Matrix dirs =
      sample_sphere(direction_dim(loss, cfg.model, a.dim()), cfg.num_projections, cfg.seed);
  return sliced_discrepancy(loss, a, b, dirs, cfg.order, cfg.threads);
}

double assignment_min_cost(const Matrix& cost) {
  // Shortest augmenting path method with potentials; exact for real costs.
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n || n == 0) {
    throw std::invalid_argument("assignment_min_cost: square nonempty matrix required");
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j) total += cost(match[j] - 1, j - 1);
  return total;
}

double wasserstein_geodesic_ref(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p) {
  check_pair(mu, nu);
  check_order(p);
  if (mu.size() != nu.size()) {
    throw std::domain_error("wasserstein_geodesic_ref: equal support sizes required");
  }
  if (!is_uniform(mu.weights) || !is_uniform(nu.weights)) {
    throw std::domain_error("wasserstein_geodesic_ref: uniform weights required");
  }
  const int n = mu.size();
  if (n > kExactSupportCap) {
    throw std::domain_error("wasserstein_geodesic_ref: support too large for the exact solver");
  }
  Matrix c(n, n);
  if (mu.model == Model::Lorentz) {
    const Eigen::Index d = mu.points.cols() - 1;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double dt = mu.points(i, 0) - nu.points(j, 0);
        const double q = std::max(
            0.0, (mu.points.row(i).tail(d) - nu.points.row(j).tail(d)).squaredNorm() - dt * dt);
        c(i, j) = pow_p(2.0 * std::asinh(0.5 * std::sqrt(q)), p);
      }
    }
  } else {
    const Vector na = (1.0 - mu.points.rowwise().squaredNorm().array()).matrix();
    const Vector nb = (1.0 - nu.points.rowwise().squaredNorm().array()).matrix();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double r = (mu.points.row(i) - nu.points.row(j)).squaredNorm() / (na[i] * nb[j]);
        c(i, j) = pow_p(2.0 * std::asinh(std::sqrt(std::max(0.0, r))), p);
      }
    }
  }
  return assignment_min_cost(c) / n;
}

}  // namespace hypersw
