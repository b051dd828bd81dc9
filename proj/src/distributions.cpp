#include "hypersw/distributions.hpp"

#include "hypersw/rng.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace hypersw {

namespace {

constexpr std::uint64_t kGaussianStream = 0xa11ce;
constexpr std::uint64_t kCategoricalStream = 0xb0b;

Eigen::LLT<Matrix> cholesky_of(const Matrix& cov) {
  if (cov.rows() != cov.cols() || cov.rows() < 1) {
    throw std::invalid_argument("wrapped normal: covariance must be square");
  }
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::domain_error("wrapped normal: covariance must be symmetric");
  }
  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("wrapped normal: covariance is not positive definite");
  }
  return llt;
}

double log_sinhc(double t) {
  if (t < 1e-4) {
    const double t2 = t * t;
    return std::log1p(t2 / 6.0 + t2 * t2 / 120.0);
  }
  return std::log(std::sinh(t) / t);
}

// One sample of the pipeline: tangent Gaussian at the origin, transported to
// mu, exponentiated. `chol` is the lower Cholesky factor of the covariance.
Vector push_sample(const LorentzPoint& mu, const Matrix& chol, const Vector& eta) {
  const int d = mu.dim();
  Vector z(d + 1);
  z[0] = 0.0;
  z.tail(d) = chol * eta;
  const TangentVector u =
      parallel_transport(TangentVector{lorentz_origin(d).coords, z}, mu);
  return exp_lorentz(mu, u.vec).coords;
}

}  // namespace

WrappedNormal make_wrapped_normal(LorentzPoint mean, Matrix cov) {
  check_lorentz(mean.coords);
  if (cov.rows() != mean.dim()) {
    throw std::invalid_argument("wrapped normal: covariance does not match the point dimension");
  }
  cholesky_of(cov);  // validates
  return WrappedNormal{std::move(mean), std::move(cov)};
}

WrappedNormal make_wrapped_normal_iso(LorentzPoint mean, double variance) {
  const int d = mean.dim();
  if (!(variance > 0.0)) {
    throw std::domain_error("wrapped normal: variance must be positive");
  }
  return make_wrapped_normal(std::move(mean), variance * Matrix::Identity(d, d));
}

WrappedMixture make_wrapped_mixture(std::vector<WrappedNormal> components, Vector mixing) {
  if (components.empty()) {
    throw std::domain_error("mixture: no components");
  }
  if (static_cast<Eigen::Index>(components.size()) != mixing.size()) {
    throw std::invalid_argument("mixture: components/weights size mismatch");
  }
  if (mixing.minCoeff() < 0.0 || std::abs(mixing.sum() - 1.0) > 1e-12) {
    throw std::domain_error("mixture: weights must lie on the simplex");
  }
  for (size_t i = 1; i < components.size(); ++i) {
    if (components[i].mean.dim() != components[0].mean.dim()) {
      throw std::invalid_argument("mixture: component dimensions differ");
    }
  }
  return WrappedMixture{std::move(components), std::move(mixing)};
}

Matrix sample_wnd(const WrappedNormal& dist, int n, std::uint64_t seed) {
  if (n < 1) {
    throw std::domain_error("sample_wnd: need n >= 1");
  }
  const int d = dist.mean.dim();
  const Matrix chol = cholesky_of(dist.cov).matrixL();
  auto eng = make_engine(derive_seed(seed, kGaussianStream));
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix out(n, d + 1);
  Vector eta(d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) eta[j] = gauss(eng);
    out.row(i) = push_sample(dist.mean, chol, eta).transpose();
  }
  return out;
}

double log_prob_wnd(const WrappedNormal& dist, const LorentzPoint& x) {
  check_lorentz(x.coords);
  const int d = dist.mean.dim();
  if (x.dim() != d) {
    throw std::invalid_argument("log_prob_wnd: dimension mismatch");
  }
  const Eigen::LLT<Matrix> llt = cholesky_of(dist.cov);
  // Invert the sampling pipeline: log map at the mean, transport back to the
  // origin, read the tangent coordinates.
  const Vector u = log_lorentz(dist.mean, x);
  const double r = std::sqrt(std::max(0.0, minkowski_norm2(u)));
  const TangentVector z =
      parallel_transport(TangentVector{dist.mean.coords, u}, lorentz_origin(d));
  const Vector zt = z.vec.tail(d);

  const double quad = zt.dot(llt.solve(zt));
  double logdet = 0.0;
  for (int i = 0; i < d; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
  const double log_gauss =
      -0.5 * (d * std::log(2.0 * M_PI) + logdet + quad);
  return log_gauss - (d - 1) * log_sinhc(r);
}

Matrix sample_mixture(const WrappedMixture& mix, int n, std::uint64_t seed) {
  if (mix.components.empty()) {
    throw std::domain_error("sample_mixture: empty mixture");
  }
  if (n < 1) {
    throw std::domain_error("sample_mixture: need n >= 1");
  }
  const int d = mix.components[0].mean.dim();
  std::vector<Matrix> chols;
  chols.reserve(mix.components.size());
  for (const auto& c : mix.components) {
    chols.push_back(cholesky_of(c.cov).matrixL());
  }
  // Separate streams for the categorical draws and the Gaussian deviates so a
  // single-component mixture consumes exactly the sample_wnd stream.
  auto cat_eng = make_engine(derive_seed(seed, kCategoricalStream));
  auto eng = make_engine(derive_seed(seed, kGaussianStream));
  std::discrete_distribution<int> cat(mix.mixing.data(), mix.mixing.data() + mix.mixing.size());
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix out(n, d + 1);
  Vector eta(d);
  for (int i = 0; i < n; ++i) {
    const int c = mix.components.size() == 1 ? 0 : cat(cat_eng);
    for (int j = 0; j < d; ++j) eta[j] = gauss(eng);
    out.row(i) = push_sample(mix.components[c].mean, chols[c], eta).transpose();
  }
  return out;
}

}  // namespace hypersw
