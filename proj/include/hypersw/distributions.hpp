#pragma once

#include "hypersw/manifold.hpp"

#include <cstdint>
#include <vector>

namespace hypersw {

// Wrapped normal on the hyperboloid: a Gaussian in the origin tangent space
// pushed through parallel transport to `mean` and the exponential map.
struct WrappedNormal {
  LorentzPoint mean;
  Matrix cov;  // d x d, symmetric positive definite
};

struct WrappedMixture {
  std::vector<WrappedNormal> components;
  Vector mixing;  // simplex weights
};

WrappedNormal make_wrapped_normal(LorentzPoint mean, Matrix cov);
WrappedNormal make_wrapped_normal_iso(LorentzPoint mean, double variance);
WrappedMixture make_wrapped_mixture(std::vector<WrappedNormal> components, Vector mixing);

// n samples, one ambient row each. Deterministic in the seed.
Matrix sample_wnd(const WrappedNormal& dist, int n, std::uint64_t seed);

// Log density at x with respect to the Riemannian volume of the hyperboloid.
double log_prob_wnd(const WrappedNormal& dist, const LorentzPoint& x);

// Categorical component draw followed by the component's sampling pipeline.
// A single-component mixture reproduces sample_wnd exactly at the same seed.
Matrix sample_mixture(const WrappedMixture& mix, int n, std::uint64_t seed);

}  // namespace hypersw
