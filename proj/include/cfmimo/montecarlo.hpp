// Copyright 2026 The cfmimo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "cfmimo/config.hpp"

namespace cfmimo {

using RandomStream = std::mt19937_64;

/// Stream namespaces keep the different consumers of a seed independent.
enum class StreamSpace : std::uint64_t {
  trials = 1,
  empirical_mgf = 2,
  check = 3,
};

/// Reproducible stream for (seed, space, index); one per trial so results do
/// not depend on how trials are scheduled across workers.
RandomStream make_stream(std::uint64_t seed, StreamSpace space, std::uint64_t index);

/// AP distances from the user, one per AP inside the disk.
struct Topology {
  std::vector<double> distances;
};

/// N ~ Poisson(lambda pi R^2) points uniform on the disk; d = R sqrt(U).
Topology sample_ppp_disk(double lambda, double radius, RandomStream& rng);

/// l(d) = min{1, d^-alpha}.
double path_loss(double distance, double alpha);

/// X = sum_n l(d_n); zero for an empty topology.
double aggregate_fading(const Topology& topology, double alpha);

/// Dense M x M complex Hermitian matrix, row-major.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n) {}
  int size() const { return n_; }
  std::complex<double>& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::complex<double>& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }
  double trace() const;

 private:
  int n_;
  std::vector<std::complex<double>> data_;
};

/// Eigenvalues of a Gram matrix, ascending.
struct GramSpectrum {
  std::vector<double> eigenvalues;
};

/// Real eigenvalues of a Hermitian matrix (cyclic complex Jacobi), ascending.
/// Throws DomainError if `m` is not Hermitian to 1e-10 relative.
GramSpectrum hermitian_eigenvalues(const HermitianMatrix& m);

enum class GramSampler {
  /// Per-AP Wishart factor T T^H with T lower triangular (|T_ii|^2 ~
  /// Gamma(L - i), T_ij ~ CN(0, 1)); distributed exactly as h^H h.
  wishart_factor,
  /// Draws every entry of each L x M estimate explicitly.
  direct,
};

/// Gram matrix sum_n l(d_n) h_n^H h_n with h_n an L x M matrix of i.i.d.
/// CN(0, 1 - sigma_e^2) entries, accumulated one AP at a time.
HermitianMatrix sample_gram(const Topology& topology, const DerivedParams& p, RandomStream& rng,
                            GramSampler sampler = GramSampler::wishart_factor);

GramSpectrum sample_gram_spectrum(const Topology& topology, const DerivedParams& p,
                                  RandomStream& rng,
                                  GramSampler sampler = GramSampler::wishart_factor);

/// C = sum_i log2(1 + rho lambda_i / (M + M rho sigma^2 theta)), bits/s/Hz.
double capacity_from_spectrum(const GramSpectrum& spectrum, const DerivedParams& p);

/// V = M - sum_i (1 + rho lambda_i / (M + M rho sigma^2 theta))^-2.
double dispersion_from_spectrum(const GramSpectrum& spectrum, const DerivedParams& p);

enum class McMode {
  /// Small-scale fading simulated; C and V averaged over inner draws per
  /// topology, moments taken across topologies.
  full,
  /// Small-scale expectation replaced by its large-scale surrogate:
  /// C = M log2(1 + X / beta), V = M - M beta^2 / (beta + X)^2.
  large_scale_only,
};

struct MomentEstimates {
  double mean_capacity = 0.0;
  double var_capacity = 0.0;
  double mean_dispersion = 0.0;
  double var_dispersion = 0.0;
  double se_mean_capacity = 0.0;
  double se_var_capacity = 0.0;
  double se_mean_dispersion = 0.0;
  double se_var_dispersion = 0.0;
  long trials = 0;
  McMode mode = McMode::full;
};

using TopologySampler = std::function<Topology(RandomStream&)>;

struct McOptions {
  long trials = 20000;
  int inner_small_scale = 50;
  McMode mode = McMode::full;
  std::uint64_t seed = 1;
  GramSampler sampler = GramSampler::wishart_factor;
  /// Replaces the PPP topology when set.
  TopologySampler topology;
  /// 0 selects worker_count().
  int workers = 0;
};

MomentEstimates mc_moments(const DerivedParams& p, const McOptions& opts);

MomentEstimates mc_moments(const DerivedParams& p, long trials, int inner_small_scale, McMode mode,
                           std::uint64_t seed);

/// Mean and standard error of a sample.
struct SampleMean {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Sample mean/variance with batch-means standard errors (at most 100
/// contiguous batches).
struct SampleStats {
  double mean = 0.0;
  double variance = 0.0;
  double se_mean = 0.0;
  double se_variance = 0.0;
};
SampleStats batch_statistics(const std::vector<double>& values);

}  // namespace cfmimo
