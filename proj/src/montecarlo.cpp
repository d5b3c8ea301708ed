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

#include "cfmimo/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cfmimo/error.hpp"
#include "cfmimo/parallel.hpp"

namespace cfmimo {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using cplx = std::complex<double>;

double frobenius_sq(const HermitianMatrix& m) {
  double acc = 0.0;
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) acc += std::norm(m(i, j));
  }
  return acc;
}

// One Jacobi step on (p, q): a phase change on q makes a_pq real and
// positive, then a real plane rotation annihilates it.
void rotate(HermitianMatrix& a, int p, int q) {
  const int n = a.size();
  const double r = std::abs(a(p, q));
  const cplx e = a(p, q) / r;
  const cplx ec = std::conj(e);
  for (int k = 0; k < n; ++k) {
    a(k, q) *= ec;
    a(q, k) *= e;
  }
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * r);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  for (int k = 0; k < n; ++k) {
    const cplx kp = a(k, p);
    const cplx kq = a(k, q);
    a(k, p) = c * kp - s * kq;
    a(k, q) = s * kp + c * kq;
  }
  for (int k = 0; k < n; ++k) {
    const cplx pk = a(p, k);
    const cplx qk = a(q, k);
    a(p, k) = c * pk - s * qk;
    a(q, k) = s * pk + c * qk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

}  // namespace

RandomStream make_stream(std::uint64_t seed, StreamSpace space, std::uint64_t index) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(space));
  h = splitmix64(h ^ index);
  return RandomStream(h);
}

Topology sample_ppp_disk(double lambda, double radius, RandomStream& rng) {
  Topology t;
  const double mean = lambda * std::numbers::pi * radius * radius;
  if (!(mean > 0.0)) return t;
  std::poisson_distribution<int> count(mean);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = count(rng);
  t.distances.resize(n);
  for (auto& d : t.distances) d = radius * std::sqrt(unit(rng));
  return t;
}

double path_loss(double distance, double alpha) {
  if (distance < 0.0) throw DomainError("path_loss: negative distance");
  return distance <= 1.0 ? 1.0 : std::exp(-alpha * std::log(distance));
}

double aggregate_fading(const Topology& topology, double alpha) {
  double x = 0.0;
  for (double d : topology.distances) x += path_loss(d, alpha);
  return x;
}

double HermitianMatrix::trace() const {
  double acc = 0.0;
  for (int i = 0; i < n_; ++i) acc += (*this)(i, i).real();
  return acc;
}

GramSpectrum hermitian_eigenvalues(const HermitianMatrix& m) {
  const int n = m.size();
  const double fro2 = frobenius_sq(m);
  const double scale = std::sqrt(fro2);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > 1e-10 * std::max(scale, 1e-300)) {
        throw DomainError("hermitian_eigenvalues: matrix is not Hermitian");
      }
    }
  }
  HermitianMatrix a = m;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    }
    if (off <= 1e-32 * fro2) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::norm(a(p, q)) > 1e-40 * fro2) rotate(a, p, q);
      }
    }
  }
  GramSpectrum out;
  out.eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) out.eigenvalues[i] = a(i, i).real();
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());

  double sum = 0.0, sum_sq = 0.0;
  for (double e : out.eigenvalues) {
    sum += e;
    sum_sq += e * e;
  }
  const double tr = m.trace();
  if (std::abs(sum - tr) > 1e-8 * std::max(scale, 1e-300) ||
      std::abs(sum_sq - fro2) > 1e-8 * std::max(fro2, 1e-300)) {
    throw ConsistencyError("hermitian_eigenvalues: spectrum does not reproduce trace/norm");
  }
  return out;
}

HermitianMatrix sample_gram(const Topology& topology, const DerivedParams& p, RandomStream& rng,
                            GramSampler sampler) {
  const int M = p.M;
  const int L = p.L;
  const double var = 1.0 - p.sigma_e2;
  HermitianMatrix g(M);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  if (sampler == GramSampler::wishart_factor) {
    std::vector<cplx> t(static_cast<std::size_t>(M) * M);
    for (double d : topology.distances) {
      const double w = path_loss(d, p.alpha) * var;
      std::fill(t.begin(), t.end(), cplx{});
      for (int i = 0; i < M; ++i) {
        std::gamma_distribution<double> chi(L - i, 1.0);
        t[i * M + i] = std::sqrt(chi(rng));
        for (int j = 0; j < i; ++j) {
          const double re = normal(rng);
          const double im = normal(rng);
          t[i * M + j] = cplx(re, im);
        }
      }
      for (int i = 0; i < M; ++i) {
        for (int j = 0; j <= i; ++j) {
          cplx acc{};
          for (int k = 0; k <= j; ++k) acc += t[i * M + k] * std::conj(t[j * M + k]);
          g(i, j) += w * acc;
          if (i != j) g(j, i) += w * std::conj(acc);
        }
      }
    }
  } else {
    std::vector<cplx> h(static_cast<std::size_t>(L) * M);
    for (double d : topology.distances) {
      const double w = path_loss(d, p.alpha) * var;
      for (auto& v : h) {
        const double re = normal(rng);
        const double im = normal(rng);
        v = cplx(re, im);
      }
      for (int i = 0; i < M; ++i) {
        for (int j = 0; j <= i; ++j) {
          cplx acc{};
          for (int k = 0; k < L; ++k) acc += std::conj(h[k * M + i]) * h[k * M + j];
          g(i, j) += w * acc;
          if (i != j) g(j, i) += w * std::conj(acc);
        }
      }
    }
  }
  for (int i = 0; i < M; ++i) g(i, i) = g(i, i).real();
  return g;
}

GramSpectrum sample_gram_spectrum(const Topology& topology, const DerivedParams& p,
                                  RandomStream& rng, GramSampler sampler) {
  GramSpectrum sp = hermitian_eigenvalues(sample_gram(topology, p, rng, sampler));
  const double top = sp.eigenvalues.empty() ? 0.0 : std::max(0.0, sp.eigenvalues.back());
  for (double& e : sp.eigenvalues) {
    if (e < -1e-12 * top) throw ConsistencyError("sample_gram_spectrum: negative eigenvalue");
    e = std::max(e, 0.0);
  }
  return sp;
}

double capacity_from_spectrum(const GramSpectrum& spectrum, const DerivedParams& p) {
  const double k = p.eigen_snr_scale();
  double c = 0.0;
  for (double e : spectrum.eigenvalues) c += std::log1p(k * e);
  return c / std::numbers::ln2;
}

double dispersion_from_spectrum(const GramSpectrum& spectrum, const DerivedParams& p) {
  const double k = p.eigen_snr_scale();
  double v = 0.0;
  for (double e : spectrum.eigenvalues) {
    // 1 - (1 + x)^-2 = x (2 + x) / (1 + x)^2 without cancellation at small x.
    const double x = k * e;
    v += x * (2.0 + x) / ((1.0 + x) * (1.0 + x));
  }
  return v;
}

SampleStats batch_statistics(const std::vector<double>& values) {
  SampleStats st;
  const long n = static_cast<long>(values.size());
  if (n < 2) throw InvalidConfig("trials", "at least 2 samples are required");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  st.mean = mean;
  st.variance = ss / static_cast<double>(n - 1);

  const long batches = std::min<long>(100, n / 2);
  if (batches < 4) {
    st.se_mean = std::sqrt(st.variance / static_cast<double>(n));
    st.se_variance = st.variance * std::sqrt(2.0 / static_cast<double>(n - 1));
    return st;
  }
  std::vector<double> bm(batches), bv(batches);
  for (long b = 0; b < batches; ++b) {
    const long lo = n * b / batches;
    const long hi = n * (b + 1) / batches;
    double m = 0.0;
    for (long i = lo; i < hi; ++i) m += values[i];
    m /= static_cast<double>(hi - lo);
    double s = 0.0;
    for (long i = lo; i < hi; ++i) s += (values[i] - m) * (values[i] - m);
    bm[b] = m;
    bv[b] = s / static_cast<double>(hi - lo - 1);
  }
  auto spread = [batches](const std::vector<double>& xs) {
    double m = 0.0;
    for (double x : xs) m += x;
    m /= static_cast<double>(batches);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(batches - 1) / static_cast<double>(batches));
  };
  st.se_mean = spread(bm);
  st.se_variance = spread(bv);
  return st;
}

MomentEstimates mc_moments(const DerivedParams& p, const McOptions& opts) {
  if (opts.trials < 2) throw InvalidConfig("trials", "mc_moments needs at least 2 trials");
  if (opts.mode == McMode::full && opts.inner_small_scale < 1) {
    throw InvalidConfig("inner_small_scale", "must be at least 1");
  }
  std::vector<double> cap(opts.trials), disp(opts.trials);
  const double M = p.M;
  const double beta = p.beta;

  parallel_for(
      opts.trials,
      [&](long trial) {
        RandomStream rng = make_stream(opts.seed, StreamSpace::trials, static_cast<std::uint64_t>(trial));
        const Topology topo =
            opts.topology ? opts.topology(rng) : sample_ppp_disk(p.lambda, p.radius, rng);
        double c = 0.0, v = 0.0;
        if (opts.mode == McMode::large_scale_only) {
          const double x = aggregate_fading(topo, p.alpha);
          c = M * std::log1p(x / beta) / std::numbers::ln2;
          const double u = x / beta;
          v = M * u * (2.0 + u) / ((1.0 + u) * (1.0 + u));
        } else {
          for (int j = 0; j < opts.inner_small_scale; ++j) {
            const GramSpectrum sp = sample_gram_spectrum(topo, p, rng, opts.sampler);
            const double cj = capacity_from_spectrum(sp, p);
            const double vj = dispersion_from_spectrum(sp, p);
            if (!(cj >= 0.0) || !(vj >= 0.0) || !(vj <= M)) {
              throw ConsistencyError("mc_moments: realization outside 0 <= V <= M, C >= 0");
            }
            c += cj;
            v += vj;
          }
          c /= opts.inner_small_scale;
          v /= opts.inner_small_scale;
        }
        if (!(c >= 0.0) || !(v >= 0.0) || !(v <= M)) {
          throw ConsistencyError("mc_moments: trial outside 0 <= V <= M, C >= 0");
        }
        cap[trial] = c;
        disp[trial] = v;
      },
      opts.workers);

  const SampleStats sc = batch_statistics(cap);
  const SampleStats sv = batch_statistics(disp);
  MomentEstimates est;
  est.mean_capacity = sc.mean;
  est.var_capacity = sc.variance;
  est.se_mean_capacity = sc.se_mean;
  est.se_var_capacity = sc.se_variance;
  est.mean_dispersion = sv.mean;
  est.var_dispersion = sv.variance;
  est.se_mean_dispersion = sv.se_mean;
  est.se_var_dispersion = sv.se_variance;
  est.trials = opts.trials;
  est.mode = opts.mode;
  return est;
}

MomentEstimates mc_moments(const DerivedParams& p, long trials, int inner_small_scale, McMode mode,
                           std::uint64_t seed) {
  McOptions opts;
  opts.trials = trials;
  opts.inner_small_scale = inner_small_scale;
  opts.mode = mode;
  opts.seed = seed;
  return mc_moments(p, opts);
}

}  // namespace cfmimo
