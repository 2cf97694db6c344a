// Copyright 2026 The overcrowd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "overcrowd/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "overcrowd/error.hpp"
#include "overcrowd/gamma.hpp"
#include "overcrowd/log_math.hpp"

namespace overcrowd {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Safeguarded Newton for f(x) = 0 with f increasing on [lo, hi], f(lo) < 0 < f(hi).
template <class F>
double newton_bracketed(F&& f, double lo, double hi, double x, double x_tol) {
  for (int it = 0; it < 200; ++it) {
    const auto [fx, dfx] = f(x);
    if (fx == 0.0) return x;
    (fx < 0.0 ? lo : hi) = x;
    double next = x - fx / dfx;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= x_tol || hi - lo <= x_tol) return next;
    x = next;
  }
  return x;
}

}  // namespace

std::string_view to_string(Region region) {
  switch (region) {
    case Region::outer: return "outer";
    case Region::inner: return "inner";
    case Region::full: return "full";
  }
  return "unknown";
}

std::string_view to_string(SamplerKind kind) { return kind == SamplerKind::radial ? "radial" : "sequential"; }

Region parse_region(std::string_view name) {
  for (auto r : {Region::outer, Region::inner, Region::full}) {
    if (to_string(r) == name) return r;
  }
  throw std::invalid_argument("unknown region '" + std::string(name) + "'");
}

SamplerKind parse_sampler_kind(std::string_view name) {
  if (name == "radial") return SamplerKind::radial;
  if (name == "sequential") return SamplerKind::sequential;
  throw std::invalid_argument("unknown sampler '" + std::string(name) + "'");
}

int PointConfiguration::count(Region label) const {
  return static_cast<int>(std::count(labels.begin(), labels.end(), label));
}

RadialLaw::RadialLaw(const EnsembleParams& params) : params_(params) {
  for (int k = 0; k < params.n(); ++k) {
    log_q0_.push_back(gamma::log_Q(k + 1.0, params.cutoff()));
    log_p0_.push_back(gamma::log_gamma_lower(k + 1.0, params.cutoff()));
  }
}

double RadialLaw::log_survival_outer(int k, double t) const {
  return gamma::log_Q(k + 1.0, params_.n() * t) - log_q0_.at(k);
}

double RadialLaw::log_cdf_inner(int k, double t) const {
  return gamma::log_gamma_lower(k + 1.0, params_.n() * t) - log_p0_.at(k);
}

double RadialLaw::quantile_outer(int k, double u) const {
  if (!(u > 0.0 && u <= 1.0)) throw DomainError("quantile_outer: u must lie in (0, 1]");
  const double n = params_.n();
  const double r2 = params_.radius() * params_.radius();
  const double target = std::log(u);
  // g(t) = log u - log S(t) is increasing from log u <= 0 at t = R^2
  auto g = [&](double t) {
    const double lq = gamma::log_Q(k + 1.0, n * t);
    const double dlog = -n * std::exp(log_poisson_weight(k, n * t) - lq);
    return std::pair{target - (lq - log_q0_[k]), -dlog};
  };
  if (u == 1.0) return r2;
  double hi = std::max(r2, (k + 1.0) / n) + 1.0 / std::sqrt(n);
  while (g(hi).first < 0.0) hi = r2 + 2.0 * (hi - r2);
  const double t = newton_bracketed(g, r2, hi, r2, kTolerance * 0.1);
  return std::max(t, std::nextafter(r2, 2.0));
}

double RadialLaw::quantile_inner(int k, double u) const {
  if (!(u > 0.0 && u <= 1.0)) throw DomainError("quantile_inner: u must lie in (0, 1]");
  const double n = params_.n();
  const double r2 = params_.radius() * params_.radius();
  if (u == 1.0) return r2;
  const double target = std::log(u);
  // h(y) = log F(e^y) - log u in y = log t, increasing
  auto h = [&](double y) {
    const double t = std::exp(y);
    const double lp = gamma::log_gamma_lower(k + 1.0, n * t);
    const double dlog = n * t * std::exp(log_poisson_weight(k, n * t) - lp);
    return std::pair{lp - log_p0_[k] - target, dlog};
  };
  const double y_hi = std::log(r2);
  double y_lo = y_hi - 1.0;
  while (h(y_lo).first > 0.0) y_lo = y_hi - 2.0 * (y_hi - y_lo);
  // a y-step of d moves t by about t d; ask for t * d below the tolerance
  const double y = newton_bracketed(h, y_lo, y_hi, y_hi, kTolerance * 0.1 / r2);
  return std::min(std::exp(y), std::nextafter(r2, 0.0));
}

double RadialLaw::log_abs_basis(int k, double r, bool outer) const {
  const double n = params_.n();
  const double log_norm = outer ? log_q0_.at(k) : log_p0_.at(k);
  const double lr = r > 0.0 ? std::log(r) : kNegInf;
  const double power = k == 0 ? 0.0 : k * lr;
  return 0.5 * ((k + 1.0) * std::log(n) - std::lgamma(k + 1.0) - log_norm - std::log(std::numbers::pi)) -
         0.5 * n * r * r + power;
}

std::vector<double> sample_radii_outer(const EnsembleParams& params, const IndexSet& set, RandomStream& rng) {
  const RadialLaw law(params);
  std::vector<double> out;
  for (int k : set.members()) out.push_back(std::sqrt(law.quantile_outer(k, rng.uniform())));
  return out;
}

std::vector<double> sample_radii_inner(const EnsembleParams& params, const IndexSet& set, RandomStream& rng) {
  const RadialLaw law(params);
  std::vector<double> out;
  const auto complement = set.complement();
  for (int k : complement.members()) out.push_back(std::sqrt(law.quantile_inner(k, rng.uniform())));
  return out;
}

SequentialSampler::SequentialSampler(const EnsembleParams& params) : law_(params) {}

std::vector<Complex> SequentialSampler::sample_radial(const IndexSet& set, Basis basis, RandomStream& rng) const {
  const bool outer = basis == Basis::outer;
  const auto index = outer ? set.members() : set.complement().members();
  std::vector<Complex> out;
  out.reserve(index.size());
  for (int k : index) {
    const double t = outer ? law_.quantile_outer(k, rng.uniform()) : law_.quantile_inner(k, rng.uniform());
    out.push_back(std::polar(std::sqrt(t), kTwoPi * rng.uniform()));
  }
  return out;
}

std::vector<Complex> SequentialSampler::sample(const IndexSet& set, Basis basis, RandomStream& rng,
                                               SequentialStats* stats) const {
  const bool outer = basis == Basis::outer;
  const auto index = outer ? set.members() : set.complement().members();
  const std::size_t m = index.size();
  std::vector<Complex> points;
  points.reserve(m);
  std::vector<std::vector<Complex>> frame;  // orthonormal, spans the chosen feature vectors
  frame.reserve(m);
  std::vector<double> log_mag(m);
  std::vector<Complex> v(m);

  auto project_out = [&](std::vector<Complex>& x) {
    for (const auto& e : frame) {
      Complex dot(0.0, 0.0);
      for (std::size_t i = 0; i < m; ++i) dot += std::conj(e[i]) * x[i];
      for (std::size_t i = 0; i < m; ++i) x[i] -= dot * e[i];
    }
  };
  auto norm2 = [&](const std::vector<Complex>& x) {
    double s = 0.0;
    for (const auto& c : x) s += std::norm(c);
    return s;
  };

  for (std::size_t j = 0; j < m; ++j) {
    std::uint64_t tries = 0;
    for (;;) {
      if (++tries > kMaxProposals) {
        std::ostringstream msg;
        msg << "sequential sampler: " << kMaxProposals << " proposals without acceptance at point " << j + 1
            << " of " << m << " (" << (outer ? "outer" : "inner") << " basis, N = " << law_.params().n() << ")";
        throw SamplingError(msg.str());
      }
      const int k = index[rng.below(m)];
      const double t = outer ? law_.quantile_outer(k, rng.uniform()) : law_.quantile_inner(k, rng.uniform());
      const double r = std::sqrt(t);
      const double theta = kTwoPi * rng.uniform();
      double top = kNegInf;
      for (std::size_t i = 0; i < m; ++i) top = std::max(top, log_mag[i] = law_.log_abs_basis(index[i], r, outer));
      for (std::size_t i = 0; i < m; ++i) v[i] = std::polar(std::exp(log_mag[i] - top), index[i] * theta);
      const double scale = std::sqrt(norm2(v));
      for (auto& c : v) c /= scale;
      double accept = 1.0;
      if (!frame.empty()) {
        project_out(v);
        accept = norm2(v);
      }
      const double draw = rng.uniform();
      if (stats) ++stats->proposals;
      if (draw >= accept) continue;
      points.push_back(std::polar(r, theta));
      if (j + 1 < m) {
        project_out(v);  // second pass keeps the frame orthonormal to rounding
        const double len = std::sqrt(norm2(v));
        for (auto& c : v) c /= len;
        frame.push_back(v);
      }
      break;
    }
  }
  return points;
}

PointConfiguration sample_sequential(const EnsembleParams& params, const IndexSet& set, Basis basis, RandomStream& rng) {
  PointConfiguration out{{}, {}, params, set, basis == Basis::outer ? Region::outer : Region::inner,
                         rng.seed(), rng.stream_id(), SamplerKind::sequential};
  out.points = SequentialSampler(params).sample(set, basis, rng);
  out.labels.assign(out.points.size(), out.region);
  return out;
}

EnsembleSampler::EnsembleSampler(const EnsembleParams& params)
    : params_(params), index_sampler_(mixture::bernoulli_weights(params)), point_sampler_(params) {}

PointConfiguration EnsembleSampler::sample_given(const IndexSet& set, RandomStream& rng, SamplerKind kind) const {
  PointConfiguration out{{}, {}, params_, set, Region::full, rng.seed(), rng.stream_id(), kind};
  for (Basis basis : {Basis::outer, Basis::inner_complement}) {
    const auto pts = kind == SamplerKind::radial ? point_sampler_.sample_radial(set, basis, rng)
                                                 : point_sampler_.sample(set, basis, rng);
    out.points.insert(out.points.end(), pts.begin(), pts.end());
    out.labels.insert(out.labels.end(), pts.size(), basis == Basis::outer ? Region::outer : Region::inner);
  }
  return out;
}

PointConfiguration EnsembleSampler::sample(RandomStream& rng, SamplerKind kind) const {
  const auto seed = rng.seed(), stream = rng.stream_id();
  const IndexSet set = index_sampler_.sample(params_.n_outside(), rng);
  auto out = sample_given(set, rng, kind);
  out.seed = seed;
  out.stream = stream;
  return out;
}

PointConfiguration sample_conditioned_ensemble(const EnsembleParams& params, RandomStream& rng, SamplerKind kind) {
  return EnsembleSampler(params).sample(rng, kind);
}

}  // namespace overcrowd
