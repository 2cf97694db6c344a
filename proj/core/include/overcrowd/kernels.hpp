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

// Finite-N and limiting correlation kernels.
//
// Every finite-N kernel here is radial in the sense
//
//   K(z, w) = sum_{k in S} sign_k e^{beta_k} (z conj(w))^k e^{-N(|z|^2 + |w|^2)/2} / pi
//
// and is stored as its list of (k, beta_k, sign_k). Differences of two such
// kernels are again of this form, with coefficients formed termwise, which
// keeps exponentially small differences resolvable.

#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "overcrowd/params.hpp"

namespace overcrowd {

using Complex = std::complex<double>;

enum class KernelKind {
  ginibre,          ///< K_N, all k < N
  scaled_ginibre,   ///< sqrt((N - N_c)/N)-scaled Ginibre of size N - N_c
  outer,            ///< K^J on |z| > R, Gamma(k + 1, NR^2) normalization
  inner,            ///< sum over k not in J on |z| < R, gamma(k + 1, NR^2) normalization
  edge_rescaled,    ///< N^{-2} K^J(R + z/N, R + w/N)
  edge_zoomed,      ///< s^2 edge_rescaled(s z, s w), s = R / (R^2 - 1 + c)
  limit_hard_wall,  ///< K_X
};

std::string_view to_string(KernelKind kind);
/// Accepts the to_string names; throws std::invalid_argument otherwise.
KernelKind parse_kernel_kind(std::string_view name);

struct KernelSpec {
  KernelKind kind = KernelKind::limit_hard_wall;
  std::optional<EnsembleParams> params;
  std::optional<IndexSet> index_set;
  /// edge_zoomed only: remove the phase e^{i R s (Im z - Im w)} that the
  /// finite-N kernel carries relative to K_X. It is a conjugation by a
  /// unimodular function and leaves every correlation determinant unchanged.
  bool gauge_fixed = true;

  bool needs_params() const { return kind != KernelKind::limit_hard_wall; }
  bool needs_index_set() const;
};

/// Radial monomial kernel with Gaussian weight e^{-N|z|^2/2}.
class RadialKernel {
 public:
  enum class Support { plane, outside, inside };

  /// Coefficient i is sign[i] * exp(log_base[i] - log_norm[i]); an empty
  /// log_norm means zeros. Keeping the normalization apart lets difference()
  /// subtract normalizations that agree to far beyond double precision in
  /// the combined exponent.
  RadialKernel(double weight, Support support, double radius, std::vector<int> index,
               std::vector<double> log_base, std::vector<signed char> sign, std::vector<double> log_norm = {});

  /// Coefficients N^{k+1} / (k! * norm_k) for k in `index`, where
  /// log_norm[i] is log norm_{index[i]}.
  static RadialKernel monomial(int n, Support support, double radius, std::vector<int> index,
                               std::span<const double> log_norm);

  Complex operator()(Complex z, Complex w) const;

  /// Termwise a - b. Both must share weight; the result carries a's support.
  static RadialKernel difference(const RadialKernel& a, const RadialKernel& b);

  bool in_support(Complex z) const;
  double weight() const { return weight_; }
  Support support() const { return support_; }
  double radius() const { return radius_; }
  const std::vector<int>& index() const { return index_; }
  const std::vector<double>& log_coef() const { return log_coef_; }
  const std::vector<double>& log_base() const { return log_base_; }
  const std::vector<double>& log_norm() const { return log_norm_; }
  const std::vector<signed char>& sign() const { return sign_; }

  /// Terms this many nats below the largest are dropped.
  static constexpr double kDropNats = 40.0;

 private:
  double weight_;
  Support support_;
  double radius_;
  std::vector<int> index_;
  std::vector<double> log_base_;
  std::vector<double> log_norm_;
  std::vector<double> log_coef_;
  std::vector<signed char> sign_;
};

/// (1 - (s + 1) e^{-s}) / (pi s^2) with s = z + conj(w); Taylor branch for
/// |s| < 1e-3.
Complex eval_limit(Complex z, Complex w);

class Kernel {
 public:
  /// Validates the spec; outer/inner/edge kinds default to J_0 when no
  /// index set is given.
  explicit Kernel(KernelSpec spec);

  Complex operator()(Complex z, Complex w) const;

  const KernelSpec& spec() const { return spec_; }
  /// Underlying radial kernel (absent for the limit kernel).
  const RadialKernel* radial() const { return radial_.get(); }
  /// Zoom factor s = R / (R^2 - 1 + c) for edge_zoomed, 1 otherwise.
  double zoom() const { return zoom_; }

 private:
  KernelSpec spec_;
  std::shared_ptr<const RadialKernel> radial_;
  double zoom_ = 1.0;
};

Complex eval_ginibre(const EnsembleParams& params, Complex z, Complex w);
Complex eval_outer(const EnsembleParams& params, const IndexSet& set, Complex z, Complex w);
Complex eval_inner(const EnsembleParams& params, const IndexSet& set, Complex z, Complex w);
Complex eval_edge_rescaled(const EnsembleParams& params, const IndexSet& set, Complex z, Complex w);

/// Second evaluation route for the rescaled edge kernel: sums directly in
/// edge coordinates, using Poisson weights at NR^2 so the O(N) exponents
/// cancel analytically rather than in floating point.
Complex eval_edge_direct(const EnsembleParams& params, const IndexSet& set, Complex z, Complex w);

struct Correlation {
  double value = 0.0;  ///< max(raw, 0)
  double raw = 0.0;    ///< real part of det[K(x_i, x_j)]
};

/// k-point correlation det[K(x_i, x_j)]_{i,j}.
Correlation correlation(std::span<const Complex> points, const Kernel& kernel);

/// Tabulated K(z_i, w_j). With `diagonal` set, w_points is ignored and the
/// values are K(z_i, z_i) as a single column.
struct KernelGrid {
  KernelSpec spec;
  std::vector<Complex> z_points;
  std::vector<Complex> w_points;
  bool diagonal = false;
  std::vector<Complex> values;  ///< row-major, z index major

  std::size_t rows() const { return z_points.size(); }
  std::size_t cols() const { return diagonal ? 1 : w_points.size(); }
  Complex at(std::size_t i, std::size_t j) const { return values[i * cols() + j]; }
};

/// Evaluates on each (z_i, w_j); `threads` workers, 0 for hardware_concurrency.
KernelGrid tabulate(const Kernel& kernel, std::vector<Complex> z_points, std::vector<Complex> w_points,
                    unsigned threads = 1);
KernelGrid tabulate_diagonal(const Kernel& kernel, std::vector<Complex> z_points, unsigned threads = 1);

/// Points re0 + i*im0 .. re1 + i*im1 on an n_re x n_im lattice, re major.
std::vector<Complex> lattice(double re0, double re1, int n_re, double im0, double im1, int n_im);

struct PointPair {
  Complex z;
  Complex w;
  bool operator==(const PointPair&) const = default;
};

struct SupDifference {
  double value = 0.0;
  PointPair argmax;
};

/// max |K_a(z, w) - K_b(z, w)| over the pairs. Two radial kernels sharing a
/// weight are differenced termwise wherever both supports contain z and w.
/// Throws std::invalid_argument for an empty list.
SupDifference sup_difference(const Kernel& a, const Kernel& b, std::span<const PointPair> pairs);

/// Pointwise K_a - K_b on the same pairs.
std::vector<Complex> pointwise_difference(const Kernel& a, const Kernel& b, std::span<const PointPair> pairs);

struct GMaxResult {
  double max_value = 0.0;  ///< max_s |N^{l-n} g(s, s)|
  double bound = 0.0;      ///< n / (N (1 - c))
  double argmax_s = 0.0;   ///< maximizing s
};

/// Maximum over s > 0 of |u^{l-n} e^{-u}/(l-n)! - u^l e^{-u}/l!| with u = N s,
/// the diagonal of N^{l-n} g. Grid search over u in l +- 8 sqrt(l) then
/// golden-section refinement. Throws ConvergenceError if the maximum sits
/// on the search boundary.
GMaxResult g_max_diagnostic(long long l, long long n, long long N, double c);

}  // namespace overcrowd
