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

#include "overcrowd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "overcrowd/error.hpp"
#include "overcrowd/gamma.hpp"
#include "overcrowd/log_math.hpp"

namespace overcrowd {
namespace {

constexpr double kPi = std::numbers::pi;

bool is_plain_radial(KernelKind kind) {
  return kind == KernelKind::ginibre || kind == KernelKind::scaled_ginibre || kind == KernelKind::outer ||
         kind == KernelKind::inner;
}

std::vector<int> range_index(int lo, int hi) {
  std::vector<int> out;
  for (int k = lo; k < hi; ++k) out.push_back(k);
  return out;
}

std::shared_ptr<const RadialKernel> outer_radial(const EnsembleParams& p, const IndexSet& set) {
  std::vector<double> log_norm;
  for (int k : set.members()) log_norm.push_back(gamma::log_Q(k + 1.0, p.cutoff()));
  return std::make_shared<RadialKernel>(
      RadialKernel::monomial(p.n(), RadialKernel::Support::outside, p.radius(), set.members(), log_norm));
}

std::shared_ptr<const RadialKernel> inner_radial(const EnsembleParams& p, const IndexSet& set) {
  const auto index = set.complement().members();
  std::vector<double> log_norm;
  for (int k : index) log_norm.push_back(gamma::log_gamma_lower(k + 1.0, p.cutoff()));
  return std::make_shared<RadialKernel>(
      RadialKernel::monomial(p.n(), RadialKernel::Support::inside, p.radius(), index, log_norm));
}

std::shared_ptr<const RadialKernel> ginibre_radial(int n, int rank) {
  const std::vector<double> zeros(rank, 0.0);
  return std::make_shared<RadialKernel>(
      RadialKernel::monomial(n, RadialKernel::Support::plane, 0.0, range_index(0, rank), zeros));
}

// log(1 + x) for complex x, accurate for small |x|.
Complex log1p_complex(Complex x) {
  const double re = 0.5 * std::log1p(2.0 * x.real() + std::norm(x));
  return {re, std::atan2(x.imag(), 1.0 + x.real())};
}

// e^s - 1 for complex s.
Complex expm1_complex(Complex s) {
  const double x = s.real(), y = s.imag();
  const double half = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * half * half, std::exp(x) * std::sin(y)};
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::ginibre: return "ginibre";
    case KernelKind::scaled_ginibre: return "scaled_ginibre";
    case KernelKind::outer: return "outer";
    case KernelKind::inner: return "inner";
    case KernelKind::edge_rescaled: return "edge";
    case KernelKind::edge_zoomed: return "edge_zoomed";
    case KernelKind::limit_hard_wall: return "limit";
  }
  return "unknown";
}

KernelKind parse_kernel_kind(std::string_view name) {
  for (auto kind : {KernelKind::ginibre, KernelKind::scaled_ginibre, KernelKind::outer, KernelKind::inner,
                    KernelKind::edge_rescaled, KernelKind::edge_zoomed, KernelKind::limit_hard_wall}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown kernel kind '" + std::string(name) + "'");
}

bool KernelSpec::needs_index_set() const {
  return kind == KernelKind::outer || kind == KernelKind::inner || kind == KernelKind::edge_rescaled ||
         kind == KernelKind::edge_zoomed;
}

RadialKernel::RadialKernel(double weight, Support support, double radius, std::vector<int> index,
                           std::vector<double> log_base, std::vector<signed char> sign, std::vector<double> log_norm)
    : weight_(weight),
      support_(support),
      radius_(radius),
      index_(std::move(index)),
      log_base_(std::move(log_base)),
      log_norm_(std::move(log_norm)),
      sign_(std::move(sign)) {
  if (log_norm_.empty()) log_norm_.assign(index_.size(), 0.0);
  if (index_.size() != log_base_.size() || index_.size() != sign_.size() || index_.size() != log_norm_.size()) {
    throw std::invalid_argument("RadialKernel: coefficient arrays differ in length");
  }
  log_coef_.resize(index_.size());
  for (std::size_t i = 0; i < index_.size(); ++i) log_coef_[i] = log_base_[i] - log_norm_[i];
}

RadialKernel RadialKernel::monomial(int n, Support support, double radius, std::vector<int> index,
                                    std::span<const double> log_norm) {
  const double log_n = std::log(static_cast<double>(n));
  std::vector<double> base(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    const double k = index[i];
    base[i] = (k + 1.0) * log_n - std::lgamma(k + 1.0);
  }
  std::vector<signed char> sign(index.size(), 1);
  return RadialKernel(n, support, radius, std::move(index), std::move(base), std::move(sign),
                      std::vector<double>(log_norm.begin(), log_norm.end()));
}

// Closed, so edge coordinates on the wall Re z = 0 are included.
bool RadialKernel::in_support(Complex z) const {
  switch (support_) {
    case Support::plane: return true;
    case Support::outside: return std::norm(z) >= radius_ * radius_;
    case Support::inside: return std::norm(z) <= radius_ * radius_;
  }
  return false;
}

Complex RadialKernel::operator()(Complex z, Complex w) const {
  if (index_.empty() || !in_support(z) || !in_support(w)) return {0.0, 0.0};
  const double base = -0.5 * weight_ * (std::norm(z) + std::norm(w));
  const Complex zw = z * std::conj(w);
  if (zw == Complex(0.0, 0.0)) {
    for (std::size_t i = 0; i < index_.size(); ++i) {
      if (index_[i] == 0) return sign_[i] * std::exp(log_coef_[i] + base) / kPi;
    }
    return {0.0, 0.0};
  }
  const double log_mod = std::log(std::abs(zw));
  const double theta = std::arg(zw);
  double top = kNegInf;
  for (std::size_t i = 0; i < index_.size(); ++i) top = std::max(top, log_coef_[i] + index_[i] * log_mod);
  Complex sum(0.0, 0.0);
  for (std::size_t i = 0; i < index_.size(); ++i) {
    const double t = log_coef_[i] + index_[i] * log_mod - top;
    if (t < -kDropNats) continue;
    sum += static_cast<double>(sign_[i]) * std::polar(std::exp(t), index_[i] * theta);
  }
  return sum * std::exp(top + base) / kPi;
}

RadialKernel RadialKernel::difference(const RadialKernel& a, const RadialKernel& b) {
  if (a.weight_ != b.weight_) throw std::invalid_argument("RadialKernel::difference: weights differ");
  std::vector<int> index;
  std::vector<double> coef;
  std::vector<signed char> sign;
  auto push = [&](int k, double c, int s) {
    if (c == kNegInf) return;
    index.push_back(k);
    coef.push_back(c);
    sign.push_back(static_cast<signed char>(s));
  };
  std::size_t i = 0, j = 0;
  while (i < a.index_.size() || j < b.index_.size()) {
    const int ka = i < a.index_.size() ? a.index_[i] : std::numeric_limits<int>::max();
    const int kb = j < b.index_.size() ? b.index_[j] : std::numeric_limits<int>::max();
    if (ka < kb) {
      push(ka, a.log_coef_[i], a.sign_[i]);
      ++i;
    } else if (kb < ka) {
      push(kb, b.log_coef_[j], -b.sign_[j]);
      ++j;
    } else {
      const double la = a.log_coef_[i], lb = b.log_coef_[j];
      // la - lb, exact in the base part when both kernels share it
      const double gap = (a.log_base_[i] - b.log_base_[j]) - (a.log_norm_[i] - b.log_norm_[j]);
      const int sa = a.sign_[i], sb = b.sign_[j];
      if (sa != sb) {
        push(ka, log_add_exp(la, lb), sa);
      } else if (gap > 0.0) {
        push(ka, la + std::log(-std::expm1(-gap)), sa);
      } else if (gap < 0.0) {
        push(ka, lb + std::log(-std::expm1(gap)), -sa);
      }
      ++i;
      ++j;
    }
  }
  return RadialKernel(a.weight_, a.support_, a.radius_, std::move(index), std::move(coef), std::move(sign));
}

Complex eval_limit(Complex z, Complex w) {
  const Complex s = z + std::conj(w);
  if (std::abs(s) < 1e-3) {
    // sum_j (-1)^j (j + 1)/(j + 2)! s^j
    constexpr double c[] = {1.0 / 2, -1.0 / 3, 1.0 / 8, -1.0 / 30, 1.0 / 144, -1.0 / 840};
    Complex acc(0.0, 0.0);
    for (int j = 5; j >= 0; --j) acc = acc * s + c[j];
    return acc / kPi;
  }
  // 1 - e^{-s} - s e^{-s}
  const Complex numer = -expm1_complex(-s) - s * std::exp(-s);
  return numer / (kPi * s * s);
}

Kernel::Kernel(KernelSpec spec) : spec_(std::move(spec)) {
  if (spec_.kind == KernelKind::limit_hard_wall) return;
  if (!spec_.params) throw std::invalid_argument("Kernel: kind '" + std::string(to_string(spec_.kind)) + "' needs params");
  const auto& p = *spec_.params;
  if (spec_.needs_index_set()) {
    if (!spec_.index_set) spec_.index_set = IndexSet::top(p.n(), p.n_outside());
    if (spec_.index_set->universe() != p.n()) throw std::invalid_argument("Kernel: index set universe != N");
  } else {
    spec_.index_set.reset();
  }
  switch (spec_.kind) {
    case KernelKind::ginibre: radial_ = ginibre_radial(p.n(), p.n()); break;
    case KernelKind::scaled_ginibre: radial_ = ginibre_radial(p.n(), p.n_inside()); break;
    case KernelKind::inner: radial_ = inner_radial(p, *spec_.index_set); break;
    case KernelKind::edge_zoomed: zoom_ = p.radius() / p.excess(); [[fallthrough]];
    case KernelKind::outer:
    case KernelKind::edge_rescaled: radial_ = outer_radial(p, *spec_.index_set); break;
    case KernelKind::limit_hard_wall: break;
  }
}

Complex Kernel::operator()(Complex z, Complex w) const {
  switch (spec_.kind) {
    case KernelKind::limit_hard_wall: return eval_limit(z, w);
    case KernelKind::edge_rescaled:
    case KernelKind::edge_zoomed: {
      const auto& p = *spec_.params;
      const double n = p.n();
      const Complex zs = zoom_ * z, ws = zoom_ * w;
      Complex value = (*radial_)(p.radius() + zs / n, p.radius() + ws / n) * (zoom_ * zoom_ / (n * n));
      if (spec_.kind == KernelKind::edge_zoomed && spec_.gauge_fixed) {
        value *= std::polar(1.0, -p.radius() * zoom_ * (z.imag() - w.imag()));
      }
      return value;
    }
    default: return (*radial_)(z, w);
  }
}

Complex eval_ginibre(const EnsembleParams& params, Complex z, Complex w) {
  return Kernel({KernelKind::ginibre, params, std::nullopt})(z, w);
}

Complex eval_outer(const EnsembleParams& params, const IndexSet& set, Complex z, Complex w) {
  return Kernel({KernelKind::outer, params, set})(z, w);
}

Complex eval_inner(const EnsembleParams& params, const IndexSet& set, Complex z, Complex w) {
  return Kernel({KernelKind::inner, params, set})(z, w);
}

Complex eval_edge_rescaled(const EnsembleParams& params, const IndexSet& set, Complex z, Complex w) {
  return Kernel({KernelKind::edge_rescaled, params, set})(z, w);
}

Complex eval_edge_direct(const EnsembleParams& params, const IndexSet& set, Complex z, Complex w) {
  const double n = params.n();
  const double r = params.radius();
  // |R + z/N|^2 >= R^2
  if (2.0 * r * z.real() + std::norm(z) / n < 0.0 || 2.0 * r * w.real() + std::norm(w) / n < 0.0) return {0.0, 0.0};
  if (set.empty()) return {0.0, 0.0};
  // (u conj(v) / R^2)^k with u = R + z/N, and the Gaussian factor relative to e^{-N R^2}
  const Complex step = log1p_complex(z / (n * r)) + std::conj(log1p_complex(w / (n * r)));
  const double gauss = -(r * (z.real() + w.real()) + (std::norm(z) + std::norm(w)) / (2.0 * n));
  const double log_n = std::log(n);
  std::vector<double> mag;
  mag.reserve(set.size());
  double top = kNegInf;
  for (int k : set.members()) {
    const double t = log_n + log_poisson_weight(k, params.cutoff()) - gamma::log_Q(k + 1.0, params.cutoff()) +
                     k * step.real();
    mag.push_back(t);
    top = std::max(top, t);
  }
  Complex sum(0.0, 0.0);
  for (std::size_t i = 0; i < mag.size(); ++i) {
    if (mag[i] - top < -RadialKernel::kDropNats) continue;
    sum += std::polar(std::exp(mag[i] - top), set.members()[i] * step.imag());
  }
  return sum * std::exp(top + gauss) / (kPi * n * n);
}

Correlation correlation(std::span<const Complex> points, const Kernel& kernel) {
  const auto k = static_cast<Eigen::Index>(points.size());
  Correlation out;
  if (k == 0) {
    out.value = out.raw = 1.0;
    return out;
  }
  Eigen::MatrixXcd gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) gram(i, j) = kernel(points[i], points[j]);
  }
  out.raw = gram.partialPivLu().determinant().real();
  out.value = std::max(out.raw, 0.0);
  return out;
}

namespace {

template <class F>
void parallel_rows(std::size_t rows, unsigned threads, F&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(rows, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < rows; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < rows; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

KernelGrid tabulate(const Kernel& kernel, std::vector<Complex> z_points, std::vector<Complex> w_points,
                    unsigned threads) {
  KernelGrid grid{kernel.spec(), std::move(z_points), std::move(w_points), false, {}};
  grid.values.resize(grid.rows() * grid.cols());
  parallel_rows(grid.rows(), threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < grid.cols(); ++j) grid.values[i * grid.cols() + j] = kernel(grid.z_points[i], grid.w_points[j]);
  });
  return grid;
}

KernelGrid tabulate_diagonal(const Kernel& kernel, std::vector<Complex> z_points, unsigned threads) {
  KernelGrid grid{kernel.spec(), std::move(z_points), {}, true, {}};
  grid.values.resize(grid.rows());
  parallel_rows(grid.rows(), threads, [&](std::size_t i) { grid.values[i] = kernel(grid.z_points[i], grid.z_points[i]); });
  return grid;
}

std::vector<Complex> lattice(double re0, double re1, int n_re, double im0, double im1, int n_im) {
  if (n_re < 1 || n_im < 1) throw std::invalid_argument("lattice: counts must be positive");
  auto node = [](double lo, double hi, int n, int i) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); };
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(n_re) * n_im);
  for (int i = 0; i < n_re; ++i) {
    for (int j = 0; j < n_im; ++j) out.emplace_back(node(re0, re1, n_re, i), node(im0, im1, n_im, j));
  }
  return out;
}

std::vector<Complex> pointwise_difference(const Kernel& a, const Kernel& b, std::span<const PointPair> pairs) {
  std::optional<RadialKernel> diff;
  if (is_plain_radial(a.spec().kind) && is_plain_radial(b.spec().kind) && a.radial()->weight() == b.radial()->weight()) {
    diff = RadialKernel::difference(*a.radial(), *b.radial());
  }
  std::vector<Complex> out;
  out.reserve(pairs.size());
  for (const auto& [z, w] : pairs) {
    const bool termwise = diff && a.radial()->in_support(z) && a.radial()->in_support(w) &&
                          b.radial()->in_support(z) && b.radial()->in_support(w);
    out.push_back(termwise ? (*diff)(z, w) : a(z, w) - b(z, w));
  }
  return out;
}

SupDifference sup_difference(const Kernel& a, const Kernel& b, std::span<const PointPair> pairs) {
  if (pairs.empty()) throw std::invalid_argument("sup_difference: empty grid");
  const auto diff = pointwise_difference(a, b, pairs);
  SupDifference out{-1.0, pairs[0]};
  for (std::size_t i = 0; i < diff.size(); ++i) {
    const double v = std::abs(diff[i]);
    if (v > out.value) out = {v, pairs[i]};
  }
  return out;
}

GMaxResult g_max_diagnostic(long long l, long long n, long long N, double c) {
  if (l < 1 || n < 0 || n > l || N < 1 || l >= N) throw DomainError("g_max_diagnostic: need 0 <= n <= l < N");
  if (!(c > 0.0 && c < 1.0)) throw DomainError("g_max_diagnostic: need 0 < c < 1");
  GMaxResult out;
  out.bound = static_cast<double>(n) / (N * (1.0 - c));
  out.argmax_s = static_cast<double>(l) / N;
  if (n == 0) return out;
  double log_falling = 0.0;  // log(l (l-1) ... (l-n+1))
  for (long long i = 0; i < n; ++i) log_falling += std::log(static_cast<double>(l - i));
  auto f = [&](double u) {
    return std::exp(log_poisson_weight(static_cast<double>(l - n), u)) *
           std::abs(std::expm1(n * std::log(u) - log_falling));
  };
  const double sd = std::sqrt(static_cast<double>(l));
  const double lo = std::max(0.5, l - 8.0 * sd), hi = l + 8.0 * sd;
  constexpr int kGrid = 4001;
  int best = 0;
  double best_val = -1.0;
  for (int i = 0; i < kGrid; ++i) {
    const double v = f(lo + (hi - lo) * i / (kGrid - 1));
    if (v > best_val) best_val = v, best = i;
  }
  if (best == 0 || best == kGrid - 1) throw ConvergenceError("g_max_diagnostic: maximum on search boundary");
  const double h = (hi - lo) / (kGrid - 1);
  double a = lo + (best - 1) * h, b = lo + (best + 1) * h;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && b - a > 1e-10 * std::max(1.0, b); ++it) {
    if (f1 > f2) {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - phi * (b - a), f1 = f(x1);
    } else {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + phi * (b - a), f2 = f(x2);
    }
  }
  const double u = 0.5 * (a + b);
  out.max_value = std::max(f(u), best_val);
  out.argmax_s = u / N;
  return out;
}

}  // namespace overcrowd
