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

#include "overcrowd/serialization.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "overcrowd/mixture.hpp"

namespace overcrowd::io {
namespace {

using nlohmann::json;

constexpr const char* kGridSchema = "overcrowd.kernel_grid/1";
constexpr const char* kConfigSchema = "overcrowd.configuration/1";
constexpr const char* kProbSchema = "overcrowd.prob/1";
constexpr const char* kCompareSchema = "overcrowd.kernel_compare/1";

json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

double read_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_double(j.get<std::string>());
  throw std::invalid_argument("expected a number, got " + j.dump());
}

json complex_json(Complex z) { return json::array({number(z.real()), number(z.imag())}); }

Complex read_complex(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [re, im], got " + j.dump());
  return {read_number(j[0]), read_number(j[1])};
}

json complex_list(const std::vector<Complex>& zs) {
  json out = json::array();
  for (const auto& z : zs) out.push_back(complex_json(z));
  return out;
}

std::vector<Complex> read_complex_list(const json& j) {
  std::vector<Complex> out;
  for (const auto& z : j) out.push_back(read_complex(z));
  return out;
}

json params_json(const EnsembleParams& p) {
  return {{"N", p.n()}, {"c", number(p.c())}, {"R", number(p.radius())}, {"N_c", p.n_outside()}};
}

EnsembleParams read_params(const json& j) {
  return EnsembleParams(j.at("N").get<int>(), read_number(j.at("c")), read_number(j.at("R")));
}

json index_json(const IndexSet& set) { return {{"universe", set.universe()}, {"members", set.members()}}; }

IndexSet read_index(const json& j) {
  return IndexSet(j.at("universe").get<int>(), j.at("members").get<std::vector<int>>());
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

void expect_schema(const json& j, const char* schema) {
  if (j.value("schema", std::string()) != schema) {
    throw std::invalid_argument(std::string("expected schema ") + schema);
  }
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

json config_header(const PointConfiguration& c) {
  return {{"schema", kConfigSchema},
          {"params", params_json(c.params)},
          {"index_set", index_json(c.index_set)},
          {"region", to_string(c.region)},
          {"sampler", to_string(c.sampler)},
          {"seed", c.seed},
          {"stream", c.stream},
          {"count", c.points.size()}};
}

PointConfiguration read_config_header(const json& j) {
  expect_schema(j, kConfigSchema);
  return PointConfiguration{{},
                            {},
                            read_params(j.at("params")),
                            read_index(j.at("index_set")),
                            parse_region(j.at("region").get<std::string>()),
                            j.at("seed").get<std::uint64_t>(),
                            j.at("stream").get<std::uint64_t>(),
                            parse_sampler_kind(j.at("sampler").get<std::string>())};
}

void check_labels(const PointConfiguration& c) {
  for (auto r : c.labels) {
    if (r == Region::full) throw std::invalid_argument("point label must be outer or inner");
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double x = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return x;
}

std::string kernel_grid_to_json(const KernelGrid& grid) {
  json j{{"schema", kGridSchema},
         {"kind", to_string(grid.spec.kind)},
         {"params", grid.spec.params ? params_json(*grid.spec.params) : json(nullptr)},
         {"index_set", grid.spec.index_set ? index_json(*grid.spec.index_set) : json(nullptr)},
         {"gauge_fixed", grid.spec.gauge_fixed},
         {"diagonal", grid.diagonal},
         {"z", complex_list(grid.z_points)},
         {"w", complex_list(grid.w_points)},
         {"rows", grid.rows()},
         {"cols", grid.cols()},
         {"values", complex_list(grid.values)}};
  return j.dump(1) + "\n";
}

KernelGrid kernel_grid_from_json(std::string_view text) {
  const json j = parse_json(text);
  expect_schema(j, kGridSchema);
  KernelGrid grid;
  grid.spec.kind = parse_kernel_kind(j.at("kind").get<std::string>());
  if (!j.at("params").is_null()) grid.spec.params = read_params(j["params"]);
  if (!j.at("index_set").is_null()) grid.spec.index_set = read_index(j["index_set"]);
  grid.spec.gauge_fixed = j.at("gauge_fixed").get<bool>();
  grid.diagonal = j.at("diagonal").get<bool>();
  grid.z_points = read_complex_list(j.at("z"));
  grid.w_points = read_complex_list(j.at("w"));
  grid.values = read_complex_list(j.at("values"));
  if (grid.values.size() != grid.rows() * grid.cols()) throw std::invalid_argument("kernel grid: value count mismatch");
  return grid;
}

namespace {

json spec_json(const KernelSpec& spec) {
  return {{"kind", to_string(spec.kind)},
          {"params", spec.params ? params_json(*spec.params) : json(nullptr)},
          {"index_set", spec.index_set ? index_json(*spec.index_set) : json(nullptr)},
          {"gauge_fixed", spec.gauge_fixed}};
}

KernelSpec read_spec(const json& j) {
  KernelSpec spec;
  spec.kind = parse_kernel_kind(j.at("kind").get<std::string>());
  if (!j.at("params").is_null()) spec.params = read_params(j["params"]);
  if (!j.at("index_set").is_null()) spec.index_set = read_index(j["index_set"]);
  spec.gauge_fixed = j.at("gauge_fixed").get<bool>();
  return spec;
}

json pair_list(const std::vector<PointPair>& pairs) {
  json out = json::array();
  for (const auto& [z, w] : pairs) out.push_back({complex_json(z), complex_json(w)});
  return out;
}

std::vector<PointPair> read_pair_list(const json& j) {
  std::vector<PointPair> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw std::invalid_argument("pair must be [[re, im], [re, im]]");
    out.push_back({read_complex(p[0]), read_complex(p[1])});
  }
  return out;
}

std::string table_csv(const std::vector<PointPair>& pairs, const std::vector<Complex>& values) {
  std::string out = "z_re,z_im,w_re,w_im,K_re,K_im\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [z, w] = pairs[i];
    for (double x : {z.real(), z.imag(), w.real(), w.imag(), values[i].real()}) out += format_double(x) + ",";
    out += format_double(values[i].imag()) + "\n";
  }
  return out;
}

}  // namespace

KernelComparison compare_kernels(const Kernel& a, const Kernel& b, std::vector<PointPair> pairs) {
  KernelComparison cmp{a.spec(), b.spec(), std::move(pairs), {}, {}};
  cmp.differences = pointwise_difference(a, b, cmp.pairs);
  cmp.sup = sup_difference(a, b, cmp.pairs);
  return cmp;
}

std::string comparison_to_json(const KernelComparison& cmp) {
  json j{{"schema", kCompareSchema},
         {"a", spec_json(cmp.a)},
         {"b", spec_json(cmp.b)},
         {"sup", number(cmp.sup.value)},
         {"argmax", {complex_json(cmp.sup.argmax.z), complex_json(cmp.sup.argmax.w)}},
         {"pairs", pair_list(cmp.pairs)},
         {"differences", complex_list(cmp.differences)}};
  return j.dump(1) + "\n";
}

KernelComparison comparison_from_json(std::string_view text) {
  const json j = parse_json(text);
  expect_schema(j, kCompareSchema);
  KernelComparison cmp{read_spec(j.at("a")), read_spec(j.at("b")), read_pair_list(j.at("pairs")),
                       read_complex_list(j.at("differences")), {}};
  cmp.sup.value = read_number(j.at("sup"));
  const auto& am = j.at("argmax");
  cmp.sup.argmax = {read_complex(am.at(0)), read_complex(am.at(1))};
  if (cmp.pairs.size() != cmp.differences.size()) throw std::invalid_argument("comparison: length mismatch");
  return cmp;
}

std::string comparison_to_csv(const KernelComparison& cmp) { return table_csv(cmp.pairs, cmp.differences); }

KernelTable kernel_table(const KernelGrid& grid) {
  KernelTable t;
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      t.pairs.push_back({grid.z_points[i], grid.diagonal ? grid.z_points[i] : grid.w_points[j]});
      t.values.push_back(grid.at(i, j));
    }
  }
  return t;
}

std::string kernel_grid_to_csv(const KernelGrid& grid) {
  const auto t = kernel_table(grid);
  return table_csv(t.pairs, t.values);
}

KernelTable kernel_table_from_csv(std::string_view text) {
  const auto rows = lines(text);
  if (rows.empty() || rows[0].rfind("z_re,z_im,w_re,w_im,K_re,K_im", 0) != 0) {
    throw std::invalid_argument("kernel CSV: missing header");
  }
  KernelTable t;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto cells = split(rows[r], ',');
    if (cells.size() < 6) throw std::invalid_argument("kernel CSV: short row " + std::to_string(r + 1));
    double v[6];
    for (int i = 0; i < 6; ++i) v[i] = parse_double(cells[i]);
    t.pairs.push_back({{v[0], v[1]}, {v[2], v[3]}});
    t.values.emplace_back(v[4], v[5]);
  }
  return t;
}

std::string configuration_header_json(const PointConfiguration& config) { return config_header(config).dump(1) + "\n"; }

std::string configuration_to_json(const PointConfiguration& config) {
  json j = config_header(config);
  json pts = json::array();
  for (std::size_t i = 0; i < config.points.size(); ++i) {
    pts.push_back({number(config.points[i].real()), number(config.points[i].imag()), to_string(config.labels.at(i))});
  }
  j["points"] = std::move(pts);
  return j.dump(1) + "\n";
}

PointConfiguration configuration_from_json(std::string_view text) {
  const json j = parse_json(text);
  auto c = read_config_header(j);
  for (const auto& p : j.at("points")) {
    if (!p.is_array() || p.size() != 3) throw std::invalid_argument("point must be [re, im, region]");
    c.points.emplace_back(read_number(p[0]), read_number(p[1]));
    c.labels.push_back(parse_region(p[2].get<std::string>()));
  }
  check_labels(c);
  return c;
}

std::string configuration_to_csv(const PointConfiguration& config) {
  std::string out = "re,im,region\n";
  for (std::size_t i = 0; i < config.points.size(); ++i) {
    out += format_double(config.points[i].real()) + "," + format_double(config.points[i].imag()) + "," +
           std::string(to_string(config.labels.at(i))) + "\n";
  }
  return out;
}

PointConfiguration configuration_from_csv(std::string_view csv, std::string_view header_json) {
  auto c = read_config_header(parse_json(header_json));
  const auto rows = lines(csv);
  if (rows.empty() || rows[0] != "re,im,region") throw std::invalid_argument("configuration CSV: missing header");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto cells = split(rows[r], ',');
    if (cells.size() != 3) throw std::invalid_argument("configuration CSV: bad row " + std::to_string(r + 1));
    c.points.emplace_back(parse_double(cells[0]), parse_double(cells[1]));
    c.labels.push_back(parse_region(cells[2]));
  }
  check_labels(c);
  return c;
}

ProbReport make_prob_report(const EnsembleParams& params, double rel_tol, bool oracle) {
  ProbReport r;
  r.n = params.n();
  r.c = params.c();
  r.radius = params.radius();
  r.n_outside = params.n_outside();
  const auto weights = mixture::bernoulli_weights(params);
  r.log_exact = mixture::poisson_binomial(weights).log_prob(params.n_outside());
  const auto asym = mixture::overcrowding_probability_asymptotic(params, rel_tol);
  r.log_asymptotic = asym.log_value;
  r.log_ratio = r.log_exact - r.log_asymptotic;
  r.ratio = std::exp(r.log_ratio);
  r.log_hole_product = asym.log_hole_product;
  r.log_partition_series = asym.series.log_value;
  r.series_terms = asym.series.terms;
  r.log_series_tail_bound = asym.series.log_tail_bound;
  r.log_hole_product_alt = asym.log_hole_product_alt;
  if (oracle) r.log_oracle = mixture::brute_force_count_distribution(weights).log_prob(params.n_outside());
  return r;
}

std::string prob_report_to_json(const ProbReport& r) {
  json j{{"schema", kProbSchema},
         {"params", {{"N", r.n}, {"c", number(r.c)}, {"R", number(r.radius)}, {"N_c", r.n_outside}}},
         {"log_exact", number(r.log_exact)},
         {"log_asymptotic", number(r.log_asymptotic)},
         {"log_ratio", number(r.log_ratio)},
         {"ratio", number(r.ratio)},
         {"log_hole_product", number(r.log_hole_product)},
         {"log_partition_series", number(r.log_partition_series)},
         {"series_terms", r.series_terms},
         {"log_series_tail_bound", number(r.log_series_tail_bound)},
         {"log_hole_product_alt", number(r.log_hole_product_alt)}};
  if (r.log_oracle) j["log_oracle"] = number(*r.log_oracle);
  return j.dump(1) + "\n";
}

ProbReport prob_report_from_json(std::string_view text) {
  const json j = parse_json(text);
  expect_schema(j, kProbSchema);
  ProbReport r;
  const auto& p = j.at("params");
  r.n = p.at("N").get<int>();
  r.c = read_number(p.at("c"));
  r.radius = read_number(p.at("R"));
  r.n_outside = p.at("N_c").get<int>();
  r.log_exact = read_number(j.at("log_exact"));
  r.log_asymptotic = read_number(j.at("log_asymptotic"));
  r.log_ratio = read_number(j.at("log_ratio"));
  r.ratio = read_number(j.at("ratio"));
  r.log_hole_product = read_number(j.at("log_hole_product"));
  r.log_partition_series = read_number(j.at("log_partition_series"));
  r.series_terms = j.at("series_terms").get<std::size_t>();
  r.log_series_tail_bound = read_number(j.at("log_series_tail_bound"));
  r.log_hole_product_alt = read_number(j.at("log_hole_product_alt"));
  if (j.contains("log_oracle")) r.log_oracle = read_number(j["log_oracle"]);
  return r;
}

}  // namespace overcrowd::io
