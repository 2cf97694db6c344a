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

// overcrowd: probabilities, samples, kernel grids and the acceptance suite
// for the Ginibre overcrowding event.
//
// Exit codes: 0 success, 1 validation failure, 2 invalid input,
// 3 numeric failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "overcrowd/error.hpp"
#include "overcrowd/kernels.hpp"
#include "overcrowd/sampler.hpp"
#include "overcrowd/serialization.hpp"
#include "overcrowd/validation.hpp"

namespace {

using namespace overcrowd;

constexpr int kExitInvalid = 2;
constexpr int kExitNumeric = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int n = 0;
  double c = 0.0;
  double radius = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  std::string grid;
  int replicas = 1;
  bool radial_only = false;
  bool oracle = false;
  bool quick = false;
  bool diagonal = false;
  bool no_gauge = false;
  double rel_tol = 1e-14;
  unsigned threads = 1;
  std::string kind = "limit";
  std::string index_set;
  std::vector<std::string> compare;
  std::vector<std::string> tol;
  std::vector<int> only;

  EnsembleParams params() const { return EnsembleParams(n, c, radius); }
};

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "' for writing");
  f << content;
}

// --grid re0:re1:n,im0:im1:n
std::vector<Complex> parse_grid(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InputError("malformed --grid '" + text + "': expected re0:re1:n,im0:im1:n");
  auto axis = [&](const std::string& part, double& lo, double& hi, int& count) {
    std::vector<std::string> f;
    std::stringstream ss(part);
    for (std::string item; std::getline(ss, item, ':');) f.push_back(item);
    if (f.size() != 3) throw InputError("malformed --grid axis '" + part + "'");
    try {
      lo = io::parse_double(f[0]);
      hi = io::parse_double(f[1]);
      std::size_t used = 0;
      count = std::stoi(f[2], &used);
      if (used != f[2].size()) throw std::invalid_argument("count");
    } catch (const std::exception&) {
      throw InputError("malformed --grid axis '" + part + "'");
    }
    if (count < 1 || !std::isfinite(lo) || !std::isfinite(hi)) throw InputError("malformed --grid axis '" + part + "'");
  };
  double re0, re1, im0, im1;
  int n_re, n_im;
  axis(text.substr(0, comma), re0, re1, n_re);
  axis(text.substr(comma + 1), im0, im1, n_im);
  return lattice(re0, re1, n_re, im0, im1, n_im);
}

KernelSpec make_spec(const RunConfig& cfg, const std::string& kind_name) {
  KernelSpec spec;
  try {
    spec.kind = parse_kernel_kind(kind_name);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  spec.gauge_fixed = !cfg.no_gauge;
  if (spec.needs_params()) spec.params = cfg.params();
  if (spec.needs_index_set() && !cfg.index_set.empty()) {
    std::vector<int> members;
    std::stringstream ss(cfg.index_set);
    for (std::string item; std::getline(ss, item, ',');) {
      try {
        members.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw InputError("malformed --index-set '" + cfg.index_set + "'");
      }
    }
    spec.index_set = IndexSet(cfg.n, members);
  }
  return spec;
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") throw InputError("--format must be csv or json");
}

int cmd_prob(const RunConfig& cfg) {
  check_format(cfg.format);
  const auto report = io::make_prob_report(cfg.params(), cfg.rel_tol, cfg.oracle);
  if (cfg.format == "json") {
    write_output(cfg.out, io::prob_report_to_json(report));
  } else {
    std::string csv = "field,value\n";
    auto row = [&](const char* k, double v) { csv += std::string(k) + "," + io::format_double(v) + "\n"; };
    row("log_exact", report.log_exact);
    row("log_asymptotic", report.log_asymptotic);
    row("log_ratio", report.log_ratio);
    row("ratio", report.ratio);
    row("log_hole_product", report.log_hole_product);
    row("log_partition_series", report.log_partition_series);
    row("log_hole_product_alt", report.log_hole_product_alt);
    if (report.log_oracle) row("log_oracle", *report.log_oracle);
    write_output(cfg.out, csv);
  }
  return 0;
}

int cmd_sample(const RunConfig& cfg) {
  check_format(cfg.format);
  if (cfg.replicas < 1) throw InputError("--replicas must be positive");
  if (cfg.replicas > 1 && (cfg.out.empty() || cfg.out == "-")) throw InputError("--replicas > 1 needs --out PREFIX");
  const EnsembleSampler sampler(cfg.params());
  const auto kind = cfg.radial_only ? SamplerKind::radial : SamplerKind::sequential;
  const RandomStream root(cfg.seed, 0);
  std::vector<std::optional<PointConfiguration>> results(cfg.replicas);
  std::vector<std::string> errors(cfg.replicas);
  unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  threads = std::min<unsigned>(threads, cfg.replicas);
  auto work = [&](unsigned t) {
    for (int i = static_cast<int>(t); i < cfg.replicas; i += static_cast<int>(threads)) {
      RandomStream rng = root.derive(static_cast<std::uint64_t>(i));
      try {
        results[i] = sampler.sample(rng, kind);
      } catch (const SamplingError& e) {
        errors[i] = e.what();
      }
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (int i = 0; i < cfg.replicas; ++i) {
    if (!errors[i].empty()) throw SamplingError("replica " + std::to_string(i) + ": " + errors[i]);
  }
  const bool to_stdout = cfg.out.empty() || cfg.out == "-";
  for (int i = 0; i < cfg.replicas; ++i) {
    const auto& conf = *results[i];
    // One replica: --out is the file. Several: --out is a prefix.
    std::string path = cfg.out;
    if (cfg.replicas > 1) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "_%04d", i);
      path += std::string(buf) + "." + cfg.format;
    }
    if (cfg.format == "json") {
      write_output(path, io::configuration_to_json(conf));
    } else {
      write_output(path, io::configuration_to_csv(conf));
      if (!to_stdout) {
        write_output(std::filesystem::path(path).replace_extension(".header.json").string(),
                     io::configuration_header_json(conf));
      }
    }
  }
  return 0;
}

int cmd_kernel(const RunConfig& cfg) {
  check_format(cfg.format);
  if (cfg.grid.empty()) throw InputError("kernel needs --grid re0:re1:n,im0:im1:n");
  auto z = parse_grid(cfg.grid);
  if (!cfg.compare.empty()) {
    if (cfg.compare.size() != 2) throw InputError("--compare takes two kernel kinds");
    const Kernel a(make_spec(cfg, cfg.compare[0])), b(make_spec(cfg, cfg.compare[1]));
    std::vector<PointPair> pairs;
    for (const auto& zi : z) {
      if (cfg.diagonal) {
        pairs.push_back({zi, zi});
      } else {
        for (const auto& wj : z) pairs.push_back({zi, wj});
      }
    }
    const auto cmp = io::compare_kernels(a, b, std::move(pairs));
    write_output(cfg.out, cfg.format == "json" ? io::comparison_to_json(cmp) : io::comparison_to_csv(cmp));
    std::cerr << "sup |" << cfg.compare[0] << " - " << cfg.compare[1] << "| = " << io::format_double(cmp.sup.value)
              << " at z = " << io::format_double(cmp.sup.argmax.z.real()) << (cmp.sup.argmax.z.imag() < 0 ? "" : "+")
              << io::format_double(cmp.sup.argmax.z.imag()) << "i, w = " << io::format_double(cmp.sup.argmax.w.real())
              << (cmp.sup.argmax.w.imag() < 0 ? "" : "+") << io::format_double(cmp.sup.argmax.w.imag()) << "i\n";
    return 0;
  }
  const Kernel kernel(make_spec(cfg, cfg.kind));
  const auto grid = cfg.diagonal ? tabulate_diagonal(kernel, std::move(z), cfg.threads)
                                 : tabulate(kernel, z, z, cfg.threads);
  write_output(cfg.out, cfg.format == "json" ? io::kernel_grid_to_json(grid) : io::kernel_grid_to_csv(grid));
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  validation::Options options;
  options.quick = cfg.quick;
  options.only = cfg.only;
  for (const auto& t : cfg.tol) {
    try {
      options.tol.set(t);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  options.on_result = [](const validation::CriterionResult& r) {
    std::cout << validation::format_result(r) << std::endl;
  };
  const auto results = validation::run_acceptance(options);
  int failed = 0;
  std::string failures;
  for (const auto& r : results) {
    if (!r.passed) {
      ++failed;
      failures += " C" + std::to_string(r.id);
    }
  }
  if (!cfg.out.empty()) {
    nlohmann::ordered_json j{{"schema", "overcrowd.validate/1"}, {"quick", cfg.quick}, {"results", nlohmann::json::array()}};
    for (const auto& r : results) {
      j["results"].push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    write_output(cfg.out, j.dump(1) + "\n");
  }
  if (failed) {
    std::cout << failed << " of " << results.size() << " criteria failed:" << failures << std::endl;
    return 1;
  }
  std::cout << "all " << results.size() << " criteria passed" << std::endl;
  return 0;
}

void add_params(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("-N", cfg.n, "matrix size")->required();
  cmd->add_option("-c", cfg.c, "fraction of eigenvalues outside radius R")->required();
  cmd->add_option("-R", cfg.radius, "disk radius")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ginibre overcrowding: exact probabilities, conditioned samples and kernels"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* prob = app.add_subcommand("prob", "exact and asymptotic log-probability of the overcrowding event");
  add_params(prob, cfg);
  prob->add_flag("--oracle", cfg.oracle, "add the 2^N subset enumeration (N <= 24)");
  prob->add_option("--rel-tol", cfg.rel_tol, "partition-series truncation tolerance");
  prob->add_option("--out", cfg.out, "output file (default stdout)");
  prob->add_option("--format", cfg.format, "csv or json");

  auto* sample = app.add_subcommand("sample", "exact samples of the conditioned ensemble");
  add_params(sample, cfg);
  sample->add_option("--seed", cfg.seed, "random seed")->required();
  sample->add_option("--replicas", cfg.replicas, "number of configurations");
  sample->add_flag("--radial-only", cfg.radial_only, "moduli sampler with uniform angles (radial statistics only)");
  sample->add_option("--out", cfg.out, "output file; with --replicas > 1 a prefix for PREFIX_0000.<format>");
  sample->add_option("--format", cfg.format, "csv (with .header.json sidecar) or json");
  sample->add_option("--threads", cfg.threads, "worker threads, 0 for all cores");

  auto* kernel = app.add_subcommand("kernel", "tabulate a kernel or the difference of two");
  kernel->add_option("-N", cfg.n, "matrix size");
  kernel->add_option("-c", cfg.c, "fraction of eigenvalues outside radius R");
  kernel->add_option("-R", cfg.radius, "disk radius");
  kernel->add_option("--kind", cfg.kind, "ginibre, scaled_ginibre, outer, inner, edge, edge_zoomed or limit");
  kernel->add_option("--grid", cfg.grid, "re0:re1:n,im0:im1:n")->required();
  kernel->add_flag("--diagonal", cfg.diagonal, "only K(z, z)");
  kernel->add_option("--compare", cfg.compare, "two kinds A B: tabulate A - B and report the sup")->expected(2);
  kernel->add_option("--index-set", cfg.index_set, "comma-separated J (default J_0 = top N_c indices)");
  kernel->add_flag("--no-gauge", cfg.no_gauge, "keep the phase factor in edge_zoomed");
  kernel->add_option("--out", cfg.out, "output file (default stdout)");
  kernel->add_option("--format", cfg.format, "csv or json");
  kernel->add_option("--threads", cfg.threads, "worker threads, 0 for all cores");

  auto* validate = app.add_subcommand("validate", "run the acceptance suite");
  validate->add_flag("--quick", cfg.quick, "reduced sample sizes");
  validate->add_option("--tol", cfg.tol, "tolerance override KEY=VAL (repeatable)");
  validate->add_option("--only", cfg.only, "criterion ids to run");
  validate->add_option("--out", cfg.out, "JSON summary file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (kernel->parsed() && cfg.kind != "limit" && cfg.compare.empty() && cfg.n == 0) {
      throw InputError("kernel --kind " + cfg.kind + " needs -N, -c and -R");
    }
    if (prob->parsed()) return cmd_prob(cfg);
    if (sample->parsed()) return cmd_sample(cfg);
    if (kernel->parsed()) return cmd_kernel(cfg);
    if (validate->parsed()) return cmd_validate(cfg);
  } catch (const InvalidParams& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const SamplingError& e) {
    std::cerr << "sampling failed: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
