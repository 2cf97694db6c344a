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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "overcrowd/serialization.hpp"

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = 0;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(OVERCROWD_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, {}};
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("overcrowd_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(Cli, ProbJsonHasBothRoutes) {
  const auto r = run("prob -N 18 -c 0.5 -R 0.9 --oracle");
  ASSERT_EQ(r.code, 0);
  const auto rep = overcrowd::io::prob_report_from_json(r.out);
  EXPECT_EQ(rep.n, 18);
  ASSERT_TRUE(rep.log_oracle);
  EXPECT_NEAR(*rep.log_oracle, rep.log_exact, 1e-12 * std::abs(rep.log_exact));
}

TEST_F(Cli, ProbCsv) {
  const auto r = run("prob -N 30 -c 0.5 -R 0.9 --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("field,value\n", 0), 0u);
  EXPECT_NE(r.out.find("log_exact,"), std::string::npos);
}

TEST_F(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(run("prob -N 20 -c 0.1 -R 0.5").code, 2);  // R^2 <= 1 - c
  EXPECT_EQ(run("prob -N 20 -c 0.5").code, 2);         // missing -R
  EXPECT_EQ(run("kernel --kind nope --grid 0:1:2,0:0:1").code, 2);
  EXPECT_EQ(run("kernel --kind limit --grid 0:1").code, 2);
  EXPECT_EQ(run("validate --tol nope=1").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST_F(Cli, SampleIsByteReproducible) {
  const auto a = dir_ / "a.json", b = dir_ / "b.json";
  ASSERT_EQ(run("sample -N 16 -c 0.5 -R 0.85 --seed 12 --out " + a.string()).code, 0);
  ASSERT_EQ(run("sample -N 16 -c 0.5 -R 0.85 --seed 12 --out " + b.string()).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  const auto c = overcrowd::io::configuration_from_json(slurp(a));
  EXPECT_EQ(c.points.size(), 16u);
  EXPECT_EQ(c.count(overcrowd::Region::outer), 8);
  EXPECT_EQ(c.seed, 12u);
  EXPECT_NE(slurp(a), run("sample -N 16 -c 0.5 -R 0.85 --seed 13").out);
}

TEST_F(Cli, ReplicasIndependentOfThreadCount) {
  const auto one = dir_ / "one", many = dir_ / "many";
  ASSERT_EQ(run("sample -N 12 -c 0.5 -R 0.9 --seed 5 --replicas 3 --format csv --threads 1 --out " + one.string()).code, 0);
  ASSERT_EQ(run("sample -N 12 -c 0.5 -R 0.9 --seed 5 --replicas 3 --format csv --threads 3 --out " + many.string()).code, 0);
  for (int i = 0; i < 3; ++i) {
    char suffix[16];
    std::snprintf(suffix, sizeof suffix, "_%04d", i);
    const fs::path csv1 = one.string() + suffix + ".csv", csv3 = many.string() + suffix + ".csv";
    ASSERT_TRUE(fs::exists(csv3));
    const fs::path hdr = one.string() + suffix + ".header.json";
    ASSERT_TRUE(fs::exists(csv1));
    ASSERT_TRUE(fs::exists(hdr));
    EXPECT_EQ(slurp(csv1), slurp(csv3));
    const auto c = overcrowd::io::configuration_from_csv(slurp(csv1), slurp(hdr));
    EXPECT_EQ(c.points.size(), 12u);
  }
}

TEST_F(Cli, SingleCsvWithSidecar) {
  const auto csv = dir_ / "one.csv";
  ASSERT_EQ(run("sample -N 10 -c 0.5 -R 0.9 --seed 2 --format csv --out " + csv.string()).code, 0);
  const auto hdr = dir_ / "one.header.json";
  ASSERT_TRUE(fs::exists(hdr));
  const auto c = overcrowd::io::configuration_from_csv(slurp(csv), slurp(hdr));
  EXPECT_EQ(c.seed, 2u);
  EXPECT_EQ(c.points.size(), 10u);
}

TEST_F(Cli, RadialOnlySampler) {
  const auto r = run("sample -N 10 -c 0.5 -R 0.9 --seed 1 --radial-only");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(overcrowd::io::configuration_from_json(r.out).sampler, overcrowd::SamplerKind::radial);
}

TEST_F(Cli, KernelGridJson) {
  const auto r = run("kernel -N 40 -c 0.5 -R 0.9 --kind outer --grid 0.95:1.2:3,-0.1:0.1:2");
  ASSERT_EQ(r.code, 0);
  const auto g = overcrowd::io::kernel_grid_from_json(r.out);
  EXPECT_EQ(g.rows(), 6u);
  EXPECT_EQ(g.cols(), 6u);
  EXPECT_EQ(g.spec.kind, overcrowd::KernelKind::outer);
}

TEST_F(Cli, KernelCompareCsv) {
  const auto out = dir_ / "cmp.csv";
  ASSERT_EQ(run("kernel -N 100 -c 0.5 -R 0.9 --compare edge_zoomed limit --grid 0.2:2:4,-1:1:3 --diagonal --format csv --out " +
                out.string())
                .code,
            0);
  const auto t = overcrowd::io::kernel_table_from_csv(slurp(out));
  EXPECT_EQ(t.pairs.size(), 12u);
  for (auto d : t.values) EXPECT_LT(std::abs(d), 0.1);
}

TEST_F(Cli, ValidateSubsetWritesSummary) {
  const auto out = dir_ / "v.json";
  const auto r = run("validate --quick --only 1 10 --out " + out.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[PASS] C1 "), std::string::npos);
  EXPECT_NE(r.out.find("[PASS] C10 "), std::string::npos);
  const auto j = nlohmann::json::parse(slurp(out));
  ASSERT_TRUE(j.contains("results"));
  EXPECT_EQ(j["results"].size(), 2u);
}

TEST_F(Cli, ValidateFailureExitsOne) {
  EXPECT_EQ(run("validate --only 1 --tol c1_rel=1e-30").code, 1);
}

}  // namespace
