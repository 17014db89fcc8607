// Copyright 2026 The octet Authors.
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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "octet/tensor_file.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
  int exit_code = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("octet_cli_" + std::string(::testing::UnitTest::GetInstance()
                                           ->current_test_info()
                                           ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }

  Result run(const std::string& args) const {
    const std::string err_path = path("stderr.txt");
    const std::string cmd =
        std::string(OCTET_CLI_PATH) + " " + args + " 2>" + err_path;
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(err_path);
    std::stringstream ss;
    ss << in.rdbuf();
    r.err = ss.str();
    return r;
  }

  fs::path dir_;
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

// Format name ranked first for `tensor` in a tensor-report CSV.
std::string top_format(const std::string& csv, const std::string& tensor) {
  for (const auto& line : lines(csv)) {
    const auto f = fields(line);
    if (f.size() > 2 && f[0] == tensor && f[1] == "1") return f[2];
  }
  return "";
}

TEST_F(Cli, FormatsFp8) {
  const Result r = run("formats --fp8 e4");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 256u);
  EXPECT_EQ(rows.back(), "0x7F,240");
  EXPECT_EQ(rows[1], "0xFF,-240");
}

TEST_F(Cli, FormatsE0IsUniform) {
  const Result r = run("formats --fp8 e0");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 256u);
  const double step = std::stod(fields(rows[2])[1]) - std::stod(fields(rows[1])[1]);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    EXPECT_EQ(std::stod(fields(rows[i])[1]) - std::stod(fields(rows[i - 1])[1]),
              step);
  }
}

TEST_F(Cli, FormatsInt) {
  const Result r = run("formats --int 8");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 256u);
  EXPECT_EQ(fields(rows[1])[1], "-127");
  EXPECT_EQ(fields(rows[255])[1], "127");
}

TEST_F(Cli, FormatsErrorsNameTheFlag) {
  Result r = run("formats --fp8 e9");
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.err.find("--fp8"), std::string::npos) << r.err;
  r = run("formats");
  EXPECT_NE(r.exit_code, 0);
  r = run("formats --fp8 e4 --int 8");
  EXPECT_NE(r.exit_code, 0);
}

TEST_F(Cli, GatesTable) {
  const Result r = run("gates");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 16u);
  double e4_fp16 = 0;
  double e4_fp32 = 0;
  for (const auto& row : rows) {
    const auto f = fields(row);
    if (f[0] == "e4" && f[1] == "fp16") e4_fp16 = std::stod(f[8]);
    if (f[0] == "e4" && f[1] == "fp32") e4_fp32 = std::stod(f[8]);
  }
  EXPECT_NEAR(e4_fp16, 1.53, 0.08);
  EXPECT_NEAR(e4_fp32, 2.83, 0.15);
}

TEST_F(Cli, MseSweepDefaultRunAndDeterminism) {
  const Result r = run("mse-sweep --out " + path("a.csv"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  std::ifstream in(path("a.csv"));
  std::stringstream ss;
  ss << in.rdbuf();
  const auto rows = lines(ss.str());
  ASSERT_EQ(rows.size(), 19u);
  bool found = false;
  for (const auto& row : rows) {
    const auto f = fields(row);
    if (f[0] == "uniform" && f[1] == "int8") {
      EXPECT_NEAR(std::stod(f[3]), 8.0, 0.02);
      found = true;
    }
  }
  EXPECT_TRUE(found);
  // Lloyd-Max rows dominate every format row of their distribution.
  for (std::size_t d = 0; d < 3; ++d) {
    const double lloyd = std::stod(fields(rows[1 + 6 * d + 5])[3]);
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_GE(lloyd, std::stod(fields(rows[1 + 6 * d + i])[3]) - 0.05);
    }
  }

  const std::string args = "mse-sweep --samples 100000 --seed 9 --nu 3";
  const Result a = run(args);
  const Result b = run(args);
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("student_t(3)"), std::string::npos);
  EXPECT_EQ(lines(run(args + " --no-lloyd").out).size(), 16u);
}

TEST_F(Cli, MseSweepErrors) {
  Result r = run("mse-sweep --samples 10");
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.err.find("--samples"), std::string::npos) << r.err;
  r = run("mse-sweep --dists cauchy");
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.err.find("--dists"), std::string::npos) << r.err;
  r = run("mse-sweep --formats e4,fp16");
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.err.find("--formats"), std::string::npos) << r.err;
}

TEST_F(Cli, TensorReportRankings) {
  const std::string g = path("gauss.qt");
  const std::string o = path("outlier.qt");
  ASSERT_EQ(run("synth --shape 256,256 --seed 1 --out " + g).exit_code, 0);
  ASSERT_EQ(run("synth --shape 256,256 --seed 1 --outlier-fraction 0.001 "
                "--outlier-scale 1000 --out " + o)
                .exit_code,
            0);
  const Result r = run("tensor-report " + g + " " + o);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const std::string gauss_top = top_format(r.out, g);
  EXPECT_TRUE(gauss_top == "int8" || gauss_top == "e2") << gauss_top;
  EXPECT_EQ(top_format(r.out, o), "e4");
  EXPECT_EQ(lines(r.out).size(), 11u);

  const Result pc = run("tensor-report --granularity per-channel=0 --range mse " + g);
  ASSERT_EQ(pc.exit_code, 0) << pc.err;
  EXPECT_NE(pc.out.find("per-channel=0,mse"), std::string::npos);
}

TEST_F(Cli, TensorReportErrors) {
  const std::string empty = path("empty.qt");
  { std::ofstream(empty, std::ios::binary); }
  Result r = run("tensor-report " + empty);
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.err.find(empty), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("offset 0"), std::string::npos) << r.err;

  r = run("tensor-report " + path("missing.qt"));
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.err.find("missing.qt"), std::string::npos) << r.err;

  const std::string g = path("g.qt");
  ASSERT_EQ(run("synth --shape 16 --out " + g).exit_code, 0);
  r = run("tensor-report --range bogus " + g);
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.err.find("--range"), std::string::npos) << r.err;
  r = run("tensor-report --granularity per-channel=3 " + g);
  EXPECT_NE(r.exit_code, 0);
  r = run("tensor-report " + g + " --out " + path("no/such/dir.csv"));
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.err.find("--out"), std::string::npos) << r.err;
}

TEST_F(Cli, SynthRoundTripsPayload) {
  const std::string a = path("a.qt");
  const std::string b = path("b.qt");
  ASSERT_EQ(run("synth --dist student_t --shape 8,16 --seed 5 --out " + a)
                .exit_code,
            0);
  const octet::Tensor t = octet::read_tensor_file(a);
  EXPECT_EQ(t.shape(), (std::vector<std::size_t>{8, 16}));
  octet::write_tensor_file(b, t);
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  const std::string ba((std::istreambuf_iterator<char>(fa)), {});
  const std::string bb((std::istreambuf_iterator<char>(fb)), {});
  EXPECT_EQ(ba, bb);
  EXPECT_NE(run("synth --shape 4,0 --out " + a).exit_code, 0);
  EXPECT_NE(run("synth --shape 4").exit_code, 0);
}

TEST_F(Cli, ConvertGridAndTensors) {
  Result r = run("convert --fp8 e4 --int 8");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(lines(r.out).at(1), "e4,int8,2,0.9554707845052083,1,-15,15");
  r = run("convert --fp8 e0");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(fields(lines(r.out).at(1))[3], "1");

  const std::string s = path("snap.qt");
  ASSERT_EQ(run("synth --shape 64,64 --seed 3 --snap e4 --out " + s).exit_code,
            0);
  double mse[2];
  int i = 0;
  for (const char* range : {"minmax", "mse"}) {
    r = run(std::string("convert --fp8 e4 --range ") + range + " " + s);
    ASSERT_EQ(r.exit_code, 0) << r.err;
    mse[i++] = std::stod(fields(lines(r.out).at(1))[5]);
  }
  EXPECT_LE(mse[1], mse[0]);
  r = run("convert --fp8 e4 --range matched " + s);
  ASSERT_EQ(r.exit_code, 0) << r.err;

  const std::string raw = path("raw.qt");
  ASSERT_EQ(run("synth --shape 64 --out " + raw).exit_code, 0);
  r = run("convert --fp8 e4 " + raw);
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.err.find(raw), std::string::npos) << r.err;
  r = run("convert --fp8 int8");
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.err.find("--fp8"), std::string::npos) << r.err;
}

}  // namespace
