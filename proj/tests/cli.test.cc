// Copyright 2026 The cvcz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvcz/cli.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gtest/gtest.h"

using namespace cvcz;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation run(std::vector<std::string> args) {
    args.insert(args.begin(), "cvcz");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return Invocation{code, out.str(), err.str()};
}

std::filesystem::path scratch_dir(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / ("cvcz_cli_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(cli, format_number) {
    EXPECT_EQ(format_number(1 / std::sqrt(3.0)), "0.577350");
    EXPECT_EQ(format_number(0), "0.00000");
    EXPECT_EQ(format_number(512), "512.000");
}

TEST(cli, to_csv) {
    Table t{"t", {"a", "b"}, {{1, 0.5}, {2, 0.25}}};
    EXPECT_EQ(to_csv(t), "a,b\n1.00000,0.500000\n2.00000,0.250000\n");
    auto j = nlohmann::json::parse(to_json(t));
    EXPECT_EQ(j["name"], "t");
    EXPECT_EQ(j["rows"][1][1], 0.25);
}

TEST(cli, fidelity_ideal) {
    Invocation r = run({"fidelity", "--ideal", "--kappa0", "0", "--s-db", "0"});
    EXPECT_EQ(r.code, EXIT_OK);
    EXPECT_EQ(r.out, "0.577350\n");
    r = run({"fidelity", "--kappa0", "0", "--format", "json"});
    EXPECT_EQ(r.code, EXIT_OK);
    EXPECT_NEAR(nlohmann::json::parse(r.out)["fidelity"].get<double>(), 1 / std::sqrt(3.0), 1e-15);
}

TEST(cli, fidelity_noisy) {
    Invocation r = run({"fidelity", "--noisy", "--r", "0.01", "--eta", "0.01", "--kappa0", "19.9", "--s-db", "5", "--slices",
                 "2048"});
    ASSERT_EQ(r.code, EXIT_OK) << r.err;
    double f = std::stod(r.out);
    EXPECT_GE(f, 0.87);
    EXPECT_LE(f, 0.91);
}

TEST(cli, flag_errors) {
    EXPECT_EQ(run({"fidelity", "--ideal", "--kappa0", "-1"}).code, EXIT_BAD_FLAGS);
    Invocation both = run({"fidelity", "--s", "0.1", "--s-db", "1"});
    EXPECT_EQ(both.code, EXIT_BAD_FLAGS);
    EXPECT_NE(both.err.find("--s-db"), std::string::npos);
    EXPECT_EQ(run({"fidelity", "--r", "0.1"}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({"fidelity", "--noisy", "--r", "0.5"}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({"fidelity", "--noisy", "--slices", "0"}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({"fidelity", "--format", "xml"}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({"fidelity", "--bogus"}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({"reproduce", "fig9"}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({"convergence", "--slices", "64,16"}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({"optimize", "--kappa0-min", "0"}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({"--help"}).code, EXIT_OK);
}

TEST(cli, io_errors) {
    EXPECT_EQ(run({"reproduce", "fig2", "--out", "/nonexistent/dir"}).code, EXIT_IO);
    EXPECT_EQ(run({"fidelity", "--out", "/nonexistent/dir/f.csv"}).code, EXIT_IO);
}

TEST(cli, reproduce_fig2) {
    auto dir = scratch_dir("fig2");
    Invocation r = run({"reproduce", "fig2", "--out", dir.string()});
    ASSERT_EQ(r.code, EXIT_OK) << r.err;
    std::string csv = slurp(dir / "fig2.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "kappa0,F_0dB,F_3dB,F_5dB,F_10dB");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 302);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    EXPECT_NE(csv.find("\n0.00000,0.577350,"), std::string::npos);
    EXPECT_EQ(r.out, (dir / "fig2.csv").string() + "\n");
    std::filesystem::remove_all(dir);
}

TEST(cli, optimize_json) {
    std::vector<std::string> args{"optimize", "--r", "0.05", "--eta", "0.05", "--s-db", "5"};
    Invocation a = run(args);
    ASSERT_EQ(a.code, EXIT_OK) << a.err;
    auto j = nlohmann::json::parse(a.out);
    EXPECT_NEAR(j["kappa0_opt"].get<double>(), 8.78, 0.15 * 8.78);
    EXPECT_NEAR(j["fidelity_opt"].get<double>(), 0.66, 0.02);
    EXPECT_FALSE(j["monotone"].get<bool>());
    EXPECT_EQ(run(args).out, a.out);

    Invocation m = run({"optimize", "--r", "0", "--eta", "0", "--slices", "8"});
    ASSERT_EQ(m.code, EXIT_OK) << m.err;
    EXPECT_NE(m.out.find("\"monotone\": true"), std::string::npos);
}

TEST(cli, convergence) {
    Invocation r = run({"convergence", "--kappa0", "5", "--s-db", "5", "--slices", "16,64,256,1024"});
    ASSERT_EQ(r.code, EXIT_OK) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "slices,fidelity,error");
    size_t rows = 0;
    while (std::getline(in, line)) {
        double err = std::stod(line.substr(line.rfind(',') + 1));
        EXPECT_LE(err, 1e-3);
        rows++;
    }
    EXPECT_EQ(rows, 4u);

    Invocation one = run({"convergence", "--kappa0", "5", "--slices", "32"});
    EXPECT_EQ(one.code, EXIT_OK);
    EXPECT_EQ(std::count(one.out.begin(), one.out.end(), '\n'), 2);
}

TEST(cli, convergence_lossy_errors_decrease) {
    Invocation r = run({"convergence", "--kappa0", "5", "--s-db", "5", "--r", "0.05", "--eta", "0.1", "--slices",
                 "16,64,256,1024"});
    ASSERT_EQ(r.code, EXIT_OK) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    double prev = 1;
    while (std::getline(in, line)) {
        double err = std::stod(line.substr(line.rfind(',') + 1));
        EXPECT_LT(err, prev);
        prev = err;
    }
}

TEST(cli, check) {
    Invocation r = run({"check"});
    EXPECT_EQ(r.code, EXIT_OK) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
}
