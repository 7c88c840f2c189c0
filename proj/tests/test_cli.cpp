// Copyright 2026 The mgshadows Authors
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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace mgs::cli {
namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "shadows");
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = ::testing::TempDir() + "/" + name;
    std::ofstream(path) << content;
    return path;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TEST(CliSample, OptimalCircuitsAreDeterministic) {
    const auto a = run({"sample", "--ensemble", "optimal", "--n", "2", "--shots", "3", "--seed", "7"});
    ASSERT_EQ(a.code, 0) << a.err;
    const auto rows = lines(a.out);
    ASSERT_EQ(rows.size(), 3u);
    for (const auto& row : rows) {
        const auto j = nlohmann::json::parse(row);
        EXPECT_EQ(j["n_modes"], 2);
        EXPECT_EQ(j["gate_count"].get<std::size_t>(), j["rotations"].size());
        EXPECT_LE(j["depth"].get<int>(), 4);
        EXPECT_TRUE(j.contains("signed_permutation"));
    }
    EXPECT_EQ(run({"sample", "--ensemble", "optimal", "--n", "2", "--shots", "3", "--seed", "7"}).out, a.out);
    EXPECT_NE(run({"sample", "--ensemble", "haar", "--n", "2", "--shots", "3", "--seed", "8"}).out,
              run({"sample", "--ensemble", "haar", "--n", "2", "--shots", "3", "--seed", "7"}).out);
}

TEST(CliSample, HaarCircuitRoundTrips) {
    const auto r = run({"sample", "--ensemble", "haar", "--n", "1", "--shots", "1", "--seed", "1"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(lines(r.out).at(0));
    EXPECT_EQ(j["rotations"].size(), 1u);
    const auto seq = sequence_from_json(j);
    EXPECT_EQ(seq.size(), 1u);
    EXPECT_EQ(seq.rotations()[0].axis, 2);
}

TEST(CliSample, ZeroShotsIsEmpty) {
    const auto r = run({"sample", "--ensemble", "two_angle", "--n", "3", "--shots", "0", "--seed", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
}

TEST(CliUsage, ErrorsExitWithTwo) {
    EXPECT_EQ(run({"sample", "--ensemble", "bogus", "--n", "1", "--seed", "1"}).code, 2);
    EXPECT_EQ(run({"sample", "--ensemble", "haar", "--n", "1"}).code, 2);
    EXPECT_EQ(run({"sample", "--ensemble", "haar", "--n", "1", "--seed", "x"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"verify", "--check", "nothing", "--n", "1"}).code, 2);
    EXPECT_EQ(run({"sample", "--ensemble", "haar", "--n", "0", "--seed", "1"}).code, 2);
}

TEST(CliEstimate, VacuumPairNearImaginaryUnit) {
    const auto obs = write_temp("pair.txt", "# pair\n1 2\n\n1 2 3 4\n");
    const auto r = run({"estimate", "--ensemble", "four_angle", "--n", "2", "--shots", "20000", "--seed", "3",
                        "--observables", obs});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0], "observable,re,im,method,batches,shots");
    std::istringstream row(rows[1]);
    std::string label, re, im;
    std::getline(row, label, ',');
    std::getline(row, re, ',');
    std::getline(row, im, ',');
    EXPECT_EQ(label, "1 2");
    EXPECT_NEAR(std::stod(re), 0.0, 1e-12);
    // Per-sample variance is 3 - 1 = 2, so the standard error is 0.01.
    EXPECT_NEAR(std::stod(im), 1.0, 0.06);
}

TEST(CliEstimate, ByteIdenticalAcrossRunsAndOutFile) {
    const auto obs = write_temp("obs2.txt", "1 2\n2 3\n");
    const std::vector<std::string> base{"estimate", "--ensemble", "haar",         "--n",         "3",
                                        "--shots",  "500",        "--seed",       "11",          "--observables",
                                        obs,        "--state",    "haar",         "--method",    "median_of_means",
                                        "--batches", "5"};
    const auto a = run(base);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(run(base).out, a.out);
    auto with_workers = base;
    with_workers.insert(with_workers.end(), {"--workers", "3"});
    EXPECT_EQ(run(with_workers).out, a.out);
    const std::string path = ::testing::TempDir() + "/est.csv";
    auto to_file = base;
    to_file.insert(to_file.end(), {"--out", path});
    ASSERT_EQ(run(to_file).code, 0);
    EXPECT_EQ(read_file(path), a.out);
}

TEST(CliEstimate, OddObservableLineRejected) {
    const auto obs = write_temp("odd.txt", "1 2\n1\n");
    const auto r = run({"estimate", "--ensemble", "haar", "--n", "2", "--shots", "10", "--seed", "1",
                        "--observables", obs});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST(CliEstimate, DataErrors) {
    const auto obs = write_temp("ok.txt", "1 2\n");
    EXPECT_EQ(run({"estimate", "--ensemble", "haar", "--shots", "10", "--seed", "1", "--observables", obs,
                   "--state-file", "/nonexistent/state.txt"})
                  .code,
              3);
    EXPECT_EQ(run({"estimate", "--ensemble", "haar", "--n", "2", "--shots", "10", "--seed", "1", "--observables",
                   "/nonexistent/obs.txt"})
                  .code,
              3);
    const auto bad_state = write_temp("bad_state.txt", "nqubits 1\n0.5 0\n0.5 0\n");
    EXPECT_EQ(run({"estimate", "--ensemble", "haar", "--shots", "10", "--seed", "1", "--observables", obs,
                   "--state-file", bad_state})
                  .code,
              3);
    const auto sorted = write_temp("unsorted.txt", "2 1\n");
    EXPECT_EQ(run({"estimate", "--ensemble", "haar", "--n", "2", "--shots", "10", "--seed", "1", "--observables",
                   sorted})
                  .code,
              3);
}

TEST(CliEstimate, StateFileIsUsed) {
    const auto state = write_temp("one.txt", "nqubits 2\n0 0\n0 0\n1 0\n0 0\n");
    const auto obs = write_temp("pair1.txt", "1 2\n");
    const auto r = run({"estimate", "--ensemble", "two_angle", "--shots", "20000", "--seed", "2", "--observables",
                        obs, "--state-file", state});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto row = lines(r.out).at(1);
    EXPECT_NEAR(std::stod(row.substr(row.rfind("1 2,0,") + 6)), -1.0, 0.06);
}

TEST(CliVerify, Design3AtOneMode) {
    const auto r = run({"verify", "--check", "design3", "--n", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["check"], "design3");
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_LT(j["max_deviation"].get<double>(), 1e-9);
}

TEST(CliVerify, Gamma4ReportsUniformValue) {
    const auto r = run({"verify", "--check", "gamma4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(nlohmann::json::parse(r.out)["gamma"].get<double>(), 1.5, 1e-9);
}

TEST(CliVerify, LambdaTableAtFourModes) {
    const auto r = run({"verify", "--check", "lambda", "--n", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["lambda"][1]["lambda"], "1/7");
    EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(CliVerify, InvarianceChecksPass) {
    for (const std::string check : {"sign-invariance", "matching-invariance"}) {
        for (const std::string n : {"2", "3"}) {
            const auto r = run({"verify", "--check", check, "--n", n, "--seed", "5"});
            EXPECT_EQ(r.code, 0) << check << " " << n << " " << r.out << r.err;
        }
    }
}

TEST(CliVerify, ResourceCapsExitWithFour) {
    EXPECT_EQ(run({"verify", "--check", "design3", "--n", "3"}).code, 4);
    EXPECT_EQ(run({"verify", "--check", "lambda", "--n", "5"}).code, 4);
    EXPECT_EQ(run({"verify", "--check", "sign-invariance", "--n", "4"}).code, 4);
    const auto r = run({"verify", "--check", "matching-invariance", "--n", "4"});
    EXPECT_EQ(r.code, 4);
    EXPECT_FALSE(r.err.empty());
}

TEST(CliVerify, FailingCheckExitsWithFive) {
    // A zero tolerance cannot be met by a strict comparison.
    const auto r = run({"verify", "--check", "gamma4", "--tol", "0"});
    EXPECT_EQ(r.code, 5);
    EXPECT_FALSE(nlohmann::json::parse(r.out)["pass"].get<bool>());
}

TEST(CliBench, SchemaRowsAndSeedColumn) {
    const std::vector<std::string> args{"bench",       "--n",    "4",          "--seed",
                                        "17",          "--grid", "100,1000,10000", "--ensembles",
                                        "haar,four_angle,optimal", "--bootstrap", "20"};
    const auto r = run(args);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_EQ(rows[0], "ensemble,N,mean_abs_error,std_abs_error,bootstrap_size,seed");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::istringstream row(rows[i]);
        std::vector<std::string> cols;
        for (std::string c; std::getline(row, c, ',');) cols.push_back(c);
        ASSERT_EQ(cols.size(), 6u);
        EXPECT_GT(std::stod(cols[2]), 0.0);
        EXPECT_GT(std::stod(cols[3]), 0.0);
        EXPECT_EQ(cols[4], "20");
        EXPECT_EQ(cols[5], "17");
    }
    EXPECT_EQ(run(args).out, r.out);
}

TEST(CliBench, MissingStateFileIsDataError) {
    EXPECT_EQ(run({"bench", "--seed", "1", "--state-file", "/nonexistent/s.txt"}).code, 3);
    EXPECT_EQ(run({"bench", "--n", "2", "--seed", "1", "--ensembles", "haar,nope"}).code, 2);
}

}  // namespace
}  // namespace mgs::cli
