// Copyright 2026 The surfpeel Authors
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


#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "surfpeel/harness.hpp"

namespace surfpeel {
namespace {

RunConfig config(LatticeKind kind, std::vector<std::size_t> sizes, std::vector<double> ps, std::uint64_t shots) {
    RunConfig cfg;
    cfg.lattice = kind;
    cfg.sizes = std::move(sizes);
    cfg.probabilities = std::move(ps);
    cfg.shots = shots;
    cfg.seed = 2024;
    return cfg;
}

std::string csv_without_timing(const RunStats& stats) {
    std::ostringstream os;
    write_csv(os, stats);
    std::istringstream in(os.str());
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + '\n';
    return out;
}

TEST(MonteCarlo, ZeroErasureNeverFails) {
    for (auto kind : {LatticeKind::kTorus, LatticeKind::kPlanar}) {
        const auto stats = run_monte_carlo(config(kind, {4, 8}, {0.0}, 2000));
        for (const auto& pt : stats.points) {
            EXPECT_EQ(pt.failures_any, 0u);
            EXPECT_EQ(pt.failures_z, 0u);
            EXPECT_EQ(pt.failures_x, 0u);
        }
    }
}

/// Full erasure of torus(8): each sector fails unless the random residual is
/// trivial in both of its classes, so 3/4 per sector and 15/16 overall.
TEST(MonteCarlo, FullErasureOnTorus) {
    const auto stats = run_monte_carlo(config(LatticeKind::kTorus, {8}, {1.0}, 10000));
    const auto& pt = stats.points.at(0);
    EXPECT_GE(pt.rate_z(), 0.70);
    EXPECT_LE(pt.rate_z(), 0.80);
    EXPECT_GE(pt.rate_x(), 0.70);
    EXPECT_LE(pt.rate_x(), 0.80);
    EXPECT_NEAR(pt.rate_any(), 15.0 / 16.0, 0.01);
}

TEST(MonteCarlo, WorkerCountDoesNotChangeResults) {
    auto cfg = config(LatticeKind::kTorus, {6, 8}, {0.3, 0.5}, 3000);
    cfg.workers = 1;
    const auto one = run_monte_carlo(cfg);
    cfg.workers = 8;
    const auto eight = run_monte_carlo(cfg);
    EXPECT_EQ(csv_without_timing(one), csv_without_timing(eight));
}

TEST(MonteCarlo, LargerLatticesFailLessBelowThreshold) {
    const auto stats = run_monte_carlo(config(LatticeKind::kTorus, {4, 8, 16}, {0.35}, 20000));
    ASSERT_EQ(stats.points.size(), 3u);
    EXPECT_GT(stats.points[0].rate_any(), stats.points[1].rate_any());
    EXPECT_GT(stats.points[1].rate_any(), stats.points[2].rate_any());
}

TEST(MonteCarlo, FileLattice) {
    const auto path = std::string(::testing::TempDir()) + "/planar3.surf";
    std::ofstream(path) << serialize_surface(build_planar(3, 3));
    auto cfg = config(LatticeKind::kFile, {}, {0.2}, 500);
    cfg.surface_path = path;
    const auto stats = run_monte_carlo(cfg);
    ASSERT_EQ(stats.points.size(), 1u);
    EXPECT_EQ(stats.points[0].lattice, "file");
    EXPECT_EQ(stats.points[0].L, 0u);
}

TEST(Output, CsvHeaderAndStderr) {
    PointStats pt;
    pt.lattice = "torus";
    pt.L = 8;
    pt.p = 0.45;
    pt.shots = 400;
    pt.failures_any = 100;
    pt.seed = 3;
    EXPECT_DOUBLE_EQ(pt.stderr_any(), std::sqrt(0.25 * 0.75 / 400));
    std::ostringstream os;
    write_csv(os, RunStats{{pt}});
    std::istringstream in(os.str());
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header, kCsvHeader);
    EXPECT_EQ(row.rfind("torus,8,0.45,400,0,0,100,0.25,", 0), 0u) << row;
}

TEST(Output, JsonFields) {
    const auto stats = run_monte_carlo(config(LatticeKind::kPlanar, {4}, {0.3}, 500));
    const auto j = to_json(stats);
    ASSERT_EQ(j.size(), 1u);
    for (const char* key : {"lattice", "L", "p", "shots", "failures_z", "failures_x", "failures_any", "rate_any",
                            "stderr_any", "seed", "decode_ns_total"}) {
        EXPECT_TRUE(j[0].contains(key)) << key;
    }
    EXPECT_EQ(j[0]["lattice"], "planar");
    EXPECT_EQ(j[0]["shots"], 500);
}

TEST(Config, Validation) {
    auto expect_config_error = [](const RunConfig& cfg) {
        try {
            cfg.validate();
            FAIL() << "expected kConfig";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::kConfig);
        }
    };
    expect_config_error(config(LatticeKind::kTorus, {8}, {}, 10));
    expect_config_error(config(LatticeKind::kTorus, {8}, {1.5}, 10));
    expect_config_error(config(LatticeKind::kTorus, {8}, {0.2}, 0));
    expect_config_error(config(LatticeKind::kTorus, {}, {0.2}, 10));
    expect_config_error(config(LatticeKind::kFile, {}, {0.2}, 10));
    auto bad_format = config(LatticeKind::kTorus, {8}, {0.2}, 10);
    bad_format.format = "xml";
    expect_config_error(bad_format);
    EXPECT_THROW(parse_lattice_kind("hex"), Error);
    EXPECT_EQ(parse_lattice_kind("planar"), LatticeKind::kPlanar);
}

/// Synthetic curves rate = 1/2 + (p - 0.5) * slope(L) cross exactly at 0.5.
RunStats synthetic(const std::vector<std::size_t>& sizes, double center, std::uint64_t shots) {
    RunStats stats;
    for (std::size_t L : sizes) {
        for (double p = 0.40; p < 0.6001; p += 0.02) {
            PointStats pt;
            pt.lattice = "torus";
            pt.L = L;
            pt.p = p;
            pt.shots = shots;
            const double rate = std::clamp(0.5 + (p - center) * static_cast<double>(L) / 4.0, 0.0, 1.0);
            pt.failures_any = static_cast<std::uint64_t>(std::llround(rate * static_cast<double>(shots)));
            stats.points.push_back(pt);
        }
    }
    return stats;
}

TEST(Threshold, SyntheticCrossing) {
    const auto est = estimate_threshold(synthetic({8, 16, 32}, 0.5, 100000), 200, 7);
    ASSERT_EQ(est.crossings.size(), 2u);
    EXPECT_NEAR(est.p, 0.5, 1e-3);
    EXPECT_LE(est.ci_low, est.p);
    EXPECT_GE(est.ci_high, est.p);
    EXPECT_LT(est.ci_high - est.ci_low, 0.01);
    EXPECT_GT(curve_slope(synthetic({8, 16}, 0.5, 1000), 16, 0.5), curve_slope(synthetic({8, 16}, 0.5, 1000), 8, 0.5));
}

TEST(Threshold, Errors) {
    try {
        estimate_threshold(synthetic({8}, 0.5, 1000));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kConfig);
    }
    // A halved copy of the curve stays below it everywhere.
    RunStats parallel = synthetic({8}, 0.5, 1000);
    for (auto pt : synthetic({8}, 0.5, 1000).points) {
        pt.L = 16;
        pt.failures_any = pt.failures_any / 2;
        parallel.points.push_back(pt);
    }
    try {
        estimate_threshold(parallel);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::kNoCrossing);
    }
}

TEST(Bench, ProducesPositiveTimes) {
    const auto pts = run_bench({8, 16}, 0.4, 200, 1, 1);
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[0].qubits, 128u);
    EXPECT_EQ(pts[1].qubits, 512u);
    EXPECT_GT(pts[0].mean_decode_ns, 0.0);
}

}  // namespace
}  // namespace surfpeel
