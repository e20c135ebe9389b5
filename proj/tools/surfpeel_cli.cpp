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

// surfpeel command line: Monte Carlo runs, single-instance decoding, the
// brute-force verification suite, and decode-time scaling.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "surfpeel/surfpeel.hpp"


namespace {

using namespace surfpeel;

int run_mc(const RunConfig& cfg, bool threshold) {
    const RunStats stats = run_monte_carlo(cfg);
    if (cfg.output_path.empty()) {
        write_csv(std::cout, stats);
    } else {
        write_stats(cfg, stats);
    }
    for (const auto& pt : stats.points) {
        std::cerr << pt.lattice << " L=" << pt.L << " p=" << pt.p << "  rate_any=" << pt.rate_any() << " +- "
                  << pt.stderr_any() << "  (" << std::fixed << std::setprecision(0) << pt.decodes_per_second()
                  << " decodes/s)" << std::defaultfloat << std::setprecision(6) << '\n';
    }
    if (threshold) {
        const auto est = estimate_threshold(stats);
        for (const auto& c : est.crossings) {
            std::cerr << "crossing L=" << c.small_L << "/" << c.large_L << ": p=" << c.p << " [" << c.ci_low << ", "
                      << c.ci_high << "]\n";
        }
        std::cerr << "threshold estimate: " << est.p << " [" << est.ci_low << ", " << est.ci_high << "]\n";
    }
    return 0;
}

int run_decode(const std::string& surface_path, const std::vector<std::string>& instance_files) {
    const CombinatorialSurface s = load_surface(surface_path);
    const DualSurface d = dual(s);
    DecodingInstance inst;
    for (const auto& f : instance_files) load_instance(f, inst);

    EdgeSet erased(s.edge_count());
    for (auto e : inst.erased) {
        if (e >= s.edge_count()) throw Error(ErrorKind::kIndexRange, "erased edge " + std::to_string(e) + " out of range");
        erased.insert(e);
    }
    VertexSet sz(s.vertex_count());
    for (auto v : inst.syndrome_z) {
        if (v >= s.vertex_count()) throw Error(ErrorKind::kIndexRange, "syndrome vertex " + std::to_string(v) + " out of range");
        sz.flip(v);
    }
    VertexSet sx(d.surface.vertex_count());
    for (auto f : inst.syndrome_x) {
        if (f >= s.face_count()) throw Error(ErrorKind::kIndexRange, "syndrome face " + std::to_string(f) + " out of range");
        sx.flip(f);
    }
    const CssError c = decode(s, d, make_erasure(s, erased), sz, sx);
    c.z_support.for_each([](std::size_t e) { std::cout << "z " << e << '\n'; });
    c.x_support.for_each([](std::size_t e) { std::cout << "x " << e << '\n'; });
    return 0;
}

int run_bench_verb(const std::vector<std::size_t>& sizes, double p, std::uint64_t shots, std::uint64_t seed) {
    const auto points = run_bench(sizes, p, shots, seed);
    std::cout << "L,qubits,shots,mean_decode_ns,ns_per_qubit,ratio_to_previous\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        std::cout << pt.L << ',' << pt.qubits << ',' << pt.shots << ',' << std::fixed << std::setprecision(1)
                  << pt.mean_decode_ns << ',' << std::setprecision(3) << pt.mean_decode_ns / pt.qubits << ',';
        if (i > 0) {
            std::cout << pt.mean_decode_ns / points[i - 1].mean_decode_ns;
        }
        std::cout << std::defaultfloat << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear-time erasure decoding for surface codes"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.workers = default_workers();
    std::string lattice = "torus";
    bool threshold = false;
    auto* mc = app.add_subcommand("mc", "Monte Carlo logical error rates");
    mc->add_option("--lattice", lattice, "torus, planar or file")->check(CLI::IsMember({"torus", "planar", "file"}));
    mc->add_option("--L", cfg.sizes, "lattice sizes (comma separated)")->delimiter(',');
    mc->add_option("--surface", cfg.surface_path, "surface file for --lattice file");
    mc->add_option("--p", cfg.probabilities, "erasure probabilities (comma separated)")->delimiter(',')->required();
    mc->add_option("--shots", cfg.shots, "shots per point")->check(CLI::PositiveNumber);
    mc->add_option("--seed", cfg.seed, "master seed");
    mc->add_option("--workers", cfg.workers, "worker threads (default: $SURFPEEL_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
    mc->add_option("--out", cfg.output_path, "output file (default: CSV on stdout)");
    mc->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    mc->add_flag("--threshold", threshold, "estimate the crossing point of successive sizes");

    std::string surface_path;
    std::string erasure_path, syndrome_path;
    auto* dec = app.add_subcommand("decode", "decode one instance; prints the correction edges");
    dec->add_option("--surface", surface_path, "surface file")->required()->check(CLI::ExistingFile);
    dec->add_option("--erasure", erasure_path, "erasure file (erased <e> lines)")->required()->check(CLI::ExistingFile);
    dec->add_option("--syndrome", syndrome_path, "syndrome file (syndrome <v> / syndrome_x <f> lines)")
        ->check(CLI::ExistingFile);

    std::size_t max_edges = 20;
    std::uint64_t verify_seed = 1;
    auto* ver = app.add_subcommand("verify", "run the brute-force oracle checks");
    ver->add_option("--max-edges", max_edges, "largest erasure enumerated exhaustively")
        ->check(CLI::Range(1, static_cast<int>(oracle::kMaxEnumeratedEdges)));
    ver->add_option("--seed", verify_seed, "seed for sampled instances");

    std::vector<std::size_t> bench_sizes{16, 32, 64, 128};
    double bench_p = 0.4;
    std::uint64_t bench_shots = 2000, bench_seed = 1;
    auto* bench = app.add_subcommand("bench", "decode time versus torus size");
    bench->add_option("--L", bench_sizes, "torus sizes")->delimiter(',');
    bench->add_option("--p", bench_p, "erasure probability")->check(CLI::Range(0.0, 1.0));
    bench->add_option("--shots", bench_shots, "instances per size")->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_seed, "seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*mc) {
            cfg.lattice = parse_lattice_kind(lattice);
            return run_mc(cfg, threshold);
        }
        if (*dec) {
            std::vector<std::string> instance_files{erasure_path};
            if (!syndrome_path.empty()) instance_files.push_back(syndrome_path);
            return run_decode(surface_path, instance_files);
        }
        if (*ver) {
            const auto results = verify::run_all(max_edges, verify_seed);
            bool ok = true;
            for (const auto& r : results) {
                std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << '\n';
                ok = ok && r.passed;
            }
            return ok ? 0 : 1;
        }
        if (*bench) return run_bench_verb(bench_sizes, bench_p, bench_shots, bench_seed);
    } catch (const Error& e) {
        std::cerr << "surfpeel: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
