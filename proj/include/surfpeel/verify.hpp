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

#pragma once

// Property checks of the decoder against the brute-force oracles, shared by
// the `verify` CLI verb and the test suites.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "surfpeel/channel.hpp"
#include "surfpeel/homology.hpp"
#include "surfpeel/oracle.hpp"
#include "surfpeel/peeling.hpp"
#include "surfpeel/rng.hpp"
#include "surfpeel/surface.hpp"

namespace surfpeel::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Uniformly random erasure of exactly k qubits.
inline ErasurePattern erasure_of_size(const CombinatorialSurface& s, std::size_t k, Rng& rng) {
    auto qubits = s.qubit_edges().to_vector();
    if (k > qubits.size()) k = qubits.size();
    for (std::size_t i = 0; i < k; ++i) std::swap(qubits[i], qubits[i + rng.below(qubits.size() - i)]);
    ErasurePattern e{s.empty_edge_set()};
    for (std::size_t i = 0; i < k; ++i) e.erased.insert(qubits[i]);
    return e;
}

/// Peel against exhaustive enumeration for every syndrome realizable inside
/// `erased` on surface `s`: the peeled set is the only solution inside the
/// forest, the solution count is 2^(cycles inside the erasure), and
/// rerouting any solution into the forest yields the peeled set while
/// keeping the restricted boundary fixed at every step. Returns the number
/// of violations.
inline std::size_t oracle_equivalence_violations(const CombinatorialSurface& s, const EdgeSet& erased) {
    std::vector<Index> edges;
    erased.for_each([&](std::size_t q) { edges.push_back(static_cast<Index>(q)); });
    const oracle::SubsetSpace space(s, edges);
    PeelingWorkspace ws(s);
    SpanningForest forest;
    grow_forest(s, erased, ws, forest);
    const EdgeSet in_forest = forest.edge_set(s.edge_count());

    std::map<std::uint64_t, std::vector<std::uint32_t>> by_syndrome;
    space.for_each_subset([&](std::uint32_t subset, std::uint64_t bnd) { by_syndrome[bnd].push_back(subset); });
    const std::size_t cycles = by_syndrome.count(0) ? by_syndrome.at(0).size() : 0;

    std::size_t violations = 0;
    EdgeSet peeled;
    for (const auto& [bnd, subsets] : by_syndrome) {
        if (subsets.size() != cycles) ++violations;
        const EdgeSet first = space.to_edge_set(s.edge_count(), subsets.front());
        const VertexSet sigma = restricted_boundary(s, first);
        peel(s, forest, sigma, ws, peeled);

        std::size_t inside = 0;
        for (auto subset : subsets) {
            const EdgeSet b = space.to_edge_set(s.edge_count(), subset);
            if (b.is_subset_of(in_forest)) {
                ++inside;
                if (b != peeled) ++violations;
            }
            bool boundary_kept = true;
            const EdgeSet rerouted = oracle::reroute_into_forest(s, b, forest, [&](const EdgeSet& step) {
                if (restricted_boundary(s, step) != sigma) boundary_kept = false;
            });
            if (!boundary_kept || rerouted != peeled) ++violations;
        }
        if (inside != 1) ++violations;
    }
    return violations;
}

/// Both sectors of `oracle_equivalence_violations`.
inline std::size_t oracle_equivalence_violations(const SurfaceCode& code, const ErasurePattern& e) {
    return oracle_equivalence_violations(code.primal(), e.erased) +
           oracle_equivalence_violations(code.dual().surface, code.dual().to_dual_set(e.erased));
}

/// Exact ML check on one erasure: in each sector the decoder's success count
/// over all errors equals the optimum and equals total / N.
inline bool decoder_is_optimal(const SurfaceCode& code, const ErasurePattern& e, std::size_t* classes = nullptr) {
    const auto cosets = oracle::verify_coset_equiprobability(code, e);
    if (classes) *classes = cosets.classes();
    for (Sector sector : {Sector::kZ, Sector::kX}) {
        const auto n = (sector == Sector::kZ ? cosets.z : cosets.x).classes();
        const auto r = oracle::exact_sector_success(code, sector, e);
        if (r.decoder != r.optimal || r.decoder * n != r.total) return false;
    }
    return true;
}

inline std::vector<CheckResult> run_all(std::size_t max_edges, std::uint64_t seed) {
    std::vector<CheckResult> out;
    Rng rng(seed);
    const SurfaceCode t2(build_torus(2)), t3(build_torus(3)), p3(build_planar(3, 3)), p4(build_planar(4, 4));
    const std::vector<const SurfaceCode*> codes{&t2, &t3, &p3, &p4};
    const std::size_t reroute_bound = std::min<std::size_t>(max_edges, 10);
    const std::size_t peel_bound = std::min<std::size_t>(max_edges, 16);

    {
        std::size_t violations = 0, instances = 0;
        for (std::uint32_t mask = 0; mask < (1U << t2.primal().edge_count()); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) > reroute_bound) continue;
            ErasurePattern e{t2.primal().empty_edge_set()};
            for (std::size_t q = 0; q < t2.primal().edge_count(); ++q) {
                if (mask >> q & 1U) e.erased.insert(q);
            }
            violations += oracle_equivalence_violations(t2, e);
            ++instances;
        }
        for (const auto* code : {&t3, &p3, &p4}) {
            for (int i = 0; i < 300; ++i) {
                violations += oracle_equivalence_violations(
                    *code, erasure_of_size(code->primal(), rng.below(reroute_bound + 1), rng));
                ++instances;
            }
        }
        out.push_back({"peel-equals-unique-forest-solution-and-reroute", violations == 0,
                       std::to_string(instances) + " erasures, " + std::to_string(violations) + " violations"});
    }

    {
        std::size_t bad = 0, instances = 0;
        std::map<std::size_t, std::size_t> histogram;
        for (const auto* code : codes) {
            for (int i = 0; i < 60; ++i) {
                const auto e = erasure_of_size(code->primal(), rng.below(std::min(max_edges, code->primal().qubit_count()) + 1), rng);
                const auto report = oracle::verify_coset_equiprobability(*code, e);
                if (!report.equiprobable() || !report.consistent()) ++bad;
                ++histogram[report.classes()];
                ++instances;
            }
        }
        std::ostringstream detail;
        detail << instances << " erasures, N histogram:";
        for (auto [n, c] : histogram) detail << ' ' << n << ':' << c;
        out.push_back({"cosets-equiprobable-and-match-elimination", bad == 0, detail.str()});
    }

    {
        std::size_t bad = 0, instances = 0;
        for (const auto* code : codes) {
            for (int i = 0; i < 40; ++i) {
                const auto e = erasure_of_size(code->primal(), rng.below(std::min(peel_bound, code->primal().qubit_count()) + 1), rng);
                if (!decoder_is_optimal(*code, e)) ++bad;
                ++instances;
            }
        }
        out.push_back({"decoder-attains-ml-optimum", bad == 0,
                       std::to_string(instances) + " erasures enumerated exactly, " + std::to_string(bad) + " suboptimal"});
    }

    {
        std::size_t bad = 0;
        for (const auto* code : {&t3, &p4}) {
            const auto& s = code->primal();
            PeelingWorkspace ws(s);
            EdgeSet out_set;
            for (int i = 0; i < 100; ++i) {
                const auto e = sample_erasure(s, 0.5, rng);
                const auto sigma = syndrome_z(s, sample_pauli_on_erasure(e, rng));
                const auto f = grow_forest(s, e);
                const auto reference = peel(s, f, sigma);
                for (int k = 0; k < 20; ++k) {
                    const auto stats = peel_by_leaves(s, f, sigma, ws, out_set, &rng);
                    if (!stats.exhausted || stats.open_pendants != 0 || out_set != reference) ++bad;
                }
            }
        }
        out.push_back({"leaf-order-independence", bad == 0, std::to_string(bad) + " violations over 4000 shuffles"});
    }

    {
        std::size_t bad = 0;
        for (const auto* code : codes) {
            const auto derived = SurfaceCode::with_derived_cuts(code->primal());
            const CombinatorialSurface* surfaces[] = {&code->primal(), &code->dual().surface};
            for (Sector sector : {Sector::kZ, Sector::kX}) {
                const auto& s = *surfaces[sector == Sector::kZ ? 0 : 1];
                const auto faces = face_span(s);
                const auto cycles = cycle_basis(s);
                for (int i = 0; i < 100; ++i) {
                    EdgeSet c = s.empty_edge_set();
                    for (const auto& row : cycles.row_list()) {
                        if (rng() & 1) c ^= row.retag<EdgeTag>();
                    }
                    const bool trivial = faces.contains(c);
                    const EdgeSet primal_c = sector == Sector::kZ ? c : code->dual().to_primal_set(c);
                    if (code->logical_class(sector, primal_c).empty() != trivial) ++bad;
                    if (derived.logical_class(sector, primal_c).empty() != trivial) ++bad;
                }
            }
        }
        out.push_back({"classifier-matches-elimination", bad == 0, std::to_string(bad) + " disagreements"});
    }
    return out;
}

}  // namespace surfpeel::verify
