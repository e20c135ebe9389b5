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

#include <string>

#include "surfpeel/error.hpp"
#include "surfpeel/index_set.hpp"
#include "surfpeel/rng.hpp"
#include "surfpeel/surface.hpp"

namespace surfpeel {

/// Set of lost qubits; always a subset of the qubit (non-open) edges.
struct ErasurePattern {
    EdgeSet erased;
};

/// Pauli error split into its Z part (primal edges) and X part (primal edge
/// indices of the crossing dual edges). A Y on e sets e in both.
struct CssError {
    EdgeSet z_support;
    EdgeSet x_support;

    static CssError identity(const CombinatorialSurface& s) { return {s.empty_edge_set(), s.empty_edge_set()}; }

    CssError& operator^=(const CssError& o) {
        z_support ^= o.z_support;
        x_support ^= o.x_support;
        return *this;
    }
    friend CssError operator^(CssError a, const CssError& b) { return a ^= b; }
    friend bool operator==(const CssError&, const CssError&) = default;
};

inline ErasurePattern make_erasure(const CombinatorialSurface& s, const EdgeSet& erased) {
    if (erased.size() != s.edge_count()) throw Error(ErrorKind::kIndexRange, "erasure has the wrong index space");
    if (!erased.is_subset_of(s.qubit_edges())) throw Error(ErrorKind::kIndexRange, "erasure contains an open edge");
    return {erased};
}

/// Loses each qubit independently with probability p.
inline ErasurePattern sample_erasure(const CombinatorialSurface& s, double p, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::kConfig, "erasure probability must lie in [0, 1]");
    ErasurePattern out{s.empty_edge_set()};
    for (std::size_t e = 0; e < s.edge_count(); ++e) {
        if (!s.is_qubit(e)) continue;
        if (rng.uniform() < p) out.erased.insert(e);
    }
    return out;
}

/// Uniform Pauli on the erased qubits: two independent fair bits per qubit.
inline CssError sample_pauli_on_erasure(const ErasurePattern& e, Rng& rng) {
    CssError err{EdgeSet(e.erased.size()), EdgeSet(e.erased.size())};
    e.erased.for_each([&](std::size_t q) {
        const auto bits = rng();
        if (bits & 1U) err.z_support.insert(q);
        if (bits & 2U) err.x_support.insert(q);
    });
    return err;
}

/// X_v outcomes: the restricted boundary of the Z part.
inline VertexSet syndrome_z(const CombinatorialSurface& s, const CssError& err) {
    return restricted_boundary(s, err.z_support);
}

/// Z_f outcomes, computed on the dual as the restricted boundary of the X part.
inline VertexSet syndrome_x(const DualSurface& d, const CssError& err) {
    return restricted_boundary(d.surface, d.to_dual_set(err.x_support));
}

}  // namespace surfpeel
