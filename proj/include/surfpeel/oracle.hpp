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

// Brute-force references for small instances. Everything here is exponential
// in the erasure size and exists to check the decoder, not to run in it.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "surfpeel/channel.hpp"
#include "surfpeel/error.hpp"
#include "surfpeel/homology.hpp"
#include "surfpeel/peeling.hpp"
#include "surfpeel/surface.hpp"

namespace surfpeel::oracle {

inline constexpr std::size_t kMaxEnumeratedEdges = 24;

/// Subsets of a fixed edge list, encoded as bit masks over the list, with
/// their restricted boundaries precomputed as masks over the touched vertices.
class SubsetSpace {
   public:
    SubsetSpace(const CombinatorialSurface& s, std::vector<Index> edges) : edges_(std::move(edges)) {
        if (edges_.size() > kMaxEnumeratedEdges) {
            throw Error(ErrorKind::kSizeBound, std::to_string(edges_.size()) + " edges exceed the enumeration bound of " +
                                                   std::to_string(kMaxEnumeratedEdges));
        }
        for (Index e : edges_) {
            std::uint64_t mask = 0;
            for (Index v : {s.edge(e).u, s.edge(e).v}) {
                if (s.is_open_vertex(v)) continue;
                mask ^= bit_of(v);
            }
            boundary_.push_back(mask);
        }
    }

    std::size_t size() const noexcept { return edges_.size(); }
    const std::vector<Index>& edges() const noexcept { return edges_; }

    /// Mask of a vertex set over the touched vertices; nullopt if it leaves them.
    std::optional<std::uint64_t> vertex_mask(const VertexSet& sigma) const {
        std::uint64_t m = 0;
        bool ok = true;
        sigma.for_each([&](std::size_t v) {
            auto it = std::find(vertices_.begin(), vertices_.end(), static_cast<Index>(v));
            if (it == vertices_.end()) {
                ok = false;
            } else {
                m |= std::uint64_t{1} << (it - vertices_.begin());
            }
        });
        if (!ok) return std::nullopt;
        return m;
    }

    EdgeSet to_edge_set(std::size_t edge_count, std::uint32_t subset) const {
        EdgeSet out(edge_count);
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            if (subset >> i & 1U) out.insert(edges_[i]);
        }
        return out;
    }

    /// Walks every subset in Gray-code order, calling fn(subset, boundary_mask).
    template <typename Fn>
    void for_each_subset(Fn&& fn) const {
        std::uint32_t subset = 0;
        std::uint64_t bnd = 0;
        fn(subset, bnd);
        const std::uint64_t total = std::uint64_t{1} << edges_.size();
        for (std::uint64_t i = 1; i < total; ++i) {
            const int flip = std::countr_zero(i);
            subset ^= std::uint32_t{1} << flip;
            bnd ^= boundary_[flip];
            fn(subset, bnd);
        }
    }

    /// Per-edge masks of which edge sets in `cuts` contain the edge.
    std::vector<std::uint64_t> cut_masks(const std::vector<EdgeSet>& cuts,
                                         const std::function<Index(Index)>& to_cut_index) const {
        if (cuts.size() > 64) throw Error(ErrorKind::kSizeBound, "more than 64 logical classes");
        std::vector<std::uint64_t> out;
        for (Index e : edges_) {
            std::uint64_t m = 0;
            for (std::size_t k = 0; k < cuts.size(); ++k) {
                if (cuts[k].contains(to_cut_index(e))) m |= std::uint64_t{1} << k;
            }
            out.push_back(m);
        }
        return out;
    }

   private:
    std::uint64_t bit_of(Index v) {
        auto it = std::find(vertices_.begin(), vertices_.end(), v);
        if (it == vertices_.end()) {
            vertices_.push_back(v);
            it = vertices_.end() - 1;
        }
        return std::uint64_t{1} << (it - vertices_.begin());
    }

    std::vector<Index> edges_;
    std::vector<Index> vertices_;
    std::vector<std::uint64_t> boundary_;
};

/// All B inside the erasure with restricted boundary `sigma`, by exhaustion.
inline std::vector<EdgeSet> enumerate_solutions(const CombinatorialSurface& s, const ErasurePattern& e,
                                                const VertexSet& sigma) {
    std::vector<Index> edges;
    e.erased.for_each([&](std::size_t q) { edges.push_back(static_cast<Index>(q)); });
    SubsetSpace space(s, std::move(edges));
    std::vector<EdgeSet> out;
    const auto target = space.vertex_mask(sigma);
    if (!target) return out;
    space.for_each_subset([&](std::uint32_t subset, std::uint64_t bnd) {
        if (bnd == *target) out.push_back(space.to_edge_set(s.edge_count(), subset));
    });
    return out;
}

/// Squeezes `b` into the forest by adding, for each off-forest edge x of b in
/// ascending order, the relative cycle made of x and the forest path(s)
/// joining its endpoints. `observer` sees every intermediate set.
inline EdgeSet reroute_into_forest(const CombinatorialSurface& s, const EdgeSet& b, const SpanningForest& f,
                                   const std::function<void(const EdgeSet&)>& observer = {}) {
    const std::size_t nv = s.vertex_count();
    std::vector<Index> parent_edge(nv, kNone);
    std::vector<Index> parent(nv, kNone);
    std::vector<Index> root(nv, kNone);
    std::vector<std::size_t> depth(nv, 0);
    for (Index r : f.roots) root[r] = r;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const Index p = f.parent_vertex[k];
        const Index c = f.child_vertex(s, k);
        parent_edge[c] = f.edges[k];
        parent[c] = p;
        depth[c] = depth[p] + 1;
        root[c] = root[p];
    }

    const EdgeSet in_forest = f.edge_set(s.edge_count());
    EdgeSet current = b;
    if (observer) observer(current);
    b.for_each([&](std::size_t x) {
        if (in_forest.contains(x)) return;
        if (!f.vertices.contains(s.edge(x).u) || !f.vertices.contains(s.edge(x).v)) {
            throw Error(ErrorKind::kIndexRange, "edge " + std::to_string(x) + " is not inside the forest's erasure");
        }
        EdgeSet gamma(s.edge_count(), {x});
        Index a = s.edge(x).u;
        Index c = s.edge(x).v;
        if (root[a] == root[c]) {
            while (a != c) {
                if (depth[a] < depth[c]) std::swap(a, c);
                gamma.flip(parent_edge[a]);
                a = parent[a];
            }
        } else {
            // Different trees can only meet through open roots.
            if (!s.is_open_vertex(root[a]) || !s.is_open_vertex(root[c])) {
                throw Error(ErrorKind::kIndexRange, "forest is not maximal for edge " + std::to_string(x));
            }
            for (Index w : {a, c}) {
                while (parent[w] != kNone) {
                    gamma.flip(parent_edge[w]);
                    w = parent[w];
                }
            }
        }
        current ^= gamma;
        if (observer) observer(current);
    });
    return current;
}

/// Outcome of grouping the relative cycles inside an erasure by class, for one sector.
struct SectorCosets {
    std::size_t erased = 0;
    std::size_t cycle_count = 0;          // relative cycles inside the erasure
    std::map<std::uint64_t, std::size_t> class_sizes;
    std::size_t stabilizer_count = 0;     // trivial class size
    std::size_t cycle_dimension = 0;      // by elimination
    std::size_t stabilizer_dimension = 0; // by elimination

    std::size_t classes() const noexcept { return class_sizes.size(); }
    bool equal_sizes() const {
        for (const auto& [cls, n] : class_sizes) {
            if (n != stabilizer_count) return false;
        }
        return true;
    }
    bool matches_elimination() const {
        return cycle_count == (std::size_t{1} << cycle_dimension) &&
               stabilizer_count == (std::size_t{1} << stabilizer_dimension) &&
               classes() == (std::size_t{1} << (cycle_dimension - stabilizer_dimension));
    }
};

struct CosetReport {
    SectorCosets z;
    SectorCosets x;

    /// Number of equiprobable cosets N(e) compatible with any syndrome.
    std::size_t classes() const noexcept { return z.classes() * x.classes(); }
    bool equiprobable() const { return z.equal_sizes() && x.equal_sizes(); }
    bool consistent() const { return z.matches_elimination() && x.matches_elimination(); }
};

namespace detail {

/// dim of relative cycles supported on `edges`, and dim of face sums supported on them.
inline std::pair<std::size_t, std::size_t> supported_dimensions(const CombinatorialSurface& s,
                                                                const EdgeSet& edges) {
    Gf2Matrix bnd(s.edge_count());
    for (std::size_t v = 0; v < s.vertex_count(); ++v) {
        if (s.is_open_vertex(v)) continue;
        BitVector r(s.edge_count());
        for (Index e : s.incident_edges(v)) {
            if (edges.contains(e)) r.flip(e);
        }
        bnd.add_row(std::move(r));
    }
    const std::size_t cycles = edges.count() - bnd.rank();

    Gf2Matrix faces = face_matrix(s);
    Gf2Matrix outside(s.edge_count());
    for (const auto& row : faces.row_list()) {
        BitVector r(s.edge_count());
        row.for_each([&](std::size_t e) {
            if (!edges.contains(e)) r.insert(e);
        });
        outside.add_row(std::move(r));
    }
    const std::size_t stabilizers = faces.rank() - outside.rank();
    return {cycles, stabilizers};
}

inline SectorCosets group_sector(const CombinatorialSurface& s, const EdgeSet& erased, const std::vector<EdgeSet>& cuts,
                                 const std::function<Index(Index)>& to_cut_index) {
    SectorCosets out;
    std::vector<Index> edges;
    erased.for_each([&](std::size_t q) { edges.push_back(static_cast<Index>(q)); });
    SubsetSpace space(s, std::move(edges));
    out.erased = space.size();
    const auto masks = space.cut_masks(cuts, to_cut_index);

    // Track the class incrementally alongside the Gray-code walk.
    std::uint32_t prev = 0;
    std::uint64_t cls = 0;
    space.for_each_subset([&](std::uint32_t subset, std::uint64_t bnd) {
        const std::uint32_t changed = subset ^ prev;
        if (changed) cls ^= masks[std::countr_zero(changed)];
        prev = subset;
        if (bnd != 0) return;
        ++out.cycle_count;
        ++out.class_sizes[cls];
    });
    out.stabilizer_count = out.class_sizes.count(0) ? out.class_sizes.at(0) : 0;
    std::tie(out.cycle_dimension, out.stabilizer_dimension) = supported_dimensions(s, erased);
    return out;
}

}  // namespace detail

/// Groups every error inside the erasure by logical class of its difference
/// with a reference, in each sector, and cross-checks the counts with
/// elimination on the supported subspaces.
inline CosetReport verify_coset_equiprobability(const SurfaceCode& code, const ErasurePattern& e) {
    CosetReport report;
    const auto& d = code.dual();
    report.z = detail::group_sector(code.primal(), e.erased, code.cuts(Sector::kZ), [](Index q) { return q; });
    report.x = detail::group_sector(d.surface, d.to_dual_set(e.erased), code.cuts(Sector::kX),
                                    [&d](Index q) { return d.to_primal[q]; });
    return report;
}

/// Exact success counts of one sector over all 2^|e| errors inside the erasure.
struct SectorSuccess {
    std::uint64_t total = 0;
    std::uint64_t decoder = 0;  // peeling decoder successes
    std::uint64_t optimal = 0;  // best any decoder can do: sum over syndromes of the largest coset
};

/// Runs the peeling decoder on every error inside the erasure (one sector)
/// and computes the maximum-likelihood optimum by grouping errors per
/// (syndrome, coset).
inline SectorSuccess exact_sector_success(const SurfaceCode& code, Sector sector, const ErasurePattern& e) {
    const auto& d = code.dual();
    const CombinatorialSurface& s = sector == Sector::kZ ? code.primal() : d.surface;
    const EdgeSet erased = sector == Sector::kZ ? e.erased : d.to_dual_set(e.erased);
    auto to_primal = [&](Index q) { return sector == Sector::kZ ? q : d.to_primal[q]; };

    std::vector<Index> edges;
    erased.for_each([&](std::size_t q) { edges.push_back(static_cast<Index>(q)); });
    SubsetSpace space(s, edges);
    // Cuts of the opposite-sector logicals, read in this sector's indices.
    const auto masks = space.cut_masks(code.cuts(sector), to_primal);

    PeelingWorkspace ws(s);
    SpanningForest forest;
    grow_forest(s, erased, ws, forest);
    EdgeSet correction;

    SectorSuccess out;
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> coset_sizes;
    std::uint32_t prev = 0;
    std::uint64_t cls = 0;
    space.for_each_subset([&](std::uint32_t subset, std::uint64_t bnd) {
        const std::uint32_t changed = subset ^ prev;
        if (changed) cls ^= masks[std::countr_zero(changed)];
        prev = subset;
        ++out.total;
        ++coset_sizes[{bnd, cls}];

        const EdgeSet truth = space.to_edge_set(s.edge_count(), subset);
        peel(s, forest, restricted_boundary(s, truth), ws, correction);
        std::uint64_t corr_cls = 0;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (correction.contains(edges[i])) corr_cls ^= masks[i];
        }
        if (corr_cls == cls) ++out.decoder;
    });
    std::map<std::uint64_t, std::uint64_t> best;
    for (const auto& [key, n] : coset_sizes) best[key.first] = std::max(best[key.first], n);
    for (const auto& [syn, n] : best) out.optimal += n;
    return out;
}

}  // namespace surfpeel::oracle
