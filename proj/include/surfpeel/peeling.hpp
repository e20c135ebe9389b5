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

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "surfpeel/channel.hpp"
#include "surfpeel/error.hpp"
#include "surfpeel/index_set.hpp"
#include "surfpeel/rng.hpp"
#include "surfpeel/surface.hpp"

namespace surfpeel {

/// Spanning forest of an erasure, grown breadth-first from its roots.
///
/// `edges[k]` was attached through `parent_vertex[k]`; its other endpoint
/// was reached for the first time by that step. Open vertices touched by
/// the erasure are seeds: each one roots its own tree and is never reached
/// by a growth step.
struct SpanningForest {
    std::vector<Index> edges;
    std::vector<Index> parent_vertex;
    std::vector<Index> roots;
    VertexSet vertices;
    VertexSet seed_vertices;
    VertexSet root_vertices;

    std::size_t size() const noexcept { return edges.size(); }

    Index child_vertex(const CombinatorialSurface& s, std::size_t k) const {
        return s.edge(edges[k]).other(parent_vertex[k]);
    }

    EdgeSet edge_set(std::size_t edge_count) const { return EdgeSet::from_indices(edge_count, edges); }

    void reset(const CombinatorialSurface& s) {
        edges.clear();
        parent_vertex.clear();
        roots.clear();
        for (auto* set : {&vertices, &seed_vertices, &root_vertices}) {
            if (set->size() != s.vertex_count()) {
                *set = VertexSet(s.vertex_count());
            } else {
                set->clear();
            }
        }
    }
};

/// What a peeling pass did; used to check the boundary-safety guarantees.
struct PeelStats {
    std::size_t peeled = 0;
    std::size_t open_pendants = 0;
    bool exhausted = true;
};

/// Per-surface scratch memory so repeated decodes touch only the erasure.
class PeelingWorkspace {
   public:
    PeelingWorkspace() = default;
    explicit PeelingWorkspace(const CombinatorialSurface& s) { bind(s); }

    void bind(const CombinatorialSurface& s) {
        if (flag_.size() != s.vertex_count()) {
            flag_.assign(s.vertex_count(), 0);
            syndrome_.assign(s.vertex_count(), 0);
            local_.assign(s.vertex_count(), kNone);
        }
    }

   private:
    friend void grow_forest(const CombinatorialSurface&, const EdgeSet&, PeelingWorkspace&, SpanningForest&);
    friend PeelStats peel(const CombinatorialSurface&, const SpanningForest&, const VertexSet&, PeelingWorkspace&,
                          EdgeSet&);
    friend PeelStats peel_by_leaves(const CombinatorialSurface&, const SpanningForest&, const VertexSet&,
                                    PeelingWorkspace&, EdgeSet&, Rng*);

    std::vector<std::uint8_t> flag_;
    std::vector<std::uint8_t> syndrome_;
    std::vector<Index> local_;
    std::vector<Index> queue_;
};

/// Grows the seeded spanning forest of `erased` into `out`.
///
/// Roots are taken first among the open vertices of the erasure, then among
/// the remaining vertices, each time in ascending index; neighbours are
/// explored in ascending edge index.
inline void grow_forest(const CombinatorialSurface& s, const EdgeSet& erased, PeelingWorkspace& ws,
                        SpanningForest& out) {
    if (erased.size() != s.edge_count()) throw Error(ErrorKind::kIndexRange, "erasure has the wrong index space");
    ws.bind(s);
    out.reset(s);
    erased.for_each([&](std::size_t e) {
        if (!s.is_qubit(e)) throw Error(ErrorKind::kIndexRange, "open edge " + std::to_string(e) + " cannot be erased");
        out.vertices.insert(s.edge(e).u);
        out.vertices.insert(s.edge(e).v);
    });

    auto& visited = ws.flag_;
    auto& queue = ws.queue_;
    auto grow_from = [&](Index root) {
        visited[root] = 1;
        out.roots.push_back(root);
        out.root_vertices.insert(root);
        queue.clear();
        queue.push_back(root);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Index v = queue[head];
            for (Index e : s.incident_edges(v)) {
                if (!erased.contains(e)) continue;
                const Index w = s.edge(e).other(v);
                if (visited[w] || s.is_open_vertex(w)) continue;
                visited[w] = 1;
                out.edges.push_back(e);
                out.parent_vertex.push_back(v);
                queue.push_back(w);
            }
        }
    };

    out.vertices.for_each([&](std::size_t v) {
        if (!s.is_open_vertex(v)) return;
        out.seed_vertices.insert(v);
        grow_from(static_cast<Index>(v));
    });
    out.vertices.for_each([&](std::size_t v) {
        if (!visited[v]) grow_from(static_cast<Index>(v));
    });
    out.vertices.for_each([&](std::size_t v) { visited[v] = 0; });
}

inline SpanningForest grow_forest(const CombinatorialSurface& s, const ErasurePattern& e) {
    PeelingWorkspace ws(s);
    SpanningForest f;
    grow_forest(s, e.erased, ws, f);
    return f;
}

namespace peel_detail {

inline void load_syndrome(const CombinatorialSurface& s, const SpanningForest& f, const VertexSet& sigma,
                          std::vector<std::uint8_t>& work) {
    if (sigma.size() != s.vertex_count()) throw Error(ErrorKind::kIndexRange, "syndrome has the wrong index space");
    sigma.for_each([&](std::size_t v) {
        if (s.is_open_vertex(v) || !f.vertices.contains(v)) {
            f.vertices.for_each([&](std::size_t w) { work[w] = 0; });
            throw Error(ErrorKind::kInvalidSyndrome,
                        "syndrome vertex " + std::to_string(v) +
                            (s.is_open_vertex(v) ? " is open" : " is not covered by the erasure"));
        }
        work[v] = 1;
    });
}

/// After a complete peel only roots can hold syndrome; an open root absorbs it.
inline void check_residual(const CombinatorialSurface& s, const SpanningForest& f, std::vector<std::uint8_t>& work) {
    std::size_t bad = kNone;
    for (Index r : f.roots) {
        if (work[r] && !s.is_open_vertex(r) && bad == kNone) bad = r;
        work[r] = 0;
    }
    if (bad != kNone) {
        throw Error(ErrorKind::kInvalidSyndrome,
                    "residual syndrome at vertex " + std::to_string(bad) + ": not realizable inside the erasure");
    }
}

}  // namespace peel_detail

/// Peels the forest from its last-grown edge back to its first.
///
/// The child endpoint of the last remaining edge is always a pendant vertex,
/// and seeded growth never makes an open vertex a child, so this order is a
/// valid leaf order that never needs syndrome data at an open vertex.
/// Writes into `out` the unique A inside the forest whose restricted
/// boundary is `sigma`.
inline PeelStats peel(const CombinatorialSurface& s, const SpanningForest& f, const VertexSet& sigma,
                      PeelingWorkspace& ws, EdgeSet& out) {
    ws.bind(s);
    if (out.size() != s.edge_count()) {
        out = s.empty_edge_set();
    } else {
        out.clear();
    }
    auto& work = ws.syndrome_;
    peel_detail::load_syndrome(s, f, sigma, work);

    PeelStats stats;
    for (std::size_t k = f.size(); k-- > 0;) {
        const Index e = f.edges[k];
        const Index parent = f.parent_vertex[k];
        const Index pendant = s.edge(e).other(parent);
        if (s.is_open_vertex(pendant)) ++stats.open_pendants;
        if (work[pendant]) {
            out.insert(e);
            work[pendant] = 0;
            work[parent] ^= 1;
        }
        ++stats.peeled;
    }
    peel_detail::check_residual(s, f, work);
    return stats;
}

inline EdgeSet peel(const CombinatorialSurface& s, const SpanningForest& f, const VertexSet& sigma) {
    PeelingWorkspace ws(s);
    EdgeSet out;
    peel(s, f, sigma, ws, out);
    return out;
}

/// Peels by repeatedly removing a current leaf whose pendant vertex is
/// non-open, keeping an explicit stack of leaves. With `rng` the next leaf
/// is drawn uniformly from the stack; without it the stack is LIFO.
///
/// `stats.exhausted` is false if no admissible leaf remained before the
/// forest was empty.
inline PeelStats peel_by_leaves(const CombinatorialSurface& s, const SpanningForest& f, const VertexSet& sigma,
                                PeelingWorkspace& ws, EdgeSet& out, Rng* rng = nullptr) {
    ws.bind(s);
    if (out.size() != s.edge_count()) {
        out = s.empty_edge_set();
    } else {
        out.clear();
    }
    auto& work = ws.syndrome_;
    auto& local = ws.local_;

    // Compact local numbering of the forest vertices and a CSR incidence list.
    std::vector<Index> vertex_of;
    f.vertices.for_each([&](std::size_t v) {
        local[v] = static_cast<Index>(vertex_of.size());
        vertex_of.push_back(static_cast<Index>(v));
    });
    const std::size_t n = vertex_of.size();
    std::vector<Index> degree(n, 0);
    for (Index e : f.edges) {
        ++degree[local[s.edge(e).u]];
        ++degree[local[s.edge(e).v]];
    }
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + degree[i];
    std::vector<Index> incident(offset[n]);
    {
        std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
        for (std::size_t k = 0; k < f.size(); ++k) {
            const auto& edge = s.edge(f.edges[k]);
            incident[fill[local[edge.u]]++] = static_cast<Index>(k);
            incident[fill[local[edge.v]]++] = static_cast<Index>(k);
        }
    }
    std::vector<std::uint8_t> removed(f.size(), 0);

    auto release = [&]() {
        for (Index v : vertex_of) {
            local[v] = kNone;
            work[v] = 0;
        }
    };

    try {
        peel_detail::load_syndrome(s, f, sigma, work);
    } catch (...) {
        release();
        throw;
    }

    std::vector<Index> leaves;
    for (std::size_t i = 0; i < n; ++i) {
        if (degree[i] == 1 && !s.is_open_vertex(vertex_of[i])) leaves.push_back(static_cast<Index>(i));
    }

    PeelStats stats;
    while (!leaves.empty()) {
        if (rng != nullptr) {
            const auto pick = static_cast<std::size_t>(rng->below(leaves.size()));
            std::swap(leaves[pick], leaves.back());
        }
        const Index u = leaves.back();
        leaves.pop_back();
        if (degree[u] != 1) continue;

        std::size_t k = kNone;
        for (std::size_t j = offset[u]; j < offset[u + 1]; ++j) {
            if (!removed[incident[j]]) {
                k = incident[j];
                break;
            }
        }
        removed[k] = 1;
        const Index e = f.edges[k];
        const Index pendant = vertex_of[u];
        const Index other = s.edge(e).other(pendant);
        const Index w = local[other];
        if (s.is_open_vertex(pendant)) ++stats.open_pendants;
        if (work[pendant]) {
            out.insert(e);
            work[pendant] = 0;
            work[other] ^= 1;
        }
        --degree[u];
        --degree[w];
        ++stats.peeled;
        if (degree[w] == 1 && !s.is_open_vertex(other)) leaves.push_back(w);
    }
    stats.exhausted = stats.peeled == f.size();

    bool residual = false;
    for (Index v : vertex_of) {
        if (work[v] && !s.is_open_vertex(v)) residual = true;
    }
    release();
    if (stats.exhausted && residual) {
        throw Error(ErrorKind::kInvalidSyndrome, "residual syndrome after peeling: not realizable inside the erasure");
    }
    return stats;
}

struct DecodeStats {
    PeelStats z;
    PeelStats x;
    std::size_t forest_z = 0;
    std::size_t forest_x = 0;
};

/// Maximum-likelihood erasure decoder for both sectors.
///
/// Holds scratch memory, so one instance per thread; the surfaces it refers
/// to must outlive it.
class PeelingDecoder {
   public:
    PeelingDecoder(const CombinatorialSurface& primal, const DualSurface& dual)
        : primal_(&primal),
          dual_(&dual),
          primal_ws_(primal),
          dual_ws_(dual.surface),
          dual_erased_(dual.surface.edge_count()),
          dual_correction_(dual.surface.edge_count()) {}

    /// Writes into `out` an error inside the erasure with the given syndromes.
    DecodeStats decode(const ErasurePattern& erasure, const VertexSet& sigma_z, const VertexSet& sigma_x,
                       CssError& out) {
        DecodeStats stats;
        grow_forest(*primal_, erasure.erased, primal_ws_, primal_forest_);
        stats.z = peel(*primal_, primal_forest_, sigma_z, primal_ws_, out.z_support);
        stats.forest_z = primal_forest_.size();

        dual_erased_.clear();
        erasure.erased.for_each([&](std::size_t e) { dual_erased_.insert(dual_->to_dual[e]); });
        grow_forest(dual_->surface, dual_erased_, dual_ws_, dual_forest_);
        stats.x = peel(dual_->surface, dual_forest_, sigma_x, dual_ws_, dual_correction_);
        stats.forest_x = dual_forest_.size();

        if (out.x_support.size() != primal_->edge_count()) {
            out.x_support = primal_->empty_edge_set();
        } else {
            out.x_support.clear();
        }
        dual_correction_.for_each([&](std::size_t d) { out.x_support.insert(dual_->to_primal[d]); });
        return stats;
    }

    CssError decode(const ErasurePattern& erasure, const VertexSet& sigma_z, const VertexSet& sigma_x) {
        CssError out = CssError::identity(*primal_);
        decode(erasure, sigma_z, sigma_x, out);
        return out;
    }

    const SpanningForest& primal_forest() const noexcept { return primal_forest_; }
    const SpanningForest& dual_forest() const noexcept { return dual_forest_; }

   private:
    const CombinatorialSurface* primal_;
    const DualSurface* dual_;
    PeelingWorkspace primal_ws_;
    PeelingWorkspace dual_ws_;
    SpanningForest primal_forest_;
    SpanningForest dual_forest_;
    EdgeSet dual_erased_;
    EdgeSet dual_correction_;
};

inline CssError decode(const CombinatorialSurface& s, const DualSurface& d, const ErasurePattern& e,
                       const VertexSet& sigma_z, const VertexSet& sigma_x) {
    PeelingDecoder decoder(s, d);
    return decoder.decode(e, sigma_z, sigma_x);
}

inline CssError decode(const CombinatorialSurface& s, const ErasurePattern& e, const VertexSet& sigma_z,
                       const VertexSet& sigma_x) {
    const DualSurface d = dual(s);
    return decode(s, d, e, sigma_z, sigma_x);
}

}  // namespace surfpeel
