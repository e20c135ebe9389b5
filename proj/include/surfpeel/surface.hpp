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

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "surfpeel/error.hpp"
#include "surfpeel/index_set.hpp"

namespace surfpeel {

using Index = std::uint32_t;
inline constexpr Index kNone = std::numeric_limits<Index>::max();

struct Edge {
    Index u = 0;
    Index v = 0;

    Index other(Index w) const noexcept { return w == u ? v : u; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Representatives used to read off the logical class of a residual error.
///
/// `z_sector` holds edge sets whose intersection parity with a Z residual
/// (a relative cycle of the graph) detects a non-trivial class; `x_sector`
/// plays the same role for X residuals (relative cycles of the dual),
/// expressed in primal edge indices.
struct LogicalCuts {
    std::vector<EdgeSet> z_sector;
    std::vector<EdgeSet> x_sector;
};

struct SurfaceOptions {
    // Only the 2x2 torus needs parallel edges.
    bool allow_multi_edges = false;
};

/// A cellular surface (V, E, F) with optional open boundary elements.
///
/// Qubits live on the non-open edges. Immutable after construction; the
/// constructor validates every structural invariant and throws `Error` on
/// the first violation.
class CombinatorialSurface {
   public:
    using Options = SurfaceOptions;

    CombinatorialSurface() = default;

    CombinatorialSurface(std::size_t vertex_count, std::vector<Edge> edges, std::vector<std::vector<Index>> faces,
                         VertexSet open_vertices, EdgeSet open_edges, Options options = {})
        : vertex_count_(vertex_count),
          edges_(std::move(edges)),
          faces_(std::move(faces)),
          open_vertices_(std::move(open_vertices)),
          open_edges_(std::move(open_edges)),
          options_(options) {
        validate_and_index();
    }

    CombinatorialSurface(std::size_t vertex_count, std::vector<Edge> edges, std::vector<std::vector<Index>> faces,
                         Options options = {})
        : CombinatorialSurface(vertex_count, edges, std::move(faces), VertexSet(vertex_count),
                               EdgeSet(edges.size()), options) {}

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t face_count() const noexcept { return faces_.size(); }
    std::size_t qubit_count() const noexcept { return qubit_count_; }

    const Edge& edge(std::size_t e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::span<const Index> face(std::size_t f) const { return faces_.at(f); }
    const std::vector<std::vector<Index>>& faces() const noexcept { return faces_; }

    /// Incident edges of `v`, ascending by edge index.
    std::span<const Index> incident_edges(std::size_t v) const {
        return {adjacency_.data() + adjacency_offset_[v], adjacency_offset_[v + 1] - adjacency_offset_[v]};
    }
    std::size_t degree(std::size_t v) const { return adjacency_offset_[v + 1] - adjacency_offset_[v]; }

    /// The one or two faces containing edge `e`; the second is kNone on the boundary.
    std::array<Index, 2> edge_faces(std::size_t e) const { return edge_faces_.at(e); }
    bool is_boundary_edge(std::size_t e) const { return edge_faces_.at(e)[1] == kNone; }

    bool is_open_vertex(std::size_t v) const noexcept { return open_vertices_.contains(v); }
    bool is_open_edge(std::size_t e) const noexcept { return open_edges_.contains(e); }
    bool is_qubit(std::size_t e) const noexcept { return !open_edges_.contains(e); }
    const VertexSet& open_vertices() const noexcept { return open_vertices_; }
    const EdgeSet& open_edges() const noexcept { return open_edges_; }
    const EdgeSet& qubit_edges() const noexcept { return qubit_edges_; }

    bool has_open_elements() const noexcept { return !open_vertices_.empty(); }
    bool is_closed() const noexcept {
        return std::none_of(edge_faces_.begin(), edge_faces_.end(), [](const auto& f) { return f[1] == kNone; });
    }
    bool allows_multi_edges() const noexcept { return options_.allow_multi_edges; }

    const std::optional<LogicalCuts>& cuts() const noexcept { return cuts_; }
    void set_cuts(LogicalCuts cuts) { cuts_ = std::move(cuts); }

    EdgeSet empty_edge_set() const { return EdgeSet(edges_.size()); }
    VertexSet empty_vertex_set() const { return VertexSet(vertex_count_); }

   private:
    void validate_and_index();

    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Index>> faces_;
    VertexSet open_vertices_;
    EdgeSet open_edges_;
    Options options_;

    EdgeSet qubit_edges_;
    std::size_t qubit_count_ = 0;
    std::vector<std::size_t> adjacency_offset_;
    std::vector<Index> adjacency_;
    std::vector<std::array<Index, 2>> edge_faces_;
    std::optional<LogicalCuts> cuts_;
};

inline void CombinatorialSurface::validate_and_index() {
    const auto nv = vertex_count_;
    const auto ne = edges_.size();
    if (nv == 0) throw Error(ErrorKind::kDegenerateLattice, "surface has no vertices");
    if (open_vertices_.size() != nv || open_edges_.size() != ne) {
        throw Error(ErrorKind::kIndexRange, "open-element sets do not match the surface size");
    }

    for (std::size_t e = 0; e < ne; ++e) {
        const auto& [u, v] = edges_[e];
        if (u >= nv || v >= nv) {
            throw Error(ErrorKind::kIndexRange, "edge " + std::to_string(e) + " has an endpoint out of range");
        }
        if (u == v) throw Error(ErrorKind::kLoop, "edge " + std::to_string(e) + " is a loop at vertex " + std::to_string(u));
    }
    if (!options_.allow_multi_edges) {
        std::vector<std::pair<std::pair<Index, Index>, std::size_t>> keyed;
        keyed.reserve(ne);
        for (std::size_t e = 0; e < ne; ++e) {
            auto [u, v] = edges_[e];
            keyed.push_back({{std::min(u, v), std::max(u, v)}, e});
        }
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t k = 1; k < keyed.size(); ++k) {
            if (keyed[k].first == keyed[k - 1].first) {
                throw Error(ErrorKind::kMultiEdge, "edges " + std::to_string(keyed[k - 1].second) + " and " +
                                                       std::to_string(keyed[k].second) + " join the same vertices");
            }
        }
    }

    edge_faces_.assign(ne, {kNone, kNone});
    for (std::size_t f = 0; f < faces_.size(); ++f) {
        const auto& face = faces_[f];
        if (face.empty()) throw Error(ErrorKind::kFaceIncidence, "face " + std::to_string(f) + " is empty");
        std::vector<Index> parity_touched;
        for (Index e : face) {
            if (e >= ne) throw Error(ErrorKind::kIndexRange, "face " + std::to_string(f) + " references a missing edge");
            auto& slot = edge_faces_[e];
            if (slot[0] == f || slot[1] == f) {
                throw Error(ErrorKind::kFaceIncidence, "face " + std::to_string(f) + " lists edge " + std::to_string(e) + " twice");
            }
            if (slot[0] == kNone) {
                slot[0] = static_cast<Index>(f);
            } else if (slot[1] == kNone) {
                slot[1] = static_cast<Index>(f);
            } else {
                throw Error(ErrorKind::kFaceIncidence, "edge " + std::to_string(e) + " lies on more than two faces");
            }
        }
        // A face must be delimited by a closed walk: every vertex met an even number of times.
        std::vector<Index> ends;
        for (Index e : face) {
            ends.push_back(edges_[e].u);
            ends.push_back(edges_[e].v);
        }
        std::sort(ends.begin(), ends.end());
        for (std::size_t k = 0; k < ends.size();) {
            std::size_t j = k;
            while (j < ends.size() && ends[j] == ends[k]) ++j;
            if ((j - k) % 2 != 0) {
                throw Error(ErrorKind::kFaceIncidence, "face " + std::to_string(f) + " is not a cycle");
            }
            k = j;
        }
    }
    for (std::size_t e = 0; e < ne; ++e) {
        if (edge_faces_[e][0] == kNone) {
            throw Error(ErrorKind::kFaceIncidence, "edge " + std::to_string(e) + " lies on no face");
        }
    }

    open_edges_.for_each([&](std::size_t e) {
        if (edge_faces_[e][1] != kNone) {
            throw Error(ErrorKind::kOpenNotOnBoundary, "open edge " + std::to_string(e) + " is not a boundary edge");
        }
        if (!open_vertices_.contains(edges_[e].u) || !open_vertices_.contains(edges_[e].v)) {
            throw Error(ErrorKind::kOpenNotOnBoundary, "open edge " + std::to_string(e) + " has a non-open endpoint");
        }
    });

    std::vector<std::size_t> deg(nv + 1, 0);
    for (const auto& [u, v] : edges_) {
        ++deg[u];
        ++deg[v];
    }
    adjacency_offset_.assign(nv + 1, 0);
    for (std::size_t v = 0; v < nv; ++v) adjacency_offset_[v + 1] = adjacency_offset_[v] + deg[v];
    adjacency_.assign(adjacency_offset_[nv], 0);
    std::vector<std::size_t> fill(adjacency_offset_.begin(), adjacency_offset_.end() - 1);
    for (std::size_t e = 0; e < ne; ++e) {
        adjacency_[fill[edges_[e].u]++] = static_cast<Index>(e);
        adjacency_[fill[edges_[e].v]++] = static_cast<Index>(e);
    }

    open_vertices_.for_each([&](std::size_t v) {
        auto inc = incident_edges(v);
        bool on_boundary = std::any_of(inc.begin(), inc.end(), [&](Index e) { return edge_faces_[e][1] == kNone; });
        if (!on_boundary) {
            throw Error(ErrorKind::kOpenNotOnBoundary, "open vertex " + std::to_string(v) + " is not on the boundary");
        }
    });

    qubit_edges_ = EdgeSet(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        if (!open_edges_.contains(e)) qubit_edges_.insert(e);
    }
    qubit_count_ = qubit_edges_.count();
}

/// Vertices met an odd number of times by `a`, open vertices included.
inline VertexSet boundary(const CombinatorialSurface& s, const EdgeSet& a) {
    VertexSet out(s.vertex_count());
    a.for_each([&](std::size_t e) {
        const auto& edge = s.edge(e);
        out.flip(edge.u);
        out.flip(edge.v);
    });
    return out;
}

/// The boundary restricted to non-open vertices.
inline VertexSet restricted_boundary(const CombinatorialSurface& s, const EdgeSet& a) {
    VertexSet out(s.vertex_count());
    a.for_each([&](std::size_t e) {
        const auto& edge = s.edge(e);
        if (!s.is_open_vertex(edge.u)) out.flip(edge.u);
        if (!s.is_open_vertex(edge.v)) out.flip(edge.v);
    });
    return out;
}

inline EdgeSet face_edges(const CombinatorialSurface& s, std::size_t f) {
    return EdgeSet::from_indices(s.edge_count(), s.face(f));
}

/// Qubit edges of a face; the support of the plaquette operator Z_f.
inline EdgeSet face_support(const CombinatorialSurface& s, std::size_t f) {
    EdgeSet out(s.edge_count());
    for (Index e : s.face(f)) {
        if (s.is_qubit(e)) out.insert(e);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Builders

/// Square-lattice torus. Vertex (x, y) is y*L + x; the horizontal edge
/// leaving (x, y) is 2*(y*L + x) and the vertical one is 2*(y*L + x) + 1.
/// Face y*L + x is the plaquette whose lower-left corner is (x, y).
inline CombinatorialSurface build_torus(std::size_t L) {
    if (L < 2) {
        throw Error(ErrorKind::kDegenerateLattice, "torus size must be at least 2 (got " + std::to_string(L) + ")");
    }
    auto vid = [L](std::size_t x, std::size_t y) { return static_cast<Index>((y % L) * L + (x % L)); };
    auto hid = [L](std::size_t x, std::size_t y) { return static_cast<Index>(2 * ((y % L) * L + (x % L))); };
    auto vert = [L](std::size_t x, std::size_t y) { return static_cast<Index>(2 * ((y % L) * L + (x % L)) + 1); };

    std::vector<Edge> edges(2 * L * L);
    std::vector<std::vector<Index>> faces(L * L);
    for (std::size_t y = 0; y < L; ++y) {
        for (std::size_t x = 0; x < L; ++x) {
            edges[hid(x, y)] = {vid(x, y), vid(x + 1, y)};
            edges[vert(x, y)] = {vid(x, y), vid(x, y + 1)};
            faces[vid(x, y)] = {hid(x, y), hid(x, y + 1), vert(x, y), vert(x + 1, y)};
        }
    }
    CombinatorialSurface s(L * L, std::move(edges), std::move(faces), {.allow_multi_edges = (L == 2)});

    LogicalCuts cuts;
    const auto ne = s.edge_count();
    EdgeSet column_h(ne), row_v(ne), row_h(ne), column_v(ne);
    for (std::size_t k = 0; k < L; ++k) {
        column_h.insert(hid(0, k));
        row_v.insert(vert(k, 0));
        row_h.insert(hid(k, 0));
        column_v.insert(vert(0, k));
    }
    cuts.z_sector = {column_h, row_v};
    cuts.x_sector = {row_h, column_v};
    s.set_cuts(std::move(cuts));
    return s;
}

/// Rectangular planar patch with open left/right sides and closed top/bottom.
///
/// Vertices sit on columns x = 0..Lx and rows y = 0..Ly-1; columns 0 and Lx
/// are open, as are the vertical edges along them. Edges are numbered row by
/// row: the Lx horizontal edges of row y, then (below the last row) the Lx+1
/// vertical edges joining rows y and y+1. Faces are numbered row-major.
/// Encodes one logical qubit with distance Lx for Z and Ly for X.
inline CombinatorialSurface build_planar(std::size_t Lx, std::size_t Ly) {
    if (Lx < 2 || Ly < 2) {
        throw Error(ErrorKind::kDegenerateLattice,
                    "planar patch needs Lx, Ly >= 2 (got " + std::to_string(Lx) + "x" + std::to_string(Ly) + ")");
    }
    const std::size_t cols = Lx + 1;
    auto vid = [cols](std::size_t x, std::size_t y) { return static_cast<Index>(y * cols + x); };
    const std::size_t per_row = Lx + cols;
    auto hid = [per_row](std::size_t x, std::size_t y) { return static_cast<Index>(y * per_row + x); };
    auto vert = [per_row, Lx](std::size_t x, std::size_t y) { return static_cast<Index>(y * per_row + Lx + x); };

    const std::size_t nv = cols * Ly;
    const std::size_t ne = Lx * Ly + cols * (Ly - 1);
    std::vector<Edge> edges(ne);
    VertexSet open_v(nv);
    EdgeSet open_e(ne);
    for (std::size_t y = 0; y < Ly; ++y) {
        open_v.insert(vid(0, y));
        open_v.insert(vid(Lx, y));
        for (std::size_t x = 0; x < Lx; ++x) edges[hid(x, y)] = {vid(x, y), vid(x + 1, y)};
        if (y + 1 < Ly) {
            for (std::size_t x = 0; x <= Lx; ++x) edges[vert(x, y)] = {vid(x, y), vid(x, y + 1)};
            open_e.insert(vert(0, y));
            open_e.insert(vert(Lx, y));
        }
    }
    std::vector<std::vector<Index>> faces;
    faces.reserve(Lx * (Ly - 1));
    for (std::size_t y = 0; y + 1 < Ly; ++y) {
        for (std::size_t x = 0; x < Lx; ++x) faces.push_back({hid(x, y), hid(x, y + 1), vert(x, y), vert(x + 1, y)});
    }
    CombinatorialSurface s(nv, std::move(edges), std::move(faces), std::move(open_v), std::move(open_e));

    EdgeSet column_h(ne), row_h(ne);
    for (std::size_t y = 0; y < Ly; ++y) column_h.insert(hid(0, y));
    for (std::size_t x = 0; x < Lx; ++x) row_h.insert(hid(x, 0));
    s.set_cuts({.z_sector = {column_h}, .x_sector = {row_h}});
    return s;
}

// ---------------------------------------------------------------------------
// Dual

/// The dual surface together with the qubit-edge bijection.
///
/// Dual qubit edge i corresponds to primal edge `to_primal[i]`; open dual
/// edges map to kNone. Dual vertex f < face_count() is primal face f, and
/// dual face k is the k-th non-open primal vertex (`face_vertex[k]`).
struct DualSurface {
    CombinatorialSurface surface;
    std::vector<Index> to_dual;    // primal edge -> dual edge (kNone if open)
    std::vector<Index> to_primal;  // dual edge -> primal edge (kNone if open)
    std::vector<Index> face_vertex;

    /// Transports a primal-indexed edge set of qubits onto dual edges.
    EdgeSet to_dual_set(const EdgeSet& primal) const {
        EdgeSet out(surface.edge_count());
        primal.for_each([&](std::size_t e) { out.insert(to_dual[e]); });
        return out;
    }
    EdgeSet to_primal_set(const EdgeSet& dual) const {
        EdgeSet out(to_dual.size());
        dual.for_each([&](std::size_t d) { out.insert(to_primal[d]); });
        return out;
    }
};

/// Builds the dual: faces become vertices, each qubit edge crosses to a dual
/// edge, and boundary types swap. A closed (qubit) boundary edge gets a fresh
/// open dual vertex on its far side; consecutive such vertices around a
/// non-open boundary vertex are joined by an open dual edge. Primal open
/// edges and open vertices have no dual counterpart.
inline DualSurface dual(const CombinatorialSurface& s) {
    const std::size_t nf = s.face_count();
    const std::size_t ne = s.edge_count();

    std::vector<Index> outer(ne, kNone);
    std::size_t dual_nv = nf;
    for (std::size_t e = 0; e < ne; ++e) {
        if (s.is_qubit(e) && s.is_boundary_edge(e)) outer[e] = static_cast<Index>(dual_nv++);
    }

    DualSurface d;
    d.to_dual.assign(ne, kNone);
    std::vector<Edge> edges;
    edges.reserve(s.qubit_count());
    for (std::size_t e = 0; e < ne; ++e) {
        if (!s.is_qubit(e)) continue;
        auto [f1, f2] = s.edge_faces(e);
        d.to_dual[e] = static_cast<Index>(edges.size());
        d.to_primal.push_back(static_cast<Index>(e));
        edges.push_back({f1, f2 == kNone ? outer[e] : f2});
    }

    std::vector<Index> open_edge_of_vertex(s.vertex_count(), kNone);
    for (std::size_t v = 0; v < s.vertex_count(); ++v) {
        if (s.is_open_vertex(v)) continue;
        std::vector<Index> closed_boundary;
        for (Index e : s.incident_edges(v)) {
            if (outer[e] != kNone) closed_boundary.push_back(e);
        }
        if (closed_boundary.empty()) continue;
        if (closed_boundary.size() != 2) {
            throw Error(ErrorKind::kInvalidDual, "vertex " + std::to_string(v) + " meets " +
                                                     std::to_string(closed_boundary.size()) +
                                                     " closed boundary edges; expected 0 or 2");
        }
        open_edge_of_vertex[v] = static_cast<Index>(edges.size());
        d.to_primal.push_back(kNone);
        edges.push_back({outer[closed_boundary[0]], outer[closed_boundary[1]]});
    }

    std::vector<std::vector<Index>> faces;
    for (std::size_t v = 0; v < s.vertex_count(); ++v) {
        if (s.is_open_vertex(v)) continue;
        std::vector<Index> face;
        for (Index e : s.incident_edges(v)) {
            if (s.is_qubit(e)) face.push_back(d.to_dual[e]);
        }
        if (open_edge_of_vertex[v] != kNone) face.push_back(open_edge_of_vertex[v]);
        d.face_vertex.push_back(static_cast<Index>(v));
        faces.push_back(std::move(face));
    }

    VertexSet open_v(dual_nv);
    for (std::size_t k = nf; k < dual_nv; ++k) open_v.insert(k);
    EdgeSet open_e(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (d.to_primal[k] == kNone) open_e.insert(k);
    }

    try {
        d.surface = CombinatorialSurface(dual_nv, std::move(edges), std::move(faces), std::move(open_v),
                                         std::move(open_e), {.allow_multi_edges = s.allows_multi_edges()});
    } catch (const Error& err) {
        throw Error(ErrorKind::kInvalidDual, err.what());
    }
    return d;
}

}  // namespace surfpeel
