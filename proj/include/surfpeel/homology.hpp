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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surfpeel/channel.hpp"
#include "surfpeel/error.hpp"
#include "surfpeel/index_set.hpp"
#include "surfpeel/surface.hpp"

namespace surfpeel {

struct Gf2Tag {};
using BitVector = IndexSet<Gf2Tag>;

/// Dense matrix over GF(2), stored as rows.
class Gf2Matrix {
   public:
    Gf2Matrix() = default;
    explicit Gf2Matrix(std::size_t cols) : cols_(cols) {}

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    const BitVector& row(std::size_t i) const { return rows_.at(i); }
    const std::vector<BitVector>& row_list() const noexcept { return rows_; }

    void add_row(BitVector r) {
        if (r.size() != cols_) throw Error(ErrorKind::kIndexRange, "row width mismatch");
        rows_.push_back(std::move(r));
    }
    template <typename Tag>
    void add_row(const IndexSet<Tag>& r) {
        add_row(r.template retag<Gf2Tag>());
    }

    /// Row-reduced echelon form; returns the pivot column of each kept row.
    std::vector<std::size_t> reduce() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_.size(); ++c) {
            std::size_t sel = r;
            while (sel < rows_.size() && !rows_[sel].contains(c)) ++sel;
            if (sel == rows_.size()) continue;
            std::swap(rows_[r], rows_[sel]);
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (i != r && rows_[i].contains(c)) rows_[i] ^= rows_[r];
            }
            pivots.push_back(c);
            ++r;
        }
        rows_.resize(r);
        return pivots;
    }

    std::size_t rank() const {
        Gf2Matrix copy = *this;
        return copy.reduce().size();
    }

    /// Basis of { x : M x = 0 }.
    std::vector<BitVector> kernel_basis() const {
        Gf2Matrix m = *this;
        const auto pivots = m.reduce();
        std::vector<char> is_pivot(cols_, 0);
        for (auto c : pivots) is_pivot[c] = 1;
        std::vector<BitVector> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            BitVector x(cols_);
            x.insert(free);
            for (std::size_t r = 0; r < pivots.size(); ++r) {
                if (m.rows_[r].contains(free)) x.insert(pivots[r]);
            }
            basis.push_back(std::move(x));
        }
        return basis;
    }

    /// Some x with M x = b, if one exists.
    std::optional<BitVector> solve(const BitVector& b) const {
        if (b.size() != rows_.size()) throw Error(ErrorKind::kIndexRange, "right-hand side length mismatch");
        // Augment each row with its right-hand side bit in column cols_.
        Gf2Matrix aug(cols_ + 1);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            BitVector r(cols_ + 1);
            rows_[i].for_each([&](std::size_t c) { r.insert(c); });
            if (b.contains(i)) r.insert(cols_);
            aug.add_row(std::move(r));
        }
        const auto pivots = aug.reduce();
        BitVector x(cols_);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            if (pivots[r] == cols_) return std::nullopt;
            if (aug.rows_[r].contains(cols_)) x.insert(pivots[r]);
        }
        return x;
    }

   private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

/// Incrementally maintained row space, for membership tests.
class Gf2Span {
   public:
    explicit Gf2Span(std::size_t cols) : cols_(cols) {}

    /// Reduces v against the current basis; empty iff v is in the span.
    BitVector residue(BitVector v) const {
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            if (v.contains(pivot_[k])) v ^= basis_[k];
        }
        return v;
    }
    template <typename Tag>
    bool contains(const IndexSet<Tag>& v) const {
        return residue(v.template retag<Gf2Tag>()).empty();
    }

    /// Adds v; returns false if it was already in the span.
    template <typename Tag>
    bool insert(const IndexSet<Tag>& v) {
        BitVector r = residue(v.template retag<Gf2Tag>());
        if (r.empty()) return false;
        const std::size_t p = r.to_vector().front();
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            if (basis_[k].contains(p)) basis_[k] ^= r;
        }
        basis_.push_back(std::move(r));
        pivot_.push_back(p);
        return true;
    }

    std::size_t dimension() const noexcept { return basis_.size(); }
    std::size_t cols() const noexcept { return cols_; }

   private:
    std::size_t cols_;
    std::vector<BitVector> basis_;
    std::vector<std::size_t> pivot_;
};

/// Restricted boundary map: one row per non-open vertex over edge columns,
/// plus a unit row per open edge so solutions never use open edges.
inline Gf2Matrix restricted_boundary_matrix(const CombinatorialSurface& s) {
    Gf2Matrix m(s.edge_count());
    for (std::size_t v = 0; v < s.vertex_count(); ++v) {
        if (s.is_open_vertex(v)) continue;
        BitVector r(s.edge_count());
        for (Index e : s.incident_edges(v)) {
            if (s.is_qubit(e)) r.flip(e);
        }
        m.add_row(std::move(r));
    }
    s.open_edges().for_each([&](std::size_t e) { m.add_row(BitVector(s.edge_count(), {e})); });
    return m;
}

/// Basis of the relative cycles: qubit edge sets meeting every non-open
/// vertex an even number of times.
inline Gf2Matrix cycle_basis(const CombinatorialSurface& s) {
    Gf2Matrix out(s.edge_count());
    for (auto& v : restricted_boundary_matrix(s).kernel_basis()) out.add_row(std::move(v));
    return out;
}

/// Qubit supports of the face operators; spans the trivial cycles.
inline Gf2Matrix face_matrix(const CombinatorialSurface& s) {
    Gf2Matrix m(s.edge_count());
    for (std::size_t f = 0; f < s.face_count(); ++f) m.add_row(face_support(s, f));
    return m;
}

inline Gf2Span face_span(const CombinatorialSurface& s) {
    Gf2Span span(s.edge_count());
    for (std::size_t f = 0; f < s.face_count(); ++f) span.insert(face_support(s, f));
    return span;
}

/// Relative cycles completing the face space to the whole cycle space;
/// one per independent non-trivial class.
inline std::vector<EdgeSet> logical_representatives(const CombinatorialSurface& s) {
    Gf2Span span = face_span(s);
    std::vector<EdgeSet> reps;
    const auto cycles = cycle_basis(s);
    for (const auto& c : cycles.row_list()) {
        if (span.insert(c)) reps.push_back(c.retag<EdgeTag>());
    }
    return reps;
}

inline std::size_t homology_rank(const CombinatorialSurface& s) {
    return cycle_basis(s).rows() - face_matrix(s).rank();
}

using LogicalClass = IndexSet<LogicalTag>;

enum class Sector { kZ, kX };

struct SectorFailure {
    bool z = false;
    bool x = false;
    bool any() const noexcept { return z || x; }
};

/// A surface, its dual, and the per-sector logical readout.
///
/// Residuals are classified by intersection parity with fixed
/// representatives of the opposite sector: a Z residual is trivial iff it
/// commutes with every X logical, and vice versa. Builders supply their own
/// coordinate cuts; other surfaces get representatives by elimination.
class SurfaceCode {
   public:
    explicit SurfaceCode(CombinatorialSurface s) : primal_(std::move(s)), dual_(surfpeel::dual(primal_)) {
        if (primal_.cuts()) {
            z_cuts_ = primal_.cuts()->z_sector;
            x_cuts_ = primal_.cuts()->x_sector;
        } else {
            derive_cuts();
        }
    }

    static SurfaceCode with_derived_cuts(CombinatorialSurface s) {
        SurfaceCode code(std::move(s));
        code.derive_cuts();
        return code;
    }

    const CombinatorialSurface& primal() const noexcept { return primal_; }
    const DualSurface& dual() const noexcept { return dual_; }
    const std::vector<EdgeSet>& cuts(Sector sector) const noexcept {
        return sector == Sector::kZ ? z_cuts_ : x_cuts_;
    }
    std::size_t logical_rank(Sector sector) const noexcept { return cuts(sector).size(); }

    bool is_relative_cycle(Sector sector, const EdgeSet& c) const {
        if (sector == Sector::kZ) return restricted_boundary(primal_, c).empty();
        return restricted_boundary(dual_.surface, dual_.to_dual_set(c)).empty();
    }

    /// Class of a relative cycle `c` (primal edge indices) in `sector`.
    LogicalClass logical_class(Sector sector, const EdgeSet& c) const {
        if (!is_relative_cycle(sector, c)) {
            throw Error(ErrorKind::kNotACycle, sector == Sector::kZ ? "Z residual has a non-empty syndrome"
                                                                    : "X residual has a non-empty syndrome");
        }
        return class_bits(sector, c);
    }

    /// Parities against the cuts, without checking that `c` is a cycle.
    LogicalClass class_bits(Sector sector, const EdgeSet& c) const {
        const auto& reps = cuts(sector);
        LogicalClass out(reps.size());
        for (std::size_t k = 0; k < reps.size(); ++k) {
            if (c.intersection_parity(reps[k])) out.insert(k);
        }
        return out;
    }

    SectorFailure is_failure(const CssError& truth, const CssError& correction) const {
        const EdgeSet rz = truth.z_support ^ correction.z_support;
        const EdgeSet rx = truth.x_support ^ correction.x_support;
        if (!is_relative_cycle(Sector::kZ, rz) || !is_relative_cycle(Sector::kX, rx)) {
            throw Error(ErrorKind::kSyndromeMismatch, "truth and correction have different syndromes");
        }
        return {!class_bits(Sector::kZ, rz).empty(), !class_bits(Sector::kX, rx).empty()};
    }

   private:
    void derive_cuts() {
        x_cuts_ = logical_representatives(primal_);
        z_cuts_.clear();
        for (const auto& rep : logical_representatives(dual_.surface)) z_cuts_.push_back(dual_.to_primal_set(rep));
    }

    CombinatorialSurface primal_;
    DualSurface dual_;
    std::vector<EdgeSet> z_cuts_;
    std::vector<EdgeSet> x_cuts_;
};

}  // namespace surfpeel
