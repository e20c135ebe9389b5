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


#include <vector>

#include <gtest/gtest.h>

#include "surfpeel/channel.hpp"
#include "surfpeel/homology.hpp"
#include "surfpeel/rng.hpp"
#include "surfpeel/surface.hpp"

namespace surfpeel {
namespace {

BitVector bits(std::size_t n, std::initializer_list<std::size_t> ones) { return BitVector(n, ones); }

TEST(Gf2Matrix, RankOfDependentRows) {
    Gf2Matrix m(4);
    m.add_row(bits(4, {0, 1}));
    m.add_row(bits(4, {1, 2}));
    m.add_row(bits(4, {0, 2}));
    EXPECT_EQ(m.rank(), 2u);
    m.add_row(bits(4, {3}));
    EXPECT_EQ(m.rank(), 3u);
}

TEST(Gf2Matrix, KernelVectorsAreAnnihilated) {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t rows = 1 + rng.below(12), cols = 1 + rng.below(20);
        Gf2Matrix m(cols);
        for (std::size_t r = 0; r < rows; ++r) {
            BitVector row(cols);
            for (std::size_t c = 0; c < cols; ++c) {
                if (rng() & 1) row.insert(c);
            }
            m.add_row(row);
        }
        const auto kernel = m.kernel_basis();
        EXPECT_EQ(kernel.size() + m.rank(), cols);
        for (const auto& x : kernel) {
            for (const auto& row : m.row_list()) EXPECT_FALSE(row.intersection_parity(x));
        }
    }
}

TEST(Gf2Matrix, SolveFindsPreimageOrReportsNone) {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t rows = 1 + rng.below(10), cols = 1 + rng.below(10);
        Gf2Matrix m(cols);
        for (std::size_t r = 0; r < rows; ++r) {
            BitVector row(cols);
            for (std::size_t c = 0; c < cols; ++c) {
                if (rng() & 1) row.insert(c);
            }
            m.add_row(row);
        }
        BitVector x(cols);
        for (std::size_t c = 0; c < cols; ++c) {
            if (rng() & 1) x.insert(c);
        }
        BitVector b(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            if (m.row(r).intersection_parity(x)) b.insert(r);
        }
        const auto sol = m.solve(b);
        ASSERT_TRUE(sol.has_value());
        for (std::size_t r = 0; r < rows; ++r) EXPECT_EQ(m.row(r).intersection_parity(*sol), b.contains(r));
    }
    Gf2Matrix m(2);
    m.add_row(bits(2, {0, 1}));
    m.add_row(bits(2, {0, 1}));
    EXPECT_FALSE(m.solve(bits(2, {0})).has_value());
    EXPECT_THROW(m.solve(bits(3, {0})), Error);
}

TEST(Homology, TorusDimensions) {
    const auto t = build_torus(3);
    EXPECT_EQ(cycle_basis(t).rows(), 10u);
    EXPECT_EQ(face_matrix(t).rank(), 8u);
    EXPECT_EQ(homology_rank(t), 2u);
    EXPECT_EQ(logical_representatives(t).size(), 2u);
    for (std::size_t L : {2, 4, 5}) EXPECT_EQ(homology_rank(build_torus(L)), 2u) << L;
}

TEST(Homology, PlanarRankOne) {
    for (auto [lx, ly] : {std::pair{2, 2}, {3, 3}, {4, 6}, {6, 4}}) {
        const auto p = build_planar(lx, ly);
        EXPECT_EQ(homology_rank(p), 1u);
        EXPECT_EQ(homology_rank(dual(p).surface), 1u);
        const SurfaceCode code(p);
        EXPECT_EQ(code.logical_rank(Sector::kZ), 1u);
        EXPECT_EQ(code.logical_rank(Sector::kX), 1u);
    }
}

TEST(LogicalClass, TorusExamples) {
    const SurfaceCode code(build_torus(3));
    const auto& t = code.primal();
    EXPECT_TRUE(code.logical_class(Sector::kZ, face_edges(t, 4)).empty());

    // Horizontal loop along row 0 and along row 1 are homologous.
    EdgeSet row0(t.edge_count()), row1(t.edge_count());
    for (std::size_t x = 0; x < 3; ++x) {
        row0.insert(2 * x);
        row1.insert(2 * (3 + x));
    }
    EXPECT_FALSE(code.logical_class(Sector::kZ, row0).empty());
    EXPECT_FALSE(code.logical_class(Sector::kZ, row1).empty());
    EXPECT_EQ(code.logical_class(Sector::kZ, row0), code.logical_class(Sector::kZ, row1));
    EXPECT_TRUE(code.logical_class(Sector::kZ, row0 ^ row1).empty());

    EXPECT_THROW(
        {
            try {
                code.logical_class(Sector::kZ, EdgeSet(t.edge_count(), {0}));
            } catch (const Error& err) {
                EXPECT_EQ(err.kind(), ErrorKind::kNotACycle);
                throw;
            }
        },
        Error);
}

/// Over every relative cycle of small tori, the class is trivial exactly
/// when the cycle lies in the face span, for both sectors and both cut kinds.
TEST(LogicalClass, ExhaustiveAgainstFaceSpan) {
    for (std::size_t L : {2, 3, 4}) {
        const SurfaceCode builder(build_torus(L));
        const auto derived = SurfaceCode::with_derived_cuts(build_torus(L));
        for (Sector sector : {Sector::kZ, Sector::kX}) {
            const auto& s = sector == Sector::kZ ? builder.primal() : builder.dual().surface;
            const auto faces = face_span(s);
            const auto basis = cycle_basis(s).row_list();
            ASSERT_LE(basis.size(), 20u);
            std::size_t trivial_count = 0;
            for (std::uint32_t mask = 0; mask < (1U << basis.size()); ++mask) {
                EdgeSet c = s.empty_edge_set();
                for (std::size_t k = 0; k < basis.size(); ++k) {
                    if (mask >> k & 1U) c ^= basis[k].retag<EdgeTag>();
                }
                const EdgeSet primal_c = sector == Sector::kZ ? c : builder.dual().to_primal_set(c);
                const bool trivial = faces.contains(c);
                trivial_count += trivial;
                ASSERT_EQ(builder.logical_class(sector, primal_c).empty(), trivial) << "L=" << L << " mask=" << mask;
                ASSERT_EQ(derived.logical_class(sector, primal_c).empty(), trivial) << "L=" << L << " mask=" << mask;
            }
            EXPECT_EQ(trivial_count * 4, std::size_t{1} << basis.size());
        }
    }
}

TEST(LogicalClass, PlanarBuilderAndDerivedAgree) {
    const SurfaceCode builder(build_planar(4, 5));
    const auto derived = SurfaceCode::with_derived_cuts(build_planar(4, 5));
    Rng rng(3);
    for (Sector sector : {Sector::kZ, Sector::kX}) {
        const auto& s = sector == Sector::kZ ? builder.primal() : builder.dual().surface;
        const auto basis = cycle_basis(s).row_list();
        for (int i = 0; i < 500; ++i) {
            EdgeSet c = s.empty_edge_set();
            for (const auto& row : basis) {
                if (rng() & 1) c ^= row.retag<EdgeTag>();
            }
            const EdgeSet primal_c = sector == Sector::kZ ? c : builder.dual().to_primal_set(c);
            EXPECT_EQ(builder.logical_class(sector, primal_c), derived.logical_class(sector, primal_c));
        }
    }
}

TEST(IsFailure, Cases) {
    const SurfaceCode code(build_torus(3));
    const auto& t = code.primal();
    auto err = CssError::identity(t);
    EXPECT_FALSE(code.is_failure(err, err).any());

    // Correction differing by a face is still a success.
    auto corr = err;
    corr.z_support ^= face_edges(t, 0);
    EXPECT_FALSE(code.is_failure(err, corr).any());

    // Differing by a horizontal loop is a Z failure only.
    EdgeSet row0(t.edge_count(), {0, 2, 4});
    corr = err;
    corr.z_support ^= row0;
    auto f = code.is_failure(err, corr);
    EXPECT_TRUE(f.z);
    EXPECT_FALSE(f.x);
    EXPECT_TRUE(f.any());

    // X residual along a dual loop: a column of horizontal edges.
    EdgeSet col0(t.edge_count(), {0, 6, 12});
    corr = err;
    corr.x_support ^= col0;
    f = code.is_failure(err, corr);
    EXPECT_FALSE(f.z);
    EXPECT_TRUE(f.x);

    corr = err;
    corr.z_support.insert(0);
    EXPECT_THROW(
        {
            try {
                code.is_failure(err, corr);
            } catch (const Error& e) {
                EXPECT_EQ(e.kind(), ErrorKind::kSyndromeMismatch);
                throw;
            }
        },
        Error);
}

}  // namespace
}  // namespace surfpeel
