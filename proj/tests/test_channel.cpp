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

#include <array>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "surfpeel/channel.hpp"
#include "surfpeel/rng.hpp"
#include "surfpeel/surface.hpp"

namespace surfpeel {
namespace {

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    Rng a = derive_stream(42, 7), b = derive_stream(42, 7), c = derive_stream(42, 8), d = derive_stream(43, 7);
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        EXPECT_EQ(x, b());
        EXPECT_NE(x, c());
        EXPECT_NE(x, d());
    }
    Rng r(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        ASSERT_LT(r.below(7), 7u);
    }
}

TEST(SampleErasure, Extremes) {
    Rng rng(3);
    const auto p = build_planar(4, 4);
    EXPECT_TRUE(sample_erasure(p, 0.0, rng).erased.empty());
    EXPECT_EQ(sample_erasure(p, 1.0, rng).erased, p.qubit_edges());
}

TEST(SampleErasure, RejectsBadProbabilities) {
    Rng rng(3);
    const auto t = build_torus(3);
    EXPECT_THROW(sample_erasure(t, -0.1, rng), Error);
    EXPECT_THROW(sample_erasure(t, 1.5, rng), Error);
    EXPECT_THROW(sample_erasure(t, std::numeric_limits<double>::quiet_NaN(), rng), Error);
}

TEST(SampleErasure, MeanFractionConcentrates) {
    const auto t = build_torus(8);
    Rng rng(2024);
    std::size_t erased = 0;
    const std::size_t trials = 100000;
    for (std::size_t i = 0; i < trials; ++i) erased += sample_erasure(t, 0.5, rng).erased.count();
    const double mean = static_cast<double>(erased) / static_cast<double>(trials * t.qubit_count());
    EXPECT_NEAR(mean, 0.5, 0.01);
}

TEST(SamplePauli, EmptyErasureGivesIdentity) {
    const auto t = build_torus(3);
    Rng rng(5);
    const auto err = sample_pauli_on_erasure({t.empty_edge_set()}, rng);
    EXPECT_EQ(err, CssError::identity(t));
}

TEST(SamplePauli, UniformOnSingleQubit) {
    const auto t = build_torus(3);
    const ErasurePattern e{EdgeSet(t.edge_count(), {4})};
    Rng rng(6);
    std::array<int, 4> counts{};  // I, X, Y, Z
    const int n = 40000;
    for (int i = 0; i < n; ++i) {
        const auto err = sample_pauli_on_erasure(e, rng);
        const bool z = err.z_support.contains(4), x = err.x_support.contains(4);
        ++counts[z ? (x ? 2 : 3) : (x ? 1 : 0)];
    }
    for (int c : counts) EXPECT_NEAR(c / static_cast<double>(n), 0.25, 0.01);
}

TEST(SamplePauli, SupportInsideErasure) {
    const auto p = build_planar(5, 5);
    Rng rng(9);
    for (int i = 0; i < 500; ++i) {
        const auto e = sample_erasure(p, 0.3, rng);
        const auto err = sample_pauli_on_erasure(e, rng);
        EXPECT_TRUE(err.z_support.is_subset_of(e.erased));
        EXPECT_TRUE(err.x_support.is_subset_of(e.erased));
    }
}

TEST(Syndrome, Examples) {
    const auto t = build_torus(4);
    const auto d = dual(t);
    auto err = CssError::identity(t);
    EXPECT_TRUE(syndrome_z(t, err).empty());
    EXPECT_TRUE(syndrome_x(d, err).empty());

    err.z_support.insert(3);
    EXPECT_EQ(syndrome_z(t, err), VertexSet(t.vertex_count(), {t.edge(3).u, t.edge(3).v}));

    auto face = CssError::identity(t);
    face.z_support = face_edges(t, 6);
    EXPECT_TRUE(syndrome_z(t, face).empty());
}

TEST(Syndrome, IsLinear) {
    Rng rng(10);
    for (const auto& s : {build_torus(5), build_planar(5, 4)}) {
        const auto d = dual(s);
        for (int i = 0; i < 200; ++i) {
            const auto e = sample_erasure(s, 0.4, rng);
            const auto a = sample_pauli_on_erasure(e, rng);
            const auto b = sample_pauli_on_erasure(sample_erasure(s, 0.4, rng), rng);
            EXPECT_EQ(syndrome_z(s, a ^ b), syndrome_z(s, a) ^ syndrome_z(s, b));
            EXPECT_EQ(syndrome_x(d, a ^ b), syndrome_x(d, a) ^ syndrome_x(d, b));
        }
    }
}

TEST(Syndrome, StabilizersAreInvisible) {
    Rng rng(12);
    for (const auto& s : {build_torus(4), build_planar(4, 5)}) {
        const auto d = dual(s);
        for (int i = 0; i < 200; ++i) {
            auto err = CssError::identity(s);
            for (std::size_t f = 0; f < s.face_count(); ++f) {
                if (rng() & 1) err.z_support ^= face_support(s, f);
            }
            for (std::size_t v = 0; v < s.vertex_count(); ++v) {
                if (s.is_open_vertex(v) || !(rng() & 1)) continue;
                for (Index e : s.incident_edges(v)) {
                    if (s.is_qubit(e)) err.x_support.flip(e);
                }
            }
            EXPECT_TRUE(syndrome_z(s, err).empty());
            EXPECT_TRUE(syndrome_x(d, err).empty());
        }
    }
}

TEST(Syndrome, NeverContainsOpenVertices) {
    const auto p = build_planar(6, 6);
    const auto d = dual(p);
    Rng rng(13);
    for (int i = 0; i < 300; ++i) {
        const auto err = sample_pauli_on_erasure(sample_erasure(p, 0.5, rng), rng);
        syndrome_z(p, err).for_each([&](std::size_t v) { EXPECT_FALSE(p.is_open_vertex(v)); });
        syndrome_x(d, err).for_each([&](std::size_t v) { EXPECT_FALSE(d.surface.is_open_vertex(v)); });
    }
}

}  // namespace
}  // namespace surfpeel
