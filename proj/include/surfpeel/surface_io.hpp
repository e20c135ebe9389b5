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

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "surfpeel/error.hpp"
#include "surfpeel/surface.hpp"

namespace surfpeel {

namespace io_detail {

inline std::vector<std::string_view> tokenize(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::size_t parse_uint(std::string_view tok, std::size_t line_no) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw Error(ErrorKind::kSyntax, "line " + std::to_string(line_no) + ": expected a non-negative integer, got '" +
                                            std::string(tok) + "'");
    }
    return value;
}

inline void expect_arity(const std::vector<std::string_view>& toks, std::size_t n, std::size_t line_no) {
    if (toks.size() != n) {
        throw Error(ErrorKind::kSyntax, "line " + std::to_string(line_no) + ": '" + std::string(toks[0]) + "' takes " +
                                            std::to_string(n - 1) + " argument(s)");
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace io_detail

/// Parses the line-oriented surface format:
///
///     surface <vertex_count>
///     edge <u> <v>          # edge index = order of appearance
///     face <e1> <e2> ...
///     open_vertex <v>
///     open_edge <e>
inline CombinatorialSurface parse_surface(std::string_view text) {
    std::optional<std::size_t> vertex_count;
    std::vector<Edge> edges;
    std::vector<std::vector<Index>> faces;
    std::vector<std::pair<std::size_t, std::size_t>> open_v, open_e;  // (index, line)

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        auto toks = io_detail::tokenize(line);
        if (toks.empty()) continue;
        const auto kw = toks[0];
        if (!vertex_count && kw != "surface") {
            throw Error(ErrorKind::kSyntax, "line " + std::to_string(line_no) + ": expected 'surface <vertex_count>' header");
        }
        if (kw == "surface") {
            if (vertex_count) throw Error(ErrorKind::kSyntax, "line " + std::to_string(line_no) + ": duplicate header");
            io_detail::expect_arity(toks, 2, line_no);
            vertex_count = io_detail::parse_uint(toks[1], line_no);
        } else if (kw == "edge") {
            io_detail::expect_arity(toks, 3, line_no);
            auto u = io_detail::parse_uint(toks[1], line_no);
            auto v = io_detail::parse_uint(toks[2], line_no);
            if (u >= *vertex_count || v >= *vertex_count) {
                throw Error(ErrorKind::kIndexRange, "line " + std::to_string(line_no) + ": vertex out of range");
            }
            edges.push_back({static_cast<Index>(u), static_cast<Index>(v)});
        } else if (kw == "face") {
            if (toks.size() < 2) throw Error(ErrorKind::kSyntax, "line " + std::to_string(line_no) + ": empty face");
            std::vector<Index> face;
            for (std::size_t k = 1; k < toks.size(); ++k) {
                face.push_back(static_cast<Index>(io_detail::parse_uint(toks[k], line_no)));
            }
            faces.push_back(std::move(face));
        } else if (kw == "open_vertex") {
            io_detail::expect_arity(toks, 2, line_no);
            open_v.push_back({io_detail::parse_uint(toks[1], line_no), line_no});
        } else if (kw == "open_edge") {
            io_detail::expect_arity(toks, 2, line_no);
            open_e.push_back({io_detail::parse_uint(toks[1], line_no), line_no});
        } else {
            throw Error(ErrorKind::kSyntax, "line " + std::to_string(line_no) + ": unknown directive '" + std::string(kw) + "'");
        }
    }
    if (!vertex_count) throw Error(ErrorKind::kSyntax, "missing 'surface' header");

    VertexSet ov(*vertex_count);
    for (auto [v, ln] : open_v) {
        if (v >= *vertex_count) throw Error(ErrorKind::kIndexRange, "line " + std::to_string(ln) + ": open vertex out of range");
        ov.insert(v);
    }
    EdgeSet oe(edges.size());
    for (auto [e, ln] : open_e) {
        if (e >= edges.size()) throw Error(ErrorKind::kIndexRange, "line " + std::to_string(ln) + ": open edge out of range");
        oe.insert(e);
    }
    return CombinatorialSurface(*vertex_count, std::move(edges), std::move(faces), std::move(ov), std::move(oe));
}

inline CombinatorialSurface load_surface(const std::string& path) { return parse_surface(io_detail::read_file(path)); }

inline void write_surface(std::ostream& out, const CombinatorialSurface& s) {
    out << "surface " << s.vertex_count() << '\n';
    for (const auto& e : s.edges()) out << "edge " << e.u << ' ' << e.v << '\n';
    for (const auto& f : s.faces()) {
        out << "face";
        for (Index e : f) out << ' ' << e;
        out << '\n';
    }
    s.open_vertices().for_each([&](std::size_t v) { out << "open_vertex " << v << '\n'; });
    s.open_edges().for_each([&](std::size_t e) { out << "open_edge " << e << '\n'; });
}

inline std::string serialize_surface(const CombinatorialSurface& s) {
    std::ostringstream ss;
    write_surface(ss, s);
    return ss.str();
}

/// A decoding instance: erased qubits plus the measured syndromes.
///
/// `syndrome` lines name primal vertices (X_v outcomes, Z sector);
/// `syndrome_x` lines name faces (Z_f outcomes, X sector).
struct DecodingInstance {
    std::vector<std::size_t> erased;
    std::vector<std::size_t> syndrome_z;
    std::vector<std::size_t> syndrome_x;
};

/// Reads `erased <e>`, `syndrome <v>` and `syndrome_x <f>` lines. Several
/// files (erasure file, syndrome file) may be fed into the same instance.
inline void parse_instance(std::string_view text, DecodingInstance& inst) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        auto toks = io_detail::tokenize(line);
        if (toks.empty()) continue;
        io_detail::expect_arity(toks, 2, line_no);
        auto value = io_detail::parse_uint(toks[1], line_no);
        if (toks[0] == "erased") {
            inst.erased.push_back(value);
        } else if (toks[0] == "syndrome") {
            inst.syndrome_z.push_back(value);
        } else if (toks[0] == "syndrome_x") {
            inst.syndrome_x.push_back(value);
        } else {
            throw Error(ErrorKind::kSyntax, "line " + std::to_string(line_no) + ": unknown directive '" +
                                                std::string(toks[0]) + "'");
        }
    }
}

inline void load_instance(const std::string& path, DecodingInstance& inst) {
    parse_instance(io_detail::read_file(path), inst);
}

}  // namespace surfpeel
