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

#include <stdexcept>
#include <string>

namespace surfpeel {

enum class ErrorKind {
    kDegenerateLattice,
    kLoop,
    kMultiEdge,
    kFaceIncidence,
    kOpenNotOnBoundary,
    kIndexRange,
    kSyntax,
    kInvalidDual,
    kInvalidSyndrome,
    kNotACycle,
    kSyndromeMismatch,
    kSizeBound,
    kNoCrossing,
    kConfig,
    kIo,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::kDegenerateLattice: return "degenerate lattice";
        case ErrorKind::kLoop: return "loop";
        case ErrorKind::kMultiEdge: return "multi-edge";
        case ErrorKind::kFaceIncidence: return "face incidence";
        case ErrorKind::kOpenNotOnBoundary: return "open element not on boundary";
        case ErrorKind::kIndexRange: return "index out of range";
        case ErrorKind::kSyntax: return "syntax error";
        case ErrorKind::kInvalidDual: return "invalid dual";
        case ErrorKind::kInvalidSyndrome: return "invalid syndrome";
        case ErrorKind::kNotACycle: return "not a relative cycle";
        case ErrorKind::kSyndromeMismatch: return "syndrome mismatch";
        case ErrorKind::kSizeBound: return "size bound exceeded";
        case ErrorKind::kNoCrossing: return "no crossing detected";
        case ErrorKind::kConfig: return "invalid configuration";
        case ErrorKind::kIo: return "i/o error";
    }
    return "unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

}  // namespace surfpeel
