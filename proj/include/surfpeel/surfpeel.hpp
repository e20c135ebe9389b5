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

// Umbrella header.

#include "surfpeel/channel.hpp"
#include "surfpeel/error.hpp"
#include "surfpeel/harness.hpp"
#include "surfpeel/homology.hpp"
#include "surfpeel/index_set.hpp"
#include "surfpeel/oracle.hpp"
#include "surfpeel/peeling.hpp"
#include "surfpeel/rng.hpp"
#include "surfpeel/surface.hpp"
#include "surfpeel/surface_io.hpp"
#include "surfpeel/verify.hpp"
