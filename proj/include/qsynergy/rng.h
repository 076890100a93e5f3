// Copyright 2026 The qsynergy Authors
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

#ifndef QSYNERGY_RNG_H
#define QSYNERGY_RNG_H

#include <cstddef>
#include <cstdint>
#include <random>

namespace qsynergy {

using Rng = std::mt19937_64;

/// Seed of the independent substream `index` of a master seed.
uint64_t derive_seed(uint64_t master, uint64_t index);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform01(Rng &rng);

/// Uniform double in [lo, hi).
double uniform_real(Rng &rng, double lo, double hi);

/// Uniform integer in [0, n).
size_t uniform_index(Rng &rng, size_t n);

}  // namespace qsynergy

#endif
