// Copyright 2026 The nonlocal_lab Authors
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

#ifndef NONLOCAL_RANDOM_H
#define NONLOCAL_RANDOM_H

#include <cstdint>
#include <random>

namespace nonlocal {

/// Seeded generator whose draws are identical on every platform: the
/// standard distributions are implementation-defined, so bounded draws are
/// done here by rejection on the raw 64-bit stream.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {
    }

    std::uint64_t next() {
        return engine_();
    }

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        while (true) {
            std::uint64_t r = engine_();
            if (r >= threshold) {
                return r % bound;
            }
        }
    }

    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool coin() {
        return (engine_() >> 63) != 0;
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace nonlocal

#endif
