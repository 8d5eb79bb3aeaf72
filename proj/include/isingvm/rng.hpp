// Copyright 2026 The isingvm Authors
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

// Seedable, splittable random source. mt19937_64 and seed_seq are fully specified by the
// standard, and doubles are built from raw bits, so draws replay bit-exactly across platforms.

#include <cstdint>
#include <random>

namespace isingvm {

class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        engine_.seed(seq);
    }

    /// Independent generator for sub-task `stream` (a shot or trial id).
    Rng split(std::uint64_t stream) const { return Rng(seed_, stream_ * 0x9E3779B97F4A7C15ULL + stream + 1); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t next_u64() { return engine_(); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

/// Index of the first cumulative weight exceeding u * total; zero weights are never selected.
template <class Weights>
int sample_index(const Weights &weights, double u) {
    double total = 0.0;
    for (double w : weights) total += w;
    double target = u * total;
    double acc = 0.0;
    int last = -1;
    int i = 0;
    for (double w : weights) {
        if (w > 0.0) {
            acc += w;
            last = i;
            if (target < acc) return i;
        }
        ++i;
    }
    return last;
}

}  // namespace isingvm
