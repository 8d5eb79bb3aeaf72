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

// One round of 15-to-1 magic-state distillation at the Pauli-error level. Each input carries a Z
// error independently with probability p. The four checks are the rows of the Hamming parity
// matrix (column j = binary of j+1); a pattern is accepted iff its syndrome vanishes, and an
// accepted pattern of odd weight flips the output.

#include "isingvm/core.hpp"

#include <array>
#include <bit>
#include <nlohmann/json.hpp>

namespace isingvm {

inline constexpr int kDistillInputs = 15;

struct WeightCounts {
    std::array<std::uint32_t, kDistillInputs + 1> accepted{};
    std::array<std::uint32_t, kDistillInputs + 1> logical{};
};

/// Accepted and logical-error pattern counts by weight, over all 2^15 error patterns.
inline const WeightCounts &distillation_counts() {
    static const WeightCounts counts = [] {
        WeightCounts c;
        for (std::uint32_t e = 0; e < (1U << kDistillInputs); ++e) {
            std::uint32_t syndrome = 0;
            for (int j = 0; j < kDistillInputs; ++j)
                if ((e >> j) & 1U) syndrome ^= static_cast<std::uint32_t>(j + 1);
            if (syndrome) continue;
            int w = std::popcount(e);
            ++c.accepted[w];
            if (w & 1) ++c.logical[w];
        }
        return c;
    }();
    return counts;
}

struct DistillationReport {
    double p = 0.0;
    double p_out = 0.0;
    double acceptance = 1.0;
    double threshold = 0.0;
};

inline DistillationReport distill_map(double p) {
    if (!(p >= 0.0 && p < 0.5)) fail(ErrorKind::Domain, "input error rate must lie in [0, 1/2)");
    const auto &c = distillation_counts();
    double accept = 0.0, bad = 0.0;
    for (int k = 0; k <= kDistillInputs; ++k) {
        double w = std::pow(p, k) * std::pow(1.0 - p, kDistillInputs - k);
        accept += c.accepted[k] * w;
        bad += c.logical[k] * w;
    }
    return {p, bad / accept, accept, 0.0};
}

/// Nontrivial fixed point of p_out(p) = p, by bisection to 1e-6 on (0, 1/2).
inline double distill_threshold(double tol = 1e-6) {
    double lo = 0.01, hi = 0.45;
    auto gap = [](double p) { return distill_map(p).p_out - p; };
    if (gap(lo) >= 0.0 || gap(hi) <= 0.0) fail(ErrorKind::Domain, "threshold is not bracketed");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (gap(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline nlohmann::json to_json(const DistillationReport &r) {
    nlohmann::json j{{"p", r.p}, {"p_out", r.p_out}, {"acceptance", r.acceptance}};
    if (r.threshold > 0.0) j["threshold"] = r.threshold;
    return j;
}

}  // namespace isingvm
