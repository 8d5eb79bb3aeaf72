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

// Projective charge measurement of contiguous anyon intervals, and repeat-until-success
// anyonic teleportation between adjacent pairs.

#include "isingvm/fusion_space.hpp"
#include "isingvm/rng.hpp"

#include <array>
#include <optional>

namespace isingvm {

inline constexpr double kZeroWeight = 1e-14;

struct MeasurementEvent {
    std::string region;
    Charge outcome = Charge::Vac;
    double probability = 1.0;
    double draw = 0.0;
};

struct MeasurementRecord {
    std::uint64_t seed = 0;
    std::vector<MeasurementEvent> events;

    void append(const MeasurementRecord &other) { events.insert(events.end(), other.events.begin(), other.events.end()); }
};

inline nlohmann::json to_json(const MeasurementEvent &e) {
    return {{"region", e.region}, {"outcome", to_string(e.outcome)}, {"probability", e.probability}, {"draw", e.draw}};
}

/// One JSON object per line, one line per measurement.
inline std::string to_json_lines(const MeasurementRecord &r) {
    std::string out;
    for (const auto &e : r.events) {
        auto j = to_json(e);
        j["seed"] = r.seed;
        out += j.dump() + "\n";
    }
    return out;
}

using Projectors = std::array<SparseMatrix, 3>;

// Interval [j..k]: F-move the tree so anyons j..k fuse into one internal edge. Starting from
// ((P sigma_j)_{y_j} sigma_{j+1})_{y_{j+1}} with P = y_{j-1}, each step rewrites
// ((P w)_{y_{m-1}} sigma_m)_{y_m} -> (P (w sigma_m)_{w'})_{y_m} with F^{P w sigma}_{y_m}[y_{m-1}, w'].
// The projector onto charge c is U^dag Pi_c U.
inline Projectors build_interval_projectors(const FusionSpace &space, int j, int k) {
    struct Term {
        Charge w;
        Complex coef;
    };
    // New-basis key: the old chain with y_j..y_{k-1} replaced by the interval chain w_{j+1}..w_k.
    std::map<std::vector<Charge>, Index> new_index;
    std::vector<Charge> new_charge;
    std::vector<Eigen::Triplet<Complex>> trip;
    for (Index col = 0; col < space.dim(); ++col) {
        auto y = space.chain(col);
        Charge p = y[j - 1];
        std::vector<std::pair<std::vector<Charge>, Complex>> partial{{{Charge::Sigma}, Complex{1.0}}};
        for (int m = j + 1; m <= k; ++m) {
            std::vector<std::pair<std::vector<Charge>, Complex>> next;
            for (auto &[ws, coef] : partial) {
                Charge w = ws.back();
                for (Charge w2 : kCharges) {
                    Complex f = f_symbol(p, w, Charge::Sigma, y[m], y[m - 1], w2);
                    if (std::abs(f) < 1e-15) continue;
                    auto ws2 = ws;
                    ws2.push_back(w2);
                    next.emplace_back(std::move(ws2), coef * f);
                }
            }
            partial = std::move(next);
        }
        for (auto &[ws, coef] : partial) {
            std::vector<Charge> key(y.begin(), y.begin() + j);
            key.insert(key.end(), ws.begin(), ws.end());
            key.insert(key.end(), y.begin() + k, y.end());
            auto [it, fresh] = new_index.emplace(key, static_cast<Index>(new_index.size()));
            if (fresh) new_charge.push_back(ws.back());
            trip.emplace_back(it->second, col, coef);
        }
    }
    SparseMatrix u(static_cast<Index>(new_index.size()), space.dim());
    u.setFromTriplets(trip.begin(), trip.end());
    if (u.rows() != space.dim()) fail(ErrorKind::State, "interval transform is not square");
    Projectors out;
    for (Charge c : kCharges) {
        SparseMatrix mask(u.rows(), u.rows());
        std::vector<Eigen::Triplet<Complex>> diag;
        for (Index r = 0; r < u.rows(); ++r)
            if (new_charge[r] == c) diag.emplace_back(r, r, 1.0);
        mask.setFromTriplets(diag.begin(), diag.end());
        SparseMatrix p = SparseMatrix(u.adjoint()) * mask * u;
        p.prune(Complex{0.0}, 1e-14);
        out[idx(c)] = std::move(p);
    }
    return out;
}

inline void check_interval(const FusionSpace &space, int j, int k) {
    if (j < 1 || k > space.n() || j > k)
        fail(ErrorKind::Domain, "interval [" + std::to_string(j) + ".." + std::to_string(k) + "] out of range");
}

inline const Projectors &interval_projectors(const SpacePtr &space, int j, int k) {
    check_interval(*space, j, k);
    return space->cache_slot<Projectors>("interval/" + std::to_string(j) + "/" + std::to_string(k),
                                         [&] { return build_interval_projectors(*space, j, k); });
}

/// Interval from an explicit anyon list; it must be contiguous.
inline std::pair<int, int> contiguous_interval(std::vector<int> anyons) {
    if (anyons.empty()) fail(ErrorKind::UnsupportedRegion, "empty region");
    std::sort(anyons.begin(), anyons.end());
    for (std::size_t i = 1; i < anyons.size(); ++i)
        if (anyons[i] != anyons[i - 1] + 1) fail(ErrorKind::UnsupportedRegion, "region is not a contiguous interval");
    return {anyons.front(), anyons.back()};
}

inline std::string interval_name(int j, int k) { return "[" + std::to_string(j) + ".." + std::to_string(k) + "]"; }

/// Unnormalized projection of every column onto interval charge c.
inline FusionState project_interval(const FusionState &state, int j, int k, Charge c) {
    const auto &p = interval_projectors(state.space, j, k);
    return {state.space, p[idx(c)] * state.amp};
}

inline std::array<double, 3> born_probabilities(const FusionState &state, int j, int k) {
    double total = state.amp.squaredNorm();
    if (total <= 0.0) fail(ErrorKind::State, "zero state");
    std::array<double, 3> out{};
    for (Charge c : kCharges) out[idx(c)] = project_interval(state, j, k, c).amp.squaredNorm() / total;
    return out;
}

inline std::array<double, 3> born_probabilities(const FusionState &state, const std::vector<int> &anyons) {
    auto [j, k] = contiguous_interval(anyons);
    return born_probabilities(state, j, k);
}

struct MeasureResult {
    Charge outcome;
    FusionState state;
    double probability;
    double draw;
};

inline MeasureResult measure_interval_forced(const FusionState &state, int j, int k, Charge c) {
    FusionState post = project_interval(state, j, k, c);
    double total = state.amp.squaredNorm();
    double p = post.amp.squaredNorm() / total;
    if (p < kZeroWeight)
        fail(ErrorKind::ImpossibleOutcome, "charge " + to_string(c) + " has zero probability on " + interval_name(j, k));
    post.amp *= std::sqrt(total / post.amp.squaredNorm());
    return {c, std::move(post), p, 0.0};
}

inline MeasureResult measure_interval(const FusionState &state, int j, int k, Rng &rng) {
    auto probs = born_probabilities(state, j, k);
    for (double &p : probs)
        if (p < kZeroWeight) p = 0.0;
    double u = rng.uniform();
    Charge c = charge_from_index(sample_index(probs, u));
    auto r = measure_interval_forced(state, j, k, c);
    r.draw = u;
    return r;
}

// Teleportation. The source pair's channel moves into an adjacent target pair that starts in vac.
// Each round measures the bridging pair (the two middle anyons) and then the source pair, and stops
// once the source reads vac. After every round a braid correction returns the state to a fixed
// reference, so the finished state is |vac>_src |a>_dst exactly, for every outcome history.

inline constexpr int kTeleportRetryCap = 64;

struct TeleportGeometry {
    int src = 0;
    int dst = 0;
    int bridge_lo = 0;  // bridging pair is (bridge_lo, bridge_lo + 1)
    int window = 0;     // first anyon of the 4-anyon window
};

inline TeleportGeometry teleport_geometry(int src, int dst, int n) {
    if (src % 2 == 0 || dst % 2 == 0 || src < 1 || dst < 1 || src + 1 > n || dst + 1 > n)
        fail(ErrorKind::Domain, "teleport pairs must be aligned anyon pairs");
    if (std::abs(src - dst) != 2) fail(ErrorKind::UnsupportedRegion, "teleport pairs must be adjacent");
    TeleportGeometry g{src, dst, std::min(src, dst) + 1, std::min(src, dst)};
    return g;
}

struct TeleportTables {
    // [bridge outcome][source outcome] for vac/psi; index 0 vac, 1 psi.
    std::array<std::array<BraidWord, 2>, 2> first;  // from the initial state
    std::array<std::array<BraidWord, 2>, 2> later;  // after a round that ended with source psi
    std::array<std::array<bool, 2>, 2> first_possible{};
    std::array<std::array<bool, 2>, 2> later_possible{};
};

inline int z2(Charge c) {
    if (c == Charge::Sigma) fail(ErrorKind::State, "sigma outcome on an aligned pair");
    return c == Charge::Psi ? 1 : 0;
}
inline Charge z2_charge(int b) { return b ? Charge::Psi : Charge::Vac; }

/// Even Majorana products on the window, as pair-flip words: identity, six pairs, and all four.
inline std::vector<BraidWord> window_paulis(int w) {
    std::vector<BraidWord> out{{}};
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) out.push_back(pair_flip_word(w + a, w + b));
    out.push_back(concat(pair_flip_word(w, w + 1), pair_flip_word(w + 2, w + 3)));
    return out;
}

inline double normalized_phase_distance(const Matrix &a, const Matrix &b) {
    double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0) return 2.0;
    return phase_distance(a / na, b / nb);
}

// Tables come from a 6-anyon reference: the window on anyons 1..4 and a spectator pair (5,6)
// carrying the compensating charge. Window-local identities found there hold in any embedding
// where the window is contiguous and its pairs aligned.
inline TeleportTables build_teleport_tables(bool src_left) {
    auto space = fusion_space(6, Charge::Vac);
    int src = src_left ? 1 : 3, dst = src_left ? 3 : 1;
    auto geo = teleport_geometry(src, dst, 6);
    auto chain_for = [&](int a_src, int a_dst, int a_spectator) {
        std::vector<Charge> ch(7, Charge::Vac);
        for (int k = 1; k <= 6; k += 2) ch[k] = Charge::Sigma;
        int pair_bits[3] = {0, 0, 0};
        pair_bits[(src - 1) / 2] = a_src;
        pair_bits[(dst - 1) / 2] = a_dst;
        pair_bits[2] = a_spectator;
        int acc = 0;
        for (int p = 0; p < 3; ++p) {
            ch[2 * p + 1] = Charge::Sigma;
            acc ^= pair_bits[p];
            ch[2 * p + 2] = z2_charge(acc);
        }
        return space->find(ch);
    };
    Matrix in = Matrix::Zero(space->dim(), 2), ideal = Matrix::Zero(space->dim(), 2);
    for (int a = 0; a < 2; ++a) {
        in(chain_for(a, 0, a), a) = 1.0;
        ideal(chain_for(0, a, a), a) = 1.0;
    }
    const auto &pb = interval_projectors(space, geo.bridge_lo, geo.bridge_lo + 1);
    const auto &ps = interval_projectors(space, src, src + 1);
    auto candidates = window_paulis(geo.window);
    auto apply = [&](const BraidWord &w, Matrix m) {
        for (const auto &s : w) m = space->braid(s.index, s.dir) * m;
        return m;
    };
    Matrix ref_psi = ps[2] * (pb[0] * in);
    auto solve = [&](const Matrix &k, const Matrix &target) -> BraidWord {
        for (const auto &w : candidates)
            if (normalized_phase_distance(apply(w, k), target) < 1e-9) return w;
        fail(ErrorKind::Synthesis, "no Pauli correction for teleport branch");
    };
    TeleportTables t;
    for (int b = 0; b < 2; ++b)
        for (int s = 0; s < 2; ++s) {
            const Matrix &target = s ? ref_psi : ideal;
            Matrix k1 = ps[s ? 2 : 0] * (pb[b ? 2 : 0] * in);
            if (k1.norm() > 1e-9) {
                t.first[b][s] = solve(k1, target);
                t.first_possible[b][s] = true;
            }
            Matrix k2 = ps[s ? 2 : 0] * (pb[b ? 2 : 0] * ref_psi);
            if (k2.norm() > 1e-9) {
                t.later[b][s] = solve(k2, target);
                t.later_possible[b][s] = true;
            }
        }
    return t;
}

inline const TeleportTables &teleport_tables(bool src_left) {
    static const TeleportTables left = build_teleport_tables(true);
    static const TeleportTables right = build_teleport_tables(false);
    return src_left ? left : right;
}

struct TeleportResult {
    FusionState state;
    MeasurementRecord record;
    int attempts = 0;
    std::vector<BraidWord> corrections;  // applied after each round, in window-shifted positions
};

inline void check_teleport_target(const FusionState &state, int dst) {
    auto p = born_probabilities(state, dst, dst + 1);
    if (p[0] < 1.0 - 1e-9) fail(ErrorKind::State, "teleport target pair is not in channel vac");
}

inline TeleportResult forced_teleport(const FusionState &state, int src, int dst, Rng &rng) {
    auto geo = teleport_geometry(src, dst, state.n());
    check_teleport_target(state, dst);
    const auto &tables = teleport_tables(src < dst);
    TeleportResult res{state, {}, 0, {}};
    res.record.seed = rng.seed();
    bool first = true;
    while (true) {
        if (res.attempts == kTeleportRetryCap)
            fail(ErrorKind::RetryExhausted, "teleport did not finish within " + std::to_string(kTeleportRetryCap) + " rounds");
        ++res.attempts;
        auto mb = measure_interval(res.state, geo.bridge_lo, geo.bridge_lo + 1, rng);
        res.record.events.push_back({interval_name(geo.bridge_lo, geo.bridge_lo + 1), mb.outcome, mb.probability, mb.draw});
        auto ms = measure_interval(mb.state, src, src + 1, rng);
        res.record.events.push_back({interval_name(src, src + 1), ms.outcome, ms.probability, ms.draw});
        int b = z2(mb.outcome), s = z2(ms.outcome);
        const auto &word = first ? tables.first[b][s] : tables.later[b][s];
        BraidWord fix = shifted(word, geo.window - 1);
        res.state = apply_braid_word(std::move(ms.state), fix);
        res.corrections.push_back(fix);
        first = false;
        if (s == 0) break;
    }
    return res;
}

/// Every outcome history at once: the merged (unnormalized) state and the weight left unresolved
/// after `max_rounds` rounds.
struct TeleportExhaustive {
    FusionState state;
    double residual = 0.0;
    double mean_attempts = 0.0;
};

inline TeleportExhaustive teleport_exhaustive(const FusionState &state, int src, int dst, double cutoff = 1e-16) {
    auto geo = teleport_geometry(src, dst, state.n());
    const auto &tables = teleport_tables(src < dst);
    const auto &pb = interval_projectors(state.space, geo.bridge_lo, geo.bridge_lo + 1);
    const auto &ps = interval_projectors(state.space, src, src + 1);
    double total = state.amp.squaredNorm();
    Matrix active = state.amp;
    Matrix done = Matrix::Zero(state.amp.rows(), state.amp.cols());
    double done_weight = 0.0, mean = 0.0;
    bool have_done = false;
    for (int round = 1; round <= kTeleportRetryCap && active.squaredNorm() > cutoff * total; ++round) {
        Matrix next = Matrix::Zero(active.rows(), active.cols());
        double next_weight = 0.0;
        bool have_next = false;
        for (int b = 0; b < 2; ++b)
            for (int s = 0; s < 2; ++s) {
                Matrix k = ps[s ? 2 : 0] * (pb[b ? 2 : 0] * active);
                double w = k.squaredNorm();
                if (w <= kZeroWeight * total) continue;
                FusionState ks{state.space, std::move(k)};
                apply_braid_word_inplace(ks, shifted(round == 1 ? tables.first[b][s] : tables.later[b][s], geo.window - 1));
                Matrix &acc = s ? next : done;
                double &acc_w = s ? next_weight : done_weight;
                bool &have = s ? have_next : have_done;
                if (!have) {
                    acc = ks.amp;
                    have = true;
                } else {
                    if (normalized_phase_distance(acc, ks.amp) > 1e-9)
                        fail(ErrorKind::State, "teleport branches disagree after correction");
                }
                acc_w += w;
                if (!s) mean += round * w / total;
            }
        if (have_done) done *= std::sqrt(done_weight) / done.norm();
        if (have_next) next *= std::sqrt(next_weight) / next.norm();
        active = std::move(next);
    }
    double residual = active.squaredNorm() / total;
    if (!have_done) fail(ErrorKind::RetryExhausted, "teleport never terminated");
    return {{state.space, std::move(done)}, residual, mean};
}

}  // namespace isingvm
