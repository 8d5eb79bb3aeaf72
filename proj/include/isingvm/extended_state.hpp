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

// Anyons plus one loop-charge register per open overpass. Register amplitudes are stored as extra
// columns of the anyon matrix: column = batch_index * 3^H + register digits (handle order, last added
// least significant), so braids and interval measurements stay plain left multiplications.

#include "isingvm/measurement.hpp"

#include <algorithm>

namespace isingvm {

enum class Curve : std::uint8_t { D, C2 };

inline std::string to_string(Curve c) { return c == Curve::D ? "D" : "C2"; }

struct Handle {
    int id = 0;
    int pair = 0;  // first anyon of the linked pair, 0 when unlinked
    bool correlated = false;
};

struct ExtendedState {
    FusionState anyons;
    Index batch = 1;
    std::vector<Handle> handles;
    std::vector<std::string> correction_log;

    static ExtendedState from(FusionState s) {
        ExtendedState es;
        es.batch = s.amp.cols();
        es.anyons = std::move(s);
        return es;
    }

    int n() const { return anyons.n(); }
    Index register_size() const {
        Index r = 1;
        for (std::size_t i = 0; i < handles.size(); ++i) r *= 3;
        return r;
    }

    int position(int h) const {
        for (std::size_t p = 0; p < handles.size(); ++p)
            if (handles[p].id == h) return static_cast<int>(p);
        fail(ErrorKind::State, "handle " + std::to_string(h) + " is not present");
    }
    bool has(int h) const {
        return std::any_of(handles.begin(), handles.end(), [&](const Handle &x) { return x.id == h; });
    }

    Index stride(int pos) const {
        Index s = 1;
        for (std::size_t p = pos + 1; p < handles.size(); ++p) s *= 3;
        return s;
    }

    /// Charge label of handle `pos` for column `col`.
    int digit(Index col, int pos) const { return static_cast<int>((col / stride(pos)) % 3); }

    double weight() const { return anyons.amp.squaredNorm(); }

    /// The anyon state alone; only valid once every overpass is closed.
    FusionState anyon_state() const {
        if (!handles.empty()) fail(ErrorKind::State, "overpass registers are still open");
        return anyons;
    }

    /// Register amplitudes of handle h for batch column 0 with other registers traced by weight.
    std::array<double, 3> register_weights(int h) const {
        int pos = position(h);
        std::array<double, 3> w{};
        for (Index c = 0; c < anyons.amp.cols(); ++c) w[digit(c, pos)] += anyons.amp.col(c).squaredNorm();
        return w;
    }
};

/// One measurement outcome with its unnormalized post-state.
struct Branch {
    Charge outcome;
    ExtendedState state;
};

/// Gluing weights d_a / D of a freshly attached overpass, in the D-loop basis.
inline std::array<double, 3> gluing_weights() {
    double big_d = total_dimension();
    return {quantum_dimension(Charge::Vac) / big_d, quantum_dimension(Charge::Sigma) / big_d,
            quantum_dimension(Charge::Psi) / big_d};
}

inline ExtendedState overpass_add(const ExtendedState &es, int h, int pair = 0) {
    if (es.has(h)) fail(ErrorKind::State, "handle " + std::to_string(h) + " is already present");
    if (pair) es.anyons.space->check_aligned_pair(pair);
    auto g = gluing_weights();
    ExtendedState out = es;
    const Matrix &old = es.anyons.amp;
    Matrix amp(old.rows(), old.cols() * 3);
    for (Index c = 0; c < old.cols(); ++c)
        for (int d = 0; d < 3; ++d) amp.col(c * 3 + d) = old.col(c) * g[d];
    out.anyons.amp = std::move(amp);
    out.handles.push_back({h, pair, false});
    return out;
}

inline Complex modular_s_entry(int a, int b) {
    static const Eigen::Matrix3cd s = modular_s();
    return s(a, b);
}

/// Projects handle `pos` onto C2-basis vector c: v'_d = conj(S[c,d]) sum_e S[c,e] v_e.
inline Matrix s_basis_project(const ExtendedState &es, int pos, int c) {
    Matrix out = Matrix::Zero(es.anyons.amp.rows(), es.anyons.amp.cols());
    Index st = es.stride(pos);
    for (Index col = 0; col < es.anyons.amp.cols(); ++col) {
        if (es.digit(col, pos) != 0) continue;
        Vector u = Vector::Zero(out.rows());
        for (int e = 0; e < 3; ++e) u += modular_s_entry(c, e) * es.anyons.amp.col(col + e * st);
        for (int d = 0; d < 3; ++d) out.col(col + d * st) = std::conj(modular_s_entry(c, d)) * u;
    }
    return out;
}

// C2 on a linked handle measures the parity of M[psi, b] * theta_p, where b is the D-charge and p the
// linked pair's channel: outcome vac keeps (p = vac, b in {vac, psi}) and (p = psi, b = sigma),
// outcome psi keeps the complementary assignment. Each outcome leaves the register correlated with
// the pair, which is what makes the later twist or transport act as a controlled phase.
inline bool linked_parity(Charge p, int b) {
    bool b_sigma = b == idx(Charge::Sigma);
    bool p_psi = p == Charge::Psi;
    return b_sigma == p_psi;
}

inline std::vector<Branch> curve_branches(const ExtendedState &es, int h, Curve curve) {
    int pos = es.position(h);
    const Handle &handle = es.handles[pos];
    std::vector<Branch> out;
    const Matrix &amp = es.anyons.amp;
    for (Charge c : kCharges) {
        ExtendedState post = es;
        if (curve == Curve::D) {
            for (Index col = 0; col < amp.cols(); ++col)
                if (es.digit(col, pos) != idx(c)) post.anyons.amp.col(col).setZero();
        } else if (!handle.pair) {
            post.anyons.amp = s_basis_project(es, pos, idx(c));
        } else {
            if (c == Charge::Sigma) continue;
            const auto &space = *es.anyons.space;
            for (Index r = 0; r < amp.rows(); ++r) {
                Charge p = space.pair_channel(r, handle.pair);
                for (Index col = 0; col < amp.cols(); ++col) {
                    bool even = linked_parity(p, es.digit(col, pos));
                    if (even != (c == Charge::Vac)) post.anyons.amp(r, col) = 0.0;
                }
            }
            post.handles[pos].correlated = true;
        }
        out.push_back({c, std::move(post)});
    }
    return out;
}

struct CurveResult {
    Charge outcome;
    ExtendedState state;
    double probability;
    double draw;
};

inline CurveResult pick_branch(const ExtendedState &es, std::vector<Branch> branches, double u) {
    double total = es.weight();
    std::vector<double> w;
    for (auto &b : branches) {
        double p = b.state.weight() / total;
        w.push_back(p < kZeroWeight ? 0.0 : p);
    }
    int i = sample_index(w, u);
    if (i < 0) fail(ErrorKind::State, "no outcome has positive probability");
    auto &b = branches[i];
    b.state.anyons.amp *= std::sqrt(total / b.state.weight());
    return {b.outcome, std::move(b.state), w[i], u};
}

inline CurveResult measure_curve(const ExtendedState &es, int h, Curve curve, Rng &rng) {
    return pick_branch(es, curve_branches(es, h, curve), rng.uniform());
}

inline std::array<double, 3> curve_probabilities(const ExtendedState &es, int h, Curve curve) {
    std::array<double, 3> out{};
    double total = es.weight();
    for (auto &b : curve_branches(es, h, curve)) out[idx(b.outcome)] = b.state.weight() / total;
    return out;
}

inline ExtendedState dehn_twist(const ExtendedState &es, int h, int count) {
    if (count < 1) fail(ErrorKind::Domain, "Dehn twist count must be at least 1");
    int pos = es.position(h);
    ExtendedState out = es;
    for (Index col = 0; col < out.anyons.amp.cols(); ++col)
        out.anyons.amp.col(col) *= std::pow(twist(charge_from_index(es.digit(col, pos))), count);
    return out;
}

/// Carries the pair (pair, pair+1) around loop D: amplitude (a, b) picks up M[a, b].
inline ExtendedState transport_around(const ExtendedState &es, int h, int pair) {
    int pos = es.position(h);
    const auto &space = *es.anyons.space;
    space.check_aligned_pair(pair);
    ExtendedState out = es;
    Matrix &amp = out.anyons.amp;
    const Index st = es.stride(pos);
    for (Index r = 0; r < amp.rows(); ++r) {
        Charge a = space.pair_channel(r, pair);
        if (a == Charge::Vac) continue;
        for (Index col = 0; col < amp.cols(); ++col) {
            if (es.digit(col, pos) != 0) continue;
            // The phase must not depend on b within the support, otherwise the transport would
            // distinguish loop charges and decohere the register.
            std::optional<Complex> phase;
            for (int d = 0; d < 3; ++d) {
                if (std::abs(amp(r, col + d * st)) < 1e-12) continue;
                Complex m = monodromy(a, charge_from_index(d));
                if (std::abs(std::abs(m) - 1.0) > 1e-9 || (phase && std::abs(*phase - m) > 1e-9))
                    fail(ErrorKind::DecoheringTransport, "transport around handle " + std::to_string(h) +
                                                             " would measure its loop charge; measure C2 first");
                phase = m;
            }
            for (int d = 0; d < 3; ++d) amp(r, col + d * st) *= monodromy(a, charge_from_index(d));
        }
    }
    return out;
}

/// Cuts across the overpass: measures the cut curve (S basis) and drops the register. Outcomes vac
/// and psi are both legitimate; any sigma weight means an inconsistent register.
inline std::vector<Branch> cut_branches(const ExtendedState &es, int h, bool twisted) {
    ExtendedState cur = twisted ? dehn_twist(es, h, 2) : es;
    int pos = cur.position(h);
    Index st = cur.stride(pos);
    double total = cur.weight();
    std::vector<Branch> out;
    for (Charge c : kCharges) {
        Matrix proj = s_basis_project(cur, pos, idx(c));
        double w = proj.squaredNorm();
        if (c == Charge::Sigma) {
            if (w > kZeroWeight * total)
                fail(ErrorKind::ImpossibleCut, "cut curve of handle " + std::to_string(h) + " carries sigma charge");
            continue;
        }
        // Drop the register digit; the projected vector is conj(S[c,.]) u, so recover u.
        ExtendedState post = cur;
        post.handles.erase(post.handles.begin() + pos);
        Matrix amp(proj.rows(), proj.cols() / 3);
        for (Index col = 0, k = 0; col < proj.cols(); ++col) {
            if (cur.digit(col, pos) != 0) continue;
            Vector u = Vector::Zero(proj.rows());
            for (int e = 0; e < 3; ++e) u += modular_s_entry(idx(c), e) * cur.anyons.amp.col(col + e * st);
            amp.col(k++) = u;
        }
        post.anyons.amp = std::move(amp);
        out.push_back({c, std::move(post)});
    }
    return out;
}

inline CurveResult overpass_cut(const ExtendedState &es, int h, bool twisted, Rng &rng) {
    return pick_branch(es, cut_branches(es, h, twisted), rng.uniform());
}

/// Cut with a prescribed outcome (vac unless stated); impossible-cut when it has zero weight.
inline ExtendedState overpass_cut_forced(const ExtendedState &es, int h, bool twisted, Charge c = Charge::Vac) {
    double total = es.weight();
    for (auto &b : cut_branches(es, h, twisted)) {
        if (b.outcome != c) continue;
        double w = b.state.weight();
        if (w < kZeroWeight * total) break;
        b.state.anyons.amp *= std::sqrt(total / w);
        return b.state;
    }
    fail(ErrorKind::ImpossibleCut, "cut outcome " + to_string(c) + " has zero probability");
}

inline std::vector<Branch> interval_branches(const ExtendedState &es, int j, int k) {
    std::vector<Branch> out;
    const auto &p = interval_projectors(es.anyons.space, j, k);
    for (Charge c : kCharges) {
        ExtendedState post = es;
        post.anyons.amp = p[idx(c)] * es.anyons.amp;
        out.push_back({c, std::move(post)});
    }
    return out;
}

}  // namespace isingvm
