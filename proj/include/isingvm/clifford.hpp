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

// Braid-generated Clifford group on one 4-anyon block, found by breadth-first search over
// generator images modulo global phase, and the Pauli checks behind "braids are Clifford".

#include "isingvm/fusion_space.hpp"

#include <deque>
#include <unordered_map>

namespace isingvm {

using Matrix2 = Eigen::Matrix2cd;

/// Hashable fingerprint of a matrix modulo global phase.
inline std::string phase_key(const Matrix &m, double grid = 1e-7) {
    Matrix c = canonical_phase(m, 1e-6);
    std::string key;
    key.reserve(static_cast<std::size_t>(c.size()) * 8);
    for (Index i = 0; i < c.size(); ++i) {
        auto re = static_cast<long long>(std::llround(c(i).real() / grid));
        auto im = static_cast<long long>(std::llround(c(i).imag() / grid));
        key += std::to_string(re) + ',' + std::to_string(im) + ';';
    }
    return key;
}

struct GroupElement {
    Matrix matrix;
    BraidWord word;
};

/// Closure of the generator images on (n, c) modulo phase, in BFS order (shortest words first).
inline std::vector<GroupElement> braid_closure(int n, Charge c, std::size_t cap = 200000,
                                               const std::vector<int> &generators = {}) {
    auto space = fusion_space(n, c);
    std::vector<int> gens = generators;
    if (gens.empty())
        for (int i = 1; i < n; ++i) gens.push_back(i);
    std::vector<GroupElement> out;
    std::unordered_map<std::string, std::size_t> seen;
    std::deque<std::size_t> queue;
    Matrix id = Matrix::Identity(space->dim(), space->dim());
    out.push_back({id, {}});
    seen.emplace(phase_key(id), 0);
    queue.push_back(0);
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        for (int g : gens)
            for (Direction d : {Direction::Ccw, Direction::Cw}) {
                Matrix m = Matrix(space->braid(g, d)) * out[cur].matrix;
                auto key = phase_key(m);
                if (seen.count(key)) continue;
                if (out.size() >= cap) fail(ErrorKind::Capacity, "braid closure exceeded " + std::to_string(cap) + " elements");
                BraidWord w = out[cur].word;
                w.push_back({g, d});
                seen.emplace(key, out.size());
                out.push_back({m, std::move(w)});
                queue.push_back(out.size() - 1);
            }
    }
    return out;
}

inline Matrix2 pauli_x() { return (Matrix2() << 0, 1, 1, 0).finished(); }
inline Matrix2 pauli_y() { return (Matrix2() << 0, -kI, kI, 0).finished(); }
inline Matrix2 pauli_z() { return (Matrix2() << 1, 0, 0, -1).finished(); }
inline Matrix2 gate_h() { return (Matrix2() << 1, 1, 1, -1).finished() / std::sqrt(2.0); }
inline Matrix2 gate_s() { return (Matrix2() << 1, 0, 0, kI).finished(); }
inline Matrix2 gate_t() { return (Matrix2() << 1, 0, 0, unit_phase(kPi / 4)).finished(); }

/// The 24 single-qubit Cliffords realized on one block, identity first, each with a shortest word
/// in generators 1 and 2 of the block.
inline const std::vector<GroupElement> &block_cliffords() {
    static const std::vector<GroupElement> group = braid_closure(4, Charge::Vac, 1000, {1, 2});
    return group;
}

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Shortest braid word for a named gate on the 4-anyon qubit.
inline BraidWord synthesize_clifford_braid(const std::string &name) {
    Matrix2 target;
    if (name == "H")
        target = gate_h();
    else if (name == "S")
        target = gate_s();
    else if (name == "X")
        target = pauli_x();
    else if (name == "Z")
        target = pauli_z();
    else if (name == "Y")
        target = pauli_y();
    else if (name == "I")
        target = Matrix2::Identity();
    else
        fail(ErrorKind::Synthesis, "no braid synthesis for gate '" + name + "'");
    for (const auto &e : block_cliffords())
        if (equal_up_to_phase(canonical_phase(e.matrix), canonical_phase(target), 1e-10)) return e.word;
    fail(ErrorKind::Synthesis, "gate '" + name + "' is not in the braid group image");
}

/// Index of a block Clifford equal to m up to phase, or -1.
inline int find_block_clifford(const Matrix &m, double tol = 1e-9) {
    const auto &g = block_cliffords();
    for (std::size_t i = 0; i < g.size(); ++i)
        if (phase_distance(g[i].matrix / g[i].matrix.norm(), m / m.norm()) < tol) return static_cast<int>(i);
    return -1;
}

/// Block word acting on qubit (block) k.
inline BraidWord on_block(const BraidWord &w, int block) { return shifted(w, kAnyonsPerQubit * block); }

// Pauli structure. On n anyons the double exchanges B_j^2 are Majorana bilinears; their products span
// the Pauli group of the fusion space (modulo phase). A braid is Clifford iff it conjugates each
// bilinear into that group.

inline std::vector<Matrix> majorana_pauli_group(int n, Charge c) {
    auto space = fusion_space(n, c);
    std::vector<Matrix> gens;
    for (int j = 1; j < n; ++j) {
        Matrix b(space->braid(j, Direction::Ccw));
        gens.push_back(b * b);
    }
    std::vector<Matrix> group{Matrix::Identity(space->dim(), space->dim())};
    std::unordered_map<std::string, bool> seen{{phase_key(group[0]), true}};
    for (std::size_t i = 0; i < group.size(); ++i)
        for (const auto &g : gens) {
            Matrix m = g * group[i];
            auto key = phase_key(m);
            if (seen.count(key)) continue;
            seen.emplace(key, true);
            group.push_back(m);
        }
    return group;
}

/// Largest distance from any conjugated bilinear to the nearest Pauli-group element.
inline double clifford_residual(int n, Charge c) {
    auto space = fusion_space(n, c);
    auto group = majorana_pauli_group(n, c);
    std::unordered_map<std::string, bool> keys;
    for (const auto &g : group) keys.emplace(phase_key(g), true);
    double worst = 0.0;
    for (int i = 1; i < n; ++i) {
        Matrix b(space->braid(i, Direction::Ccw));
        for (int j = 1; j < n; ++j) {
            Matrix p(space->braid(j, Direction::Ccw));
            p = p * p;
            Matrix conj = b * p * b.adjoint();
            if (keys.count(phase_key(conj))) continue;
            double best = 1e9;
            for (const auto &g : group) best = std::min(best, phase_distance(conj / conj.norm(), g / g.norm()));
            worst = std::max(worst, best);
        }
    }
    return worst;
}

/// Encoded-qubit check on one block: every generator maps the encoded X and Z to {X, Y, Z} up to phase.
inline double encoded_clifford_residual() {
    std::vector<Matrix2> paulis{pauli_x(), pauli_y(), pauli_z()};
    Matrix x = braid_word_matrix(synthesize_clifford_braid("X"), 4, Charge::Vac);
    Matrix z = braid_word_matrix(synthesize_clifford_braid("Z"), 4, Charge::Vac);
    double worst = 0.0;
    for (int i = 1; i <= 3; ++i) {
        Matrix b = braid_generator(i, Direction::Ccw, 4, Charge::Vac);
        for (const Matrix &p : {x, z}) {
            Matrix conj = b * p * b.adjoint();
            double best = 1e9;
            for (const auto &q : paulis) best = std::min(best, phase_distance(conj / conj.norm(), Matrix(q) / q.norm()));
            worst = std::max(worst, best);
        }
    }
    return worst;
}

}  // namespace isingvm
