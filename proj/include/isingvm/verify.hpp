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

// Branch-exhaustive verification of a program against the dense oracle of a circuit.
// Inputs run as a batch of columns. Large registers are split into chunks; every chunk also carries
// the uniform superposition, whose output fixes the chunk's global phase relative to the first.

#include "isingvm/compiler.hpp"

#include <random>

namespace isingvm {

struct VerifyReport {
    int qubits = 0;
    double process_fidelity = 0.0;
    double worst_basis_fidelity = 0.0;
    double worst_random_fidelity = 0.0;
    int random_inputs = 0;
    double probability_sum = 0.0;
    bool passed = false;
    std::string failure;

    double worst() const { return std::min({process_fidelity, worst_basis_fidelity, worst_random_fidelity}); }
};

inline nlohmann::json to_json(const VerifyReport &r) {
    nlohmann::json j{{"qubits", r.qubits},
                     {"process_fidelity", r.process_fidelity},
                     {"worst_basis_fidelity", r.worst_basis_fidelity},
                     {"worst_random_fidelity", r.worst_random_fidelity},
                     {"random_inputs", r.random_inputs},
                     {"probability_sum", r.probability_sum},
                     {"passed", r.passed}};
    if (!r.failure.empty()) j["failure"] = r.failure;
    return j;
}

inline double state_fidelity(const Vector &ideal, const Vector &actual) {
    double na = actual.squaredNorm(), ni = ideal.squaredNorm();
    if (na == 0.0 || ni == 0.0) return 0.0;
    return std::norm(ideal.dot(actual)) / (na * ni);
}

/// Decoded channel V (2^q x 2^q, one column per basis input) and the total outcome probability.
inline std::pair<Matrix, double> program_channel(const TopologicalProgram &p) {
    const Index dim = Index{1} << p.qubits;
    const int anc = program_ancilla_blocks(p);
    const Index rows = fusion_space(p.anyons, Charge::Vac)->dim();
    const Index chunk = std::max<Index>(1, std::min<Index>(dim, (Index{1} << 22) / rows));
    Vector uniform = Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    Matrix v(dim, dim);
    Vector ref_out;
    double prob = 0.0;
    for (Index start = 0; start < dim; start += chunk) {
        Index cols = std::min(chunk, dim - start);
        Matrix in = Matrix::Zero(dim, cols + 1);
        in.col(0) = uniform;
        for (Index k = 0; k < cols; ++k) in(start + k, k + 1) = 1.0;
        auto r = run_exhaustive(p, ExtendedState::from(encode_amplitudes(in, p.qubits, anc)));
        Matrix out = decode_matrix(r.paths.front().state.anyon_state(), p.qubits, 1e-9);
        double w = r.paths.front().state.weight() / r.initial_weight;
        prob = start == 0 ? w : std::min(prob, w);
        if (start == 0) {
            ref_out = out.col(0);
        } else {
            Complex overlap = out.col(0).dot(ref_out);  // conj(out)^T ref
            Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0};
            out *= phase;
        }
        v.middleCols(start, cols) = out.rightCols(cols);
    }
    return {v, prob};
}

inline VerifyReport verify_program(const Circuit &c, const TopologicalProgram &p, double tol = 1e-9,
                                   std::uint64_t seed = 1, int random_inputs = 100) {
    VerifyReport rep;
    rep.qubits = c.qubits;
    if (c.qubits > kOracleMaxQubits) fail(ErrorKind::Capacity, "verification supports at most 8 qubits");
    if (p.qubits != c.qubits) {
        rep.failure = "program has " + std::to_string(p.qubits) + " qubits, circuit has " + std::to_string(c.qubits);
        return rep;
    }
    Matrix v;
    try {
        std::tie(v, rep.probability_sum) = program_channel(p);
    } catch (const Error &e) {
        rep.failure = e.what();
        return rep;
    }
    Matrix u = circuit_unitary(c);
    const Index dim = u.rows();
    rep.process_fidelity = process_fidelity(u, v / std::sqrt(rep.probability_sum));
    rep.worst_basis_fidelity = 1.0;
    for (Index k = 0; k < dim; ++k)
        rep.worst_basis_fidelity = std::min(rep.worst_basis_fidelity, state_fidelity(u.col(k), v.col(k)));
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> normal;
    rep.random_inputs = random_inputs;
    rep.worst_random_fidelity = 1.0;
    for (int i = 0; i < random_inputs; ++i) {
        Vector psi(dim);
        for (Index k = 0; k < dim; ++k) psi(k) = Complex(normal(engine), normal(engine));
        psi.normalize();
        rep.worst_random_fidelity = std::min(rep.worst_random_fidelity, state_fidelity(u * psi, v * psi));
    }
    rep.passed = rep.worst() >= 1.0 - tol && std::abs(rep.probability_sum - 1.0) <= 1e-9;
    if (!rep.passed) rep.failure = "fidelity or probability outside tolerance";
    return rep;
}

}  // namespace isingvm
