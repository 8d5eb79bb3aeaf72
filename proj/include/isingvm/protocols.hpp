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

// Non-Clifford and entangling gadgets and their correction tables.
//
// Layout: qubit k sits in block k, one ancilla block sits after the last qubit. A gadget first
// permutes blocks with block swaps so its blocks are adjacent, runs its core, then undoes the
// permutation. Corrections are applied afterwards at the canonical positions.
//
//   T       TELEPORT partner->ancilla, OVERPASS_ADD linked, C2, CUT twisted, TELEPORT back
//   CZ dtc  same, with TRANSPORT of the target data pair instead of the twist, CUT plain
//   CZ meas ancilla in |+>, parity measurements Z_c Z_A, X_A Z_t, then Z_A and reset

#include "isingvm/circuit.hpp"
#include "isingvm/executor.hpp"

namespace isingvm {

enum class Gadget : std::uint8_t { T, CzDtc, CzMeas };
enum class CzMode : std::uint8_t { Dtc, Measurement };

inline std::string to_string(Gadget g) {
    switch (g) {
        case Gadget::T: return "t";
        case Gadget::CzDtc: return "czd";
        case Gadget::CzMeas: return "czm";
    }
    return "?";
}

/// Block indices of the gadget's roles; target is -1 for single-qubit gadgets.
struct GadgetLayout {
    int control = 0;
    int ancilla = 1;
    int target = -1;
};

inline int block_anyon(int block) { return kAnyonsPerQubit * block + 1; }

inline std::vector<Instruction> gadget_core(Gadget g, const GadgetLayout &l, int handle) {
    const int c = block_anyon(l.control), x = block_anyon(l.ancilla);
    std::vector<Instruction> code;
    if (g == Gadget::CzMeas) {
        const int t = block_anyon(l.target);
        if (l.ancilla != l.control + 1 || l.target != l.ancilla + 1)
            fail(ErrorKind::State, "measurement CZ needs control, ancilla, target adjacent in order");
        BraidWord h = on_block(synthesize_clifford_braid("H"), l.ancilla);
        append_word(code, h);
        code.push_back(make_measure(c + 2, x + 1));
        append_word(code, h);
        code.push_back(make_measure(x + 2, t + 1));
        append_word(code, inverse(h));
        code.push_back(make_measure(x, x + 1));
        return code;
    }
    if (l.ancilla != l.control + 1) fail(ErrorKind::State, "ancilla must sit right after the control block");
    code.push_back(make_teleport(c + 2, x));
    code.push_back(make_add(handle, x));
    code.push_back(make_curve(handle, Curve::C2));
    if (g == Gadget::T) {
        code.push_back(make_cut(handle, true));
    } else {
        code.push_back(make_transport(handle, block_anyon(l.target)));
        code.push_back(make_cut(handle, false));
    }
    code.push_back(make_teleport(x, c + 2));
    return code;
}

/// Correction for one outcome history: optional ancilla reset, then one block Clifford per logical
/// qubit (control, then target).
struct GadgetFix {
    bool reset_ancilla = false;
    std::vector<int> cliffords;
};

inline Matrix gadget_target(Gadget g) {
    if (g == Gadget::T) return gate_t();
    Matrix cz = Matrix::Identity(4, 4);
    cz(3, 3) = -1.0;
    return cz;
}

inline GadgetLayout reference_layout(Gadget g) { return g == Gadget::T ? GadgetLayout{0, 1, -1} : GadgetLayout{0, 1, 2}; }

/// Code row for logical bits (bit j = j-th logical block) with every other block in |0>.
inline Index reference_row(const SpacePtr &space, const std::vector<int> &blocks, std::uint64_t logical) {
    int nb = space->n() / kAnyonsPerQubit;
    std::uint64_t full = 0;
    for (std::size_t j = 0; j < blocks.size(); ++j)
        if ((logical >> j) & 1U) full |= std::uint64_t{1} << blocks[j];
    return space->find(code_chain(full, nb));
}

// Derives the table by running the core on every outcome history of a reference layout and
// searching the (tensor products of) block Cliffords for C with C V_b = target up to phase.
inline std::map<std::vector<Charge>, GadgetFix> solve_gadget(Gadget g) {
    GadgetLayout l = reference_layout(g);
    std::vector<int> blocks{l.control};
    if (l.target >= 0) blocks.push_back(l.target);
    const int nb = l.target >= 0 ? 3 : 2;
    auto space = fusion_space(kAnyonsPerQubit * nb, Charge::Vac);
    const Index dim = Index{1} << blocks.size();
    FusionState in{space, Matrix::Zero(space->dim(), dim)};
    for (Index m = 0; m < dim; ++m) in.amp(reference_row(space, blocks, m), m) = 1.0;
    TopologicalProgram ref;
    ref.anyons = space->n();
    ref.handles = 1;
    auto r = run_exhaustive(ref, gadget_core(g, l, 0), ExtendedState::from(in));
    const Matrix target = gadget_target(g);
    const auto &cl = block_cliffords();
    std::map<std::vector<Charge>, GadgetFix> out;
    BraidWord x_anc = on_block(synthesize_clifford_braid("X"), l.ancilla);
    for (auto &path : r.paths) {
        FusionState s = path.state.anyon_state();
        GadgetFix fix;
        if (g == Gadget::CzMeas && path.pending.back() == Charge::Psi) {
            fix.reset_ancilla = true;
            apply_braid_word_inplace(s, x_anc);
        }
        Matrix v(dim, dim);
        double kept = 0.0;
        for (Index m = 0; m < dim; ++m) {
            v.row(m) = s.amp.row(reference_row(space, blocks, m));
            kept += v.row(m).squaredNorm();
        }
        if (kept < (1.0 - 1e-9) * s.amp.squaredNorm())
            throw LeakageError(1.0 - kept / s.amp.squaredNorm(), "gadget " + to_string(g) + " leaves the code space");
        bool found = false;
        for (std::size_t a = 0; a < cl.size() && !found; ++a) {
            if (blocks.size() == 1) {
                if (normalized_phase_distance(cl[a].matrix * v, target) < 1e-9) {
                    fix.cliffords = {static_cast<int>(a)};
                    found = true;
                }
                continue;
            }
            for (std::size_t b = 0; b < cl.size() && !found; ++b)
                if (normalized_phase_distance(kron(cl[b].matrix, cl[a].matrix) * v, target) < 1e-9) {
                    fix.cliffords = {static_cast<int>(a), static_cast<int>(b)};
                    found = true;
                }
        }
        if (!found) fail(ErrorKind::Synthesis, "no Clifford correction for " + to_string(g) + " outcomes " + format_key(path.pending));
        out[path.pending] = fix;
    }
    return out;
}

inline const std::map<std::vector<Charge>, GadgetFix> &gadget_corrections(Gadget g) {
    static const auto t = solve_gadget(Gadget::T);
    static const auto czd = solve_gadget(Gadget::CzDtc);
    static const auto czm = solve_gadget(Gadget::CzMeas);
    return g == Gadget::T ? t : (g == Gadget::CzDtc ? czd : czm);
}

inline BraidWord fix_word(const GadgetFix &fix, const GadgetLayout &l) {
    BraidWord w;
    if (fix.reset_ancilla) w = on_block(synthesize_clifford_braid("X"), l.ancilla);
    int roles[2] = {l.control, l.target};
    for (std::size_t j = 0; j < fix.cliffords.size(); ++j)
        w = concat(w, on_block(block_cliffords()[fix.cliffords[j]].word, roles[j]));
    return w;
}

inline CorrectionTable correction_table(Gadget g, const GadgetLayout &canonical) {
    CorrectionTable t;
    for (const auto &[key, fix] : gadget_corrections(g)) t.branches[key] = fix_word(fix, canonical);
    return t;
}

/// at[slot] = block content (qubit index, or the ancilla id). Moves the content of slot `from` to slot
/// `to` with adjacent block swaps, appending the braids to `word`.
inline void move_block(std::vector<int> &at, int from, int to, BraidWord &word) {
    while (from > to) {
        word = concat(word, block_swap_word(block_anyon(from - 1)));
        std::swap(at[from - 1], at[from]);
        --from;
    }
    while (from < to) {
        word = concat(word, block_swap_word(block_anyon(from)));
        std::swap(at[from], at[from + 1]);
        ++from;
    }
}

inline int slot_of(const std::vector<int> &at, int content) {
    return static_cast<int>(std::find(at.begin(), at.end(), content) - at.begin());
}

/// Instructions and table for one gate on `qubits` qubits (ancilla block = qubits).
struct CompiledGate {
    std::vector<Instruction> code;
    std::string table_name;
    CorrectionTable table;
};

inline CompiledGate compile_gate(const Gate &gate, int qubits, CzMode mode, int handle = 0) {
    CompiledGate out;
    auto word = [&](const std::string &name, int q) { append_word(out.code, on_block(synthesize_clifford_braid(name), q)); };
    auto check = [&](int q) {
        if (q < 0 || q >= qubits) fail(ErrorKind::Domain, "qubit " + std::to_string(q) + " out of range");
    };
    check(gate.q0);
    if (gate.kind == GateKind::H || gate.kind == GateKind::S) {
        word(gate.kind == GateKind::H ? "H" : "S", gate.q0);
        return out;
    }
    const int anc = qubits;
    std::vector<int> at(qubits + 1);
    std::iota(at.begin(), at.end(), 0);
    BraidWord moves;
    Gadget g = Gadget::T;
    GadgetLayout live, canonical{gate.q0, anc, -1};
    if (gate.kind == GateKind::T) {
        move_block(at, anc, gate.q0 + 1, moves);
        live = {gate.q0, gate.q0 + 1, -1};
        out.table_name = "t" + std::to_string(gate.q0);
    } else {
        check(gate.q1);
        canonical.target = gate.q1;
        g = mode == CzMode::Dtc ? Gadget::CzDtc : Gadget::CzMeas;
        move_block(at, anc, slot_of(at, gate.q0) + 1, moves);
        if (g == Gadget::CzMeas) {
            int a = slot_of(at, anc), t = slot_of(at, gate.q1);
            move_block(at, t, t < a ? a : a + 1, moves);
        }
        live = {slot_of(at, gate.q0), slot_of(at, anc), slot_of(at, gate.q1)};
        out.table_name = to_string(g) + std::to_string(gate.q0) + "_" + std::to_string(gate.q1);
    }
    append_word(out.code, moves);
    auto core = gadget_core(g, live, handle);
    out.code.insert(out.code.end(), core.begin(), core.end());
    append_word(out.code, inverse(moves));
    out.code.push_back(make_correct(out.table_name));
    out.table = correction_table(g, canonical);
    return out;
}

/// A single-gate program on `qubits` qubits.
inline TopologicalProgram gate_program(const Gate &gate, int qubits, CzMode mode) {
    TopologicalProgram p;
    p.qubits = qubits;
    p.anyons = kAnyonsPerQubit * (qubits + 1);
    p.handles = 1;
    p.code.push_back(make_op(Op::Init, p.anyons));
    auto c = compile_gate(gate, qubits, mode);
    p.code.insert(p.code.end(), c.code.begin(), c.code.end());
    if (!c.table_name.empty()) p.tables[c.table_name] = c.table;
    return p;
}

inline ExtendedState require_ancilla(const FusionState &state, int qubit, int other = -1) {
    int blocks = state.n() / kAnyonsPerQubit;
    if (state.n() % kAnyonsPerQubit || blocks < 2) fail(ErrorKind::Domain, "state needs qubit blocks plus one ancilla block");
    if (qubit < 0 || qubit >= blocks - 1 || other >= blocks - 1) fail(ErrorKind::Domain, "qubit out of range");
    decode_matrix(state, blocks - 1);  // raises leakage outside the code space
    return ExtendedState::from(state);
}

/// T on `qubit` of an encoded state whose last block is the ancilla.
inline ShotResult pi8_routine(const FusionState &state, int qubit, Rng &rng) {
    auto es = require_ancilla(state, qubit);
    int q = state.n() / kAnyonsPerQubit - 1;
    return run_sampled(gate_program({GateKind::T, qubit, -1}, q, CzMode::Dtc), rng, es);
}

inline ShotResult cz_routine(const FusionState &state, int control, int target, CzMode mode, Rng &rng) {
    if (control == target) fail(ErrorKind::Domain, "CZ needs two distinct qubits");
    auto es = require_ancilla(state, control, target);
    int q = state.n() / kAnyonsPerQubit - 1;
    return run_sampled(gate_program({GateKind::CZ, control, target}, q, mode), rng, es);
}

inline ShotResult cz_routine_dtc(const FusionState &state, int control, int target, Rng &rng) {
    return cz_routine(state, control, target, CzMode::Dtc, rng);
}

inline ShotResult cz_routine_measurement(const FusionState &state, int control, int target, Rng &rng) {
    return cz_routine(state, control, target, CzMode::Measurement, rng);
}

}  // namespace isingvm
