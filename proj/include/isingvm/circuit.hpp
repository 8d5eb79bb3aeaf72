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

// Clifford+T circuits: text parser, dense statevector oracle, and a seeded random generator.
// Amplitude index convention: sum_k b_k 2^k for qubit k in state b_k.

#include "isingvm/clifford.hpp"
#include "isingvm/rng.hpp"

#include <fstream>
#include <sstream>

namespace isingvm {

inline constexpr int kOracleMaxQubits = 8;

enum class GateKind : std::uint8_t { H, S, T, CZ };

struct Gate {
    GateKind kind = GateKind::H;
    int q0 = 0;
    int q1 = -1;

    bool operator==(const Gate &) const = default;
};

inline std::string to_string(const Gate &g) {
    switch (g.kind) {
        case GateKind::H: return "H " + std::to_string(g.q0);
        case GateKind::S: return "S " + std::to_string(g.q0);
        case GateKind::T: return "T " + std::to_string(g.q0);
        case GateKind::CZ: return "CZ " + std::to_string(g.q0) + " " + std::to_string(g.q1);
    }
    return "?";
}

struct Circuit {
    int qubits = 0;
    std::vector<Gate> gates;  // desugared to H, S, T, CZ
};

inline std::string format_circuit(const Circuit &c) {
    std::string out = "QUBITS " + std::to_string(c.qubits) + "\n";
    for (const auto &g : c.gates) out += to_string(g) + "\n";
    return out;
}

/// One gate per line, '#' comments. Gates H S T CZ plus X Z SDG TDG, which desugar; an optional
/// "QUBITS n" line fixes the register size.
inline Circuit parse_circuit(const std::string &text) {
    Circuit c;
    std::istringstream lines(text);
    std::string raw;
    int line = 0;
    auto index = [&](const std::string &tok) {
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception &) {
            fail(ErrorKind::Parse, "line " + std::to_string(line) + ": bad qubit index '" + tok + "'");
        }
    };
    int declared = -1;
    while (std::getline(lines, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::istringstream in(raw);
        std::string op;
        if (!(in >> op)) continue;
        for (auto &ch : op) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        std::vector<std::string> args;
        for (std::string a; in >> a;) args.push_back(a);
        auto where = "line " + std::to_string(line) + ": ";
        auto arity = [&](std::size_t k) {
            if (args.size() != k) fail(ErrorKind::Parse, where + op + " takes " + std::to_string(k) + " operand(s)");
        };
        if (op == "QUBITS") {
            arity(1);
            declared = index(args[0]);
            continue;
        }
        if (op == "CZ") {
            arity(2);
            int a = index(args[0]), b = index(args[1]);
            if (a == b) fail(ErrorKind::Parse, where + "CZ needs two distinct qubits");
            c.gates.push_back({GateKind::CZ, a, b});
            c.qubits = std::max({c.qubits, a + 1, b + 1});
            continue;
        }
        std::vector<GateKind> seq;
        if (op == "H")
            seq = {GateKind::H};
        else if (op == "S")
            seq = {GateKind::S};
        else if (op == "T")
            seq = {GateKind::T};
        else if (op == "Z")
            seq = {GateKind::S, GateKind::S};
        else if (op == "X")
            seq = {GateKind::H, GateKind::S, GateKind::S, GateKind::H};
        else if (op == "SDG")
            seq = {GateKind::S, GateKind::S, GateKind::S};
        else if (op == "TDG")
            seq = {GateKind::T, GateKind::S, GateKind::S, GateKind::S};
        else
            fail(ErrorKind::Parse, where + "unknown gate '" + op + "'");
        arity(1);
        int q = index(args[0]);
        for (auto k : seq) c.gates.push_back({k, q, -1});
        c.qubits = std::max(c.qubits, q + 1);
    }
    if (declared >= 0) {
        if (declared < c.qubits) fail(ErrorKind::Parse, "QUBITS " + std::to_string(declared) + " is smaller than the gates need");
        c.qubits = declared;
    }
    return c;
}

inline Circuit load_circuit(const std::string &path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Parse, "cannot open circuit '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_circuit(buf.str());
}

/// Dense oracle: applies the circuit to every column of `state` (rows = 2^q amplitudes).
inline Matrix oracle_apply(const Circuit &c, Matrix state) {
    if (c.qubits > kOracleMaxQubits) fail(ErrorKind::Capacity, "oracle supports at most 8 qubits");
    const Index dim = Index{1} << c.qubits;
    if (state.rows() != dim) fail(ErrorKind::Domain, "oracle state has the wrong dimension");
    const Complex t_phase = unit_phase(kPi / 4);
    const double r = 1.0 / std::sqrt(2.0);
    for (const auto &g : c.gates) {
        const Index bit = Index{1} << g.q0;
        switch (g.kind) {
            case GateKind::H:
                for (Index i = 0; i < dim; ++i)
                    if (!(i & bit)) {
                        auto a = state.row(i).eval(), b = state.row(i | bit).eval();
                        state.row(i) = (a + b) * r;
                        state.row(i | bit) = (a - b) * r;
                    }
                break;
            case GateKind::S:
                for (Index i = 0; i < dim; ++i)
                    if (i & bit) state.row(i) *= kI;
                break;
            case GateKind::T:
                for (Index i = 0; i < dim; ++i)
                    if (i & bit) state.row(i) *= t_phase;
                break;
            case GateKind::CZ: {
                const Index bit1 = Index{1} << g.q1;
                for (Index i = 0; i < dim; ++i)
                    if ((i & bit) && (i & bit1)) state.row(i) *= -1.0;
                break;
            }
        }
    }
    return state;
}

inline Matrix circuit_unitary(const Circuit &c) {
    const Index dim = Index{1} << c.qubits;
    return oracle_apply(c, Matrix::Identity(dim, dim));
}

/// `depth` layers; each layer touches every qubit once, pairing qubits into CZ with probability 1/4.
inline Circuit random_circuit(int qubits, int depth, std::uint64_t seed) {
    Rng rng(seed);
    Circuit c;
    c.qubits = qubits;
    for (int layer = 0; layer < depth; ++layer) {
        std::vector<int> order(qubits);
        std::iota(order.begin(), order.end(), 0);
        for (int i = qubits - 1; i > 0; --i) std::swap(order[i], order[rng.next_u64() % (i + 1)]);
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (i + 1 < order.size() && rng.uniform() < 0.25) {
                c.gates.push_back({GateKind::CZ, order[i], order[i + 1]});
                ++i;
                continue;
            }
            auto kind = static_cast<GateKind>(rng.next_u64() % 3);
            c.gates.push_back({kind, order[i], -1});
        }
    }
    return c;
}

}  // namespace isingvm
