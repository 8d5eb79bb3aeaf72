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

// Circuit -> TopologicalProgram. Cliffords become braid words on their block; T and CZ become the
// gadgets of protocols.hpp, each followed by a CORRECT against a table shared per (gadget, qubits).

#include "isingvm/protocols.hpp"

namespace isingvm {

inline constexpr int kCompilerMaxQubits = kOracleMaxQubits;

inline TopologicalProgram compile_circuit(const Circuit &c, CzMode mode = CzMode::Dtc) {
    if (c.qubits > kCompilerMaxQubits) fail(ErrorKind::Capacity, "compiler supports at most 8 qubits");
    TopologicalProgram p;
    p.qubits = c.qubits;
    p.anyons = kAnyonsPerQubit * (c.qubits + 1);
    p.handles = 1;
    p.code.push_back(make_op(Op::Init, p.anyons));
    for (const auto &g : c.gates) {
        auto cg = compile_gate(g, c.qubits, mode);
        p.code.insert(p.code.end(), cg.code.begin(), cg.code.end());
        if (!cg.table_name.empty()) p.tables.emplace(cg.table_name, std::move(cg.table));
    }
    return p;
}

inline CzMode parse_cz_mode(const std::string &s) {
    if (s == "dtc") return CzMode::Dtc;
    if (s == "meas") return CzMode::Measurement;
    fail(ErrorKind::Parse, "--cz must be dtc or meas");
}

}  // namespace isingvm
