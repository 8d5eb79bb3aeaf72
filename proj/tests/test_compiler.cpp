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

#include "isingvm/verify.hpp"

#include <gtest/gtest.h>

using namespace isingvm;

namespace {

constexpr double kTol = 1e-9;

ErrorKind kind_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::Domain;
}

}  // namespace

TEST(Circuit, ParseAndDesugar) {
    auto c = parse_circuit("# bell-ish\nH 0\ncz 0 1   # comment\nX 1\nTdg 0\n");
    EXPECT_EQ(c.qubits, 2);
    ASSERT_EQ(c.gates.size(), 10u);
    EXPECT_EQ(c.gates[1], (Gate{GateKind::CZ, 0, 1}));
    EXPECT_EQ(c.gates[2].kind, GateKind::H);
    EXPECT_EQ(c.gates[6].kind, GateKind::T);
}

TEST(Circuit, QubitsDirective) {
    EXPECT_EQ(parse_circuit("QUBITS 3\nH 0\n").qubits, 3);
    EXPECT_EQ(parse_circuit("").qubits, 0);
    EXPECT_EQ(kind_of([] { parse_circuit("QUBITS 1\nCZ 0 1\n"); }), ErrorKind::Parse);
}

TEST(Circuit, ParseErrorsNameTheLine) {
    try {
        parse_circuit("H 0\nH -1\n");
        ADD_FAILURE();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Parse);
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
    EXPECT_EQ(kind_of([] { parse_circuit("CZ 1 1\n"); }), ErrorKind::Parse);
    EXPECT_EQ(kind_of([] { parse_circuit("RX 0\n"); }), ErrorKind::Parse);
    EXPECT_EQ(kind_of([] { parse_circuit("H 0 1\n"); }), ErrorKind::Parse);
}

TEST(Oracle, SmallCircuits) {
    auto u = circuit_unitary(parse_circuit("H 0\n"));
    EXPECT_NEAR(std::abs(u(1, 0) - 1 / std::sqrt(2.0)), 0.0, 1e-12);
    auto v = circuit_unitary(parse_circuit("H 0\nH 1\nCZ 0 1\n"));
    // column 0 = CZ |++>: amplitudes (1, 1, 1, -1)/2
    EXPECT_NEAR(v(3, 0).real(), -0.5, 1e-12);
    auto t = circuit_unitary(parse_circuit("T 0\nT 0\nT 0\nT 0\nT 0\nT 0\nT 0\nT 0\n"));
    EXPECT_LT((t - Matrix::Identity(2, 2)).norm(), 1e-12);
    EXPECT_EQ(kind_of([] { circuit_unitary(parse_circuit("H 8\n")); }), ErrorKind::Capacity);
}

TEST(Oracle, RandomCircuitsAreSeeded) {
    auto a = random_circuit(3, 10, 5), b = random_circuit(3, 10, 5), c = random_circuit(3, 10, 6);
    EXPECT_EQ(a.gates, b.gates);
    EXPECT_NE(a.gates, c.gates);
}

TEST(Program, TextRoundTrip) {
    auto p = compile_circuit(parse_circuit("H 0\nT 0\nCZ 0 1\n"));
    auto text = format_program(p);
    EXPECT_EQ(format_program(parse_program(text)), text);
}

TEST(Program, ValidationErrors) {
    const std::string head = "QUBITS 1\nANYONS 8\nHANDLES 1\nINIT 8\n";
    EXPECT_EQ(kind_of([&] { parse_program(head + "OVERPASS_ADD 0 1\n"); }), ErrorKind::Parse);    // never cut
    EXPECT_EQ(kind_of([&] { parse_program(head + "CUT 0 plain\n"); }), ErrorKind::Parse);         // not open
    EXPECT_EQ(kind_of([&] { parse_program(head + "CORRECT nope\n"); }), ErrorKind::Parse);        // no table
    EXPECT_EQ(kind_of([&] { parse_program(head + "BRAID 8 +\n"); }), ErrorKind::Parse);           // range
    EXPECT_EQ(kind_of([&] { parse_program(head + "TELEPORT 1 5\n"); }), ErrorKind::Parse);        // not adjacent
    EXPECT_EQ(kind_of([&] { parse_program(head + "MEASURE 1\n"); }), ErrorKind::Parse);           // operand
    EXPECT_EQ(kind_of([&] { parse_program(head + "TABLE t\nBRANCH vac 1+\nEND\n"); }), ErrorKind::Parse);
    EXPECT_EQ(kind_of([&] { parse_program("QUBITS 1\nANYONS 8\nBRAID 1 +\n"); }), ErrorKind::Parse);
}

TEST(Run, IdentityProgram) {
    auto p = compile_circuit(parse_circuit("QUBITS 1\n"));
    auto rec = run_program(p, 0, 1);
    ASSERT_TRUE(rec["amplitudes"].contains("0"));
    EXPECT_NEAR(rec["amplitudes"]["0"][0].get<double>(), 1.0, 1e-12);
    EXPECT_EQ(rec["amplitudes"].size(), 1u);
}

TEST(Run, Deterministic) {
    auto p = compile_circuit(parse_circuit("H 0\nT 0\nCZ 0 1\nH 1\n"));
    EXPECT_EQ(run_program(p, 17, 5).dump(), run_program(p, 17, 5).dump());
    EXPECT_NE(run_program(p, 17, 5).dump(), run_program(p, 18, 5).dump());
}

TEST(Run, ErrorNamesInstruction) {
    // |+> puts weight on a psi data pair; transporting it around an unmeasured handle must fail.
    auto p = compile_circuit(parse_circuit("H 0\n"));
    p.code.push_back(make_add(0, 1));
    p.code.push_back(make_transport(0, 1));
    p.code.push_back(make_cut(0, false));
    try {
        run_program(p, 0, 1);
        ADD_FAILURE();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DecoheringTransport);
        EXPECT_NE(std::string(e.what()).find("instruction " + std::to_string(p.code.size() - 2)), std::string::npos);
    }
}

TEST(Verify, Identity) {
    auto c = parse_circuit("QUBITS 2\n");
    auto r = verify_program(c, compile_circuit(c));
    EXPECT_TRUE(r.passed);
    EXPECT_NEAR(r.process_fidelity, 1.0, kTol);
}

TEST(Verify, SingleT) {
    auto c = parse_circuit("T 0\n");
    auto r = verify_program(c, compile_circuit(c));
    EXPECT_TRUE(r.passed) << r.failure;
    EXPECT_GT(r.worst(), 1 - kTol);
    EXPECT_NEAR(r.probability_sum, 1.0, 1e-9);
    EXPECT_EQ(r.random_inputs, 100);
}

TEST(Verify, CatchesWrongProgram) {
    auto r = verify_program(parse_circuit("S 0\n"), compile_circuit(parse_circuit("T 0\n")));
    EXPECT_FALSE(r.passed);
    EXPECT_LT(r.process_fidelity, 0.9);
    auto q = verify_program(parse_circuit("H 0\nH 1\n"), compile_circuit(parse_circuit("H 0\n")));
    EXPECT_FALSE(q.passed);
}

TEST(Verify, MissingBranchIsFailure) {
    auto c = parse_circuit("T 0\n");
    auto p = compile_circuit(c);
    p.tables.begin()->second.branches.erase(p.tables.begin()->second.branches.begin());
    auto r = verify_program(c, p);
    EXPECT_FALSE(r.passed);
    EXPECT_NE(r.failure.find("unreachable-outcome"), std::string::npos);
}

TEST(Verify, CzVariantsHaveTheSameChannel) {
    auto c = parse_circuit("H 0\nH 2\nCZ 2 0\nT 1\nCZ 1 2\n");
    auto a = program_channel(compile_circuit(c, CzMode::Dtc)).first;
    auto b = program_channel(compile_circuit(c, CzMode::Measurement)).first;
    EXPECT_TRUE(equal_up_to_phase(a / a.norm(), b / b.norm(), kTol));
}

TEST(Verify, RandomCircuitsFewSeeds) {
    for (std::uint64_t seed : {101u, 202u, 303u}) {
        auto c = random_circuit(3, 6, seed);
        for (CzMode m : {CzMode::Dtc, CzMode::Measurement}) {
            auto r = verify_program(c, compile_circuit(c, m));
            EXPECT_TRUE(r.passed) << seed << " " << r.failure;
        }
    }
}

TEST(Compiler, CapacityAndModes) {
    Circuit big;
    big.qubits = 9;
    EXPECT_EQ(kind_of([&] { compile_circuit(big); }), ErrorKind::Capacity);
    EXPECT_EQ(parse_cz_mode("meas"), CzMode::Measurement);
    EXPECT_EQ(kind_of([] { parse_cz_mode("x"); }), ErrorKind::Parse);
}

TEST(Compiler, CliffordsAreBraidsOnly) {
    auto p = compile_circuit(parse_circuit("H 0\nS 1\n"));
    EXPECT_TRUE(p.tables.empty());
    for (const auto &i : p.code) EXPECT_TRUE(i.op == Op::Braid || i.op == Op::Init);
}

TEST(Run, HTHReadoutStatistics) {
    // X-basis readout of T|+>: P(0) = cos^2(pi/8).
    auto p = compile_circuit(parse_circuit("H 0\nT 0\nH 0\n"));
    const int shots = 10000;
    auto rec = run_program(p, 11, shots);
    double p0 = std::pow(std::cos(kPi / 8), 2);
    double sd = std::sqrt(shots * p0 * (1 - p0));
    int zeros = rec["counts"].value("0", 0);
    int ones = rec["counts"].value("1", 0);
    EXPECT_EQ(zeros + ones, shots);
    EXPECT_LE(std::abs(zeros - shots * p0), 3 * sd);
}
