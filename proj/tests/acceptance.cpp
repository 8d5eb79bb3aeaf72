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

// End-to-end acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include "isingvm/isingvm.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace isingvm;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string &what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Matrix exhaustive_gate(const Gate &g, int qubits, CzMode mode) {
    auto p = gate_program(g, qubits, mode);
    Index dim = Index{1} << qubits;
    auto r = run_exhaustive(p, ExtendedState::from(encode_amplitudes(Matrix::Identity(dim, dim), qubits, 1)));
    return decode_matrix(r.paths.front().state.anyon_state(), qubits);
}

void c1(Outcome &o) {
    auto t0 = Clock::now();
    auto rep = verify_consistency();
    double dt = seconds_since(t0);
    o.require(rep.all(), "all checks true");
    o.require(rep.pentagon_residual < 1e-12 && rep.hexagon_residual < 1e-12, "residuals < 1e-12");
    o.require(dt < 1.0, "runtime < 1 s");
    o.detail << "pentagon " << rep.pentagon_residual << ", hexagon " << rep.hexagon_residual << ", " << dt << " s";
}

void c2(Outcome &o) {
    auto t0 = Clock::now();
    double worst = 0.0;
    for (int n = 2; n <= 8; ++n)
        for (Charge c : kCharges) {
            auto space = fusion_space(n, c);
            if (space->dim() == 0) continue;
            Matrix id = Matrix::Identity(space->dim(), space->dim());
            for (int i = 1; i < n; ++i) {
                Matrix b(space->braid(i, Direction::Ccw));
                worst = std::max(worst, (b.adjoint() * b - id).norm());
                Matrix b8 = b * b;
                b8 = b8 * b8;
                b8 = b8 * b8;
                worst = std::max(worst, (b8 + id).norm());
                if (i + 1 < n) {
                    Matrix d(space->braid(i + 1, Direction::Ccw));
                    worst = std::max(worst, (b * d * b - d * b * d).norm());
                }
                for (int j = i + 2; j < n; ++j) {
                    Matrix d(space->braid(j, Direction::Ccw));
                    worst = std::max(worst, (b * d - d * b).norm());
                }
            }
        }
    auto group = braid_closure(4, Charge::Vac);
    double dt = seconds_since(t0);
    o.require(worst < 1e-10, "relations within 1e-10");
    o.require(group.size() == 24, "closure of 4-anyon image is finite (24 modulo phase)");
    o.require(dt < 30.0, "runtime < 30 s");
    o.detail << "worst relation residual " << worst << ", closure size " << group.size() << ", " << dt << " s";
}

void c3(Outcome &o) {
    double enc = encoded_clifford_residual();
    double maj = std::max(clifford_residual(6, Charge::Vac), clifford_residual(8, Charge::Vac));
    o.require(enc < 1e-10, "encoded Paulis map to Paulis");
    o.require(maj < 1e-10, "Majorana bilinears map into the Pauli group");
    o.detail << "encoded residual " << enc << ", 6/8-anyon residual " << maj;
}

void c4(Outcome &o) {
    Matrix t = exhaustive_gate({GateKind::T, 0, -1}, 1, CzMode::Dtc);
    Circuit tc;
    tc.qubits = 1;
    tc.gates = {{GateKind::T, 0, -1}};
    double f = process_fidelity(circuit_unitary(tc), t);
    Matrix s = braid_word_matrix(synthesize_clifford_braid("S"), 4, Charge::Vac);
    double d = normalized_phase_distance(t * t, s);
    o.require(f >= 1 - 1e-9, "T fidelity");
    o.require(d < 1e-9, "routine squared equals braid S");
    o.detail << "process fidelity " << f << ", |T^2 - S| " << d;
}

void c5(Outcome &o) {
    Matrix cz = Matrix::Identity(4, 4);
    cz(3, 3) = -1.0;
    Matrix a = exhaustive_gate({GateKind::CZ, 0, 1}, 2, CzMode::Dtc);
    Matrix b = exhaustive_gate({GateKind::CZ, 0, 1}, 2, CzMode::Measurement);
    double fa = process_fidelity(cz, a), fb = process_fidelity(cz, b);
    double d = normalized_phase_distance(a, b);
    o.require(fa >= 1 - 1e-9 && fb >= 1 - 1e-9, "both variants equal CZ");
    o.require(d < 1e-9, "variants agree");
    o.detail << "dtc " << fa << ", meas " << fb << ", distance " << d;
}

void c6(Outcome &o) {
    bool mono = std::abs(monodromy(Charge::Psi, Charge::Sigma) + 1.0) < 1e-12;
    for (Charge b : kCharges) mono = mono && std::abs(monodromy(Charge::Vac, b) - 1.0) < 1e-12;
    o.require(mono, "monodromy values");
    auto es = overpass_add(ExtendedState::from(encode_qubits("0")), 0);
    auto p = curve_probabilities(es, 0, Curve::D);
    const double expect[3] = {0.25, 0.5, 0.25};
    double analytic = 0.0;
    for (int i = 0; i < 3; ++i) analytic = std::max(analytic, std::abs(p[i] - expect[i]));
    o.require(analytic < 1e-12, "analytic D table");
    const int shots = 10000;
    std::array<int, 3> counts{};
    Rng base(2026);
    for (int s = 0; s < shots; ++s) {
        Rng rng = base.split(s);
        ++counts[idx(measure_curve(es, 0, Curve::D, rng).outcome)];
    }
    double worst_sigma = 0.0;
    for (int i = 0; i < 3; ++i) {
        double sd = std::sqrt(shots * expect[i] * (1 - expect[i]));
        worst_sigma = std::max(worst_sigma, std::abs(counts[i] - shots * expect[i]) / sd);
    }
    o.require(worst_sigma <= 3.0, "sampled D table within 3 sigma");
    o.detail << "M[psi,sigma] " << monodromy(Charge::Psi, Charge::Sigma).real() << ", counts " << counts[0] << "/"
             << counts[1] << "/" << counts[2] << " (worst " << worst_sigma << " sigma)";
}

void c7(Outcome &o) {
    auto t0 = Clock::now();
    double t = distill_threshold();
    double ratio = distill_map(1e-4).p_out / 1e-12;
    double dt = seconds_since(t0);
    o.require(t >= 0.13 && t <= 0.15, "threshold in [0.13, 0.15]");
    o.require(std::abs(ratio - 35.0) <= 0.35, "p_out/p^3 within 1% of 35");
    o.require(dt < 10.0, "runtime < 10 s");
    o.detail << "p* " << t << ", p_out/p^3 " << ratio << ", " << dt << " s";
}

void c8(Outcome &o) {
    auto inv = [](const std::string &preset, const std::vector<std::string> &toggles) {
        return surface_invariants(dtc_configure(surface_preset(preset), toggles));
    };
    o.require(inv("disk", {}) == SurfaceInvariants{1, 1, 0, 1}, "disk");
    o.require(inv("annulus", {}) == SurfaceInvariants{0, 2, 0, 1}, "annulus");
    o.require(inv("torus", {}) == SurfaceInvariants{0, 0, 1, 1}, "torus");
    auto a = inv("fig4-handle", {"A"}), b = inv("fig4-handle", {"B"}), c = inv("fig4-handle", {"C"});
    o.require(b.euler == a.euler - 1, "A -> B lowers chi by 1");
    o.require(c == a, "C lies in the class of the twisted configuration, topologically (a)");
    o.require(inv("fig4-handle", {"B", "B"}) == inv("fig4-handle", {}), "toggle round trip");
    auto es = ExtendedState::from(encode_qubits("1"));
    auto back = overpass_cut_forced(overpass_add(es, 0), 0, false);
    o.require((back.anyons.amp - es.anyons.amp).norm() < 1e-12, "add then cut restores the state");
    o.detail << "A " << to_string(a) << "; B " << to_string(b) << "; C " << to_string(c);
}

void c9(Outcome &o) {
    Rng gen(9);
    double worst = 1.0;
    for (int i = 0; i < 1000; ++i) {
        Matrix logical(2, 1);
        for (int k = 0; k < 2; ++k) logical(k, 0) = Complex(gen.uniform() - 0.5, gen.uniform() - 0.5);
        logical /= logical.norm();
        auto s = encode_amplitudes(logical, 1, 1);
        Rng rng = gen.split(i);
        auto t = forced_teleport(s, 3, 5, rng);
        // The channel now lives on pair 5: compare with the ideal state built directly.
        auto space = fusion_space(8, Charge::Vac);
        Matrix want = Matrix::Zero(space->dim(), 1);
        for (int bit = 0; bit < 2; ++bit) {
            std::vector<Charge> chain(9, Charge::Sigma);
            chain[0] = Charge::Vac;
            chain[2] = bit ? Charge::Psi : Charge::Vac;
            chain[4] = chain[2];
            chain[6] = Charge::Vac;
            chain[8] = Charge::Vac;
            want(space->find(chain), 0) = logical(bit, 0);
        }
        worst = std::min(worst, process_fidelity(want, t.state.amp));
    }
    const int trials = 10000;
    double attempts = 0.0;
    Rng base(10);
    auto s = encode_qubits("0", 1);
    for (int i = 0; i < trials; ++i) {
        Rng rng = base.split(i);
        attempts += forced_teleport(s, 3, 5, rng).attempts;
    }
    double mean = attempts / trials;
    o.require(worst >= 1 - 1e-10, "teleport fidelity on 1000 random states");
    o.require(std::abs(mean - 2.0) <= 0.1, "mean attempts 2.0 +- 0.1");
    o.detail << "worst fidelity " << worst << ", mean attempts " << mean;
}

void c10(Outcome &o) {
    auto t0 = Clock::now();
    double worst = 1.0;
    int passed = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto c = random_circuit(3, 10, seed);
        bool ok = true;
        for (CzMode mode : {CzMode::Dtc, CzMode::Measurement}) {
            auto p = parse_program(format_program(compile_circuit(c, mode)));
            run_program(p, seed, 1);
            auto r = verify_program(c, p, 1e-9, seed);
            worst = std::min(worst, r.worst());
            ok = ok && r.passed;
        }
        passed += ok;
    }
    double dt = seconds_since(t0);
    o.require(passed == 20, "all 20 circuits verify");
    o.require(dt < 300.0, "runtime < 5 min");
    o.detail << passed << "/20 circuits (both CZ variants), worst fidelity " << worst << ", " << dt << " s";
}

void c11(Outcome &o) {
    auto p = compile_circuit(parse_circuit("H 0\nT 0\nCZ 0 1\nT 1\nH 1\n"));
    std::string a = run_program(p, 1234, 20).dump(), b = run_program(p, 1234, 20).dump();
    std::string single_a = run_program(p, 77, 1).dump(), single_b = run_program(p, 77, 1).dump();
    o.require(a == b && single_a == single_b, "identical seeds give identical records");
    o.require(a != run_program(p, 1235, 20).dump(), "different seeds differ");
    o.detail << "record bytes " << a.size() << " (multi-shot), " << single_a.size() << " (single)";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome &)>>> criteria{
        {"tqft self-consistency", c1},       {"braiding algebra", c2},
        {"clifford property", c3},           {"pi/8 routine", c4},
        {"C(Z) routines", c5},               {"monodromy and gluing", c6},
        {"distillation threshold", c7},      {"surface invariants", c8},
        {"teleportation", c9},               {"compiler end-to-end", c10},
        {"determinism", c11},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception &e) {
            o.ok = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        failures += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail.str()
                  << std::endl;
    }
    return failures ? 1 : 0;
}
