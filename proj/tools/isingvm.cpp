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

// isingvm command line. Exit codes: 0 success, 1 verification or runtime failure, 2 usage/parse error.

#include "isingvm/isingvm.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace isingvm;
using nlohmann::json;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
    const char *env = std::getenv("ISINGVM_SEED");
    if (!env || !*env) return 0;
    try {
        std::size_t used = 0;
        auto v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
        return v;
    } catch (const std::exception &) {
        throw UsageError("ISINGVM_SEED must be a non-negative integer");
    }
}

void print(const json &j) { std::cout << j.dump(2) << "\n"; }

int cmd_tqft(bool dump) {
    auto rep = verify_consistency();
    json checks{{"pentagon", rep.pentagon},           {"hexagon", rep.hexagon},
                {"unitarity", rep.unitarity},         {"ribbon", rep.ribbon},
                {"pentagon_residual", rep.pentagon_residual}, {"hexagon_residual", rep.hexagon_residual}};
    json out = dump ? dump_tqft() : json::object();
    out["consistency"] = checks;
    print(out);
    return rep.all() ? 0 : kExitFailure;
}

int cmd_surface(const std::string &mesh, const std::vector<std::string> &toggles, bool invariants) {
    auto sc = dtc_configure(load_surface(mesh), toggles);
    if (!invariants) {
        std::cout << format_surface(sc);
        return 0;
    }
    auto inv = surface_invariants(sc);
    print({{"euler", inv.euler}, {"boundaries", inv.boundaries}, {"genus", inv.genus}, {"components", inv.components}});
    return 0;
}

json corrections_json() {
    json out = json::object();
    for (Gadget g : {Gadget::T, Gadget::CzDtc, Gadget::CzMeas}) {
        json t = json::array();
        for (const auto &[key, fix] : gadget_corrections(g)) {
            json words = json::array();
            for (int c : fix.cliffords) words.push_back(format_word(block_cliffords()[c].word));
            t.push_back({{"outcomes", format_key(key)}, {"reset_ancilla", fix.reset_ancilla}, {"cliffords", words}});
        }
        out[to_string(g)] = t;
    }
    return out;
}

int cmd_distill(std::optional<double> p, bool threshold, bool dump_corrections) {
    if (!p && !threshold && !dump_corrections) throw UsageError("distill needs --p, --threshold or --dump-corrections");
    json out = json::object();
    if (p) out = to_json(distill_map(*p));
    if (threshold) out["threshold"] = distill_threshold();
    if (dump_corrections) out["corrections"] = corrections_json();
    print(out);
    return 0;
}

int cmd_compile(const std::string &circuit, const std::string &output, const std::string &cz) {
    auto prog = compile_circuit(load_circuit(circuit), parse_cz_mode(cz));
    auto text = format_program(prog);
    if (output.empty() || output == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(output);
    if (!out) throw UsageError("cannot write '" + output + "'");
    out << text;
    std::cerr << "wrote " << output << " (" << prog.code.size() << " instructions)\n";
    return 0;
}

int cmd_run(const std::string &program, std::uint64_t seed, std::uint64_t shots, bool as_json) {
    auto rec = run_program(load_program(program), seed, shots);
    if (as_json) {
        std::cout << rec.dump() << "\n";
        return 0;
    }
    std::cout << "seed " << seed << ", " << shots << " shot(s)\n";
    if (rec.contains("amplitudes"))
        for (auto &[bits, z] : rec["amplitudes"].items())
            std::cout << "  |" << bits << ">  " << z[0].get<double>() << (z[1].get<double>() < 0 ? " - " : " + ")
                      << std::abs(z[1].get<double>()) << "i\n";
    if (rec.contains("counts"))
        for (auto &[bits, n] : rec["counts"].items()) std::cout << "  " << bits << "  " << n.get<std::uint64_t>() << "\n";
    return 0;
}

int cmd_verify(const std::string &circuit, const std::string &program, double tol, std::uint64_t seed) {
    auto c = load_circuit(circuit);
    auto p = load_program(program);
    auto rep = verify_program(c, p, tol, seed);
    print(to_json(rep));
    return rep.passed ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"isingvm: Ising-anyon topological quantum computer simulator"};
    app.require_subcommand(1);

    auto *tqft = app.add_subcommand("tqft", "Ising TQFT data and consistency checks");
    bool dump = false;
    tqft->add_flag("--dump", dump, "Print the full F/R/S/theta tables");

    auto *surface = app.add_subcommand("surface", "Topological invariants of a fluid surface");
    std::string mesh;
    std::vector<std::string> toggles;
    bool invariants = false;
    surface->add_option("mesh", mesh, "Preset name or mesh file")->required();
    surface->add_option("--toggle", toggles, "Region(s) whose depletion gates flip");
    surface->add_flag("--invariants", invariants, "Print (chi, b, g) as JSON");

    auto *distill = app.add_subcommand("distill", "15-to-1 magic state distillation map");
    std::optional<double> rate;
    bool threshold = false, dump_corrections = false;
    distill->add_option("--p", rate, "Input error rate");
    distill->add_flag("--threshold", threshold, "Also compute the fixed point");
    distill->add_flag("--dump-corrections", dump_corrections, "Print the gadget correction tables");

    auto *compile = app.add_subcommand("compile", "Compile a Clifford+T circuit");
    std::string circuit, output, cz = "dtc";
    compile->add_option("circuit", circuit, "Circuit file")->required();
    compile->add_option("-o,--output", output, "Program file (default stdout)");
    compile->add_option("--cz", cz, "CZ variant: dtc or meas")->check(CLI::IsMember({"dtc", "meas"}));

    auto *run = app.add_subcommand("run", "Execute a program");
    std::string program;
    std::optional<std::uint64_t> seed;
    std::uint64_t shots = 1;
    bool as_json = false;
    run->add_option("program", program, "Program file")->required();
    run->add_option("--seed", seed, "Seed (default $ISINGVM_SEED or 0)");
    run->add_option("--shots", shots, "Number of shots")->check(CLI::PositiveNumber);
    run->add_flag("--json", as_json, "Emit the run record as JSON");

    auto *verify = app.add_subcommand("verify", "Check a program against a circuit");
    std::string vcircuit, vprogram;
    double tol = 1e-9;
    verify->add_option("circuit", vcircuit, "Circuit file")->required();
    verify->add_option("program", vprogram, "Program file")->required();
    verify->add_option("--tol", tol, "Fidelity tolerance");
    verify->add_option("--seed", seed, "Seed for random inputs (default $ISINGVM_SEED or 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*tqft) return cmd_tqft(dump);
        if (*surface) return cmd_surface(mesh, toggles, invariants);
        if (*distill) return cmd_distill(rate, threshold, dump_corrections);
        if (*compile) return cmd_compile(circuit, output, cz);
        std::uint64_t s = seed ? *seed : default_seed();
        if (*run) return cmd_run(program, s, shots, as_json);
        if (*verify) return cmd_verify(vcircuit, vprogram, tol, s);
    } catch (const UsageError &e) {
        std::cerr << "isingvm: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error &e) {
        std::cerr << "isingvm: " << e.what() << "\n";
        return e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::Domain ? kExitUsage : kExitFailure;
    }
    return kExitUsage;
}
