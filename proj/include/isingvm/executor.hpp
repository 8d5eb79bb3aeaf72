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

// Runs TopologicalPrograms. Sampling mode follows one outcome history per shot; exhaustive mode
// carries every history as an unnormalized branch and merges them at each CORRECT, which is what
// verification and correction-table generation use.

#include "isingvm/program.hpp"

#include <optional>

namespace isingvm {

inline int program_ancilla_blocks(const TopologicalProgram &p) { return p.anyons / kAnyonsPerQubit - p.qubits; }

inline ExtendedState initial_state(const TopologicalProgram &p) {
    if (p.anyons == 0) fail(ErrorKind::Domain, "program declares no anyons");
    return ExtendedState::from(encode_qubits(std::string(p.qubits, '0'), program_ancilla_blocks(p)));
}

inline std::string handle_region(int h, const std::string &what) { return "handle " + std::to_string(h) + " " + what; }

[[noreturn]] inline void rethrow_at(const Error &e, std::size_t pc, const Instruction &i) {
    std::string msg = e.what();
    if (auto colon = msg.find(" error: "); colon != std::string::npos) msg = msg.substr(colon + 8);
    throw Error(e.kind(), "instruction " + std::to_string(pc) + " (" + format_instruction(i) + "): " + msg);
}

inline const BraidWord &lookup_correction(const TopologicalProgram &p, const std::string &table,
                                          const std::vector<Charge> &key) {
    auto t = p.tables.find(table);
    if (t == p.tables.end()) fail(ErrorKind::State, "unknown table '" + table + "'");
    auto it = t->second.branches.find(key);
    if (it == t->second.branches.end())
        fail(ErrorKind::UnreachableOutcome, "table " + table + " has no branch for outcomes '" + format_key(key) + "'");
    return it->second;
}

struct ShotResult {
    ExtendedState state;
    MeasurementRecord record;
    int teleport_rounds = 0;
};

/// One sampled history. `start` defaults to the program's INIT state.
inline ShotResult run_sampled(const TopologicalProgram &p, Rng &rng, std::optional<ExtendedState> start = {}) {
    ShotResult res{start ? std::move(*start) : initial_state(p), {}, 0};
    res.record.seed = rng.seed();
    std::vector<Charge> pending;
    auto &es = res.state;
    for (std::size_t pc = 0; pc < p.code.size(); ++pc) {
        const auto &i = p.code[pc];
        try {
            switch (i.op) {
                case Op::Init:
                    if (es.n() != i.a) fail(ErrorKind::State, "state has " + std::to_string(es.n()) + " anyons");
                    break;
                case Op::Braid: apply_braid_word_inplace(es.anyons, {{i.a, i.dir}}); break;
                case Op::Measure: {
                    auto r = pick_branch(es, interval_branches(es, i.a, i.b), rng.uniform());
                    res.record.events.push_back({interval_name(i.a, i.b), r.outcome, r.probability, r.draw});
                    pending.push_back(r.outcome);
                    es = std::move(r.state);
                    break;
                }
                case Op::OverpassAdd: es = overpass_add(es, i.a, i.b); break;
                case Op::MeasureCurve: {
                    auto r = measure_curve(es, i.a, i.curve, rng);
                    res.record.events.push_back({handle_region(i.a, to_string(i.curve)), r.outcome, r.probability, r.draw});
                    pending.push_back(r.outcome);
                    es = std::move(r.state);
                    break;
                }
                case Op::DehnTwist: es = dehn_twist(es, i.a, i.b); break;
                case Op::Transport: es = transport_around(es, i.a, i.b); break;
                case Op::Cut: {
                    auto r = overpass_cut(es, i.a, i.twisted, rng);
                    res.record.events.push_back({handle_region(i.a, i.twisted ? "cut twisted" : "cut"), r.outcome,
                                                 r.probability, r.draw});
                    pending.push_back(r.outcome);
                    es = std::move(r.state);
                    break;
                }
                case Op::Teleport: {
                    auto t = forced_teleport(es.anyons, i.a, i.b, rng);
                    es.anyons = std::move(t.state);
                    res.teleport_rounds += t.attempts;
                    for (auto &e : t.record.events) {
                        e.region = "teleport " + e.region;
                        res.record.events.push_back(std::move(e));
                    }
                    break;
                }
                case Op::Correct: {
                    const auto &w = lookup_correction(p, i.table, pending);
                    apply_braid_word_inplace(es.anyons, w);
                    es.correction_log.push_back(i.table + ":" + format_word(w));
                    pending.clear();
                    break;
                }
            }
        } catch (const Error &e) {
            rethrow_at(e, pc, i);
        }
    }
    if (!es.handles.empty()) fail(ErrorKind::State, "program ended with open handles");
    return res;
}

/// One outcome history in exhaustive mode; `pending` holds outcomes since the last CORRECT.
struct Path {
    ExtendedState state;
    std::vector<Charge> pending;
};

struct ExhaustiveResult {
    std::vector<Path> paths;
    double initial_weight = 0.0;
    double lost_weight = 0.0;  // teleport histories still unresolved at the retry cap
};

/// Merges paths whose states agree up to a global phase. The merged state carries the summed weight.
inline ExtendedState merge_paths(const std::vector<Path> &paths, double tol = 1e-7) {
    if (paths.empty()) fail(ErrorKind::State, "no outcome history survived");
    ExtendedState out = paths.front().state;
    double total = 0.0;
    for (const auto &path : paths) {
        if (normalized_phase_distance(out.anyons.amp, path.state.anyons.amp) > tol)
            fail(ErrorKind::State, "outcome histories disagree after correction");
        total += path.state.weight();
    }
    out.anyons.amp *= std::sqrt(total / out.weight());
    return out;
}

inline void expand(ExhaustiveResult &r, const std::function<std::vector<Branch>(const ExtendedState &)> &split) {
    std::vector<Path> next;
    for (auto &path : r.paths)
        for (auto &b : split(path.state)) {
            if (b.state.weight() <= kZeroWeight * r.initial_weight) continue;
            Path np{std::move(b.state), path.pending};
            np.pending.push_back(b.outcome);
            next.push_back(std::move(np));
        }
    r.paths = std::move(next);
}

/// Runs `code` on every outcome history. Tables come from `p`; CORRECT merges all live paths.
inline ExhaustiveResult run_exhaustive(const TopologicalProgram &p, const std::vector<Instruction> &code,
                                       ExtendedState start) {
    ExhaustiveResult r;
    r.initial_weight = start.weight();
    r.paths.push_back({std::move(start), {}});
    for (std::size_t pc = 0; pc < code.size(); ++pc) {
        const auto &i = code[pc];
        try {
            switch (i.op) {
                case Op::Init: break;
                case Op::Braid:
                    for (auto &path : r.paths) apply_braid_word_inplace(path.state.anyons, {{i.a, i.dir}});
                    break;
                case Op::Measure:
                    expand(r, [&](const ExtendedState &es) { return interval_branches(es, i.a, i.b); });
                    break;
                case Op::OverpassAdd:
                    for (auto &path : r.paths) path.state = overpass_add(path.state, i.a, i.b);
                    break;
                case Op::MeasureCurve:
                    expand(r, [&](const ExtendedState &es) { return curve_branches(es, i.a, i.curve); });
                    break;
                case Op::DehnTwist:
                    for (auto &path : r.paths) path.state = dehn_twist(path.state, i.a, i.b);
                    break;
                case Op::Transport:
                    for (auto &path : r.paths) path.state = transport_around(path.state, i.a, i.b);
                    break;
                case Op::Cut:
                    expand(r, [&](const ExtendedState &es) { return cut_branches(es, i.a, i.twisted); });
                    break;
                case Op::Teleport:
                    for (auto &path : r.paths) {
                        double w = path.state.weight();
                        auto t = teleport_exhaustive(path.state.anyons, i.a, i.b);
                        path.state.anyons = std::move(t.state);
                        r.lost_weight += t.residual * w;
                    }
                    break;
                case Op::Correct: {
                    for (auto &path : r.paths) {
                        apply_braid_word_inplace(path.state.anyons, lookup_correction(p, i.table, path.pending));
                        path.pending.clear();
                    }
                    ExtendedState merged = merge_paths(r.paths);
                    r.paths.clear();
                    r.paths.push_back({std::move(merged), {}});
                    break;
                }
            }
        } catch (const Error &e) {
            rethrow_at(e, pc, i);
        }
    }
    return r;
}

/// The whole program on a batch of input columns; returns the single merged final state.
inline ExhaustiveResult run_exhaustive(const TopologicalProgram &p, ExtendedState start) {
    auto r = run_exhaustive(p, p.code, std::move(start));
    if (r.paths.size() > 1) {
        ExtendedState merged = merge_paths(r.paths);
        r.paths.clear();
        r.paths.push_back({std::move(merged), {}});
    }
    if (!r.paths.front().state.handles.empty()) fail(ErrorKind::State, "program ended with open handles");
    return r;
}

/// Run record: per-shot measurement events, plus decoded amplitudes for a single shot or readout
/// counts (computational basis, drawn from the shot's own stream) for several.
inline nlohmann::json run_program(const TopologicalProgram &p, std::uint64_t seed, std::uint64_t shots) {
    if (shots == 0) fail(ErrorKind::Domain, "shots must be positive");
    nlohmann::json out{{"seed", seed}, {"shots", shots}, {"qubits", p.qubits}};
    nlohmann::json records = nlohmann::json::array();
    std::map<std::string, std::uint64_t> counts;
    Rng base(seed);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        Rng rng = base.split(shot);
        ShotResult r = run_sampled(p, rng);
        Matrix amp = decode_matrix(r.state.anyon_state(), p.qubits);
        nlohmann::json events = nlohmann::json::array();
        for (const auto &e : r.record.events) events.push_back(to_json(e));
        nlohmann::json rec{{"shot", shot}, {"events", events}, {"corrections", r.state.correction_log}};
        if (shots == 1) {
            nlohmann::json amps = nlohmann::json::object();
            for (Index b = 0; b < amp.rows(); ++b)
                if (std::abs(amp(b, 0)) > 1e-12)
                    amps[format_bitstring(static_cast<std::uint64_t>(b), p.qubits)] = complex_json(amp(b, 0));
            out["amplitudes"] = amps;
        } else {
            std::vector<double> probs(static_cast<std::size_t>(amp.rows()));
            for (Index b = 0; b < amp.rows(); ++b) probs[b] = std::norm(amp(b, 0));
            double u = rng.uniform();
            auto bits = format_bitstring(static_cast<std::uint64_t>(sample_index(probs, u)), p.qubits);
            rec["readout"] = bits;
            ++counts[bits];
        }
        records.push_back(std::move(rec));
    }
    if (shots > 1) out["counts"] = counts;
    out["records"] = std::move(records);
    return out;
}

}  // namespace isingvm
