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

// TopologicalProgram: the primitive instruction set and its text form.
//
//   QUBITS q / ANYONS n / HANDLES h          header
//   INIT n                                   n anyons, every block in |0>
//   BRAID i +|-                              exchange anyons i, i+1
//   MEASURE j k                              charge of interval [j..k]            (keyed)
//   OVERPASS_ADD h pair                      open handle h linked to pair (pair, pair+1)
//   MEASURE_CURVE h D|C2                     loop charge of handle h                (keyed)
//   DEHN_TWIST h count
//   TRANSPORT h pair                         carry pair (pair, pair+1) around loop D
//   CUT h plain|twisted                      close handle h                         (keyed)
//   TELEPORT src dst                         move pair src's channel into pair dst
//   CORRECT name                             braid from table `name`, keyed by the outcomes
//                                            recorded since the previous CORRECT
//   TABLE name / BRANCH o1 o2 ... : word / END

#include "isingvm/extended_state.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace isingvm {

enum class Op : std::uint8_t { Init, Braid, Measure, OverpassAdd, MeasureCurve, DehnTwist, Transport, Cut, Teleport, Correct };

struct Instruction {
    Op op = Op::Init;
    int a = 0;
    int b = 0;
    Direction dir = Direction::Ccw;
    Curve curve = Curve::D;
    bool twisted = false;
    std::string table;

    bool keyed() const { return op == Op::Measure || op == Op::MeasureCurve || op == Op::Cut; }
};

struct CorrectionTable {
    std::map<std::vector<Charge>, BraidWord> branches;
};

struct TopologicalProgram {
    int qubits = 0;
    int anyons = 0;
    int handles = 0;
    std::vector<Instruction> code;
    std::map<std::string, CorrectionTable> tables;
};

inline Instruction make_op(Op op, int a = 0, int b = 0) {
    Instruction i;
    i.op = op;
    i.a = a;
    i.b = b;
    return i;
}
inline Instruction make_braid(BraidStep s) {
    Instruction i = make_op(Op::Braid, s.index);
    i.dir = s.dir;
    return i;
}
inline Instruction make_measure(int j, int k) { return make_op(Op::Measure, j, k); }
inline Instruction make_add(int h, int pair) { return make_op(Op::OverpassAdd, h, pair); }
inline Instruction make_curve(int h, Curve c) {
    Instruction i = make_op(Op::MeasureCurve, h);
    i.curve = c;
    return i;
}
inline Instruction make_twist(int h, int count) { return make_op(Op::DehnTwist, h, count); }
inline Instruction make_transport(int h, int pair) { return make_op(Op::Transport, h, pair); }
inline Instruction make_cut(int h, bool twisted) {
    Instruction i = make_op(Op::Cut, h);
    i.twisted = twisted;
    return i;
}
inline Instruction make_teleport(int src, int dst) { return make_op(Op::Teleport, src, dst); }
inline Instruction make_correct(const std::string &table) {
    Instruction i = make_op(Op::Correct);
    i.table = table;
    return i;
}

inline void append_word(std::vector<Instruction> &code, const BraidWord &w) {
    for (const auto &s : w) code.push_back(make_braid(s));
}

inline std::string format_instruction(const Instruction &i) {
    auto n = [](int v) { return std::to_string(v); };
    switch (i.op) {
        case Op::Init: return "INIT " + n(i.a);
        case Op::Braid: return "BRAID " + n(i.a) + (i.dir == Direction::Ccw ? " +" : " -");
        case Op::Measure: return "MEASURE " + n(i.a) + " " + n(i.b);
        case Op::OverpassAdd: return "OVERPASS_ADD " + n(i.a) + " " + n(i.b);
        case Op::MeasureCurve: return "MEASURE_CURVE " + n(i.a) + " " + to_string(i.curve);
        case Op::DehnTwist: return "DEHN_TWIST " + n(i.a) + " " + n(i.b);
        case Op::Transport: return "TRANSPORT " + n(i.a) + " " + n(i.b);
        case Op::Cut: return "CUT " + n(i.a) + (i.twisted ? " twisted" : " plain");
        case Op::Teleport: return "TELEPORT " + n(i.a) + " " + n(i.b);
        case Op::Correct: return "CORRECT " + i.table;
    }
    return "?";
}

inline std::string format_key(const std::vector<Charge> &key) {
    std::string out;
    for (Charge c : key) {
        if (!out.empty()) out += ' ';
        out += to_string(c);
    }
    return out;
}

inline std::string format_program(const TopologicalProgram &p) {
    std::ostringstream out;
    out << "# isingvm topological program\n";
    out << "QUBITS " << p.qubits << "\nANYONS " << p.anyons << "\nHANDLES " << p.handles << "\n";
    for (const auto &i : p.code) out << format_instruction(i) << "\n";
    for (const auto &[name, t] : p.tables) {
        out << "TABLE " << name << "\n";
        for (const auto &[key, word] : t.branches) {
            std::string k = format_key(key);
            out << "BRANCH " << k << (k.empty() ? ": " : " : ") << format_word(word) << "\n";
        }
        out << "END\n";
    }
    return out.str();
}

/// Handle lifecycle, index ranges and table references.
inline void validate_program(const TopologicalProgram &p) {
    auto bad = [](std::size_t i, const std::string &msg) {
        fail(ErrorKind::Parse, "instruction " + std::to_string(i) + ": " + msg);
    };
    if (p.anyons < 0 || p.qubits < 0 || p.handles < 0) fail(ErrorKind::Parse, "negative header value");
    if (p.anyons % kAnyonsPerQubit || p.anyons / kAnyonsPerQubit < p.qubits)
        fail(ErrorKind::Parse, "ANYONS must be a multiple of 4 covering every qubit block");
    std::vector<bool> open(p.handles, false);
    bool init = false;
    for (std::size_t k = 0; k < p.code.size(); ++k) {
        const auto &i = p.code[k];
        auto anyon = [&](int a) {
            if (a < 1 || a > p.anyons) bad(k, "anyon " + std::to_string(a) + " out of range");
        };
        auto pair = [&](int a) {
            anyon(a);
            anyon(a + 1);
            if (a % 2 == 0) bad(k, "pair " + std::to_string(a) + " is not aligned");
        };
        auto handle = [&](int h, bool want_open) {
            if (h < 0 || h >= p.handles) bad(k, "handle " + std::to_string(h) + " is not declared");
            if (open[h] != want_open) bad(k, want_open ? "handle " + std::to_string(h) + " is not open"
                                                       : "handle " + std::to_string(h) + " is already open");
        };
        if (i.op != Op::Init && !init) bad(k, "program must start with INIT");
        switch (i.op) {
            case Op::Init:
                if (init) bad(k, "INIT appears twice");
                if (i.a != p.anyons) bad(k, "INIT count differs from ANYONS");
                init = true;
                break;
            case Op::Braid:
                if (i.a < 1 || i.a >= p.anyons) bad(k, "braid index out of range");
                break;
            case Op::Measure:
                anyon(i.a);
                anyon(i.b);
                if (i.a > i.b) bad(k, "interval is reversed");
                break;
            case Op::OverpassAdd:
                handle(i.a, false);
                pair(i.b);
                open[i.a] = true;
                break;
            case Op::MeasureCurve: handle(i.a, true); break;
            case Op::DehnTwist:
                handle(i.a, true);
                if (i.b < 1) bad(k, "twist count must be positive");
                break;
            case Op::Transport:
                handle(i.a, true);
                pair(i.b);
                break;
            case Op::Cut:
                handle(i.a, true);
                open[i.a] = false;
                break;
            case Op::Teleport:
                pair(i.a);
                pair(i.b);
                if (std::abs(i.a - i.b) != 2) bad(k, "teleport pairs must be adjacent");
                break;
            case Op::Correct:
                if (!p.tables.count(i.table)) bad(k, "unknown table '" + i.table + "'");
                break;
        }
    }
    if (!init) fail(ErrorKind::Parse, "program has no INIT");
    for (int h = 0; h < p.handles; ++h)
        if (open[h]) fail(ErrorKind::Parse, "handle " + std::to_string(h) + " is never cut");
}

inline TopologicalProgram parse_program(const std::string &text) {
    TopologicalProgram p;
    std::istringstream lines(text);
    std::string raw;
    int line = 0;
    std::string table;
    while (std::getline(lines, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::istringstream in(raw);
        std::string op;
        if (!(in >> op)) continue;
        auto where = "line " + std::to_string(line) + ": ";
        auto num = [&]() {
            std::string tok;
            if (!(in >> tok)) fail(ErrorKind::Parse, where + op + " is missing an operand");
            try {
                std::size_t used = 0;
                int v = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                return v;
            } catch (const std::exception &) {
                fail(ErrorKind::Parse, where + "bad number '" + tok + "'");
            }
        };
        auto word = [&]() {
            std::string tok;
            if (!(in >> tok)) fail(ErrorKind::Parse, where + op + " is missing an operand");
            return tok;
        };
        auto done = [&]() {
            std::string extra;
            if (in >> extra) fail(ErrorKind::Parse, where + "unexpected '" + extra + "'");
        };
        if (!table.empty()) {
            if (op == "END") {
                done();
                table.clear();
                continue;
            }
            if (op != "BRANCH") fail(ErrorKind::Parse, where + "expected BRANCH or END inside TABLE");
            std::string rest;
            std::getline(in, rest);
            auto colon = rest.find(':');
            if (colon == std::string::npos) fail(ErrorKind::Parse, where + "BRANCH needs ':'");
            std::vector<Charge> key;
            std::istringstream ks(rest.substr(0, colon));
            for (std::string c; ks >> c;) {
                try {
                    key.push_back(parse_charge(c));
                } catch (const Error &) {
                    fail(ErrorKind::Parse, where + "bad outcome '" + c + "'");
                }
            }
            try {
                p.tables[table].branches[key] = parse_word(rest.substr(colon + 1));
            } catch (const Error &e) {
                fail(ErrorKind::Parse, where + e.what());
            }
            continue;
        }
        Instruction i;
        if (op == "QUBITS") {
            p.qubits = num();
        } else if (op == "ANYONS") {
            p.anyons = num();
        } else if (op == "HANDLES") {
            p.handles = num();
        } else if (op == "TABLE") {
            table = word();
            if (p.tables.count(table)) fail(ErrorKind::Parse, where + "table '" + table + "' defined twice");
            p.tables[table];
        } else if (op == "INIT") {
            p.code.push_back(make_op(Op::Init, num()));
        } else if (op == "BRAID") {
            int a = num();
            auto d = word();
            if (d != "+" && d != "-") fail(ErrorKind::Parse, where + "BRAID direction must be + or -");
            p.code.push_back(make_braid({a, d == "+" ? Direction::Ccw : Direction::Cw}));
        } else if (op == "MEASURE") {
            int a = num();
            p.code.push_back(make_measure(a, num()));
        } else if (op == "OVERPASS_ADD") {
            int h = num();
            p.code.push_back(make_add(h, num()));
        } else if (op == "MEASURE_CURVE") {
            int h = num();
            auto c = word();
            if (c != "D" && c != "C2") fail(ErrorKind::Parse, where + "curve must be D or C2");
            p.code.push_back(make_curve(h, c == "D" ? Curve::D : Curve::C2));
        } else if (op == "DEHN_TWIST") {
            int h = num();
            p.code.push_back(make_twist(h, num()));
        } else if (op == "TRANSPORT") {
            int h = num();
            p.code.push_back(make_transport(h, num()));
        } else if (op == "CUT") {
            int h = num();
            auto kind = word();
            if (kind != "plain" && kind != "twisted") fail(ErrorKind::Parse, where + "CUT takes plain or twisted");
            p.code.push_back(make_cut(h, kind == "twisted"));
        } else if (op == "TELEPORT") {
            int a = num();
            p.code.push_back(make_teleport(a, num()));
        } else if (op == "CORRECT") {
            p.code.push_back(make_correct(word()));
        } else {
            fail(ErrorKind::Parse, where + "unknown instruction '" + op + "'");
        }
        done();
    }
    if (!table.empty()) fail(ErrorKind::Parse, "TABLE " + table + " is missing END");
    validate_program(p);
    return p;
}

inline TopologicalProgram load_program(const std::string &path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Parse, "cannot open program '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_program(buf.str());
}

}  // namespace isingvm
