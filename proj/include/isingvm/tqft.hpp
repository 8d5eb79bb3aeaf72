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

// Ising anyon data: fusion rules, F- and R-symbols, dimensions, twists and the
// modular S-matrix, plus the pentagon/hexagon/ribbon checker that certifies them.

#include "isingvm/core.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace isingvm {

enum class Charge : std::uint8_t { Vac = 0, Sigma = 1, Psi = 2 };

inline constexpr int kNumCharges = 3;
inline constexpr std::array<Charge, 3> kCharges{Charge::Vac, Charge::Sigma, Charge::Psi};

inline constexpr int idx(Charge a) { return static_cast<int>(a); }

inline Charge charge_from_index(int i) {
    if (i < 0 || i >= kNumCharges) fail(ErrorKind::Domain, "charge index " + std::to_string(i) + " out of range");
    return static_cast<Charge>(i);
}

inline std::string to_string(Charge a) {
    switch (a) {
        case Charge::Vac: return "vac";
        case Charge::Sigma: return "sigma";
        case Charge::Psi: return "psi";
    }
    fail(ErrorKind::Domain, "unknown charge label");
}

inline Charge parse_charge(std::string_view s) {
    if (s == "vac" || s == "1") return Charge::Vac;
    if (s == "sigma" || s == "s") return Charge::Sigma;
    if (s == "psi" || s == "p") return Charge::Psi;
    fail(ErrorKind::Domain, "unknown charge label '" + std::string(s) + "'");
}

/// Abelian part of the fusion ring: vac and psi form Z2 under fusion.
inline Charge fuse_abelian(Charge a, Charge b) {
    if (a == Charge::Sigma || b == Charge::Sigma) fail(ErrorKind::Domain, "fuse_abelian on sigma");
    return a == b ? Charge::Vac : Charge::Psi;
}

/// Multiplicity-free modular data for three labels. Ising is produced by `TqftData::ising()`;
/// any other table can be built by hand and fed to `verify_consistency`.
struct TqftData {
    using Table3 = std::array<std::array<std::array<int, 3>, 3>, 3>;
    using RTable = std::array<std::array<std::array<Complex, 3>, 3>, 3>;

    Table3 fusion{};                 // N[a][b][c]
    std::array<Complex, 729> f{};    // F[a][b][c][d][e][f], row-major
    RTable r{};                      // R[a][b][c]
    std::array<Complex, 3> theta{};  // stored twists

    int n(Charge a, Charge b, Charge c) const { return fusion[idx(a)][idx(b)][idx(c)]; }

    static constexpr int f_index(int a, int b, int c, int d, int e, int g) {
        return ((((a * 3 + b) * 3 + c) * 3 + d) * 3 + e) * 3 + g;
    }

    Complex &f_at(Charge a, Charge b, Charge c, Charge d, Charge e, Charge g) {
        return f[f_index(idx(a), idx(b), idx(c), idx(d), idx(e), idx(g))];
    }
    Complex f_at(Charge a, Charge b, Charge c, Charge d, Charge e, Charge g) const {
        return f[f_index(idx(a), idx(b), idx(c), idx(d), idx(e), idx(g))];
    }

    bool f_admissible(Charge a, Charge b, Charge c, Charge d, Charge e, Charge g) const {
        return n(a, b, e) && n(e, c, d) && n(b, c, g) && n(a, g, d);
    }

    static TqftData ising() {
        using C = Charge;
        TqftData t;
        auto set_fusion = [&](C a, C b, C c) {
            t.fusion[idx(a)][idx(b)][idx(c)] = 1;
            t.fusion[idx(b)][idx(a)][idx(c)] = 1;
        };
        set_fusion(C::Vac, C::Vac, C::Vac);
        set_fusion(C::Vac, C::Sigma, C::Sigma);
        set_fusion(C::Vac, C::Psi, C::Psi);
        set_fusion(C::Sigma, C::Sigma, C::Vac);
        set_fusion(C::Sigma, C::Sigma, C::Psi);
        set_fusion(C::Sigma, C::Psi, C::Sigma);
        set_fusion(C::Psi, C::Psi, C::Vac);

        const double h = 1.0 / std::sqrt(2.0);
        for (C a : kCharges)
            for (C b : kCharges)
                for (C c : kCharges)
                    for (C d : kCharges)
                        for (C e : kCharges)
                            for (C g : kCharges)
                                if (t.f_admissible(a, b, c, d, e, g)) t.f_at(a, b, c, d, e, g) = 1.0;
        t.f_at(C::Sigma, C::Sigma, C::Sigma, C::Sigma, C::Vac, C::Vac) = h;
        t.f_at(C::Sigma, C::Sigma, C::Sigma, C::Sigma, C::Vac, C::Psi) = h;
        t.f_at(C::Sigma, C::Sigma, C::Sigma, C::Sigma, C::Psi, C::Vac) = h;
        t.f_at(C::Sigma, C::Sigma, C::Sigma, C::Sigma, C::Psi, C::Psi) = -h;
        t.f_at(C::Sigma, C::Psi, C::Sigma, C::Psi, C::Sigma, C::Sigma) = -1.0;
        t.f_at(C::Psi, C::Sigma, C::Psi, C::Sigma, C::Sigma, C::Sigma) = -1.0;

        for (C a : kCharges)
            for (C b : kCharges)
                for (C c : kCharges)
                    if (t.n(a, b, c)) t.r[idx(a)][idx(b)][idx(c)] = 1.0;
        t.r[1][1][0] = unit_phase(-kPi / 8);
        t.r[1][1][2] = unit_phase(3 * kPi / 8);
        t.r[1][2][1] = -kI;
        t.r[2][1][1] = -kI;
        t.r[2][2][0] = -1.0;

        t.theta = {1.0, unit_phase(kPi / 8), -1.0};
        return t;
    }
};

inline const TqftData &ising() {
    static const TqftData data = TqftData::ising();
    return data;
}

inline std::vector<Charge> fuse(Charge a, Charge b, const TqftData &t = ising()) {
    std::vector<Charge> out;
    for (Charge c : kCharges)
        if (t.n(a, b, c)) out.push_back(c);
    return out;
}

/// Frobenius-Perron eigenvalue of the fusion matrix (N_a)_{bc} = N[a,b->c].
inline double quantum_dimension(Charge a, const TqftData &t = ising()) {
    Eigen::Matrix3d m;
    for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) m(b, c) = t.fusion[idx(a)][b][c];
    Eigen::EigenSolver<Eigen::Matrix3d> solver(m, false);
    double best = 0.0;
    for (int i = 0; i < 3; ++i) best = std::max(best, solver.eigenvalues()[i].real());
    return best;
}

inline double total_dimension(const TqftData &t = ising()) {
    double sum = 0.0;
    for (Charge a : kCharges) sum += std::pow(quantum_dimension(a, t), 2);
    return std::sqrt(sum);
}

/// Zero for inadmissible (e, f).
inline Complex f_symbol(Charge a, Charge b, Charge c, Charge d, Charge e, Charge g, const TqftData &t = ising()) {
    for (Charge x : {a, b, c, d, e, g}) charge_from_index(idx(x));
    if (!t.f_admissible(a, b, c, d, e, g)) return 0.0;
    return t.f_at(a, b, c, d, e, g);
}

/// Counterclockwise exchange phase R^{ab}_c.
inline Complex r_symbol(Charge a, Charge b, Charge c, const TqftData &t = ising()) {
    for (Charge x : {a, b, c}) charge_from_index(idx(x));
    if (!t.n(a, b, c))
        fail(ErrorKind::Domain, "R-symbol channel " + to_string(a) + "x" + to_string(b) + "->" + to_string(c) +
                                    " is not admissible");
    return t.r[idx(a)][idx(b)][idx(c)];
}

/// theta_a = d_a^{-1} sum_c d_c R^{aa}_c.
inline Complex ribbon_twist(Charge a, const TqftData &t = ising()) {
    Complex sum = 0.0;
    for (Charge c : kCharges)
        if (t.n(a, a, c)) sum += quantum_dimension(c, t) * t.r[idx(a)][idx(a)][idx(c)];
    return sum / quantum_dimension(a, t);
}

inline Complex twist(Charge a, const TqftData &t = ising()) { return ribbon_twist(a, t); }

inline Eigen::Matrix3cd modular_s(const TqftData &t = ising()) {
    Eigen::Matrix3cd s;
    const double big_d = total_dimension(t);
    for (Charge a : kCharges) {
        for (Charge b : kCharges) {
            Complex sum = 0.0;
            for (Charge c : kCharges)
                if (t.n(a, b, c))
                    sum += twist(c, t) / (twist(a, t) * twist(b, t)) * quantum_dimension(c, t);
            s(idx(a), idx(b)) = sum / big_d;
        }
    }
    return s;
}

/// Scalar picked up by charge a carried once around a loop of charge b:
/// S_ab S_00 / (S_0a S_0b). Zero where the transport is not a pure phase.
inline Complex monodromy(Charge a, Charge b, const TqftData &t = ising()) {
    auto s = modular_s(t);
    return s(idx(a), idx(b)) * s(0, 0) / (s(0, idx(a)) * s(0, idx(b)));
}

struct ConsistencyReport {
    bool pentagon = false;
    bool hexagon = false;
    bool unitarity = false;
    bool ribbon = false;
    double pentagon_residual = 0.0;
    double hexagon_residual = 0.0;
    double unitarity_residual = 0.0;
    double ribbon_residual = 0.0;

    bool all() const { return pentagon && hexagon && unitarity && ribbon; }
};

inline ConsistencyReport verify_consistency(const TqftData &t = ising(), double tol = 1e-12) {
    ConsistencyReport rep;
    auto F = [&](int a, int b, int c, int d, int e, int g) { return t.f[TqftData::f_index(a, b, c, d, e, g)]; };
    auto R = [&](int a, int b, int c) -> Complex { return t.fusion[a][b][c] ? t.r[a][b][c] : Complex{0.0}; };
    auto Rinv = [&](int a, int b, int c) -> Complex {
        return t.fusion[a][b][c] && t.r[a][b][c] != Complex{0.0} ? 1.0 / t.r[a][b][c] : Complex{0.0};
    };

    double pent = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d)
                    for (int e = 0; e < 3; ++e)
                        for (int f = 0; f < 3; ++f)
                            for (int g = 0; g < 3; ++g)
                                for (int k = 0; k < 3; ++k)
                                    for (int l = 0; l < 3; ++l) {
                                        Complex lhs = F(f, c, d, e, g, l) * F(a, b, l, e, f, k);
                                        Complex rhs = 0.0;
                                        for (int h = 0; h < 3; ++h)
                                            rhs += F(a, b, c, g, f, h) * F(a, h, d, e, g, k) * F(b, c, d, k, h, l);
                                        pent = std::max(pent, std::abs(lhs - rhs));
                                    }

    double hex = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d)
                    for (int e = 0; e < 3; ++e)
                        for (int g = 0; g < 3; ++g) {
                            Complex lhs = R(c, a, e) * F(a, c, b, d, e, g) * R(c, b, g);
                            Complex lhs_inv = Rinv(c, a, e) * F(a, c, b, d, e, g) * Rinv(c, b, g);
                            Complex rhs = 0.0, rhs_inv = 0.0;
                            for (int f = 0; f < 3; ++f) {
                                rhs += F(c, a, b, d, e, f) * R(c, f, d) * F(a, b, c, d, f, g);
                                rhs_inv += F(c, a, b, d, e, f) * Rinv(c, f, d) * F(a, b, c, d, f, g);
                            }
                            hex = std::max({hex, std::abs(lhs - rhs), std::abs(lhs_inv - rhs_inv)});
                        }

    double unit = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) {
                    Eigen::Matrix3cd m;
                    Eigen::Matrix3d mask = Eigen::Matrix3d::Zero();
                    for (int e = 0; e < 3; ++e)
                        for (int f = 0; f < 3; ++f) {
                            m(e, f) = F(a, b, c, d, e, f);
                            bool ok = t.fusion[a][b][e] && t.fusion[e][c][d];
                            bool ok2 = t.fusion[b][c][f] && t.fusion[a][f][d];
                            if (ok && ok2) mask(e, f) = 1.0;
                        }
                    // Identity restricted to admissible rows/columns.
                    Eigen::Matrix3cd id = Eigen::Matrix3cd::Zero();
                    for (int e = 0; e < 3; ++e)
                        if (mask.row(e).sum() > 0) id(e, e) = 1.0;
                    Eigen::Matrix3cd id_cols = Eigen::Matrix3cd::Zero();
                    for (int f = 0; f < 3; ++f)
                        if (mask.col(f).sum() > 0) id_cols(f, f) = 1.0;
                    unit = std::max(unit, (m * m.adjoint() - id).norm());
                    unit = std::max(unit, (m.adjoint() * m - id_cols).norm());
                }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                if (t.fusion[a][b][c]) unit = std::max(unit, std::abs(std::abs(t.r[a][b][c]) - 1.0));

    double rib = 0.0;
    for (Charge a : kCharges) rib = std::max(rib, std::abs(ribbon_twist(a, t) - t.theta[idx(a)]));

    rep.pentagon_residual = pent;
    rep.hexagon_residual = hex;
    rep.unitarity_residual = unit;
    rep.ribbon_residual = rib;
    rep.pentagon = pent < tol;
    rep.hexagon = hex < tol;
    rep.unitarity = unit < tol;
    rep.ribbon = rib < tol;
    return rep;
}

inline nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

/// Full F/R/S/theta tables as structured JSON, complex numbers as [re, im].
inline nlohmann::json dump_tqft(const TqftData &t = ising()) {
    using nlohmann::json;
    json out;
    out["labels"] = {"vac", "sigma", "psi"};
    json fusion = json::array();
    for (Charge a : kCharges)
        for (Charge b : kCharges)
            for (Charge c : kCharges)
                if (t.n(a, b, c)) fusion.push_back({to_string(a), to_string(b), to_string(c)});
    out["fusion"] = fusion;
    json dims = json::object();
    for (Charge a : kCharges) dims[to_string(a)] = quantum_dimension(a, t);
    out["quantum_dimensions"] = dims;
    out["total_dimension"] = total_dimension(t);
    json f = json::array();
    for (Charge a : kCharges)
        for (Charge b : kCharges)
            for (Charge c : kCharges)
                for (Charge d : kCharges)
                    for (Charge e : kCharges)
                        for (Charge g : kCharges)
                            if (t.f_admissible(a, b, c, d, e, g))
                                f.push_back({{"a", to_string(a)},
                                             {"b", to_string(b)},
                                             {"c", to_string(c)},
                                             {"d", to_string(d)},
                                             {"e", to_string(e)},
                                             {"f", to_string(g)},
                                             {"value", complex_json(t.f_at(a, b, c, d, e, g))}});
    out["F"] = f;
    json r = json::array();
    for (Charge a : kCharges)
        for (Charge b : kCharges)
            for (Charge c : kCharges)
                if (t.n(a, b, c))
                    r.push_back({{"a", to_string(a)},
                                 {"b", to_string(b)},
                                 {"c", to_string(c)},
                                 {"value", complex_json(t.r[idx(a)][idx(b)][idx(c)])}});
    out["R"] = r;
    json theta = json::object();
    for (Charge a : kCharges) theta[to_string(a)] = complex_json(twist(a, t));
    out["theta"] = theta;
    auto s = modular_s(t);
    json srows = json::array();
    for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int j = 0; j < 3; ++j) row.push_back(complex_json(s(i, j)));
        srows.push_back(row);
    }
    out["S"] = srows;
    return out;
}

}  // namespace isingvm
