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

// Quad cell complexes with per-face fluid flags. Invariants are computed on the closure of the
// fluid faces: chi = V - E + F, boundary count = cycle rank of the boundary graph, genus per
// connected component from chi = 2 - 2g - b.

#include "isingvm/core.hpp"

#include <array>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace isingvm {

struct SurfaceInvariants {
    int euler = 0;
    int boundaries = 0;
    int genus = 0;
    int components = 0;

    bool operator==(const SurfaceInvariants &) const = default;
};

inline std::string to_string(const SurfaceInvariants &s) {
    return "chi=" + std::to_string(s.euler) + " b=" + std::to_string(s.boundaries) + " g=" + std::to_string(s.genus) +
           " components=" + std::to_string(s.components);
}

struct SurfaceComplex {
    int vertices = 0;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::array<int, 4>> faces;  // edge indices
    std::vector<bool> fluid;
    std::map<std::string, std::vector<int>> regions;

    int add_edge(int u, int v) {
        auto key = std::minmax(u, v);
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (std::minmax(edges[e][0], edges[e][1]) == key) return static_cast<int>(e);
        edges.push_back({u, v});
        return static_cast<int>(edges.size()) - 1;
    }

    /// Face through four vertices in cyclic order.
    int add_face(int a, int b, int c, int d, bool is_fluid = true) {
        faces.push_back({add_edge(a, b), add_edge(b, c), add_edge(c, d), add_edge(d, a)});
        fluid.push_back(is_fluid);
        return static_cast<int>(faces.size()) - 1;
    }

    std::set<int> controllable() const {
        std::set<int> out;
        for (const auto &[name, fs] : regions) out.insert(fs.begin(), fs.end());
        return out;
    }
};

class UnionFind {
  public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

  private:
    std::vector<int> parent_;
};

/// Vertex cycle of a face, with the direction (+1 along the stored edge, -1 against) per edge.
inline std::vector<std::pair<int, int>> face_cycle(const SurfaceComplex &sc, int f) {
    const auto &fe = sc.faces[f];
    std::vector<std::pair<int, int>> out;  // (edge, direction)
    std::vector<bool> used(4, false);
    int start = sc.edges[fe[0]][0];
    int cur = sc.edges[fe[0]][1];
    out.emplace_back(fe[0], 1);
    used[0] = true;
    for (int step = 1; step < 4; ++step) {
        bool found = false;
        for (int i = 0; i < 4 && !found; ++i) {
            if (used[i]) continue;
            const auto &e = sc.edges[fe[i]];
            if (e[0] == cur) {
                out.emplace_back(fe[i], 1);
                cur = e[1];
                found = used[i] = true;
            } else if (e[1] == cur) {
                out.emplace_back(fe[i], -1);
                cur = e[0];
                found = used[i] = true;
            }
        }
        if (!found) fail(ErrorKind::Domain, "face " + std::to_string(f) + " edges do not form a cycle");
    }
    if (cur != start) fail(ErrorKind::Domain, "face " + std::to_string(f) + " edges do not close up");
    return out;
}

inline void validate(const SurfaceComplex &sc) {
    if (sc.fluid.size() != sc.faces.size()) fail(ErrorKind::Domain, "fluid flags do not match face count");
    for (const auto &e : sc.edges)
        for (int v : e)
            if (v < 0 || v >= sc.vertices) fail(ErrorKind::Domain, "edge references unknown vertex");
    std::vector<int> incidence(sc.edges.size(), 0);
    for (const auto &f : sc.faces)
        for (int e : f) {
            if (e < 0 || e >= static_cast<int>(sc.edges.size())) fail(ErrorKind::Domain, "face references unknown edge");
            ++incidence[e];
        }
    for (std::size_t e = 0; e < incidence.size(); ++e)
        if (incidence[e] > 2) fail(ErrorKind::Domain, "edge " + std::to_string(e) + " bounds more than two faces");
    for (const auto &[name, fs] : sc.regions)
        for (int f : fs)
            if (f < 0 || f >= static_cast<int>(sc.faces.size()))
                fail(ErrorKind::Domain, "region " + name + " references unknown face");
}

/// Consistent orientation of the fluid faces, or unsupported-surface.
inline void check_orientable(const SurfaceComplex &sc) {
    const int nf = static_cast<int>(sc.faces.size());
    std::vector<std::vector<std::pair<int, int>>> by_edge(sc.edges.size());  // (face, direction)
    for (int f = 0; f < nf; ++f) {
        if (!sc.fluid[f]) continue;
        for (auto [e, dir] : face_cycle(sc, f)) by_edge[e].emplace_back(f, dir);
    }
    std::vector<int> sign(nf, 0);
    for (int seed = 0; seed < nf; ++seed) {
        if (!sc.fluid[seed] || sign[seed]) continue;
        sign[seed] = 1;
        std::vector<int> stack{seed};
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            for (auto [e, dir] : face_cycle(sc, f)) {
                for (auto [g, gdir] : by_edge[e]) {
                    if (g == f) continue;
                    int want = -sign[f] * dir * gdir;
                    if (!sign[g]) {
                        sign[g] = want;
                        stack.push_back(g);
                    } else if (sign[g] != want) {
                        fail(ErrorKind::UnsupportedSurface, "fluid region is not orientable");
                    }
                }
            }
        }
    }
}

inline SurfaceInvariants surface_invariants(const SurfaceComplex &sc) {
    validate(sc);
    check_orientable(sc);
    std::vector<int> edge_faces(sc.edges.size(), 0);
    std::vector<bool> vin(sc.vertices, false);
    int nf = 0;
    for (std::size_t f = 0; f < sc.faces.size(); ++f) {
        if (!sc.fluid[f]) continue;
        ++nf;
        for (int e : sc.faces[f]) {
            ++edge_faces[e];
            vin[sc.edges[e][0]] = vin[sc.edges[e][1]] = true;
        }
    }
    UnionFind comp(sc.vertices), bcomp(sc.vertices);
    std::vector<bool> bvert(sc.vertices, false);
    std::vector<int> comp_chi(sc.vertices, 0), comp_bedges(sc.vertices, 0), comp_bverts(sc.vertices, 0),
        comp_bcomps(sc.vertices, 0);
    for (std::size_t e = 0; e < sc.edges.size(); ++e) {
        if (!edge_faces[e]) continue;
        comp.unite(sc.edges[e][0], sc.edges[e][1]);
        if (edge_faces[e] == 1) {
            bcomp.unite(sc.edges[e][0], sc.edges[e][1]);
            bvert[sc.edges[e][0]] = bvert[sc.edges[e][1]] = true;
        }
    }
    SurfaceInvariants inv;
    for (int v = 0; v < sc.vertices; ++v) {
        if (!vin[v]) continue;
        int c = comp.find(v);
        comp_chi[c] += 1;
        if (bvert[v]) {
            comp_bverts[c] += 1;
            if (bcomp.find(v) == v) comp_bcomps[c] += 1;
        }
    }
    for (std::size_t e = 0; e < sc.edges.size(); ++e) {
        if (!edge_faces[e]) continue;
        int c = comp.find(sc.edges[e][0]);
        comp_chi[c] -= 1;
        if (edge_faces[e] == 1) comp_bedges[c] += 1;
    }
    for (std::size_t f = 0; f < sc.faces.size(); ++f)
        if (sc.fluid[f]) comp_chi[comp.find(sc.edges[sc.faces[f][0]][0])] += 1;
    for (int v = 0; v < sc.vertices; ++v) {
        if (!vin[v] || comp.find(v) != v) continue;
        int chi = comp_chi[v];
        int b = comp_bedges[v] - comp_bverts[v] + comp_bcomps[v];
        int twice_g = 2 - chi - b;
        if (twice_g < 0 || twice_g % 2)
            fail(ErrorKind::UnsupportedSurface, "component has no valid genus (chi=" + std::to_string(chi) +
                                                    ", b=" + std::to_string(b) + ")");
        inv.euler += chi;
        inv.boundaries += b;
        inv.genus += twice_g / 2;
        inv.components += 1;
    }
    (void)nf;
    return inv;
}

/// Flips the fluid flag of every face in the named regions; the input is unchanged.
inline SurfaceComplex dtc_configure(const SurfaceComplex &sc, const std::vector<std::string> &toggles) {
    SurfaceComplex out = sc;
    for (const auto &name : toggles) {
        auto it = sc.regions.find(name);
        if (it == sc.regions.end()) fail(ErrorKind::Domain, "no controllable region named '" + name + "'");
        for (int f : it->second) out.fluid[f] = !out.fluid[f];
    }
    return out;
}

/// w x h grid of quads, faces row-major; wrapping identifies opposite sides.
inline SurfaceComplex make_grid(int w, int h, bool wrap_x = false, bool wrap_y = false) {
    if (w < 1 || h < 1) fail(ErrorKind::Domain, "grid dimensions must be positive");
    if ((wrap_x && w < 3) || (wrap_y && h < 3)) fail(ErrorKind::Domain, "wrapped grid sides need at least 3 cells");
    SurfaceComplex sc;
    int vw = wrap_x ? w : w + 1, vh = wrap_y ? h : h + 1;
    sc.vertices = vw * vh;
    auto id = [&](int x, int y) { return (y % vh) * vw + (x % vw); };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) sc.add_face(id(x, y), id(x + 1, y), id(x + 1, y + 1), id(x, y + 1));
    return sc;
}

// Fig. 4 handle: a 3x3 grid with its centre cell missing (the annulus of configuration (a)) and a
// 3-row, 2-wide strip running over the top from the outer rim to the inner hole. Regions:
//   B = one corner cell of the strip; turning it on keeps the overpass connected (configuration b)
//   A = the strip's middle row; turning it on cuts the overpass (configuration a)
//   C = the strip's last row; a cut at the other end, topologically the twisted configuration (c)
inline SurfaceComplex make_fig4_handle() {
    SurfaceComplex sc;
    sc.vertices = 16;
    auto id = [](int x, int y) { return y * 4 + x; };
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 3; ++x)
            if (!(x == 1 && y == 1)) sc.add_face(id(x, y), id(x + 1, y), id(x + 1, y + 1), id(x, y + 1));
    std::array<std::array<int, 3>, 4> s{};
    s[0] = {id(0, 0), id(1, 0), id(2, 0)};  // outer rim arc
    for (int r = 1; r <= 2; ++r)
        for (int c = 0; c < 3; ++c) s[r][c] = sc.vertices++;
    s[3] = {id(1, 1), id(2, 1), id(2, 2)};  // inner hole arc
    std::array<std::array<int, 2>, 3> strip{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 2; ++c) strip[r][c] = sc.add_face(s[r][c], s[r][c + 1], s[r + 1][c + 1], s[r + 1][c]);
    sc.regions["A"] = {strip[1][0], strip[1][1]};
    sc.regions["B"] = {strip[0][0]};
    sc.regions["C"] = {strip[2][0], strip[2][1]};
    return sc;
}

inline std::vector<std::string> surface_presets() { return {"annulus", "disk", "fig4-handle", "torus"}; }

inline SurfaceComplex surface_preset(const std::string &name) {
    if (name == "disk") return make_grid(3, 3);
    if (name == "annulus") {
        auto sc = make_grid(3, 3);
        sc.fluid[4] = false;
        return sc;
    }
    if (name == "torus") return make_grid(3, 3, true, true);
    if (name == "fig4-handle") return make_fig4_handle();
    fail(ErrorKind::Domain, "unknown surface preset '" + name + "'");
}

inline std::vector<int> parse_ints(std::istringstream &in, const std::string &what, int line) {
    std::vector<int> out;
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception &) {
            fail(ErrorKind::Parse, "line " + std::to_string(line) + ": bad integer '" + tok + "' in " + what);
        }
    }
    return out;
}

/// Text mesh: COMPLEX, V <count>, E <i> <j>, F <e1> <e2> <e3> <e4>, REGION <name> <faces...>,
/// FLUID <faces...> (all faces are fluid when no FLUID line is given), or GRID <w> <h> [WRAPX] [WRAPY].
inline SurfaceComplex parse_surface(const std::string &text) {
    SurfaceComplex sc;
    std::istringstream lines(text);
    std::string raw;
    int line = 0;
    bool have_fluid = false;
    std::vector<int> fluid_faces;
    while (std::getline(lines, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::istringstream in(raw);
        std::string kw;
        if (!(in >> kw)) continue;
        auto where = "line " + std::to_string(line) + ": ";
        if (kw == "COMPLEX") continue;
        if (kw == "V") {
            auto v = parse_ints(in, "V", line);
            if (v.size() != 1 || v[0] < 0) fail(ErrorKind::Parse, where + "V takes one count");
            sc.vertices = v[0];
        } else if (kw == "E") {
            auto v = parse_ints(in, "E", line);
            if (v.size() != 2) fail(ErrorKind::Parse, where + "E takes two vertices");
            sc.edges.push_back({v[0], v[1]});
        } else if (kw == "F") {
            auto v = parse_ints(in, "F", line);
            if (v.size() != 4) fail(ErrorKind::Parse, where + "F takes four edges");
            sc.faces.push_back({v[0], v[1], v[2], v[3]});
            sc.fluid.push_back(true);
        } else if (kw == "REGION") {
            std::string name;
            if (!(in >> name)) fail(ErrorKind::Parse, where + "REGION needs a name");
            sc.regions[name] = parse_ints(in, "REGION", line);
        } else if (kw == "FLUID") {
            have_fluid = true;
            auto v = parse_ints(in, "FLUID", line);
            fluid_faces.insert(fluid_faces.end(), v.begin(), v.end());
        } else if (kw == "GRID") {
            int w = 0, h = 0;
            if (!(in >> w >> h)) fail(ErrorKind::Parse, where + "GRID takes a width and a height");
            bool wx = false, wy = false;
            std::string flag;
            while (in >> flag) {
                if (flag == "WRAPX")
                    wx = true;
                else if (flag == "WRAPY")
                    wy = true;
                else
                    fail(ErrorKind::Parse, where + "unknown GRID flag '" + flag + "'");
            }
            if (!sc.faces.empty()) fail(ErrorKind::Parse, where + "GRID must come before explicit faces");
            auto regions = sc.regions;
            sc = make_grid(w, h, wx, wy);
            sc.regions = regions;
        } else {
            fail(ErrorKind::Parse, where + "unknown keyword '" + kw + "'");
        }
    }
    if (have_fluid) {
        sc.fluid.assign(sc.faces.size(), false);
        for (int f : fluid_faces) {
            if (f < 0 || f >= static_cast<int>(sc.faces.size())) fail(ErrorKind::Parse, "FLUID references unknown face");
            sc.fluid[f] = true;
        }
    }
    validate(sc);
    return sc;
}

inline std::string format_surface(const SurfaceComplex &sc) {
    std::ostringstream out;
    out << "COMPLEX\nV " << sc.vertices << "\n";
    for (const auto &e : sc.edges) out << "E " << e[0] << ' ' << e[1] << "\n";
    for (const auto &f : sc.faces) out << "F " << f[0] << ' ' << f[1] << ' ' << f[2] << ' ' << f[3] << "\n";
    for (const auto &[name, fs] : sc.regions) {
        out << "REGION " << name;
        for (int f : fs) out << ' ' << f;
        out << "\n";
    }
    out << "FLUID";
    for (std::size_t f = 0; f < sc.faces.size(); ++f)
        if (sc.fluid[f]) out << ' ' << f;
    out << "\n";
    return out.str();
}

/// A preset name or a mesh file path.
inline SurfaceComplex load_surface(const std::string &source) {
    for (const auto &p : surface_presets())
        if (source == p) return surface_preset(p);
    std::ifstream in(source);
    if (!in) fail(ErrorKind::Parse, "cannot open mesh '" + source + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_surface(buf.str());
}

}  // namespace isingvm
