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

// Fusion-tree bases for n sigma anyons, braid generators as sparse unitaries, and the
// qubit encoding. Tree convention: y_0 = vac, y_1 = sigma, y_k = (y_{k-1} x sigma), y_n = total.
// The internal charges x_1..x_{n-2} of a basis label are y_2..y_{n-1}.

#include "isingvm/tqft.hpp"

#include <Eigen/Sparse>
#include <nlohmann/json.hpp>

#include <map>
#include <memory>
#include <functional>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace isingvm {

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using Index = Eigen::Index;

inline constexpr int kMaxAnyons = 64;

enum class Direction : std::uint8_t { Ccw, Cw };

struct BraidStep {
    int index = 1;  // exchanges anyons index and index+1 (1-based)
    Direction dir = Direction::Ccw;

    bool operator==(const BraidStep &) const = default;
};

using BraidWord = std::vector<BraidStep>;

inline BraidWord inverse(const BraidWord &w) {
    BraidWord out(w.rbegin(), w.rend());
    for (auto &s : out) s.dir = s.dir == Direction::Ccw ? Direction::Cw : Direction::Ccw;
    return out;
}

inline BraidWord concat(BraidWord a, const BraidWord &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline BraidWord shifted(BraidWord w, int offset) {
    for (auto &s : w) s.index += offset;
    return w;
}

/// "3+ 4-" style text; the empty string is the identity.
inline std::string format_word(const BraidWord &w) {
    std::string out;
    for (const auto &s : w) {
        if (!out.empty()) out += ' ';
        out += std::to_string(s.index);
        out += s.dir == Direction::Ccw ? '+' : '-';
    }
    return out;
}

inline BraidWord parse_word(const std::string &text) {
    BraidWord w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        char sign = tok.back();
        if ((sign != '+' && sign != '-') || tok.size() < 2)
            fail(ErrorKind::Parse, "bad braid step '" + tok + "'");
        int index = 0;
        try {
            std::size_t used = 0;
            index = std::stoi(tok.substr(0, tok.size() - 1), &used);
            if (used != tok.size() - 1) throw std::invalid_argument(tok);
        } catch (const std::exception &) {
            fail(ErrorKind::Parse, "bad braid step '" + tok + "'");
        }
        w.push_back({index, sign == '+' ? Direction::Ccw : Direction::Cw});
    }
    return w;
}

struct FusionBasisLabel {
    std::vector<Charge> internal;  // x_1..x_{n-2}
    Charge total = Charge::Vac;

    bool operator==(const FusionBasisLabel &) const = default;
};

inline std::string to_string(const FusionBasisLabel &l) {
    std::string out = "(";
    for (std::size_t i = 0; i < l.internal.size(); ++i) {
        if (i) out += ',';
        out += to_string(l.internal[i]);
    }
    return out + ";" + to_string(l.total) + ")";
}

class FusionSpace {
  public:
    using Key = unsigned __int128;

    FusionSpace(int n, Charge total) : n_(n), total_(total) {
        if (n < 2) fail(ErrorKind::Domain, "need at least 2 anyons, got " + std::to_string(n));
        if (n > kMaxAnyons) fail(ErrorKind::Capacity, "at most " + std::to_string(kMaxAnyons) + " anyons supported");
        std::vector<Charge> chain(n + 1);
        chain[0] = Charge::Vac;
        chain[1] = Charge::Sigma;
        chain[n] = total;
        enumerate(chain, 2);
    }

    int n() const { return n_; }
    Charge total() const { return total_; }
    Index dim() const { return static_cast<Index>(chains_.size() / (n_ + 1)); }

    /// y_k of basis state i, k in 0..n.
    Charge y(Index i, int k) const { return chains_[static_cast<std::size_t>(i) * (n_ + 1) + k]; }

    std::vector<Charge> chain(Index i) const {
        auto begin = chains_.begin() + static_cast<std::ptrdiff_t>(i) * (n_ + 1);
        return {begin, begin + n_ + 1};
    }

    FusionBasisLabel label(Index i) const {
        FusionBasisLabel l;
        for (int k = 2; k <= n_ - 1; ++k) l.internal.push_back(y(i, k));
        l.total = total_;
        return l;
    }

    std::vector<FusionBasisLabel> labels() const {
        std::vector<FusionBasisLabel> out;
        for (Index i = 0; i < dim(); ++i) out.push_back(label(i));
        return out;
    }

    Index find(const std::vector<Charge> &chain) const {
        auto it = index_.find(pack(chain));
        return it == index_.end() ? -1 : it->second;
    }

    /// Sparse generator image; cw is the adjoint of ccw.
    const SparseMatrix &braid(int i, Direction dir) const {
        if (i < 1 || i > n_ - 1)
            fail(ErrorKind::Domain,
                 "braid generator " + std::to_string(i) + " out of range 1.." + std::to_string(n_ - 1));
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(i, dir);
        auto it = braid_cache_.find(key);
        if (it != braid_cache_.end()) return it->second;
        SparseMatrix ccw = build_braid(i);
        SparseMatrix cw = ccw.adjoint();
        braid_cache_[{i, Direction::Ccw}] = std::move(ccw);
        braid_cache_[{i, Direction::Cw}] = std::move(cw);
        return braid_cache_.at(key);
    }

    /// Charge of aligned pair (a, a+1), a odd: y_{a+1} fused with y_{a-1}.
    Charge pair_channel(Index i, int a) const {
        check_aligned_pair(a);
        return fuse_abelian(y(i, a + 1), y(i, a - 1));
    }

    void check_aligned_pair(int a) const {
        if (a < 1 || a + 1 > n_ || a % 2 == 0)
            fail(ErrorKind::Domain, "pair " + std::to_string(a) + " is not an aligned anyon pair (odd first index)");
    }

    // Scratch space for derived caches (projectors, code rows).
    template <class T>
    T &cache_slot(const std::string &name, const std::function<T()> &make) const {
        std::lock_guard lock(mutex_);
        auto it = extra_.find(name);
        if (it == extra_.end()) it = extra_.emplace(name, std::make_shared<Holder<T>>(make())).first;
        return static_cast<Holder<T> *>(it->second.get())->value;
    }

  private:
    struct HolderBase {
        virtual ~HolderBase() = default;
    };
    template <class T>
    struct Holder : HolderBase {
        explicit Holder(T v) : value(std::move(v)) {}
        T value;
    };

    struct KeyHash {
        std::size_t operator()(Key k) const {
            auto lo = static_cast<std::uint64_t>(k);
            auto hi = static_cast<std::uint64_t>(k >> 64);
            return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9E3779B97F4A7C15ULL));
        }
    };

    Key pack(const std::vector<Charge> &chain) const {
        Key k = 0;
        for (int j = 1; j < n_; ++j) k |= static_cast<Key>(idx(chain[j])) << (2 * (j - 1));
        return k;
    }

    void enumerate(std::vector<Charge> &chain, int k) {
        if (k == n_) {
            if (!ising().n(chain[n_ - 1], Charge::Sigma, total_)) return;
            index_.emplace(pack(chain), dim());
            chains_.insert(chains_.end(), chain.begin(), chain.end());
            return;
        }
        for (Charge c : kCharges) {
            if (!ising().n(chain[k - 1], Charge::Sigma, c)) continue;
            chain[k] = c;
            enumerate(chain, k + 1);
        }
    }

    SparseMatrix build_braid(int i) const {
        const auto &t = ising();
        std::vector<Eigen::Triplet<Complex>> trip;
        std::vector<Charge> chain;
        for (Index col = 0; col < dim(); ++col) {
            chain = this->chain(col);
            Charge a = chain[i - 1], e = chain[i], d = chain[i + 1];
            for (Charge e2 : kCharges) {
                Complex amp = 0.0;
                for (Charge f : kCharges) {
                    if (!t.n(Charge::Sigma, Charge::Sigma, f)) continue;
                    amp += f_symbol(a, Charge::Sigma, Charge::Sigma, d, e, f) * r_symbol(Charge::Sigma, Charge::Sigma, f) *
                           std::conj(f_symbol(a, Charge::Sigma, Charge::Sigma, d, e2, f));
                }
                if (std::abs(amp) < 1e-15) continue;
                chain[i] = e2;
                Index row = find(chain);
                chain[i] = e;
                if (row < 0) fail(ErrorKind::State, "braid left the fusion basis");
                trip.emplace_back(row, col, amp);
            }
        }
        SparseMatrix m(dim(), dim());
        m.setFromTriplets(trip.begin(), trip.end());
        return m;
    }

    int n_;
    Charge total_;
    std::vector<Charge> chains_;
    std::unordered_map<Key, Index, KeyHash> index_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<int, Direction>, SparseMatrix> braid_cache_;
    mutable std::map<std::string, std::shared_ptr<HolderBase>> extra_;
};

using SpacePtr = std::shared_ptr<const FusionSpace>;

/// Shared immutable space for (n, c).
inline SpacePtr fusion_space(int n, Charge c) {
    static std::mutex mutex;
    static std::map<std::pair<int, Charge>, SpacePtr> spaces;
    std::lock_guard lock(mutex);
    auto key = std::make_pair(n, c);
    auto it = spaces.find(key);
    if (it != spaces.end()) return it->second;
    auto space = std::make_shared<const FusionSpace>(n, c);
    spaces.emplace(key, space);
    return space;
}

inline std::vector<FusionBasisLabel> enumerate_basis(int n, Charge c) { return fusion_space(n, c)->labels(); }

/// Dense generator image over enumerate_basis(n, c).
inline Matrix braid_generator(int i, Direction dir, int n, Charge c) {
    return Matrix(fusion_space(n, c)->braid(i, dir));
}

inline Matrix braid_word_matrix(const BraidWord &w, int n, Charge c) {
    auto space = fusion_space(n, c);
    Matrix m = Matrix::Identity(space->dim(), space->dim());
    for (const auto &s : w) m = space->braid(s.index, s.dir) * m;
    return m;
}

/// Amplitudes over the basis of one space. Several columns hold independent states side by side
/// (a batch, or a batch times handle registers); every operation acts on all columns at once.
struct FusionState {
    SpacePtr space;
    Matrix amp;

    int n() const { return space->n(); }
    Charge total() const { return space->total(); }
    Index columns() const { return amp.cols(); }

    static FusionState basis(int n, Charge c, Index i) {
        FusionState s{fusion_space(n, c), Matrix::Zero(fusion_space(n, c)->dim(), 1)};
        s.amp(i, 0) = 1.0;
        return s;
    }

    double norm() const { return amp.norm(); }
};

inline void check_word(const BraidWord &w, int n) {
    for (const auto &s : w)
        if (s.index < 1 || s.index > n - 1)
            fail(ErrorKind::Domain, "braid index " + std::to_string(s.index) + " out of range for " +
                                        std::to_string(n) + " anyons");
}

inline void apply_braid_word_inplace(FusionState &state, const BraidWord &w) {
    check_word(w, state.n());
    for (const auto &s : w) state.amp = state.space->braid(s.index, s.dir) * state.amp;
}

inline FusionState apply_braid_word(FusionState state, const BraidWord &w) {
    apply_braid_word_inplace(state, w);
    return state;
}

// Qubit encoding: qubit k owns anyons 4k+1..4k+4. The data pair (4k+1, 4k+2) carries the bit,
// the partner pair (4k+3, 4k+4) carries the same channel so each block has total charge vac.
// Bit index convention: amplitude index sum_k b_k 2^k, bitstring character k = qubit k.

inline constexpr int kAnyonsPerQubit = 4;

inline int data_pair(int qubit) { return kAnyonsPerQubit * qubit + 1; }
inline int partner_pair(int qubit) { return kAnyonsPerQubit * qubit + 3; }

/// Basis chain for code word `bits` (bit k = qubit k) in `blocks` blocks.
inline std::vector<Charge> code_chain(std::uint64_t bits, int blocks) {
    int n = kAnyonsPerQubit * blocks;
    std::vector<Charge> chain(n + 1, Charge::Vac);
    for (int k = 1; k <= n; k += 2) chain[k] = Charge::Sigma;
    for (int b = 0; b < blocks; ++b) chain[4 * b + 2] = (bits >> b) & 1U ? Charge::Psi : Charge::Vac;
    return chain;
}

/// Row of every code word of `qubits` logical qubits; further blocks are ancillas held at |0>.
inline const std::vector<Index> &code_rows(const SpacePtr &space, int qubits) {
    return space->cache_slot<std::vector<Index>>("code_rows/" + std::to_string(qubits), [&] {
        int blocks = space->n() / kAnyonsPerQubit;
        if (space->n() % kAnyonsPerQubit != 0 || space->total() != Charge::Vac || qubits > blocks || qubits > 30)
            fail(ErrorKind::Domain, "space does not hold " + std::to_string(qubits) + " encoded qubits");
        std::vector<Index> rows(std::size_t{1} << qubits);
        for (std::uint64_t b = 0; b < rows.size(); ++b) rows[b] = space->find(code_chain(b, blocks));
        return rows;
    });
}

inline std::uint64_t parse_bitstring(const std::string &bits) {
    if (bits.size() > 30) fail(ErrorKind::Capacity, "bitstring longer than 30 qubits");
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] == '1')
            v |= std::uint64_t{1} << k;
        else if (bits[k] != '0')
            fail(ErrorKind::Domain, "bitstring may only contain 0 and 1");
    }
    return v;
}

inline std::string format_bitstring(std::uint64_t v, int qubits) {
    std::string s(qubits, '0');
    for (int k = 0; k < qubits; ++k)
        if ((v >> k) & 1U) s[k] = '1';
    return s;
}

/// Code state for `bits` plus `ancilla_blocks` extra blocks in |0>.
inline FusionState encode_qubits(const std::string &bits, int ancilla_blocks = 0) {
    int q = static_cast<int>(bits.size());
    if (q + ancilla_blocks < 1) fail(ErrorKind::Domain, "nothing to encode");
    int n = kAnyonsPerQubit * (q + ancilla_blocks);
    auto space = fusion_space(n, Charge::Vac);
    FusionState s{space, Matrix::Zero(space->dim(), 1)};
    s.amp(code_rows(space, q)[parse_bitstring(bits)], 0) = 1.0;
    return s;
}

/// Lifts logical amplitudes (rows indexed by bit pattern, one column per state) into the code.
inline FusionState encode_amplitudes(const Matrix &logical, int qubits, int ancilla_blocks = 0) {
    int n = kAnyonsPerQubit * (qubits + ancilla_blocks);
    auto space = fusion_space(n, Charge::Vac);
    const auto &rows = code_rows(space, qubits);
    if (static_cast<std::size_t>(logical.rows()) != rows.size()) fail(ErrorKind::Domain, "amplitude size mismatch");
    FusionState s{space, Matrix::Zero(space->dim(), logical.cols())};
    for (std::size_t b = 0; b < rows.size(); ++b) s.amp.row(rows[b]) = logical.row(static_cast<Index>(b));
    return s;
}

/// Logical amplitudes of every column; any weight outside the code subspace raises leakage.
inline Matrix decode_matrix(const FusionState &state, int qubits, double tol = 1e-10) {
    const auto &rows = code_rows(state.space, qubits);
    Matrix out(static_cast<Index>(rows.size()), state.amp.cols());
    double kept = 0.0;
    for (std::size_t b = 0; b < rows.size(); ++b) {
        out.row(static_cast<Index>(b)) = state.amp.row(rows[b]);
        kept += state.amp.row(rows[b]).squaredNorm();
    }
    double total = state.amp.squaredNorm();
    double leaked = std::max(0.0, total - kept);
    if (total > 0.0 && leaked > tol * total) throw LeakageError(leaked / total, "state has support outside the code subspace");
    return out;
}

/// Bitstring -> amplitude for a single-column state.
inline std::map<std::string, Complex> decode_qubits(const FusionState &state, int qubits) {
    if (state.amp.cols() != 1) fail(ErrorKind::Domain, "decode_qubits takes a single state");
    Matrix m = decode_matrix(state, qubits);
    std::map<std::string, Complex> out;
    for (Index b = 0; b < m.rows(); ++b)
        if (std::abs(m(b, 0)) > 1e-12) out[format_bitstring(static_cast<std::uint64_t>(b), qubits)] = m(b, 0);
    return out;
}

inline nlohmann::json dump_state(const FusionState &state) {
    nlohmann::json out = nlohmann::json::object();
    for (Index i = 0; i < state.amp.rows(); ++i) {
        Complex z = state.amp(i, 0);
        if (std::abs(z) > 1e-15) out[to_string(state.space->label(i))] = complex_json(z);
    }
    return out;
}

// Standard words. Pair flips move anyon b next to a, double-exchange, and move back; the result is
// the pure braid of a around b, which flips the channels of both pairs the strands belong to.

inline BraidWord pair_flip_word(int a, int b) {
    if (a >= b) std::swap(a, b);
    BraidWord move;
    for (int i = b - 1; i >= a + 1; --i) move.push_back({i, Direction::Ccw});
    BraidWord w = move;
    w.push_back({a, Direction::Ccw});
    w.push_back({a, Direction::Ccw});
    return concat(w, inverse(move));
}

/// Exchanges the 4-anyon block starting at anyon p with the block starting at p+4, strands in parallel.
inline BraidWord block_swap_word(int p) {
    BraidWord w;
    for (int k = 3; k >= 0; --k)
        for (int step = 0; step < 4; ++step) w.push_back({p + k + step, Direction::Ccw});
    return w;
}

}  // namespace isingvm
