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

#include "isingvm/clifford.hpp"

#include <gtest/gtest.h>

using namespace isingvm;

namespace {

constexpr double kTol = 1e-10;

Matrix gen(int i, int n, Direction d = Direction::Ccw) { return braid_generator(i, d, n, Charge::Vac); }

}  // namespace

TEST(Basis, Dimensions) {
    // 2n sigmas fusing to vac: 2^(n-1) states; odd counts fuse to sigma.
    EXPECT_EQ(fusion_space(2, Charge::Vac)->dim(), 1);
    EXPECT_EQ(fusion_space(4, Charge::Vac)->dim(), 2);
    EXPECT_EQ(fusion_space(4, Charge::Psi)->dim(), 2);
    EXPECT_EQ(fusion_space(6, Charge::Vac)->dim(), 4);
    EXPECT_EQ(fusion_space(3, Charge::Sigma)->dim(), 2);
    EXPECT_EQ(fusion_space(16, Charge::Vac)->dim(), 128);
    EXPECT_EQ(fusion_space(3, Charge::Vac)->dim(), 0);
}

TEST(Basis, LabelsAreLexicographic) {
    auto labels = enumerate_basis(4, Charge::Vac);
    ASSERT_EQ(labels.size(), 2u);
    EXPECT_EQ(labels[0].internal[0], Charge::Vac);
    EXPECT_EQ(labels[1].internal[0], Charge::Psi);
}

TEST(Braids, FirstGeneratorIsDiagonalR) {
    Matrix b1 = gen(1, 4);
    EXPECT_LT(std::abs(b1(0, 0) - std::polar(1.0, -kPi / 8)), kTol);
    EXPECT_LT(std::abs(b1(1, 1) - std::polar(1.0, 3 * kPi / 8)), kTol);
    EXPECT_LT(std::abs(b1(0, 1)) + std::abs(b1(1, 0)), kTol);
}

TEST(Braids, SecondGeneratorFourAnyons) {
    Matrix expected(2, 2);
    expected << 1, Complex(0, -1), Complex(0, -1), 1;
    Matrix b2 = gen(2, 4);
    // F R F gives e^{+i pi/8}/sqrt2 [[1,-i],[-i,1]] exactly.
    EXPECT_LT((b2 - std::polar(1.0, kPi / 8) / std::sqrt(2.0) * expected).norm(), kTol);
    EXPECT_TRUE(equal_up_to_phase(b2, std::polar(1.0, -kPi / 8) / std::sqrt(2.0) * expected, kTol));
    // conjugate to B_1, so same spectrum
    Eigen::ComplexEigenSolver<Matrix> es(b2);
    std::vector<double> args;
    for (int i = 0; i < 2; ++i) args.push_back(std::arg(es.eigenvalues()[i]));
    std::sort(args.begin(), args.end());
    EXPECT_NEAR(args[0], -kPi / 8, kTol);
    EXPECT_NEAR(args[1], 3 * kPi / 8, kTol);
}

TEST(Braids, GroupRelations) {
    for (int n = 2; n <= 8; n += 2) {
        Matrix id = Matrix::Identity(fusion_space(n, Charge::Vac)->dim(), fusion_space(n, Charge::Vac)->dim());
        for (int i = 1; i < n; ++i) {
            Matrix b = gen(i, n);
            EXPECT_TRUE(is_unitary(b, kTol));
            EXPECT_LT((b * gen(i, n, Direction::Cw) - id).norm(), kTol);
            Matrix b8 = b * b;
            b8 = b8 * b8;
            b8 = b8 * b8;
            EXPECT_LT((b8 + id).norm(), kTol) << "B_" << i << "^8 on n=" << n;
            if (i + 1 < n) {
                Matrix c = gen(i + 1, n);
                EXPECT_LT((b * c * b - c * b * c).norm(), kTol) << "Yang-Baxter " << i;
            }
            for (int j = i + 2; j < n; ++j) EXPECT_LT((b * gen(j, n) - gen(j, n) * b).norm(), kTol);
        }
    }
}

TEST(Braids, IndexOutOfRange) {
    EXPECT_THROW(braid_generator(4, Direction::Ccw, 4, Charge::Vac), Error);
    EXPECT_THROW(braid_generator(0, Direction::Ccw, 4, Charge::Vac), Error);
}

TEST(Braids, WordTextRoundTrip) {
    BraidWord w{{3, Direction::Ccw}, {4, Direction::Cw}, {1, Direction::Ccw}};
    EXPECT_EQ(format_word(w), "3+ 4- 1+");
    EXPECT_EQ(parse_word(format_word(w)), w);
    EXPECT_TRUE(parse_word("").empty());
    EXPECT_THROW(parse_word("3*"), Error);
}

TEST(Braids, WordAndInverseCancel) {
    BraidWord w = parse_word("1+ 2+ 3- 2+");
    Matrix m = braid_word_matrix(concat(w, inverse(w)), 4, Charge::Vac);
    EXPECT_LT((m - Matrix::Identity(2, 2)).norm(), kTol);
}

TEST(Closure, FourAnyonImageIsFinite) {
    auto group = braid_closure(4, Charge::Vac);
    EXPECT_EQ(group.size(), 24u);
    EXPECT_EQ(block_cliffords().size(), 24u);
}

TEST(Closure, SixAnyonImageIsFinite) {
    auto group = braid_closure(6, Charge::Vac);
    EXPECT_GT(group.size(), 24u);
    EXPECT_LT(group.size(), 200000u);
}

TEST(Synthesis, NamedGates) {
    EXPECT_EQ(format_word(synthesize_clifford_braid("S")), "1+");
    EXPECT_EQ(format_word(synthesize_clifford_braid("Z")), "1+ 1+");
    auto h = synthesize_clifford_braid("H");
    EXPECT_LE(h.size(), 5u);
    Matrix hm = braid_word_matrix(h, 4, Charge::Vac);
    EXPECT_TRUE(equal_up_to_phase(hm, Matrix(gate_h()), kTol));
    EXPECT_TRUE(equal_up_to_phase(braid_word_matrix(synthesize_clifford_braid("X"), 4, Charge::Vac), Matrix(pauli_x()), kTol));
    EXPECT_THROW(synthesize_clifford_braid("T"), Error);
}

TEST(Clifford, GeneratorsNormalizePaulis) {
    EXPECT_LT(encoded_clifford_residual(), kTol);
    EXPECT_LT(clifford_residual(6, Charge::Vac), kTol);
    EXPECT_LT(clifford_residual(8, Charge::Vac), kTol);
}

TEST(Encoding, RoundTrip) {
    auto s = encode_qubits("101", 1);
    EXPECT_EQ(s.n(), 16);
    auto d = decode_qubits(s, 3);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_LT(std::abs(d.at("101") - 1.0), kTol);
}

TEST(Encoding, LeakageDetected) {
    auto s = encode_qubits("00");
    apply_braid_word_inplace(s, parse_word("4+"));  // exchange across blocks leaves the code space
    EXPECT_THROW(decode_qubits(s, 2), LeakageError);
}

TEST(Encoding, BlockSwapPermutesQubits) {
    Matrix logical = Matrix::Zero(4, 1);
    logical(1, 0) = 0.6;               // |10>
    logical(3, 0) = Complex(0, 0.8);   // |11>
    auto s = encode_amplitudes(logical, 2);
    apply_braid_word_inplace(s, block_swap_word(1));
    Matrix out = decode_matrix(s, 2);
    EXPECT_LT(std::abs(out(2, 0) - 0.6), kTol);
    EXPECT_LT(std::abs(out(3, 0) - Complex(0, 0.8)), kTol);
}

TEST(Encoding, CodeBraidsActOnTheirQubit) {
    // H on qubit 1 of two: |00> -> |0+>
    auto s = encode_qubits("00");
    apply_braid_word_inplace(s, on_block(synthesize_clifford_braid("H"), 1));
    Matrix out = decode_matrix(s, 2);
    EXPECT_NEAR(std::abs(out(0, 0)), 1 / std::sqrt(2.0), kTol);
    EXPECT_NEAR(std::abs(out(2, 0)), 1 / std::sqrt(2.0), kTol);
}

TEST(Encoding, BadBitstring) {
    EXPECT_THROW(encode_qubits("012"), Error);
}
