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

#include "isingvm/tqft.hpp"

#include <gtest/gtest.h>

using namespace isingvm;

namespace {

constexpr double kTol = 1e-12;
const double kR2 = std::sqrt(2.0);

void expect_near(Complex a, Complex b, double tol = kTol) { EXPECT_LT(std::abs(a - b), tol) << a << " vs " << b; }

}  // namespace

TEST(Fusion, IsingRules) {
    using C = Charge;
    EXPECT_EQ(fuse(C::Sigma, C::Sigma), (std::vector<C>{C::Vac, C::Psi}));
    EXPECT_EQ(fuse(C::Sigma, C::Psi), (std::vector<C>{C::Sigma}));
    EXPECT_EQ(fuse(C::Psi, C::Psi), (std::vector<C>{C::Vac}));
    EXPECT_EQ(fuse(C::Vac, C::Sigma), (std::vector<C>{C::Sigma}));
}

TEST(Fusion, QuantumDimensions) {
    EXPECT_NEAR(quantum_dimension(Charge::Vac), 1.0, kTol);
    EXPECT_NEAR(quantum_dimension(Charge::Sigma), kR2, kTol);
    EXPECT_NEAR(quantum_dimension(Charge::Psi), 1.0, kTol);
    EXPECT_NEAR(total_dimension(), 2.0, kTol);
}

TEST(FSymbols, SigmaBlockIsHadamard) {
    using C = Charge;
    expect_near(f_symbol(C::Sigma, C::Sigma, C::Sigma, C::Sigma, C::Vac, C::Vac), 1.0 / kR2);
    expect_near(f_symbol(C::Sigma, C::Sigma, C::Sigma, C::Sigma, C::Vac, C::Psi), 1.0 / kR2);
    expect_near(f_symbol(C::Sigma, C::Sigma, C::Sigma, C::Sigma, C::Psi, C::Vac), 1.0 / kR2);
    expect_near(f_symbol(C::Sigma, C::Sigma, C::Sigma, C::Sigma, C::Psi, C::Psi), -1.0 / kR2);
}

TEST(FSymbols, SignsAndInadmissible) {
    using C = Charge;
    expect_near(f_symbol(C::Sigma, C::Psi, C::Sigma, C::Psi, C::Sigma, C::Sigma), -1.0);
    expect_near(f_symbol(C::Psi, C::Sigma, C::Psi, C::Sigma, C::Sigma, C::Sigma), -1.0);
    expect_near(f_symbol(C::Psi, C::Psi, C::Psi, C::Psi, C::Vac, C::Vac), 1.0);
    // sigma x sigma cannot give sigma
    expect_near(f_symbol(C::Sigma, C::Sigma, C::Sigma, C::Sigma, C::Sigma, C::Vac), 0.0);
}

TEST(RSymbols, Values) {
    using C = Charge;
    expect_near(r_symbol(C::Sigma, C::Sigma, C::Vac), std::polar(1.0, -kPi / 8));
    expect_near(r_symbol(C::Sigma, C::Sigma, C::Psi), std::polar(1.0, 3 * kPi / 8));
    expect_near(r_symbol(C::Sigma, C::Psi, C::Sigma), Complex(0, -1));
    expect_near(r_symbol(C::Psi, C::Sigma, C::Sigma), Complex(0, -1));
    expect_near(r_symbol(C::Psi, C::Psi, C::Vac), -1.0);
    EXPECT_THROW(r_symbol(C::Sigma, C::Sigma, C::Sigma), Error);
}

TEST(Twists, Values) {
    expect_near(twist(Charge::Vac), 1.0);
    expect_near(twist(Charge::Sigma), std::polar(1.0, kPi / 8));
    expect_near(twist(Charge::Psi), -1.0);
}

TEST(ModularS, MatchesClosedForm) {
    Eigen::Matrix3cd expected;
    expected << 1, kR2, 1, kR2, 0, -kR2, 1, -kR2, 1;
    expected *= 0.5;
    EXPECT_LT((modular_s() - expected).norm(), kTol);
    EXPECT_LT((modular_s() * modular_s().adjoint() - Eigen::Matrix3cd::Identity()).norm(), kTol);
}

TEST(Monodromy, Values) {
    for (Charge b : kCharges) expect_near(monodromy(Charge::Vac, b), 1.0);
    expect_near(monodromy(Charge::Psi, Charge::Sigma), -1.0);
    expect_near(monodromy(Charge::Psi, Charge::Psi), 1.0);
    expect_near(monodromy(Charge::Sigma, Charge::Sigma), 0.0);
}

TEST(Consistency, ShippedDataPasses) {
    auto rep = verify_consistency();
    EXPECT_TRUE(rep.all());
    EXPECT_LT(rep.pentagon_residual, kTol);
    EXPECT_LT(rep.hexagon_residual, kTol);
}

TEST(Consistency, DetectsBrokenF) {
    TqftData bad = TqftData::ising();
    bad.f[TqftData::f_index(1, 1, 1, 1, 2, 2)] = 1.0 / std::sqrt(2.0);
    EXPECT_FALSE(verify_consistency(bad).all());
}

TEST(Consistency, DetectsBrokenR) {
    TqftData bad = TqftData::ising();
    bad.r[1][1][0] = std::polar(1.0, kPi / 8);
    auto rep = verify_consistency(bad);
    EXPECT_FALSE(rep.hexagon);
}

TEST(Charges, ParseAndErrors) {
    EXPECT_EQ(parse_charge("psi"), Charge::Psi);
    EXPECT_EQ(parse_charge("vac"), Charge::Vac);
    EXPECT_THROW(parse_charge("tau"), Error);
    EXPECT_THROW(charge_from_index(3), Error);
}

TEST(Dump, HasTables) {
    auto j = dump_tqft();
    for (const char *key : {"labels", "F", "R", "theta", "S"}) EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["S"].size(), 3u);
}
