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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace isingvm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

inline Complex unit_phase(double angle) { return std::polar(1.0, angle); }

enum class ErrorKind {
    Domain,
    Leakage,
    UnsupportedRegion,
    ImpossibleOutcome,
    State,
    DecoheringTransport,
    ImpossibleCut,
    UnsupportedSurface,
    Parse,
    Capacity,
    Synthesis,
    UnreachableOutcome,
    RetryExhausted,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Leakage: return "leakage";
        case ErrorKind::UnsupportedRegion: return "unsupported-region";
        case ErrorKind::ImpossibleOutcome: return "impossible-outcome";
        case ErrorKind::State: return "state";
        case ErrorKind::DecoheringTransport: return "decohering-transport";
        case ErrorKind::ImpossibleCut: return "impossible-cut";
        case ErrorKind::UnsupportedSurface: return "unsupported-surface";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Capacity: return "capacity";
        case ErrorKind::Synthesis: return "synthesis";
        case ErrorKind::UnreachableOutcome: return "unreachable-outcome";
        case ErrorKind::RetryExhausted: return "retry-exhausted";
    }
    return "unknown";
}

/// Every failure raised by the library. `kind()` identifies the contract that was violated.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + " error: " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

class LeakageError : public Error {
  public:
    LeakageError(double leaked_weight, const std::string &message)
        : Error(ErrorKind::Leakage, message + " (leaked weight " + std::to_string(leaked_weight) + ")"),
          leaked_weight_(leaked_weight) {}

    double leaked_weight() const noexcept { return leaked_weight_; }

  private:
    double leaked_weight_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message) { throw Error(kind, message); }

/// min over global phases of ||e^{i phi} a - b||_F.
inline double phase_distance(const Matrix &a, const Matrix &b) {
    Complex overlap = (b.adjoint() * a).trace();
    Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0};
    return (a - phase * b).norm();
}

inline bool equal_up_to_phase(const Matrix &a, const Matrix &b, double tol) {
    return phase_distance(a, b) < tol;
}

/// |tr(U^dag V)|^2 / (||U||_F^2 ||V||_F^2); equals |tr(U^dag V)|^2 / d^2 for unitaries.
inline double process_fidelity(const Matrix &target, const Matrix &actual) {
    double nu = target.squaredNorm();
    double nv = actual.squaredNorm();
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return std::norm((target.adjoint() * actual).trace()) / (nu * nv);
}

/// Scales so the first entry with magnitude above `tol` is positive real.
inline Matrix canonical_phase(const Matrix &m, double tol = 1e-9) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (std::abs(m(i, j)) > tol) return m * (std::conj(m(i, j)) / std::abs(m(i, j)));
        }
    }
    return m;
}

inline bool is_unitary(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm() < tol;
}

}  // namespace isingvm
