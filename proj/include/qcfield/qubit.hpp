#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qcfield/smearing.hpp"

namespace qcfield {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using cplx = std::complex<double>;

/// 2x2 density matrix. Exact-evolution paths keep it a valid state;
/// perturbatively truncated outputs are positive only up to the dropped
/// orders, so positivity is checked at input boundaries via validate()
/// rather than on every construction.
struct QubitState {
    Matrix2c rho = Matrix2c::Identity() * 0.5;

    /// [[alpha, beta], [conj(beta), 1 - alpha]].
    static QubitState from_population(double alpha, cplx beta);

    /// Throws std::invalid_argument unless hermitian, unit trace and PSD
    /// within tol.
    void validate(double tol = 1e-10) const;
};

/// 4x4 joint density matrix of the two detectors. The basis is fixed by the
/// operation consuming it: the exact gapless evolution works in the product
/// eigenbasis of the two monopole operators, ordered |++>, |+->, |-+>, |-->;
/// the perturbative routines work in the product energy basis with the same
/// index ordering (A-major).
struct PairState {
    Matrix4c rho = Matrix4c::Identity() * 0.25;

    void validate(double tol = 1e-10) const;
};

/// Two-level detector: gap, coupling strength, spacetime smearing, and the
/// initial state parameters (alpha, beta) of from_population.
struct Detector {
    double gap = 0.0;       // Omega >= 0
    double coupling = 1.0;  // lambda
    Smearing smearing;
    double alpha = 1.0;
    cplx beta = 0.0;

    Matrix2c initial_matrix() const;
    /// Rejects gap < 0 and non-PSD (alpha, beta), i.e. |beta|^2 > alpha(1-alpha).
    void validate() const;
};

/// Interaction-picture monopole sigma^+ e^{i Omega t} + sigma^- e^{-i Omega t}
/// in the energy basis (excited state first). Hermitian, squares to 1.
Matrix2c monopole(double t, double gap);

Matrix2c partial_trace_b(const Matrix4c& rho);

/// Largest singular value; for the hermitian matrices handled here, the
/// largest absolute eigenvalue.
double operator_norm(const Matrix2c& m);
double operator_norm(const Matrix4c& m);

/// Conjugation by the Hadamard pair, mapping the product energy basis to the
/// product monopole eigenbasis at zero gap (and back; it is an involution).
Matrix4c energy_to_monopole_basis(const Matrix4c& rho);

}  // namespace qcfield
