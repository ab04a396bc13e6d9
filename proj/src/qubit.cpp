#include "qcfield/qubit.hpp"

#include <cmath>
#include <string>

namespace qcfield {

namespace {

constexpr cplx kI{0.0, 1.0};

template <typename Mat>
void validate_density(const Mat& rho, double tol, const char* what) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw std::invalid_argument(std::string(what) + ": not hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > 1e-12 || std::abs(rho.trace().imag()) > 1e-12) {
        throw std::invalid_argument(std::string(what) + ": trace != 1");
    }
    Eigen::SelfAdjointEigenSolver<Mat> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol) {
        throw std::invalid_argument(std::string(what) + ": negative eigenvalue");
    }
}

}  // namespace

QubitState QubitState::from_population(double alpha, cplx beta) {
    QubitState s;
    s.rho << alpha, beta, std::conj(beta), 1.0 - alpha;
    return s;
}

void QubitState::validate(double tol) const { validate_density(rho, tol, "qubit state"); }

void PairState::validate(double tol) const { validate_density(rho, tol, "pair state"); }

Matrix2c Detector::initial_matrix() const { return QubitState::from_population(alpha, beta).rho; }

void Detector::validate() const {
    if (gap < 0.0) throw std::invalid_argument("detector: gap must be >= 0");
    smearing.validate();
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("detector: alpha out of [0, 1]");
    if (std::norm(beta) > alpha * (1.0 - alpha) + 1e-12) {
        throw std::invalid_argument("detector: initial state not positive semidefinite");
    }
}

Matrix2c monopole(double t, double gap) {
    Matrix2c m;
    const cplx phase = std::exp(kI * gap * t);
    m << 0.0, phase, std::conj(phase), 0.0;
    return m;
}

Matrix2c partial_trace_b(const Matrix4c& rho) {
    Matrix2c out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
        }
    }
    return out;
}

double operator_norm(const Matrix2c& m) {
    return Eigen::JacobiSVD<Matrix2c>(m).singularValues()(0);
}

double operator_norm(const Matrix4c& m) {
    return Eigen::JacobiSVD<Matrix4c>(m).singularValues()(0);
}

Matrix4c energy_to_monopole_basis(const Matrix4c& rho) {
    Matrix2c h;
    h << 1.0, 1.0, 1.0, -1.0;
    h *= M_SQRT1_2;
    Matrix4c hh = Matrix4c::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                for (int l = 0; l < 2; ++l) {
                    hh(2 * i + k, 2 * j + l) = h(i, j) * h(k, l);
                }
            }
        }
    }
    return hh * rho * hh;  // the Hadamard pair is its own inverse
}

}  // namespace qcfield
