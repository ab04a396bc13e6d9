#pragma once

#include "qcfield/qubit.hpp"

namespace qcfield {

/// Leading-order (second order in the couplings) correction to A's reduced
/// state under the direct symmetric-propagator coupling:
///   d(rho_A) = -i lam_a lam_b / 2 * sum over phase branches of
///              J_Delta(sa Omega_a, sb Omega_b) c_sb [sigma^sa, rho_A0],
/// where J_Delta are the kernel-weighted window integrals of the phase
/// factors, each detector's phase riding its own time argument, and
/// c_+ = conj(beta_b), c_- = beta_b. Pointlike/window smearings evaluate the
/// double time integral in closed form.
Matrix2c qc_second_order_change(const Detector& det_a, const Detector& det_b, Dim dim);

/// rho_A0 + qc_second_order_change. Validates both initial states.
QubitState qc_second_order(const Detector& det_a, const Detector& det_b, Dim dim);

/// Same structure with the retarded kernel G_R(a-side, b-side) only and
/// overall factor -i lam_a lam_b (no 1/2). Vanishes identically whenever B's
/// support cannot signal A's.
Matrix2c qft_signal_change(const Detector& det_a, const Detector& det_b, Dim dim);
QubitState qft_signal_term(const Detector& det_a, const Detector& det_b, Dim dim);

/// Brute-force check of the same order: the integrated interaction
/// Hamiltonian is accumulated as a 4x4 operator by composite quadrature
/// (n_steps panels; a nested pass in 1+1) and the joint second-order state
/// formed directly. Converges to the continuum result as n_steps grows.
/// rho0_joint is in the product energy basis.
PairState dyson_oracle(const Detector& det_a, const Detector& det_b, const PairState& rho0_joint,
                       int n_steps, Dim dim);

/// True iff ||change|| <= 2 |coupling_product| |c_total| + 1e-12, the
/// operator-norm bound on the leading-order state change.
bool norm_bound_check(double coupling_product, double c_total, const Matrix2c& change);

}  // namespace qcfield
