#pragma once

#include "qcfield/qubit.hpp"

namespace qcfield {

/// Accumulated interaction phase lambda^2 * Delta(a, b).
double delta_ab(double coupling, const Smearing& a, const Smearing& b, Dim dim);

/// Exact gapless evolution: conjugation by exp(-i delta/2 * mu_a mu_b) in the
/// monopole product eigenbasis |++>, |+->, |-+>, |-->. Off-diagonal entries
/// pick up e^{-+ i delta} along the fixed anti-diagonal pattern; diagonal and
/// corner coherences are untouched. Unitary, so trace, hermiticity and
/// spectrum are preserved and delta is 2*pi periodic.
PairState evolve(double delta, const PairState& rho0);

/// Partial trace over B.
QubitState reduce_a(const PairState& rho);

/// Change of A's reduced state under evolve, in closed form:
///   (e^{-i delta} - 1) [[0, rho13], [rho42, 0]]
/// + (e^{+i delta} - 1) [[0, rho24], [rho31, 0]]
/// (1-based indices into rho0). Zero for diagonal rho0 or delta = 2 pi k.
Matrix2c state_change_a(double delta, const PairState& rho0);

/// |sin(delta/2)|: modulus estimator of the state change. At small coupling
/// 2 * norm_estimator = lambda^2 C + higher orders.
double norm_estimator(double delta);

/// Accumulated phase estimator; reported unreduced (it grows linearly in T),
/// equal to delta itself.
double arg_estimator(double delta);

struct NonPertReport {
    double delta_total = 0.0;
    double delta_causal = 0.0;
    double delta_retro = 0.0;
    double n_total = 0.0;
    double n_causal = 0.0;
    double theta_total = 0.0;
    double theta_causal = 0.0;
    double theta_retro = 0.0;
    double period = 0.0;  // 8 pi^2 L / lambda^2
    double shift = 0.0;   // L
    double coupling = 0.0;
    SetupGeometry setup;
};

/// Plateau-regime split for the 3+1 echo setup, valid for T > 2L
/// (std::domain_error otherwise):
///   theta_c = lambda^2 T / (2 pi L), theta_r = lambda^2 / (2 pi),
///   N = |sin(theta_total/2)|, N_c = |sin(theta_c/2)|.
/// The causal entry books the exchange with the whole switching window as the
/// baseline curve; the echo-region phase rides on top, so theta_r/theta_c is
/// exactly L/T and the modulus baseline is the total curve shifted by L.
NonPertReport np_split(const SetupGeometry& setup, double coupling);

/// Same report extended continuously to all durations; used by sweeps that
/// cross T = 2L. 3+1 only.
NonPertReport np_report(const SetupGeometry& setup, double coupling);

/// Sufficient condition for the retrocausal phase shift to stay below eps:
/// lambda^2 / (4 pi) <= eps.
bool coupling_tolerance(double coupling, double epsilon);

/// Strong-coupling exception: the retro region acts as (approximately) the
/// identity whenever |lambda^2/(4 pi) - 2 pi n| < eps for some integer n >= 0.
bool near_identity_window(double coupling, double epsilon);

struct ResolutionReport {
    double shift = 0.0;           // L
    double period = 0.0;          // 8 pi^2 L / lambda^2 (inf at zero coupling)
    double discernibility = 0.0;  // min of the two
};

/// Time resolution needed to discern the retrocausal phase shift. A zero
/// coupling yields an infinite period (flagged as inf, not an error).
ResolutionReport resolution_report(double separation, double coupling);

}  // namespace qcfield
