#include "qcfield/dynamics_nonpert.hpp"

#include <cmath>
#include <limits>

#include "qcfield/estimators.hpp"
#include "qcfield/propagators.hpp"

namespace qcfield {

namespace {

constexpr cplx kI{0.0, 1.0};

// Product of monopole eigenvalues per basis vector |++>, |+->, |-+>, |-->.
constexpr double kMuProduct[4] = {+1.0, -1.0, -1.0, +1.0};

}  // namespace

double delta_ab(double coupling, const Smearing& a, const Smearing& b, Dim dim) {
    return coupling * coupling * smeared_symmetric(a, b, dim);
}

PairState evolve(double delta, const PairState& rho0) {
    rho0.validate();
    Eigen::Vector4cd d;
    for (int i = 0; i < 4; ++i) d(i) = std::exp(-kI * 0.5 * delta * kMuProduct[i]);
    PairState out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            out.rho(i, j) = d(i) * rho0.rho(i, j) * std::conj(d(j));
        }
    }
    return out;
}

QubitState reduce_a(const PairState& rho) {
    QubitState out;
    out.rho = partial_trace_b(rho.rho);
    return out;
}

Matrix2c state_change_a(double delta, const PairState& rho0) {
    const cplx f_minus = std::exp(-kI * delta) - 1.0;
    const cplx f_plus = std::exp(kI * delta) - 1.0;
    Matrix2c change = Matrix2c::Zero();
    change(0, 1) = f_minus * rho0.rho(0, 2) + f_plus * rho0.rho(1, 3);
    change(1, 0) = f_plus * rho0.rho(2, 0) + f_minus * rho0.rho(3, 1);
    return change;
}

double norm_estimator(double delta) { return std::abs(std::sin(0.5 * delta)); }

double arg_estimator(double delta) { return delta; }

// The report books the exchange with the whole switching window as the causal
// baseline curve and rides the echo-region phase on top of it: above the kink
// theta_c = lam^2 T/(2 pi L) and theta_r = lam^2/(2 pi), so theta_r/theta_c
// is exactly L/T and the modulus baseline is the total curve shifted by L.
// (The finer split of the baseline itself into directed halves lives in
// estimator_split.)
NonPertReport np_report(const SetupGeometry& setup, double coupling) {
    setup.validate();
    if (setup.dim != Dim::three_plus_one) {
        throw std::domain_error("nonpert reports cover the 3+1 echo setup only");
    }
    const EstimatorReport est = estimator_split(setup);
    NonPertReport rep;
    rep.setup = setup;
    rep.coupling = coupling;
    const double lam2 = coupling * coupling;
    rep.delta_causal = lam2 * est.total;
    rep.delta_retro = lam2 * est.retro;
    rep.delta_total = rep.delta_causal + rep.delta_retro;
    rep.theta_total = rep.delta_total;
    rep.theta_causal = rep.delta_causal;
    rep.theta_retro = rep.delta_retro;
    rep.n_total = norm_estimator(rep.delta_total);
    rep.n_causal = norm_estimator(rep.delta_causal);
    rep.shift = setup.separation;
    rep.period = lam2 > 0.0 ? 8.0 * M_PI * M_PI * setup.separation / lam2
                            : std::numeric_limits<double>::infinity();
    return rep;
}

NonPertReport np_split(const SetupGeometry& setup, double coupling) {
    setup.validate();
    if (!(setup.duration_a > 2.0 * setup.separation)) {
        throw std::domain_error("np_split: requires duration > 2L");
    }
    return np_report(setup, coupling);
}

bool coupling_tolerance(double coupling, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("coupling_tolerance: epsilon must be > 0");
    return coupling * coupling / (4.0 * M_PI) <= epsilon;
}

bool near_identity_window(double coupling, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("near_identity_window: epsilon must be > 0");
    const double phase = coupling * coupling / (4.0 * M_PI);
    const double n = std::round(phase / (2.0 * M_PI));
    if (n < 0.0) return phase < epsilon;
    return std::abs(phase - 2.0 * M_PI * n) < epsilon;
}

ResolutionReport resolution_report(double separation, double coupling) {
    if (!(separation > 0.0)) {
        throw std::invalid_argument("resolution_report: separation must be > 0");
    }
    ResolutionReport rep;
    rep.shift = separation;
    rep.period = coupling != 0.0
                     ? 8.0 * M_PI * M_PI * separation / (coupling * coupling)
                     : std::numeric_limits<double>::infinity();
    rep.discernibility = std::min(rep.shift, rep.period);
    return rep;
}

}  // namespace qcfield
