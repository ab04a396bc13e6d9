#pragma once

#include <complex>
#include <functional>

namespace qcfield::num {

using cplx = std::complex<double>;

/// Theta with Theta(0) = 0. The estimator closed forms are continuous at the
/// kink, so the boundary value is unobservable; pinning it keeps splits exact.
inline double heaviside0(double x) { return x > 0.0 ? 1.0 : 0.0; }

/// (e^z - 1)/z with a series branch for small |z|.
cplx phi1(cplx z);

/// Integral of e^{i omega t} over [a, b], stable for omega -> 0.
cplx eint(double omega, double a, double b);

/// Integral of t^m e^{i omega t} over [a, b], m <= 12.
cplx moment_eint(int m, double omega, double a, double b);

/// Integral of e^{i pa v} (e^{i pb v} - 1)/(i pb) over [v0, v1], stable in
/// both phases including 0.
cplx ramp_phase_integral(double pa, double pb, double v0, double v1);

/// Integral over [p, q] of min(cap, max(0, c - u)) du: the clamped-ramp area
/// that the 1+1 step kernel reduces to.
double clamped_ramp_integral(double c, double cap, double p, double q);

struct AdaptiveResult {
    double value = 0.0;
    double error = 0.0;  // accumulated estimate
};

/// Composite adaptive Simpson: `panels` initial panels, each refined
/// recursively until the local Richardson estimate is below tol (absolute)
/// or max_depth is hit. Deterministic for fixed arguments.
AdaptiveResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                double tol, int panels, int max_depth = 40);

/// Fixed-order Gauss-Legendre panels for complex-valued analytic integrands.
/// Panel count should keep the per-panel phase modest; 16 nodes per panel.
cplx gauss_panels(const std::function<cplx(double)>& f, double a, double b, int panels);

}  // namespace qcfield::num
