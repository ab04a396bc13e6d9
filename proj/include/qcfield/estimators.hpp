#pragma once

#include <utility>

#include "qcfield/smearing.hpp"

namespace qcfield {

/// Signalling estimator and its causal/retrocausal split for a canonical
/// setup. total = causal + retro holds to machine precision; ratio fields are
/// NaN when the corresponding denominator vanishes. The geometry is carried
/// along so serialized rows are self-describing.
struct EstimatorReport {
    double total = 0.0;
    double causal = 0.0;
    double retro = 0.0;
    double ratio_retro_causal = 0.0;
    double ratio_retro_total = 0.0;
    SetupGeometry setup;
};

/// C(a, b) = Delta(a, b): the smeared symmetric propagator, which bounds the
/// leading-order state change of the receiving detector.
double signalling_estimator(const Smearing& a, const Smearing& b, Dim dim);

/// Closed forms for the canonical geometries:
///   3+1: total = T/(2 pi L),
///        causal = [T + (T - 2L) H(T - 2L)] / (4 pi L),
///        retro  = [T + (2L - T) H(T - 2L)] / (4 pi L);
///   1+1: total = T(T + S)/2,
///        causal = T^2/4 + (T - 2L)^2 H(T - 2L)/4,
///        retro  = T(T + 2S)/4 - (T - 2L)^2 H(T - 2L)/4,
/// with H the step function (H(0) = 0; all three pieces are continuous at
/// T = 2L, so the choice is unobservable).
EstimatorReport estimator_split(const SetupGeometry& setup);

/// (retro/causal, retro/total) from the large-T closed forms:
///   3+1: (L/(T - L), L/T);
///   1+1: ((T(2L+S) - 2L^2)/(L^2 + (L-T)^2), (T(2L+S) - 2L^2)/(T(T+S))).
/// Only valid for T > 2L; throws std::domain_error otherwise rather than
/// extrapolating.
std::pair<double, double> ratios(const SetupGeometry& setup);

struct ToleranceTime {
    double min_duration = 0.0;   // L / epsilon
    bool ratio_domain_ok = false;  // min_duration > 2L, where the ratio law applies
};

/// Minimal interaction time beyond which retro/total < epsilon in 3+1.
/// Requires 0 < epsilon < 1.
ToleranceTime tolerance_time(double epsilon, double separation);

/// Leading large-T coefficient (2L + S)/T of both 1+1 ratios; the exact
/// ratios deviate from it at O(1/T^2) absolute. Throws for T = 0.
double asymptotic_ratio_1p1(const SetupGeometry& setup);

}  // namespace qcfield
