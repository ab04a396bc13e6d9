#pragma once

namespace qcfield::gme {

// Pinned physical constants (SI); fixed literals keep verdicts reproducible.
inline constexpr double kGravitationalConstant = 6.674e-11;  // m^3 kg^-1 s^-2
inline constexpr double kHbar = 1.0546e-34;                  // J s
inline constexpr double kSpeedOfLight = 2.998e8;             // m / s

/// Experimental parameters of a gravity-mediated-entanglement setup, SI units.
struct GmeParameters {
    double mass1_kg = 0.0;
    double mass2_kg = 0.0;
    double separation_m = 0.0;
    double duration_s = 0.0;
    double epsilon = 0.0;       // retrocausality tolerance, in (0, 1)
    double resolution_s = 0.0;  // experimental time resolution
};

struct GmeReport {
    double lambda_sq = 0.0;              // dimensionless effective coupling product
    double t_over_lc = 0.0;              // T / (L/c)
    double required_resolution_s = 0.0;  // light-crossing time L/c
    bool qc_indistinguishable = false;
};

/// Dimensionless effective coupling product pi G m1 m2 / (hbar c) of two
/// masses coupled through the linearized gravitational interaction.
double effective_coupling(double mass1_kg, double mass2_kg);

/// Conversion to natural units (c = 1, seconds): separation in light-seconds.
double natural_separation_s(const GmeParameters& params);

/// Regime verdict: the direct-coupling description is experimentally safe iff
/// (L/c)/T < epsilon (perturbative ratio), lambda_sq/(4 pi) < epsilon
/// (phase-shift scale) and the available resolution is coarser than the
/// light-crossing time.
GmeReport regime_report(const GmeParameters& params);

}  // namespace qcfield::gme
