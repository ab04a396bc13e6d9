#pragma once

#include <optional>

#include "qcfield/qubit.hpp"

namespace qcfield {

enum class Model { qc, qft };

enum class GeometryClass {
    no_retro_subregion,      // every sub-window of B either signals A or hears nothing from A
    retro_subregion_inert,   // a retro-capable sub-window exists but A's state ignores it
    retro_subregion_active,  // A's state depends on a region it cannot hear from
};

struct AuditVerdict {
    Model model = Model::qc;
    GeometryClass geometry_class = GeometryClass::no_retro_subregion;
    /// Operator norm of the state dependence on the retro sub-window; clamped
    /// to 0 unless the class is retro_subregion_active.
    double witness_norm = 0.0;
    std::optional<TimeInterval> retro_window;
};

/// Largest suffix [u, b_off) of B's switching window with G_R(a, restricted) = 0
/// and G_R(restricted, a) != 0: the part of B that hears A but cannot answer.
/// The search scans grid_n candidate boundaries and refines by bisection;
/// restricting to suffix intervals is sound for these worldline geometries
/// (earlier sub-windows never satisfy the second condition) but is a
/// sound-not-complete procedure for arbitrary region shapes.
/// Zero tests use a 1e-12 threshold scaled by the unrestricted propagators.
std::optional<TimeInterval> find_retro_subregion(const Smearing& a, const Smearing& b, Dim dim,
                                                 int grid_n = 64);

/// Operator norm of rho_A(full B) - rho_A(B restricted to the complement of
/// the retro sub-window); 0 when no sub-window exists. The qc branch uses the
/// second-order change (or the exact gapless evolution when both gaps are 0),
/// the qft branch the retarded-only signal term.
double witness(Model model, const Detector& det_a, const Detector& det_b, Dim dim,
               int grid_n = 64);

AuditVerdict audit(Model model, const Detector& det_a, const Detector& det_b, Dim dim,
                   int grid_n = 64);

/// One-way configuration used in the audits: A coupled on [0, duration_a] and
/// B on [duration_a, duration_a + duration_b], a distance `separation` apart.
/// B hears A but cannot signal back, in either dimension.
SmearingPair one_way_smearings(double separation, double duration_a, double duration_b);

}  // namespace qcfield
