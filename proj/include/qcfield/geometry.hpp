#pragma once

#include <array>
#include <stdexcept>

namespace qcfield {

/// Ambient spacetime dimension (spatial part).
enum class Dim { one_plus_one = 1, three_plus_one = 3 };

inline int spatial_dims(Dim d) { return static_cast<int>(d); }

/// Event in Minkowski spacetime, natural units (c = 1).
/// Only the first `d` spatial components are meaningful.
struct SpacetimePoint {
    double t = 0.0;
    std::array<double, 3> x{};
    int d = 3;

    static SpacetimePoint line(double t, double x) { return {t, {x, 0.0, 0.0}, 1}; }
    static SpacetimePoint bulk(double t, double x, double y = 0.0, double z = 0.0) {
        return {t, {x, y, z}, 3};
    }
};

enum class CausalRelation {
    timelike_past,
    null_past,
    spacelike,
    null_future,
    timelike_future,
};

/// Classifies q relative to p under the flat metric. Null classification uses
/// exact floating-point equality of |dt| and |dx|; it is a measure-zero case
/// meant for exact inputs.
CausalRelation causal_relation(const SpacetimePoint& p, const SpacetimePoint& q);

/// Half-open time interval [lo, hi). Zero or negative extent means empty.
struct TimeInterval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi > lo ? hi - lo : 0.0; }
    bool empty() const { return hi <= lo; }
    bool contains(double t) const { return t >= lo && t < hi; }
};

double overlap_length(const TimeInterval& a, const TimeInterval& b);
TimeInterval shifted(const TimeInterval& w, double dt);
TimeInterval intersect(const TimeInterval& a, const TimeInterval& b);

/// Canonical two-detector configuration: two inertial, comoving systems a
/// distance `separation` apart. B switches on at t_b_on and stays coupled for
/// duration_a + 2*separation + extra_b; A switches on one light-crossing time
/// later and stays coupled for duration_a.
struct SetupGeometry {
    double separation = 1.0;  // L > 0
    double duration_a = 0.0;  // T >= 0
    double extra_b = 0.0;     // S >= 0, meaningful in 1+1 only
    double t_b_on = 0.0;
    Dim dim = Dim::three_plus_one;

    TimeInterval window_a() const;
    TimeInterval window_b() const;

    /// Throws std::invalid_argument on negative parameters or S != 0 in 3+1.
    void validate() const;
};

/// B's switching window split into the part that can signal A causally and
/// the remainder, which can only act on A through advanced propagation.
/// Boundary points sit in window_r by the half-open convention; the choice is
/// zero measure and does not affect any smeared quantity.
struct RegionSplit {
    TimeInterval window_c;
    TimeInterval window_r;
};

RegionSplit split_switching(const SetupGeometry& setup);

enum class SetupKind { fig2, fig4 };

/// fig2: 3+1 echo configuration (B coupled for T + 2L, S forced to 0).
/// fig4: 1+1 configuration with an extra future tail S on B.
SetupGeometry standard_setup(SetupKind kind, double separation, double duration,
                             double extra = 0.0, double t_b_on = 0.0);

}  // namespace qcfield
