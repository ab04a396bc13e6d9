#pragma once

#include <variant>

#include "qcfield/geometry.hpp"

namespace qcfield {

/// Sharp on/off coupling on [t_on, t_off].
struct WindowSwitching {
    double t_on = 0.0;
    double t_off = 0.0;
};

/// exp(-(t - center)^2 / (2 width^2)), width > 0.
struct GaussianSwitching {
    double center = 0.0;
    double width = 1.0;
};

/// C-infinity window: product of two logistic edges of scale edge_width.
/// Used as the smooth stand-in for WindowSwitching wherever time derivatives
/// of the coupling are needed.
struct SmoothWindowSwitching {
    double t_on = 0.0;
    double t_off = 0.0;
    double edge_width = 1e-3;
};

using Switching = std::variant<WindowSwitching, GaussianSwitching, SmoothWindowSwitching>;

struct PointlikeProfile {
    std::array<double, 3> position{};
};

struct GaussianProfile {
    std::array<double, 3> center{};
    double width = 1.0;
};

using SpatialProfile = std::variant<PointlikeProfile, GaussianProfile>;

/// Spacetime localization of a detector: switching(t) * spatial(x).
struct Smearing {
    Switching switching{WindowSwitching{}};
    SpatialProfile spatial{PointlikeProfile{}};

    static Smearing pointlike_window(double x, double t_on, double t_off);
    static Smearing pointlike_gaussian(double x, double center, double width);
    static Smearing pointlike_smooth_window(double x, double t_on, double t_off,
                                            double edge_width);

    bool has_window_switching() const;
    bool is_pointlike() const;

    /// Switching window; throws std::logic_error for non-window switchings.
    TimeInterval window() const;

    /// chi(t).
    double switching_value(double t) const;

    /// Exact support for windows, +/- 10 width for gaussians.
    TimeInterval switching_support() const;

    /// Same smearing with the switching clipped to `w` (window switchings only).
    Smearing restricted_to(const TimeInterval& w) const;

    void validate() const;
};

double spatial_distance(const Smearing& a, const Smearing& b, Dim dim);

enum class KernelKind { retarded, advanced, symmetric, causal };

struct KernelSpec {
    KernelKind kind = KernelKind::retarded;
    Dim dim = Dim::three_plus_one;
};

/// Pointlike/window smearings realizing a canonical setup: A at x = 0,
/// B at x = separation.
struct SmearingPair {
    Smearing a;
    Smearing b;
};

SmearingPair setup_smearings(const SetupGeometry& setup);

}  // namespace qcfield
