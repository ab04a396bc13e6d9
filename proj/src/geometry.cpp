#include "qcfield/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qcfield {

CausalRelation causal_relation(const SpacetimePoint& p, const SpacetimePoint& q) {
    if (p.d != q.d) {
        throw std::invalid_argument("causal_relation: dimension mismatch (" +
                                    std::to_string(p.d) + " vs " + std::to_string(q.d) + ")");
    }
    const double dt = q.t - p.t;
    double r2 = 0.0;
    for (int i = 0; i < p.d; ++i) {
        const double dx = q.x[i] - p.x[i];
        r2 += dx * dx;
    }
    const double r = std::sqrt(r2);
    const double adt = std::abs(dt);
    if (adt < r) return CausalRelation::spacelike;
    if (adt == r) return dt >= 0.0 ? CausalRelation::null_future : CausalRelation::null_past;
    return dt > 0.0 ? CausalRelation::timelike_future : CausalRelation::timelike_past;
}

double overlap_length(const TimeInterval& a, const TimeInterval& b) {
    return std::max(0.0, std::min(a.hi, b.hi) - std::max(a.lo, b.lo));
}

TimeInterval shifted(const TimeInterval& w, double dt) { return {w.lo + dt, w.hi + dt}; }

TimeInterval intersect(const TimeInterval& a, const TimeInterval& b) {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

TimeInterval SetupGeometry::window_a() const {
    return {t_b_on + separation, t_b_on + separation + duration_a};
}

TimeInterval SetupGeometry::window_b() const {
    return {t_b_on, t_b_on + duration_a + 2.0 * separation + extra_b};
}

void SetupGeometry::validate() const {
    if (!(separation > 0.0)) throw std::invalid_argument("setup: separation must be > 0");
    if (duration_a < 0.0) throw std::invalid_argument("setup: duration must be >= 0");
    if (extra_b < 0.0) throw std::invalid_argument("setup: extra duration must be >= 0");
    if (dim == Dim::three_plus_one && extra_b != 0.0) {
        throw std::invalid_argument("setup: extra duration is a 1+1 parameter; must be 0 in 3+1");
    }
    if (!std::isfinite(separation) || !std::isfinite(duration_a) || !std::isfinite(extra_b) ||
        !std::isfinite(t_b_on)) {
        throw std::invalid_argument("setup: parameters must be finite");
    }
}

RegionSplit split_switching(const SetupGeometry& setup) {
    setup.validate();
    const double t0 = setup.t_b_on;
    const double t_split = t0 + setup.duration_a;
    return {
        {t0, t_split},
        {t_split, t_split + 2.0 * setup.separation + setup.extra_b},
    };
}

SetupGeometry standard_setup(SetupKind kind, double separation, double duration, double extra,
                             double t_b_on) {
    SetupGeometry setup;
    setup.separation = separation;
    setup.duration_a = duration;
    setup.extra_b = (kind == SetupKind::fig2) ? 0.0 : extra;
    setup.t_b_on = t_b_on;
    setup.dim = (kind == SetupKind::fig2) ? Dim::three_plus_one : Dim::one_plus_one;
    setup.validate();
    return setup;
}

}  // namespace qcfield
