#include "qcfield/smearing.hpp"

#include <cmath>

namespace qcfield {

namespace {

double logistic(double u) { return 0.5 * (1.0 + std::tanh(u)); }

}  // namespace

Smearing Smearing::pointlike_window(double x, double t_on, double t_off) {
    Smearing s;
    s.switching = WindowSwitching{t_on, t_off};
    s.spatial = PointlikeProfile{{x, 0.0, 0.0}};
    s.validate();
    return s;
}

Smearing Smearing::pointlike_gaussian(double x, double center, double width) {
    Smearing s;
    s.switching = GaussianSwitching{center, width};
    s.spatial = PointlikeProfile{{x, 0.0, 0.0}};
    s.validate();
    return s;
}

Smearing Smearing::pointlike_smooth_window(double x, double t_on, double t_off,
                                           double edge_width) {
    Smearing s;
    s.switching = SmoothWindowSwitching{t_on, t_off, edge_width};
    s.spatial = PointlikeProfile{{x, 0.0, 0.0}};
    s.validate();
    return s;
}

bool Smearing::has_window_switching() const {
    return std::holds_alternative<WindowSwitching>(switching);
}

bool Smearing::is_pointlike() const {
    return std::holds_alternative<PointlikeProfile>(spatial);
}

TimeInterval Smearing::window() const {
    if (const auto* w = std::get_if<WindowSwitching>(&switching)) return {w->t_on, w->t_off};
    throw std::logic_error("smearing: switching is not a sharp window");
}

double Smearing::switching_value(double t) const {
    if (const auto* w = std::get_if<WindowSwitching>(&switching)) {
        return (t >= w->t_on && t < w->t_off) ? 1.0 : 0.0;
    }
    if (const auto* g = std::get_if<GaussianSwitching>(&switching)) {
        const double u = (t - g->center) / g->width;
        return std::exp(-0.5 * u * u);
    }
    const auto& sw = std::get<SmoothWindowSwitching>(switching);
    return logistic((t - sw.t_on) / sw.edge_width) * logistic((sw.t_off - t) / sw.edge_width);
}

TimeInterval Smearing::switching_support() const {
    if (const auto* w = std::get_if<WindowSwitching>(&switching)) return {w->t_on, w->t_off};
    if (const auto* g = std::get_if<GaussianSwitching>(&switching)) {
        return {g->center - 10.0 * g->width, g->center + 10.0 * g->width};
    }
    const auto& sw = std::get<SmoothWindowSwitching>(switching);
    return {sw.t_on - 20.0 * sw.edge_width, sw.t_off + 20.0 * sw.edge_width};
}

Smearing Smearing::restricted_to(const TimeInterval& w) const {
    if (const auto* win = std::get_if<WindowSwitching>(&switching)) {
        Smearing out = *this;
        const double lo = std::max(win->t_on, w.lo);
        const double hi = std::min(win->t_off, w.hi);
        out.switching = WindowSwitching{lo, std::max(lo, hi)};
        return out;
    }
    throw std::logic_error("smearing: only window switchings can be restricted");
}

void Smearing::validate() const {
    if (const auto* w = std::get_if<WindowSwitching>(&switching)) {
        if (w->t_off < w->t_on) throw std::invalid_argument("smearing: t_off < t_on");
    }
    if (const auto* g = std::get_if<GaussianSwitching>(&switching)) {
        if (!(g->width > 0.0)) throw std::invalid_argument("smearing: switching width must be > 0");
    }
    if (const auto* sw = std::get_if<SmoothWindowSwitching>(&switching)) {
        if (sw->t_off < sw->t_on) throw std::invalid_argument("smearing: t_off < t_on");
        if (!(sw->edge_width > 0.0)) {
            throw std::invalid_argument("smearing: edge width must be > 0");
        }
    }
    if (const auto* g = std::get_if<GaussianProfile>(&spatial)) {
        if (!(g->width > 0.0)) throw std::invalid_argument("smearing: spatial width must be > 0");
    }
}

double spatial_distance(const Smearing& a, const Smearing& b, Dim dim) {
    auto position = [](const Smearing& s) -> const std::array<double, 3>& {
        if (const auto* p = std::get_if<PointlikeProfile>(&s.spatial)) return p->position;
        throw std::invalid_argument("smearing: spatial distance requires pointlike profiles");
    };
    const auto& xa = position(a);
    const auto& xb = position(b);
    double r2 = 0.0;
    for (int i = 0; i < spatial_dims(dim); ++i) {
        const double dx = xa[i] - xb[i];
        r2 += dx * dx;
    }
    return std::sqrt(r2);
}

SmearingPair setup_smearings(const SetupGeometry& setup) {
    setup.validate();
    const TimeInterval wa = setup.window_a();
    const TimeInterval wb = setup.window_b();
    return {
        Smearing::pointlike_window(0.0, wa.lo, wa.hi),
        Smearing::pointlike_window(setup.separation, wb.lo, wb.hi),
    };
}

}  // namespace qcfield
