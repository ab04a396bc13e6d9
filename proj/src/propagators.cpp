#include "qcfield/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qcfield/numerics.hpp"

namespace qcfield {

namespace {

constexpr double kFourPi = 4.0 * M_PI;

bool closed_form_ready(const Smearing& a, const Smearing& b) {
    return a.is_pointlike() && b.is_pointlike() && a.has_window_switching() &&
           b.has_window_switching();
}

void require_pointlike(const Smearing& a, const Smearing& b) {
    if (!a.is_pointlike() || !b.is_pointlike()) {
        throw std::invalid_argument(
            "smeared propagators support pointlike spatial profiles only");
    }
}

// G_R(a, b) for window switchings: the kernel support t = t' + L collapses the
// double integral to an interval overlap in 3+1 and to the area of the
// region {t in A, t' in B, t - t' > L} in 1+1.
double retarded_closed(const Smearing& a, const Smearing& b, Dim dim) {
    const double sep = spatial_distance(a, b, dim);
    const TimeInterval wa = a.window();
    const TimeInterval wb = b.window();
    if (dim == Dim::three_plus_one) {
        if (sep <= 0.0) {
            throw std::invalid_argument(
                "smeared_retarded: coincident pointlike detectors are singular in 3+1");
        }
        return overlap_length(wa, shifted(wb, sep)) / (kFourPi * sep);
    }
    // Inner extent in t at fixed t' is min(T_a, max(0, (wa.hi - L) - t')).
    return 0.5 * num::clamped_ramp_integral(wa.hi - sep, wa.length(), wb.lo, wb.hi);
}

// Integral of chi over [from, +inf), per switching type.
double switching_tail(const Smearing& s, double from, double tol) {
    if (const auto* w = std::get_if<WindowSwitching>(&s.switching)) {
        return std::max(0.0, w->t_off - std::max(w->t_on, from));
    }
    if (const auto* g = std::get_if<GaussianSwitching>(&s.switching)) {
        const double u = (from - g->center) / (g->width * M_SQRT2);
        return g->width * std::sqrt(M_PI / 2.0) * std::erfc(u);
    }
    const TimeInterval supp = s.switching_support();
    if (from >= supp.hi) return 0.0;
    return num::adaptive_simpson([&](double t) { return s.switching_value(t); },
                                 std::max(from, supp.lo), supp.hi, tol, 8)
        .value;
}

Smearing smoothed(const Smearing& s, double h) {
    if (h <= 0.0 || !s.has_window_switching()) return s;
    const TimeInterval w = s.window();
    Smearing out = s;
    out.switching = SmoothWindowSwitching{w.lo, w.hi, h};
    return out;
}

struct LevelResult {
    double value = 0.0;
    double quad_error = 0.0;
};

LevelResult oracle_retarded_level(const Smearing& a, const Smearing& b, Dim dim, double h,
                                  int panels, const OracleOptions& opts) {
    const double sep = spatial_distance(a, b, dim);
    const Smearing ea = smoothed(a, h);
    const Smearing eb = smoothed(b, h);
    if (dim == Dim::three_plus_one) {
        if (sep <= 0.0) {
            throw std::invalid_argument("quadrature_oracle: zero separation is singular in 3+1");
        }
        // Lightcone support: integrate chi_a(t) chi_b(t - L) over a padded range.
        TimeInterval range =
            intersect(ea.switching_support(), shifted(eb.switching_support(), sep));
        if (range.empty()) return {};
        const double pad = 0.01 * range.length() + 4.0 * h + 1e-12;
        range = {range.lo - pad, range.hi + pad};
        auto f = [&](double t) {
            return ea.switching_value(t) * eb.switching_value(t - sep);
        };
        const auto q = num::adaptive_simpson(f, range.lo, range.hi, opts.quad_tolerance, panels,
                                             opts.max_depth);
        return {q.value / (kFourPi * sep), q.error / (kFourPi * sep)};
    }
    // 1+1: timelike support. Outer integral over B's time, inner over the part
    // of A's switching more than L to the future; the inner pass is itself a
    // small quadrature except where a closed tail is available.
    const TimeInterval sb = eb.switching_support();
    const TimeInterval sa = ea.switching_support();
    const double upper = std::min(sb.hi, sa.hi - sep);
    if (upper <= sb.lo) return {};
    auto f = [&](double tp) {
        return eb.switching_value(tp) * switching_tail(ea, tp + sep, opts.quad_tolerance);
    };
    const auto q =
        num::adaptive_simpson(f, sb.lo, upper, opts.quad_tolerance, panels, opts.max_depth);
    return {0.5 * q.value, 0.5 * q.error};
}

struct OracleAccumulator {
    double value = 0.0;
    double error = 0.0;
};

OracleAccumulator oracle_retarded(const Smearing& a, const Smearing& b, Dim dim, int resolution,
                                  const OracleOptions& opts) {
    const bool any_window = a.has_window_switching() || b.has_window_switching();
    // Edge smoothing targets the lightcone kernel's step discontinuities; the
    // 1+1 reduction is already continuous, so it integrates the exact windows.
    double h0 = (dim == Dim::three_plus_one) ? opts.smoothing_width : 0.0;
    if (h0 < 0.0 && any_window) {
        double min_len = std::numeric_limits<double>::infinity();
        for (const Smearing* s : {&a, &b}) {
            if (s->has_window_switching()) min_len = std::min(min_len, s->window().length());
        }
        if (min_len <= 0.0) return {};  // degenerate window, zero measure
        h0 = min_len / 1000.0;
    }
    if (h0 < 0.0) h0 = 0.0;
    const int levels = (any_window && h0 > 0.0) ? std::max(1, opts.richardson_levels) : 1;
    std::vector<double> values;
    double quad_error = 0.0;
    for (int k = 0; k < levels; ++k) {
        const double h = (h0 > 0.0) ? h0 / static_cast<double>(1 << k) : 0.0;
        // fixed seeding; the adaptive pass resolves the sharpening edges
        const auto lvl = oracle_retarded_level(a, b, dim, h, resolution, opts);
        values.push_back(lvl.value);
        quad_error = std::max(quad_error, lvl.quad_error);
    }
    if (values.size() == 1) return {values[0], quad_error + opts.quad_tolerance};
    // Extrapolate h -> 0 assuming an error series in integer powers of h.
    auto extrapolate = [&](int n) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            double w = 1.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const double ri = 1.0 / static_cast<double>(1 << i);
                const double rj = 1.0 / static_cast<double>(1 << j);
                w *= rj / (rj - ri);
            }
            acc += w * values[i];
        }
        return acc;
    };
    const double full = extrapolate(static_cast<int>(values.size()));
    const double prev = extrapolate(static_cast<int>(values.size()) - 1);
    return {full, std::abs(full - prev) + quad_error + opts.quad_tolerance};
}

}  // namespace

double smeared_retarded(const Smearing& a, const Smearing& b, Dim dim) {
    a.validate();
    b.validate();
    require_pointlike(a, b);
    if (closed_form_ready(a, b)) return retarded_closed(a, b, dim);
    return quadrature_oracle(a, b, {KernelKind::retarded, dim}, 2048).value;
}

double smeared_advanced(const Smearing& a, const Smearing& b, Dim dim) {
    return smeared_retarded(b, a, dim);
}

double smeared_symmetric(const Smearing& a, const Smearing& b, Dim dim) {
    return smeared_retarded(a, b, dim) + smeared_retarded(b, a, dim);
}

double smeared_causal(const Smearing& a, const Smearing& b, Dim dim) {
    return smeared_retarded(a, b, dim) - smeared_retarded(b, a, dim);
}

double smeared(const KernelSpec& spec, const Smearing& a, const Smearing& b) {
    switch (spec.kind) {
        case KernelKind::retarded: return smeared_retarded(a, b, spec.dim);
        case KernelKind::advanced: return smeared_advanced(a, b, spec.dim);
        case KernelKind::symmetric: return smeared_symmetric(a, b, spec.dim);
        case KernelKind::causal: return smeared_causal(a, b, spec.dim);
    }
    throw std::logic_error("smeared: unknown kernel kind");
}

OracleResult quadrature_oracle(const Smearing& a, const Smearing& b, const KernelSpec& spec,
                               int resolution, const OracleOptions& opts) {
    a.validate();
    b.validate();
    require_pointlike(a, b);
    if (resolution < 16) throw std::invalid_argument("quadrature_oracle: resolution must be >= 16");

    OracleAccumulator acc;
    switch (spec.kind) {
        case KernelKind::retarded:
            acc = oracle_retarded(a, b, spec.dim, resolution, opts);
            break;
        case KernelKind::advanced:
            acc = oracle_retarded(b, a, spec.dim, resolution, opts);
            break;
        case KernelKind::symmetric:
        case KernelKind::causal: {
            const auto fwd = oracle_retarded(a, b, spec.dim, resolution, opts);
            const auto rev = oracle_retarded(b, a, spec.dim, resolution, opts);
            acc.value = (spec.kind == KernelKind::symmetric) ? fwd.value + rev.value
                                                             : fwd.value - rev.value;
            acc.error = fwd.error + rev.error;
            break;
        }
    }
    const double tol = 1e-5 * (1.0 + std::abs(acc.value));
    if (!(acc.error <= tol)) {
        throw std::runtime_error("quadrature_oracle: did not converge (error estimate " +
                                 std::to_string(acc.error) + ")");
    }
    return {acc.value, acc.error};
}

double sourced_field(const Smearing& source, const SpacetimePoint& p, Dim dim) {
    source.validate();
    if (dim != Dim::one_plus_one) {
        throw std::invalid_argument("sourced_field: implemented for 1+1 only");
    }
    if (source.has_window_switching()) {
        throw std::invalid_argument(
            "sourced_field: window switchings have distributional derivatives; "
            "use a gaussian or smooth-window profile");
    }
    const auto* prof = std::get_if<PointlikeProfile>(&source.spatial);
    if (!prof) throw std::invalid_argument("sourced_field: pointlike source required");
    const double r = std::abs(p.x[0] - prof->position[0]);
    const TimeInterval supp = source.switching_support();
    const double upper = p.t - r;
    if (upper <= supp.lo) return 0.0;
    const auto q = num::adaptive_simpson([&](double t) { return source.switching_value(t); },
                                         supp.lo, std::min(upper, supp.hi), 1e-12, 64);
    return 0.5 * q.value;
}

HdiffResult hdiff(double timescale, const Smearing& source, const HdiffOptions& opts, Dim dim) {
    source.validate();
    if (dim != Dim::one_plus_one) throw std::invalid_argument("hdiff: implemented for 1+1 only");
    if (!(timescale > 0.0)) throw std::invalid_argument("hdiff: timescale must be > 0");
    const auto* g = std::get_if<GaussianSwitching>(&source.switching);
    if (!g) throw std::invalid_argument("hdiff: gaussian switching shape required");

    double x_src = 0.0;
    double spatial_width = 0.0;
    if (const auto* p = std::get_if<PointlikeProfile>(&source.spatial)) {
        x_src = p->position[0];
    } else {
        const auto& gp = std::get<GaussianProfile>(source.spatial);
        x_src = gp.center[0];
        spatial_width = gp.width;
    }

    double box = opts.box_halfwidth;
    if (box <= 0.0) box = 10.0 + 8.0 * spatial_width;
    if (spatial_width > 0.0 && box < 8.0 * spatial_width) {
        throw std::invalid_argument("hdiff: box too small, source density reaches the boundary");
    }

    // Slow-switching regime: the field tracks the instantaneous static
    // potential of the source, phi(t, x) = chi(t) g(x) with g'' = -F.
    const double width_t = g->width * timescale;
    auto chi = [&](double t) {
        const double u = (t - g->center) / width_t;
        return std::exp(-0.5 * u * u);
    };
    auto static_potential = [&](double x) {
        if (spatial_width == 0.0) return -0.5 * std::abs(x - x_src);
        // closed form of -1/2 * integral of |x - x'| exp(-(x'-mu)^2/(2 s^2))
        const double d = x - x_src;
        const double s = spatial_width;
        return -0.5 * (std::sqrt(2.0 * M_PI) * s * d * std::erf(d / (s * M_SQRT2)) +
                       2.0 * s * s * std::exp(-0.5 * d * d / (s * s)));
    };

    const double t_eval = g->center + opts.eval_phase * width_t;
    const double dt = width_t / 1000.0;
    const double c0 = chi(t_eval);
    const double cp = chi(t_eval + dt);
    const double cm = chi(t_eval - dt);
    const double d1 = (cp - cm) / (2.0 * dt);
    const double d2 = (cp - 2.0 * c0 + cm) / (dt * dt);

    const auto g2 = num::adaptive_simpson(
        [&](double x) {
            const double v = static_potential(x);
            return v * v;
        },
        x_src - box, x_src + box, 1e-12, std::max(16, opts.resolution / 64));

    return {0.5 * (d1 * d1 - c0 * d2) * g2.value, box, timescale};
}

}  // namespace qcfield
