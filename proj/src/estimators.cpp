#include "qcfield/estimators.hpp"

#include <cmath>
#include <limits>

#include "qcfield/numerics.hpp"
#include "qcfield/propagators.hpp"

namespace qcfield {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double safe_ratio(double num, double den) { return den != 0.0 ? num / den : kNaN; }

}  // namespace

double signalling_estimator(const Smearing& a, const Smearing& b, Dim dim) {
    return smeared_symmetric(a, b, dim);
}

EstimatorReport estimator_split(const SetupGeometry& setup) {
    setup.validate();
    const double len = setup.separation;
    const double dur = setup.duration_a;
    const double tail = setup.extra_b;
    const double step = num::heaviside0(dur - 2.0 * len);

    EstimatorReport report;
    report.setup = setup;
    if (setup.dim == Dim::three_plus_one) {
        const double denom = 4.0 * M_PI * len;
        report.total = dur / (2.0 * M_PI * len);
        report.causal = (dur + (dur - 2.0 * len) * step) / denom;
        report.retro = (dur + (2.0 * len - dur) * step) / denom;
    } else {
        const double kink = (dur - 2.0 * len) * (dur - 2.0 * len) * step / 4.0;
        report.total = dur * (dur + tail) / 2.0;
        report.causal = dur * dur / 4.0 + kink;
        report.retro = dur * (dur + 2.0 * tail) / 4.0 - kink;
    }
    report.ratio_retro_causal = safe_ratio(report.retro, report.causal);
    report.ratio_retro_total = safe_ratio(report.retro, report.total);
    return report;
}

std::pair<double, double> ratios(const SetupGeometry& setup) {
    setup.validate();
    const double len = setup.separation;
    const double dur = setup.duration_a;
    const double tail = setup.extra_b;
    if (!(dur > 2.0 * len)) {
        throw std::domain_error("ratios: closed forms hold for durations above 2L only");
    }
    if (setup.dim == Dim::three_plus_one) {
        return {len / (dur - len), len / dur};
    }
    const double num = dur * (2.0 * len + tail) - 2.0 * len * len;
    const double dl = len - dur;
    return {num / (len * len + dl * dl), num / (dur * (dur + tail))};
}

ToleranceTime tolerance_time(double epsilon, double separation) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("tolerance_time: epsilon must lie in (0, 1)");
    }
    if (!(separation > 0.0)) throw std::invalid_argument("tolerance_time: separation must be > 0");
    const double min_duration = separation / epsilon;
    return {min_duration, min_duration > 2.0 * separation};
}

double asymptotic_ratio_1p1(const SetupGeometry& setup) {
    setup.validate();
    if (setup.dim != Dim::one_plus_one) {
        throw std::invalid_argument("asymptotic_ratio_1p1: 1+1 geometry required");
    }
    if (setup.duration_a == 0.0) {
        throw std::domain_error("asymptotic_ratio_1p1: duration must be > 0");
    }
    return (2.0 * setup.separation + setup.extra_b) / setup.duration_a;
}

}  // namespace qcfield
