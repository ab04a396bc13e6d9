#include "qcfield/gme.hpp"

#include <cmath>
#include <stdexcept>

namespace qcfield::gme {

double effective_coupling(double mass1_kg, double mass2_kg) {
    if (mass1_kg < 0.0 || mass2_kg < 0.0) {
        throw std::invalid_argument("effective_coupling: masses must be >= 0");
    }
    return M_PI * kGravitationalConstant * mass1_kg * mass2_kg / (kHbar * kSpeedOfLight);
}

double natural_separation_s(const GmeParameters& params) {
    return params.separation_m / kSpeedOfLight;
}

GmeReport regime_report(const GmeParameters& params) {
    if (!(params.mass1_kg > 0.0) || !(params.mass2_kg > 0.0) || !(params.separation_m > 0.0) ||
        !(params.duration_s > 0.0) || !(params.resolution_s > 0.0)) {
        throw std::invalid_argument("regime_report: physical parameters must be > 0");
    }
    if (!(params.epsilon > 0.0 && params.epsilon < 1.0)) {
        throw std::invalid_argument("regime_report: epsilon must lie in (0, 1)");
    }
    GmeReport rep;
    rep.lambda_sq = effective_coupling(params.mass1_kg, params.mass2_kg);
    const double light_crossing = natural_separation_s(params);
    rep.t_over_lc = params.duration_s / light_crossing;
    rep.required_resolution_s = light_crossing;
    const bool ratio_ok = light_crossing / params.duration_s < params.epsilon;
    const bool coupling_ok = rep.lambda_sq / (4.0 * M_PI) < params.epsilon;
    const bool resolution_ok = params.resolution_s > rep.required_resolution_s;
    rep.qc_indistinguishable = ratio_ok && coupling_ok && resolution_ok;
    return rep;
}

}  // namespace qcfield::gme
