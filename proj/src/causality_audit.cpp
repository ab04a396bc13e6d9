#include "qcfield/causality_audit.hpp"

#include <cmath>

#include "qcfield/dynamics_nonpert.hpp"
#include "qcfield/dynamics_pert.hpp"
#include "qcfield/propagators.hpp"

namespace qcfield {

namespace {

// State-equality tolerance for the verdict.
constexpr double kWitnessTol = 1e-10;

double zero_threshold(const Smearing& a, const Smearing& b, Dim dim) {
    const double scale =
        std::abs(smeared_retarded(a, b, dim)) + std::abs(smeared_retarded(b, a, dim));
    return 1e-12 * scale + 1e-300;
}

}  // namespace

std::optional<TimeInterval> find_retro_subregion(const Smearing& a, const Smearing& b, Dim dim,
                                                 int grid_n) {
    a.validate();
    b.validate();
    if (grid_n < 16) throw std::invalid_argument("find_retro_subregion: grid_n must be >= 16");
    if (!b.has_window_switching()) {
        throw std::invalid_argument("find_retro_subregion: window switching required for B");
    }
    const TimeInterval wb = b.window();
    if (wb.empty()) return std::nullopt;
    const double tol = zero_threshold(a, b, dim);

    // Candidate sub-windows are suffixes [u, wb.hi): the silent-but-listening
    // part of B always sits at the late end for these comoving worldlines.
    auto hears_nothing_from = [&](double u) {
        const Smearing restricted = b.restricted_to({u, wb.hi});
        return std::abs(smeared_retarded(a, restricted, dim)) <= tol;
    };

    double u_star = wb.hi;
    if (hears_nothing_from(wb.lo)) {
        u_star = wb.lo;
    } else {
        // First grid point where the restricted signal to A vanishes, refined
        // by bisection on the monotone suffix family.
        const double h = wb.length() / grid_n;
        int first_zero = -1;
        for (int i = 1; i <= grid_n; ++i) {
            if (hears_nothing_from(wb.lo + i * h)) {
                first_zero = i;
                break;
            }
        }
        if (first_zero < 0) return std::nullopt;
        double lo = wb.lo + (first_zero - 1) * h;
        double hi = wb.lo + first_zero * h;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (hears_nothing_from(mid) ? hi : lo) = mid;
        }
        u_star = hi;
    }

    const TimeInterval region{u_star, wb.hi};
    const Smearing restricted = b.restricted_to(region);
    if (std::abs(smeared_retarded(restricted, a, dim)) <= tol) return std::nullopt;
    return region;
}

double witness(Model model, const Detector& det_a, const Detector& det_b, Dim dim, int grid_n) {
    det_a.validate();
    det_b.validate();
    const auto region = find_retro_subregion(det_a.smearing, det_b.smearing, dim, grid_n);
    if (!region) return 0.0;

    const TimeInterval wb = det_b.smearing.window();
    Detector b_rest = det_b;
    b_rest.smearing = det_b.smearing.restricted_to({wb.lo, region->lo});

    Matrix2c diff;
    if (model == Model::qft) {
        diff = qft_signal_change(det_a, det_b, dim) - qft_signal_change(det_a, b_rest, dim);
    } else if (det_a.gap == 0.0 && det_b.gap == 0.0) {
        // Gapless pair: compare the exact evolutions.
        Matrix4c joint_energy = Matrix4c::Zero();
        const Matrix2c ra = det_a.initial_matrix();
        const Matrix2c rb = det_b.initial_matrix();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l)
                        joint_energy(2 * i + k, 2 * j + l) = ra(i, j) * rb(k, l);
        PairState rho0;
        rho0.rho = energy_to_monopole_basis(joint_energy);
        const double prod = det_a.coupling * det_b.coupling;
        const double d_full = prod * smeared_symmetric(det_a.smearing, det_b.smearing, dim);
        const double d_rest = prod * smeared_symmetric(det_a.smearing, b_rest.smearing, dim);
        diff = state_change_a(d_full, rho0) - state_change_a(d_rest, rho0);
    } else {
        diff = qc_second_order_change(det_a, det_b, dim) -
               qc_second_order_change(det_a, b_rest, dim);
    }
    return operator_norm(diff);
}

AuditVerdict audit(Model model, const Detector& det_a, const Detector& det_b, Dim dim,
                   int grid_n) {
    AuditVerdict verdict;
    verdict.model = model;
    verdict.retro_window = find_retro_subregion(det_a.smearing, det_b.smearing, dim, grid_n);
    if (!verdict.retro_window) {
        verdict.geometry_class = GeometryClass::no_retro_subregion;
        return verdict;
    }
    const double w = witness(model, det_a, det_b, dim, grid_n);
    if (w <= kWitnessTol) {
        verdict.geometry_class = GeometryClass::retro_subregion_inert;
        verdict.witness_norm = 0.0;  // class invariant: only active setups report a norm
    } else {
        verdict.geometry_class = GeometryClass::retro_subregion_active;
        verdict.witness_norm = w;
    }
    return verdict;
}

SmearingPair one_way_smearings(double separation, double duration_a, double duration_b) {
    if (!(separation > 0.0)) throw std::invalid_argument("one_way_smearings: separation must be > 0");
    if (duration_a < 0.0 || duration_b < 0.0) {
        throw std::invalid_argument("one_way_smearings: durations must be >= 0");
    }
    return {
        Smearing::pointlike_window(0.0, 0.0, duration_a),
        Smearing::pointlike_window(separation, duration_a, duration_a + duration_b),
    };
}

}  // namespace qcfield
