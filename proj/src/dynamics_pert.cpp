#include "qcfield/dynamics_pert.hpp"

#include <cmath>
#include <functional>

#include "qcfield/numerics.hpp"
#include "qcfield/propagators.hpp"

namespace qcfield {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kFourPi = 4.0 * M_PI;

Matrix2c ladder(int sign) {
    Matrix2c m = Matrix2c::Zero();
    if (sign > 0) m(0, 1) = 1.0;  // raising, excited state first
    else m(1, 0) = 1.0;
    return m;
}

// Closed-interval switching value: the oracle and the phase integrals sample
// windows on their exact supports, where the half-open boundary convention is
// a zero-measure artifact that would otherwise bias endpoint nodes.
double chi_closed(const Smearing& s, double t) {
    if (const auto* w = std::get_if<WindowSwitching>(&s.switching)) {
        return (t >= w->t_on && t <= w->t_off) ? 1.0 : 0.0;
    }
    return s.switching_value(t);
}

bool window_pair(const Smearing& a, const Smearing& b) {
    return a.has_window_switching() && b.has_window_switching();
}

// --- closed forms for the kernel-weighted phase integrals -------------------
// j = integral over the kernel support of chi_f(t) chi_p(t') e^{i pf t + i pp t'},
// where t is the future-side variable and t' the past-side one.

// 3+1 lightcone kernel: t = t' + L collapses the pair to one time integral.
cplx j31_directed(const TimeInterval& wf, const TimeInterval& wp, double sep, double pf,
                  double pp) {
    const TimeInterval ov = intersect(wf, shifted(wp, sep));
    if (ov.empty()) return 0.0;
    return std::exp(-kI * pp * sep) * num::eint(pf + pp, ov.lo, ov.hi) / (kFourPi * sep);
}

// 1+1 step kernel: area integral over {t in wf, t' in wp, t - t' > L}.
cplx j11_directed(const TimeInterval& wf, const TimeInterval& wp, double sep, double pf,
                  double pp) {
    const double lo = std::max(wf.lo, wp.lo + sep);
    if (lo >= wf.hi) return 0.0;
    const double mid = std::min(wf.hi, wp.hi + sep);
    cplx total = 0.0;
    if (mid > lo) {
        // inner integral still growing: e^{i pf t} * eint(pp, wp.lo, t - L)
        const cplx pref = std::exp(kI * (pf * (sep + wp.lo) + pp * wp.lo));
        total += pref * num::ramp_phase_integral(pf, pp, lo - sep - wp.lo, mid - sep - wp.lo);
    }
    const double sat = std::max(lo, mid);
    if (wf.hi > sat) {
        total += num::eint(pf, sat, wf.hi) * num::eint(pp, wp.lo, wp.hi);
    }
    return 0.5 * total;
}

cplx j_directed_closed(Dim dim, const TimeInterval& wf, const TimeInterval& wp, double sep,
                       double pf, double pp) {
    return dim == Dim::three_plus_one ? j31_directed(wf, wp, sep, pf, pp)
                                      : j11_directed(wf, wp, sep, pf, pp);
}

// Numeric fallback for smooth switchings: Gauss panels sized by the phase.
int panels_for(double phase, double len) {
    return 8 + static_cast<int>(std::abs(phase) * len / 4.0);
}

cplx j_directed_numeric(Dim dim, const Smearing& f_side, const Smearing& p_side, double sep,
                        double pf, double pp) {
    const TimeInterval sf = f_side.switching_support();
    const TimeInterval sp = p_side.switching_support();
    if (dim == Dim::three_plus_one) {
        const TimeInterval ov = intersect(sf, shifted(sp, sep));
        if (ov.empty()) return 0.0;
        auto g = [&](double t) {
            return chi_closed(f_side, t) * chi_closed(p_side, t - sep) *
                   std::exp(kI * (pf * t + pp * (t - sep)));
        };
        return num::gauss_panels(g, ov.lo, ov.hi, panels_for(pf + pp, ov.length())) /
               (kFourPi * sep);
    }
    const double lo = std::max(sf.lo, sp.lo + sep);
    if (lo >= sf.hi) return 0.0;
    auto outer = [&](double t) {
        const double cut = std::min(sp.hi, t - sep);
        if (cut <= sp.lo) return cplx{0.0, 0.0};
        auto inner = [&](double tp) { return chi_closed(p_side, tp) * std::exp(kI * pp * tp); };
        const cplx in = num::gauss_panels(inner, sp.lo, cut, panels_for(pp, cut - sp.lo));
        return chi_closed(f_side, t) * std::exp(kI * pf * t) * in;
    };
    return 0.5 * num::gauss_panels(outer, lo, sf.hi, 4 * panels_for(pf, sf.hi - lo));
}

cplx j_directed(Dim dim, const Smearing& f_side, const Smearing& p_side, double pf, double pp) {
    const double sep = spatial_distance(f_side, p_side, dim);
    if (dim == Dim::three_plus_one && sep <= 0.0) {
        throw std::invalid_argument("second-order dynamics: zero separation is singular in 3+1");
    }
    if (window_pair(f_side, p_side)) {
        return j_directed_closed(dim, f_side.window(), p_side.window(), sep, pf, pp);
    }
    return j_directed_numeric(dim, f_side, p_side, sep, pf, pp);
}

// Shared skeleton of the two leading-order maps. `include_advanced` selects
// the full symmetric kernel (direct-coupling model) versus the retarded
// orientation only (field-mediated signal term); `prefactor` carries the
// model's overall constant.
Matrix2c second_order_skeleton(const Detector& det_a, const Detector& det_b, Dim dim,
                               bool include_advanced, double prefactor) {
    det_a.validate();
    det_b.validate();
    const Matrix2c rho_a0 = det_a.initial_matrix();
    Matrix2c change = Matrix2c::Zero();
    for (int sa : {+1, -1}) {
        const Matrix2c comm = ladder(sa) * rho_a0 - rho_a0 * ladder(sa);
        for (int sb : {+1, -1}) {
            const cplx weight = (sb > 0) ? std::conj(det_b.beta) : det_b.beta;
            if (weight == 0.0) continue;
            const double pa = sa * det_a.gap;
            const double pb = sb * det_b.gap;
            cplx j = j_directed(dim, det_a.smearing, det_b.smearing, pa, pb);
            if (include_advanced) {
                j += j_directed(dim, det_b.smearing, det_a.smearing, pb, pa);
            }
            change += (-kI * prefactor * weight * j) * comm;
        }
    }
    return change;
}

cplx simpson_cplx(const std::function<cplx(double)>& f, double a, double b, int n) {
    if (!(b > a)) return 0.0;
    n = std::max(2, n + (n % 2));  // even panel count
    const double h = (b - a) / n;
    cplx acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

}  // namespace

Matrix2c qc_second_order_change(const Detector& det_a, const Detector& det_b, Dim dim) {
    const double pref = det_a.coupling * det_b.coupling / 2.0;
    return second_order_skeleton(det_a, det_b, dim, /*include_advanced=*/true, pref);
}

QubitState qc_second_order(const Detector& det_a, const Detector& det_b, Dim dim) {
    QubitState out;
    out.rho = det_a.initial_matrix() + qc_second_order_change(det_a, det_b, dim);
    return out;
}

Matrix2c qft_signal_change(const Detector& det_a, const Detector& det_b, Dim dim) {
    const double pref = det_a.coupling * det_b.coupling;
    return second_order_skeleton(det_a, det_b, dim, /*include_advanced=*/false, pref);
}

QubitState qft_signal_term(const Detector& det_a, const Detector& det_b, Dim dim) {
    QubitState out;
    out.rho = det_a.initial_matrix() + qft_signal_change(det_a, det_b, dim);
    return out;
}

PairState dyson_oracle(const Detector& det_a, const Detector& det_b, const PairState& rho0_joint,
                       int n_steps, Dim dim) {
    det_a.validate();
    det_b.validate();
    rho0_joint.validate();
    if (n_steps < 64) throw std::invalid_argument("dyson_oracle: n_steps must be >= 64");

    const double sep = spatial_distance(det_a.smearing, det_b.smearing, dim);
    if (dim == Dim::three_plus_one && sep <= 0.0) {
        throw std::invalid_argument("dyson_oracle: zero separation is singular in 3+1");
    }
    const TimeInterval sa = det_a.smearing.switching_support();
    const TimeInterval sb = det_b.smearing.switching_support();

    // Scalar phase integrals over the symmetric kernel, accumulated by plain
    // composite quadrature. fut/past tag which detector rides the later time.
    auto directed = [&](bool a_is_future, double pf, double pp) -> cplx {
        const Smearing& fut = a_is_future ? det_a.smearing : det_b.smearing;
        const Smearing& past = a_is_future ? det_b.smearing : det_a.smearing;
        const TimeInterval wf = a_is_future ? sa : sb;
        const TimeInterval wp = a_is_future ? sb : sa;
        if (dim == Dim::three_plus_one) {
            const TimeInterval ov = intersect(wf, shifted(wp, sep));
            if (ov.empty()) return 0.0;
            auto g = [&](double t) {
                return chi_closed(fut, t) * chi_closed(past, t - sep) *
                       std::exp(kI * (pf * t + pp * (t - sep)));
            };
            return simpson_cplx(g, ov.lo, ov.hi, n_steps) / (kFourPi * sep);
        }
        const double lo = std::max(wf.lo, wp.lo + sep);
        if (lo >= wf.hi) return 0.0;
        const int n_inner = std::max(64, n_steps / 8);
        auto outer = [&](double t) -> cplx {
            const double cut = std::min(wp.hi, t - sep);
            if (cut <= wp.lo) return 0.0;
            auto inner = [&](double tp) {
                return chi_closed(past, tp) * std::exp(kI * pp * tp);
            };
            return chi_closed(fut, t) * std::exp(kI * pf * t) *
                   simpson_cplx(inner, wp.lo, cut, n_inner);
        };
        // Split where the inner integral saturates, to keep each outer piece smooth.
        const double mid = std::min(wf.hi, wp.hi + sep);
        cplx acc = 0.0;
        if (mid > lo) acc += simpson_cplx(outer, lo, mid, n_steps);
        if (wf.hi > mid) acc += simpson_cplx(outer, mid, wf.hi, n_steps);
        return 0.5 * acc;
    };

    Matrix4c u2 = Matrix4c::Zero();
    for (int s_a : {+1, -1}) {
        for (int s_b : {+1, -1}) {
            const double pa = s_a * det_a.gap;
            const double pb = s_b * det_b.gap;
            const cplx j = directed(true, pa, pb) + directed(false, pb, pa);
            Matrix4c op = Matrix4c::Zero();
            const Matrix2c la = ladder(s_a);
            const Matrix2c lb = ladder(s_b);
            for (int i = 0; i < 2; ++i)
                for (int jdx = 0; jdx < 2; ++jdx)
                    for (int k = 0; k < 2; ++k)
                        for (int l = 0; l < 2; ++l)
                            op(2 * i + k, 2 * jdx + l) = la(i, jdx) * lb(k, l);
            u2 += j * op;
        }
    }
    u2 *= -kI * 0.5 * det_a.coupling * det_b.coupling;

    PairState out;
    out.rho = rho0_joint.rho + u2 * rho0_joint.rho + rho0_joint.rho * u2.adjoint();
    return out;
}

bool norm_bound_check(double coupling_product, double c_total, const Matrix2c& change) {
    return operator_norm(change) <= 2.0 * std::abs(coupling_product) * std::abs(c_total) + 1e-12;
}

}  // namespace qcfield
