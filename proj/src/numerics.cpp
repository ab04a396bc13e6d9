#include "qcfield/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qcfield::num {

namespace {

constexpr cplx kI{0.0, 1.0};

// 16-point Gauss-Legendre rule on [-1, 1] (positive half; rule is symmetric).
constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499,
};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541,
};

struct SimpsonState {
    const std::function<double(double)>* f;
    double value = 0.0;
    double error = 0.0;
    int max_depth = 40;
};

double simpson_rule(double fa, double fm, double fb, double h) {
    return (fa + 4.0 * fm + fb) * h / 6.0;
}

void simpson_recurse(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                     double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = (*st.f)(lm);
    const double frm = (*st.f)(rm);
    const double left = simpson_rule(fa, flm, fm, m - a);
    const double right = simpson_rule(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    // absolute target plus a relative floor so large-magnitude integrands
    // terminate near machine precision instead of chasing the absolute tol
    const double accept = std::max(15.0 * tol, 1e-14 * (std::abs(left) + std::abs(right)));
    if (depth >= st.max_depth || std::abs(delta) <= accept) {
        st.value += left + right + delta / 15.0;
        st.error += std::abs(delta) / 15.0;
        return;
    }
    simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
    simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

cplx phi1(cplx z) {
    if (std::abs(z) < 1e-4) {
        // 1 + z/2 + z^2/6 + z^3/24 + z^4/120; truncation below 1e-22.
        return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
    }
    return (std::exp(z) - 1.0) / z;
}

cplx eint(double omega, double a, double b) {
    const cplx z = kI * omega * (b - a);
    return std::exp(kI * omega * a) * (b - a) * phi1(z);
}

cplx moment_eint(int m, double omega, double a, double b) {
    if (m < 0 || m > 12) throw std::invalid_argument("moment_eint: order out of range");
    const double vmax = std::max(std::abs(a), std::abs(b));
    auto power_diff = [&](int p) { return (std::pow(b, p) - std::pow(a, p)) / p; };
    if (std::abs(omega) * vmax < 1.0) {
        cplx sum = 0.0;
        cplx coeff = 1.0;  // (i omega)^j / j!
        for (int j = 0; j <= 40; ++j) {
            const cplx term = coeff * power_diff(m + j + 1);
            sum += term;
            if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
            coeff *= kI * omega / static_cast<double>(j + 1);
        }
        return sum;
    }
    const cplx iw = kI * omega;
    cplx mk = eint(omega, a, b);
    double pa = 1.0, pb = 1.0;
    for (int k = 1; k <= m; ++k) {
        pa *= a;
        pb *= b;
        mk = (pb * std::exp(kI * omega * b) - pa * std::exp(kI * omega * a)) / iw -
             static_cast<double>(k) / iw * mk;
    }
    return mk;
}

cplx ramp_phase_integral(double pa, double pb, double v0, double v1) {
    const double vmax = std::max(std::abs(v0), std::abs(v1));
    if (std::abs(pb) * vmax < 1e-4) {
        // integrand = e^{i pa v} * sum_k (i pb)^k v^{k+1} / (k+1)!
        cplx sum = 0.0;
        cplx coeff = 1.0;  // (i pb)^k / (k+1)!
        for (int k = 0; k <= 8; ++k) {
            sum += coeff * moment_eint(k + 1, pa, v0, v1);
            coeff *= kI * pb / static_cast<double>(k + 2);
        }
        return sum;
    }
    return (eint(pa + pb, v0, v1) - eint(pa, v0, v1)) / (kI * pb);
}

double clamped_ramp_integral(double c, double cap, double p, double q) {
    if (q <= p || cap <= 0.0) return 0.0;
    double total = 0.0;
    // flat part at height cap, for u <= c - cap
    total += cap * std::max(0.0, std::min(q, c - cap) - p);
    // ramp part c - u on [c - cap, c]
    const double u1 = std::max(p, c - cap);
    const double u2 = std::min(q, c);
    if (u2 > u1) {
        const double h1 = c - u1;  // ramp heights, both >= 0
        const double h2 = c - u2;
        total += 0.5 * (h1 * h1 - h2 * h2);
    }
    return total;
}

AdaptiveResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                double tol, int panels, int max_depth) {
    if (!(b > a)) return {0.0, 0.0};
    panels = std::max(1, panels);
    SimpsonState st;
    st.f = &f;
    st.max_depth = max_depth;
    const double h = (b - a) / panels;
    const double tol_per_panel = tol / panels;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + i * h;
        const double x1 = (i + 1 == panels) ? b : x0 + h;
        const double xm = 0.5 * (x0 + x1);
        const double f0 = f(x0);
        const double fm = f(xm);
        const double f1 = f(x1);
        const double whole = simpson_rule(f0, fm, f1, x1 - x0);
        simpson_recurse(st, x0, x1, f0, fm, f1, whole, tol_per_panel, 0);
    }
    return {st.value, st.error};
}

cplx gauss_panels(const std::function<cplx(double)>& f, double a, double b, int panels) {
    if (!(b > a)) return 0.0;
    panels = std::max(1, panels);
    const double h = (b - a) / panels;
    cplx total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double mid = a + (i + 0.5) * h;
        const double half = 0.5 * h;
        cplx acc = 0.0;
        for (std::size_t k = 0; k < kGlNodes.size(); ++k) {
            const double dx = half * kGlNodes[k];
            acc += kGlWeights[k] * (f(mid + dx) + f(mid - dx));
        }
        total += acc * half;
    }
    return total;
}

}  // namespace qcfield::num
