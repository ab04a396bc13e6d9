#include <doctest.h>

#include <cmath>
#include <random>

#include "qcfield/dynamics_pert.hpp"
#include "qcfield/estimators.hpp"
#include "qcfield/propagators.hpp"

using namespace qcfield;

TEST_CASE("signalling estimator on the canonical setups") {
    const auto s2 = setup_smearings(standard_setup(SetupKind::fig2, 1.0, 4.0));
    CHECK(signalling_estimator(s2.a, s2.b, Dim::three_plus_one) ==
          doctest::Approx(2.0 / M_PI).epsilon(1e-14));

    const auto s0 = setup_smearings(standard_setup(SetupKind::fig2, 1.0, 0.0));
    CHECK(signalling_estimator(s0.a, s0.b, Dim::three_plus_one) == 0.0);

    const auto s4 = setup_smearings(standard_setup(SetupKind::fig4, 1.0, 2.0, 0.0));
    CHECK(signalling_estimator(s4.a, s4.b, Dim::one_plus_one) == doctest::Approx(2.0));
}

TEST_CASE("split closed forms, 3+1") {
    const auto rep = estimator_split(standard_setup(SetupKind::fig2, 1.0, 4.0));
    CHECK(rep.total == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
    CHECK(rep.causal == doctest::Approx(3.0 / (2.0 * M_PI)).epsilon(1e-14));
    CHECK(rep.retro == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));
}

TEST_CASE("retro part plateaus at 1/(2 pi) above the kink") {
    for (double dur : {2.0, 2.5, 4.0, 7.3, 50.0}) {
        const auto rep = estimator_split(standard_setup(SetupKind::fig2, 1.0, dur));
        CHECK(rep.retro == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));
    }
}

TEST_CASE("below the kink the two parts contribute equally") {
    const auto rep = estimator_split(standard_setup(SetupKind::fig2, 1.0, 1.0));
    CHECK(rep.causal == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-14));
    CHECK(rep.retro == doctest::Approx(rep.causal).epsilon(1e-14));
}

TEST_CASE("split closed forms, 1+1") {
    const auto rep = estimator_split(standard_setup(SetupKind::fig4, 1.0, 2.0, 0.0));
    CHECK(rep.total == doctest::Approx(2.0));
    CHECK(rep.causal == doctest::Approx(1.0));
    CHECK(rep.retro == doctest::Approx(1.0));
}

TEST_CASE("total = causal + retro, and both routes agree with the propagators") {
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> usep(0.3, 2.0);
    std::uniform_real_distribution<double> udur(0.0, 6.0);
    std::uniform_real_distribution<double> utail(0.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const bool flat = trial % 2 == 0;
        const auto setup = flat
                               ? standard_setup(SetupKind::fig4, usep(rng), udur(rng), utail(rng))
                               : standard_setup(SetupKind::fig2, usep(rng), udur(rng));
        const auto rep = estimator_split(setup);
        CHECK(rep.total == doctest::Approx(rep.causal + rep.retro).epsilon(1e-13));

        const auto [a, b] = setup_smearings(setup);
        const auto split = split_switching(setup);
        CHECK(rep.total ==
              doctest::Approx(signalling_estimator(a, b, setup.dim)).epsilon(1e-12));
        CHECK(rep.causal == doctest::Approx(smeared_symmetric(
                                                a, b.restricted_to(split.window_c), setup.dim))
                                .epsilon(1e-12));
        CHECK(rep.retro == doctest::Approx(smeared_symmetric(
                                               a, b.restricted_to(split.window_r), setup.dim))
                               .epsilon(1e-12));
    }
}

TEST_CASE("closed-form ratios above the kink") {
    const auto s = standard_setup(SetupKind::fig2, 1.0, 10.0);
    const auto [rc, rt] = ratios(s);
    CHECK(rc == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(rt == doctest::Approx(0.1).epsilon(1e-14));

    // long-interaction limit: both ratios decay to zero
    const auto far = ratios(standard_setup(SetupKind::fig2, 1.0, 1e9));
    CHECK(far.first < 2e-9);
    CHECK(far.second < 2e-9);
}

TEST_CASE("1+1 ratio grows to one for a long tail") {
    const auto [rc, rt] = ratios(standard_setup(SetupKind::fig4, 1.0, 4.0, 1e6));
    CHECK(rt > 0.999);
    CHECK(rt <= 1.0);
    CHECK(rc > 100.0);
}

TEST_CASE("ratios are out of domain at and below the kink") {
    CHECK_THROWS_AS(ratios(standard_setup(SetupKind::fig2, 1.0, 2.0)), std::domain_error);
    CHECK_THROWS_AS(ratios(standard_setup(SetupKind::fig2, 1.0, 1.0)), std::domain_error);
}

TEST_CASE("report ratios match the closed-form ratios above the kink") {
    const auto setup = standard_setup(SetupKind::fig4, 0.7, 5.0, 2.0);
    const auto rep = estimator_split(setup);
    const auto [rc, rt] = ratios(setup);
    CHECK(rep.ratio_retro_causal == doctest::Approx(rc).epsilon(1e-12));
    CHECK(rep.ratio_retro_total == doctest::Approx(rt).epsilon(1e-12));
}

TEST_CASE("ratio fields are flagged NaN on a degenerate setup") {
    const auto rep = estimator_split(standard_setup(SetupKind::fig2, 1.0, 0.0));
    CHECK(std::isnan(rep.ratio_retro_causal));
    CHECK(std::isnan(rep.ratio_retro_total));
}

TEST_CASE("tolerance time") {
    const auto t1 = tolerance_time(0.01, 1.0);
    CHECK(t1.min_duration == doctest::Approx(100.0));
    CHECK(t1.ratio_domain_ok);

    const auto t2 = tolerance_time(0.5, 2.0);
    CHECK(t2.min_duration == doctest::Approx(4.0));
    const double delta = 1e-9;
    const auto above = ratios(standard_setup(SetupKind::fig2, 2.0, 4.0 + delta));
    CHECK(above.second < 0.5);

    const auto boundary = tolerance_time(0.999999, 1.0);
    CHECK(boundary.min_duration == doctest::Approx(1.0).epsilon(1e-5));
    CHECK_FALSE(boundary.ratio_domain_ok);

    CHECK_THROWS_AS(tolerance_time(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(tolerance_time(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("large-duration asymptotics of the 1+1 ratios") {
    const auto s1 = standard_setup(SetupKind::fig4, 1.0, 1000.0, 3.0);
    CHECK(asymptotic_ratio_1p1(s1) == doctest::Approx(0.005));
    const auto [rc1, rt1] = ratios(s1);
    CHECK(std::abs(rt1 - 0.005) < 2e-5);  // leading term, correction one over T^2

    const auto s2 = standard_setup(SetupKind::fig4, 1.0, 10.0, 0.0);
    CHECK(asymptotic_ratio_1p1(s2) == doctest::Approx(0.2));
    CHECK(ratios(s2).second == doctest::Approx(0.18));

    CHECK(asymptotic_ratio_1p1(standard_setup(SetupKind::fig4, 1e-9, 10.0, 0.0)) < 1e-9);
    CHECK_THROWS_AS(asymptotic_ratio_1p1(standard_setup(SetupKind::fig4, 1.0, 0.0, 0.0)),
                    std::domain_error);
}

TEST_CASE("continuity of the split across the kink") {
    const double sep = 1.3;
    const double eps = 1e-9;
    const auto below = estimator_split(standard_setup(SetupKind::fig2, sep, 2.0 * sep - eps));
    const auto above = estimator_split(standard_setup(SetupKind::fig2, sep, 2.0 * sep + eps));
    CHECK(std::abs(below.total - above.total) < 1e-8);
    CHECK(std::abs(below.causal - above.causal) < 1e-8);
    CHECK(std::abs(below.retro - above.retro) < 1e-8);

    const auto b1 = estimator_split(standard_setup(SetupKind::fig4, sep, 2.0 * sep - eps, 1.0));
    const auto a1 = estimator_split(standard_setup(SetupKind::fig4, sep, 2.0 * sep + eps, 1.0));
    CHECK(std::abs(b1.causal - a1.causal) < 1e-8);
    CHECK(std::abs(b1.retro - a1.retro) < 1e-8);
}

TEST_CASE("twice the coupling-squared total bounds the perturbative state change") {
    std::mt19937 rng(5151);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto setup = standard_setup(SetupKind::fig2, 1.0, 4.0);
    const auto [sa, sb] = setup_smearings(setup);
    const double c_total = estimator_split(setup).total;
    for (int trial = 0; trial < 1000; ++trial) {
        Detector da{u(rng) * 2.0, 0.1, sa, 0.0, 0.0};
        Detector db{u(rng) * 2.0, 0.1, sb, 0.0, 0.0};
        da.alpha = u(rng);
        db.alpha = u(rng);
        const double ra = std::sqrt(da.alpha * (1.0 - da.alpha)) * u(rng);
        const double rb = std::sqrt(db.alpha * (1.0 - db.alpha)) * u(rng);
        const double pha = 2.0 * M_PI * u(rng);
        const double phb = 2.0 * M_PI * u(rng);
        da.beta = ra * std::exp(cplx(0.0, pha));
        db.beta = rb * std::exp(cplx(0.0, phb));
        const Matrix2c change = qc_second_order_change(da, db, Dim::three_plus_one);
        CHECK(norm_bound_check(da.coupling * db.coupling, c_total, change));
    }
}
