#include <doctest.h>

#include <cmath>
#include <random>

#include "qcfield/dynamics_nonpert.hpp"
#include "qcfield/dynamics_pert.hpp"
#include "qcfield/estimators.hpp"

using namespace qcfield;

namespace {

PairState random_pair_state(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix4c g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = cplx(u(rng), u(rng));
    Matrix4c rho = g * g.adjoint();
    rho /= rho.trace();
    PairState out;
    out.rho = rho;
    return out;
}

}  // namespace

TEST_CASE("accumulated phase from the canonical setup") {
    const auto setup = standard_setup(SetupKind::fig2, 1.0, 4.0);
    const auto [a, b] = setup_smearings(setup);
    CHECK(delta_ab(0.0, a, b, Dim::three_plus_one) == 0.0);
    CHECK(delta_ab(1.0, a, b, Dim::three_plus_one) ==
          doctest::Approx(2.0 / M_PI).epsilon(1e-14));
    const auto rep = np_split(setup, 1.0);
    CHECK(rep.delta_causal == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
    CHECK(rep.delta_retro == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));
}

TEST_CASE("evolve: identity at zero and at full turns") {
    std::mt19937 rng(60);
    const auto rho0 = random_pair_state(rng);
    CHECK((evolve(0.0, rho0).rho - rho0.rho).norm() == 0.0);
    CHECK((evolve(2.0 * M_PI, rho0).rho - rho0.rho).norm() < 1e-14);
    CHECK((evolve(2.0 * M_PI + 0.7, rho0).rho - evolve(0.7, rho0).rho).norm() < 1e-14);
}

TEST_CASE("evolve: half-turn flips the one-three coherence") {
    PairState rho0;
    rho0.rho = Matrix4c::Identity() * 0.25;
    rho0.rho(0, 2) = 0.2;
    rho0.rho(2, 0) = 0.2;
    const auto out = evolve(M_PI, rho0);
    CHECK(out.rho(0, 2).real() == doctest::Approx(-0.2));
    CHECK(std::abs(out.rho(0, 2).imag()) < 1e-15);
}

TEST_CASE("evolve preserves trace, hermiticity, diagonal, and spectrum") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto rho0 = random_pair_state(rng);
        const double delta = u(rng);
        const auto out = evolve(delta, rho0);
        CHECK(std::abs(out.rho.trace() - cplx(1.0, 0.0)) < 1e-13);
        CHECK((out.rho - out.rho.adjoint()).norm() < 1e-13);
        for (int i = 0; i < 4; ++i) {
            CHECK(std::abs(out.rho(i, i) - rho0.rho(i, i)) < 1e-15);
        }
        Eigen::SelfAdjointEigenSolver<Matrix4c> e0(rho0.rho, Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Matrix4c> e1(out.rho, Eigen::EigenvaluesOnly);
        CHECK((e0.eigenvalues() - e1.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("invalid pair states are rejected by evolve") {
    PairState bad;
    bad.rho = Matrix4c::Identity();  // trace 4
    CHECK_THROWS_AS(evolve(0.3, bad), std::invalid_argument);
}

TEST_CASE("reduction and the closed-form state change agree") {
    std::mt19937 rng(62);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    for (int trial = 0; trial < 40; ++trial) {
        const auto rho0 = random_pair_state(rng);
        const double delta = u(rng);
        const Matrix2c via_evolve = reduce_a(evolve(delta, rho0)).rho - reduce_a(rho0).rho;
        const Matrix2c closed = state_change_a(delta, rho0);
        CHECK((via_evolve - closed).norm() < 1e-13);
    }
}

TEST_CASE("state change vanishes without coherences or at full turns") {
    PairState diag;
    diag.rho = Matrix4c::Zero();
    diag.rho.diagonal() << 0.4, 0.3, 0.2, 0.1;
    CHECK(state_change_a(1.234, diag).norm() == 0.0);

    std::mt19937 rng(63);
    const auto rho0 = random_pair_state(rng);
    CHECK(state_change_a(4.0 * M_PI, rho0).norm() < 1e-14);
}

TEST_CASE("factor identity |e^{i delta} - 1| = 2 |sin(delta/2)|") {
    std::mt19937 rng(64);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double d = u(rng);
        CHECK(std::abs(std::exp(cplx(0.0, d)) - 1.0) ==
              doctest::Approx(2.0 * norm_estimator(d)).epsilon(1e-12));
    }
    CHECK(norm_estimator(M_PI) == doctest::Approx(1.0));
    CHECK(norm_estimator(0.0) == 0.0);
    CHECK(arg_estimator(0.0) == 0.0);
    CHECK(arg_estimator(7.25) == 7.25);
}

TEST_CASE("small-coupling limit recovers the signalling estimator") {
    const auto setup = standard_setup(SetupKind::fig2, 1.0, 4.0);
    const double c_total = estimator_split(setup).total;
    for (double lam : {0.1, 0.05, 0.02}) {
        const double delta = lam * lam * c_total;
        CHECK(2.0 * norm_estimator(delta) / (lam * lam * c_total) ==
              doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("plateau-regime split report") {
    const auto setup = standard_setup(SetupKind::fig2, 1.0, 4.0);
    const auto rep = np_split(setup, 1.0);
    CHECK(rep.theta_causal == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
    CHECK(rep.theta_retro == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));
    CHECK(rep.theta_total == doctest::Approx(rep.theta_causal + rep.theta_retro));
    CHECK(rep.n_total == doctest::Approx(std::abs(std::sin(rep.theta_total / 2.0))));

    const auto slow = np_split(standard_setup(SetupKind::fig2, 1.0, 3.0), 0.1);
    CHECK(slow.period == doctest::Approx(800.0 * M_PI * M_PI).epsilon(1e-12));
    CHECK(slow.shift == doctest::Approx(1.0));

    CHECK_THROWS_AS(np_split(standard_setup(SetupKind::fig2, 1.0, 1.5), 1.0), std::domain_error);
}

TEST_CASE("modulus curves coincide after shifting the duration by the separation") {
    const double lam = 0.8, sep = 1.0;
    for (double dur : {2.5, 4.0, 7.0, 11.0}) {
        const auto full = np_split(standard_setup(SetupKind::fig2, sep, dur), lam);
        const auto shifted = np_split(standard_setup(SetupKind::fig2, sep, dur + sep), lam);
        CHECK(full.n_total == doctest::Approx(shifted.n_causal).epsilon(1e-12));
    }
}

TEST_CASE("phase split ratio decays as separation over duration") {
    const double lam = 0.37;
    for (double dur : {3.0, 10.0, 250.0}) {
        const auto rep = np_split(standard_setup(SetupKind::fig2, 1.0, dur), lam);
        CHECK(rep.theta_retro / rep.theta_causal == doctest::Approx(1.0 / dur).epsilon(1e-12));
    }
}

TEST_CASE("modulus does not split additively at strong coupling") {
    const auto rep = np_split(standard_setup(SetupKind::fig2, 1.0, 4.0), 2.0);
    const double n_retro_alone = norm_estimator(rep.delta_retro);
    CHECK(std::abs(rep.n_total - (rep.n_causal + n_retro_alone)) > 1e-3);
}

TEST_CASE("first-order expansion of the exact evolution matches the perturbative map") {
    const auto setup = standard_setup(SetupKind::fig2, 1.0, 4.0);
    const auto [sa, sb] = setup_smearings(setup);
    const double c_total = estimator_split(setup).total;

    Detector da{0.0, 0.0, sa, 0.6, 0.3};
    Detector db{0.0, 0.0, sb, 0.5, cplx(0.2, 0.1)};

    Matrix4c joint_energy = Matrix4c::Zero();
    const Matrix2c ra = da.initial_matrix();
    const Matrix2c rb = db.initial_matrix();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    joint_energy(2 * i + k, 2 * j + l) = ra(i, j) * rb(k, l);
    PairState rho0_mu;
    rho0_mu.rho = energy_to_monopole_basis(joint_energy);

    double prev = -1.0;
    for (double lam : {0.2, 0.1, 0.05, 0.025}) {
        da.coupling = db.coupling = lam;
        const double delta = lam * lam * c_total;
        // exact reduced change, rotated back to the energy basis
        const Matrix2c exact_mu = state_change_a(delta, rho0_mu);
        Matrix2c h2;
        h2 << 1.0, 1.0, 1.0, -1.0;
        h2 *= M_SQRT1_2;
        const Matrix2c exact_energy = h2 * exact_mu * h2;
        const Matrix2c pert = qc_second_order_change(da, db, Dim::three_plus_one);
        const double diff = (exact_energy - pert).norm();
        if (prev >= 0.0) {
            CHECK(prev / diff == doctest::Approx(16.0).epsilon(0.15));  // quartic in coupling
        }
        prev = diff;
    }
}

TEST_CASE("coupling tolerance condition") {
    CHECK(coupling_tolerance(0.1, 0.01));
    CHECK_FALSE(coupling_tolerance(1.0, 0.01));
    CHECK(coupling_tolerance(0.0, 1e-12));
    CHECK_THROWS_AS(coupling_tolerance(0.1, 0.0), std::invalid_argument);

    // numerical meaning: |N - N_c| stays within the tolerance when satisfied
    const double lam = 0.1;
    for (double dur : {3.0, 5.0, 20.0}) {
        const auto rep = np_split(standard_setup(SetupKind::fig2, 1.0, dur), lam);
        CHECK(std::abs(rep.n_total - rep.n_causal) < 0.01);
    }
}

TEST_CASE("strong-coupling identity windows") {
    CHECK(near_identity_window(0.05, 1e-2));  // n = 0 branch
    const double lam_2pi = std::sqrt(8.0 * M_PI * M_PI);  // phase exactly 2 pi
    CHECK(near_identity_window(lam_2pi, 1e-9));
    CHECK_FALSE(near_identity_window(std::sqrt(4.0 * M_PI * M_PI), 0.5));  // phase = pi
}

TEST_CASE("resolution report") {
    const auto r1 = resolution_report(1.0, 1.0);
    CHECK(r1.shift == doctest::Approx(1.0));
    CHECK(r1.period == doctest::Approx(8.0 * M_PI * M_PI).epsilon(1e-14));
    CHECK(r1.discernibility == doctest::Approx(1.0));

    const auto r2 = resolution_report(1.0, 10.0);
    CHECK(r2.period == doctest::Approx(0.08 * M_PI * M_PI).epsilon(1e-12));
    CHECK(r2.discernibility == doctest::Approx(r2.period));

    CHECK(resolution_report(2.0, 0.7).period ==
          doctest::Approx(2.0 * resolution_report(1.0, 0.7).period));

    const auto flagged = resolution_report(1.0, 0.0);
    CHECK(std::isinf(flagged.period));
    CHECK(flagged.discernibility == doctest::Approx(1.0));
}
