#include <doctest.h>

#include <cmath>
#include <random>

#include "geophase/errors.hpp"
#include "geophase/spectral.hpp"

using namespace geophase;

namespace {

SystemParams ohmic_env() {
    SystemParams sp;
    sp.chi = 0.1;
    sp.gamma0 = 0.02;
    sp.cutoff = 20.0;
    return sp;
}

}  // namespace

TEST_CASE("eigensystem diagonalizes in the fixed gauge") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const double a = u(rng);
        const double kmax = std::sqrt(a * (1 - a));
        const cplx c = std::polar(kmax * u(rng), two_pi * u(rng));
        QubitDensity rho;
        rho << a, c, std::conj(c), 1 - a;
        const SpectralSample s = eigensystem(rho);
        CHECK(s.eps_plus >= s.eps_minus);
        CHECK(s.eps_plus + s.eps_minus == doctest::Approx(1.0).epsilon(1e-14));
        CHECK((rho * s.vec_plus - s.eps_plus * s.vec_plus).norm() < 1e-13);
        CHECK((rho * s.vec_minus - s.eps_minus * s.vec_minus).norm() < 1e-13);
        CHECK(std::abs(s.vec_plus.dot(s.vec_minus)) < 1e-13);
        // second component is real and non-negative
        CHECK(std::abs(s.vec_plus(1).imag()) < 1e-15);
        CHECK(s.vec_plus(1).real() >= 0.0);
        CHECK(std::abs(std::abs(s.vec_plus(0)) - std::abs(s.cos_plus)) < 1e-14);
    }
}

TEST_CASE("maximally mixed state is flagged") {
    QubitDensity rho;
    rho << 0.5, 0.0, 0.0, 0.5;
    CHECK(eigensystem(rho).degenerate);
}

TEST_CASE("closed-form eigenvalues agree with the matrix") {
    const Model m = validate(ohmic_env(), EntangledInit{0.2, pi / 5}, Regime::OhmicBothCoupled);
    for (int i = 0; i <= 100; ++i) {
        const double t = 0.37 * i;
        const auto [ep, em] = eigenvalues_entangled(m, std::abs(decoherence_factor(t, m)));
        const SpectralSample s = eigensystem(reduced_density_spin1(t, m));
        CHECK(ep == doctest::Approx(s.eps_plus).epsilon(1e-13));
        CHECK(em == doctest::Approx(s.eps_minus).epsilon(1e-13));
    }
}

TEST_CASE("mixing angle") {
    // lambda0 = 1 is the pure state cos(t0/2)|0> + sin(t0/2)|1> on spin 1
    const Model pure = validate(SystemParams{}, EntangledInit{1.0, 1.1}, Regime::Isolated);
    const double c = *mixing_angle_cos(1.0, pure, 1.0);
    CHECK(std::abs(c) == doctest::Approx(std::cos(1.1 / 2)).epsilon(1e-14));

    const Model m = validate(ohmic_env(), EntangledInit{0.2, pi / 5}, Regime::OhmicBothCoupled);
    for (double t : {0.0, 2.0, 9.0}) {
        const double r = std::abs(decoherence_factor(t, m));
        const auto [ep, em] = eigenvalues_entangled(m, r);
        const SpectralSample s = eigensystem(reduced_density_spin1(t, m));
        const double cp = *mixing_angle_cos(ep, m, r);
        const double cm = *mixing_angle_cos(em, m, r);
        CHECK(cp * cp + cm * cm == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(cp) == doctest::Approx(std::abs(s.cos_plus)).epsilon(1e-12));
    }

    // theta0 = 0, lambda0 = 1/2 leaves 0/0
    const Model mes0 = validate(SystemParams{}, EntangledInit{0.5, 0.0}, Regime::Isolated);
    CHECK_FALSE(mixing_angle_cos(0.5, mes0, 0.0).has_value());
}

TEST_CASE("spectral trajectory keeps labels across a crossing") {
    // MES with a spin environment: rho passes through 1/2 at t = 0 and every half beat
    SystemParams sp;
    sp.chi = 0.25;
    const Model m = validate(sp, EntangledInit{0.5, pi / 3}, Regime::ChiOnly);
    const TimeGrid grid = TimeGrid::cycles_of(m, 1, 256);
    const auto st = spectral_trajectory(m, grid, polar_trace(m, grid));
    CHECK(st.samples.size() == static_cast<std::size_t>(grid.size()));
    for (std::size_t j = 1; j < st.samples.size(); ++j) {
        const auto& a = st.samples[j - 1];
        const auto& b = st.samples[j];
        if (a.degenerate || b.degenerate) continue;
        CHECK(std::abs(a.vec_plus.dot(b.vec_plus)) > std::abs(a.vec_plus.dot(b.vec_minus)));
    }
}

TEST_CASE("trace and grid must agree") {
    const Model m = validate(SystemParams{}, EntangledInit{0.2, 1.0}, Regime::Isolated);
    const TimeGrid g1 = TimeGrid::cycles_of(m, 1, 16);
    const TimeGrid g2 = TimeGrid::cycles_of(m, 1, 32);
    CHECK_THROWS_AS(spectral_trajectory(m, g2, polar_trace(m, g1)), ValidationError);
}
