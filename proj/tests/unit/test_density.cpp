#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "geophase/density.hpp"
#include "geophase/errors.hpp"

using namespace geophase;

namespace {

SystemParams ohmic_env(double chi = 0.1) {
    SystemParams sp;
    sp.chi = chi;
    sp.gamma0 = 0.02;
    sp.cutoff = 20.0;
    return sp;
}

FFactorSet factors_for(const Model& m) {
    switch (m.regime()) {
    case Regime::Isolated:
    case Regime::ChiOnly: return FFactorSet::all_ones();
    case Regime::OhmicSpin2Uncoupled: return FFactorSet::spin2_uncoupled(m.params().gamma0, m.params().cutoff);
    case Regime::OhmicBothCoupled: return FFactorSet::ohmic_inferred(m.params().gamma0, m.params().cutoff);
    }
    return FFactorSet::all_ones();
}

}  // namespace

TEST_CASE("coefficients are normalized") {
    for (double l : {0.0, 0.2, 0.5, 1.0})
        for (double t : {0.0, 0.7, pi}) {
            const auto c = coefficients(EntangledInit{l, t});
            double n = 0;
            for (const auto& a : c) n += std::norm(a);
            CHECK(n == doctest::Approx(1.0).epsilon(1e-15));
        }
    const auto c = coefficients(ProductInit{0.25, 0.4});
    CHECK(std::abs(c[0] * c[3] - c[1] * c[2]) < 1e-15);  // separable
}

TEST_CASE("partial trace of the two-spin state matches the reduced closed form") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Regime regimes[] = {Regime::Isolated, Regime::ChiOnly, Regime::OhmicSpin2Uncoupled,
                              Regime::OhmicBothCoupled};
    for (int k = 0; k < 40; ++k) {
        const Regime reg = regimes[k % 4];
        SystemParams sp = reg == Regime::Isolated ? SystemParams{} : ohmic_env(0.3 * u(rng));
        if (reg == Regime::ChiOnly) sp.gamma0 = 0.0;
        const InitialState init = k % 3 == 0 ? InitialState{ProductInit{u(rng), u(rng)}}
                                             : InitialState{EntangledInit{u(rng), pi * u(rng)}};
        const Model m = validate(sp, init, reg);
        for (double t : {0.0, 0.9, 3.3, 12.0}) {
            const QubitDensity a = trace_out_spin2(bipartite_density(t, coefficients(init), sp, factors_for(m)));
            const QubitDensity b = reduced_density_spin1(t, m);
            CHECK((a - b).norm() < 1e-13);
        }
    }
}

TEST_CASE("reduced state is a density matrix") {
    const Model m = validate(ohmic_env(), EntangledInit{0.2, pi / 5}, Regime::OhmicBothCoupled);
    for (int i = 0; i <= 200; ++i) {
        const QubitDensity r = reduced_density_spin1(0.17 * i, m);
        CHECK(std::abs(r.trace() - cplx(1.0)) < 1e-15);
        CHECK((r - r.adjoint()).norm() < 1e-15);
        const Eigen::SelfAdjointEigenSolver<QubitDensity> es(r);
        CHECK(es.eigenvalues().minCoeff() > -1e-14);
        CHECK(purity(r) <= 1.0 + 1e-14);
        CHECK(purity(r) >= 0.5 - 1e-14);
    }
}

TEST_CASE("populations are frozen") {
    const Model m = validate(ohmic_env(), EntangledInit{0.2, pi / 5}, Regime::OhmicBothCoupled);
    const double a = population_up(m);
    CHECK(a == doctest::Approx((0.2 - 0.5) * std::cos(pi / 5) + 0.5).epsilon(1e-15));
    for (double t : {0.0, 5.0, 50.0}) CHECK(reduced_density_spin1(t, m)(0, 0).real() == doctest::Approx(a));
}

TEST_CASE("initial Bloch vector") {
    const Model m = validate(SystemParams{}, EntangledInit{0.2, pi / 2}, Regime::Isolated);
    const BlochPoint b = bloch_coords(reduced_density_spin1(0.0, m));
    CHECK(b.x == doctest::Approx(-0.6).epsilon(1e-15));
    CHECK(std::abs(b.y) < 1e-15);
    CHECK(std::abs(b.z) < 1e-15);
}

TEST_CASE("pure product state stays on the sphere in isolation") {
    const Model m = validate(SystemParams{}, ProductInit{0.3, 0.0}, Regime::Isolated);
    for (int i = 0; i <= 20; ++i) {
        const QubitDensity r = reduced_density_spin1(0.5 * i, m);
        CHECK(bloch_coords(r).norm() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(purity(r) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("bath shrinks the Bloch radius") {
    const Model m = validate(ohmic_env(0.0), EntangledInit{0.0, pi / 2}, Regime::OhmicBothCoupled);
    const auto tr = trajectory(m, TimeGrid::cycles_of(m, 4, 64));
    CHECK(tr.front().point.norm() == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t j = 1; j < tr.size(); ++j) CHECK(tr[j].point.norm() <= tr[j - 1].point.norm() + 1e-15);
}

TEST_CASE("unnormalized coefficients rejected") {
    StateCoefficients c{cplx(1.0), cplx(1.0), cplx(0.0), cplx(0.0)};
    CHECK_THROWS_AS(bipartite_density(0.0, c, SystemParams{}, FFactorSet::all_ones()), ValidationError);
}

TEST_CASE("trajectory csv") {
    const Model m = validate(SystemParams{}, EntangledInit{0.2, 1.0}, Regime::Isolated);
    const auto tr = trajectory(m, TimeGrid::cycles_of(m, 1, 16));
    std::ostringstream out;
    write_trajectory_csv(out, tr);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,x,y,z,purity");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 17);

    std::ostringstream lab;
    write_trajectory_rows(lab, tr, "C=0.8");
    CHECK(lab.str().rfind("C=0.8,0,", 0) == 0);
}
