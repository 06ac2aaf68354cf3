#include <doctest.h>

#include <cmath>
#include <random>

#include "geophase/errors.hpp"
#include "geophase/gp_engine.hpp"

using namespace geophase;

namespace {

SystemParams ohmic_env(double chi = 0.1) {
    SystemParams sp;
    sp.chi = chi;
    sp.gamma0 = 0.02;
    sp.cutoff = 20.0;
    return sp;
}

double one_cycle_gp(const Model& m, const GpOptions& o = {}) { return *geometric_phase(m, m.period(), o).phase; }

}  // namespace

TEST_CASE("wrap and circular distance") {
    CHECK(wrap_phase(-0.5) == doctest::Approx(two_pi - 0.5));
    CHECK(wrap_phase(7.0) == doctest::Approx(7.0 - two_pi));
    CHECK(wrap_phase(two_pi - 1e-15) == 0.0);
    CHECK(circular_distance(0.01, two_pi - 0.01) == doctest::Approx(0.02));
    CHECK(circular_distance(0.0, pi) == doctest::Approx(pi));
}

// Richardson-extrapolated Bargmann products from tests/oracles/gp_oracle.py
TEST_CASE("frozen ohmic phases") {
    const Model ent = validate(ohmic_env(), EntangledInit{0.2, pi / 5}, Regime::OhmicBothCoupled);
    CHECK(circular_distance(one_cycle_gp(ent), 0.3563187970101067) < 1e-9);

    ModelConfig cfg;
    cfg.params = ohmic_env();
    cfg.regime = Regime::OhmicBothCoupled;
    cfg.set("theta0", "pi/3");
    cfg.set("q", "0.4");
    CHECK(circular_distance(one_cycle_gp(cfg.model()), 0.892691715010625) < 1e-9);
}

TEST_CASE("isolated limits") {
    // lambda0 = 0 is a pure state precessing on a cone
    for (double t0 : {0.3, pi / 3, pi / 2, 2.5}) {
        const Model m = validate(SystemParams{}, EntangledInit{0.0, t0}, Regime::Isolated);
        CHECK(circular_distance(one_cycle_gp(m), wrap_phase(gp_unitary_reference(t0))) < 1e-10);
    }
    for (double p : {0.1, 0.25, 0.8}) {
        const Model m = validate(SystemParams{}, ProductInit{p, 0.3}, Regime::Isolated);
        CHECK(circular_distance(one_cycle_gp(m), gp_product_isolated(p)) < 1e-10);
    }
    const Model mes = validate(SystemParams{}, EntangledInit{0.5, pi / 2}, Regime::Isolated);
    const GpResult r = geometric_phase(mes, mes.period());
    CHECK(r.degenerate);
    CHECK(*r.phase == doctest::Approx(pi / 2));
}

TEST_CASE("werner endpoints are static") {
    for (double t0 : {0.0, pi}) {
        const Model m = validate(SystemParams{}, EntangledInit{0.3, t0}, Regime::Isolated);
        CHECK(circular_distance(one_cycle_gp(m), 0.0) < 1e-12);
    }
}

TEST_CASE("maximally entangled with a spin environment gives pi") {
    const Model m = validate(ohmic_env(), EntangledInit{0.5, pi / 3}, Regime::OhmicBothCoupled);
    const GpResult r = geometric_phase(m, m.period());
    CHECK_FALSE(r.degenerate);
    CHECK(circular_distance(*r.phase, pi) < 1e-10);
}

TEST_CASE("degenerate MES assignment checks its precondition") {
    const Model m = validate(SystemParams{}, EntangledInit{0.2, pi / 2}, Regime::Isolated);
    CHECK_THROWS_AS(gp_degenerate_mes(m, m.period()), ValidationError);
    const Model mes = validate(SystemParams{}, EntangledInit{0.5, pi / 2}, Regime::Isolated);
    CHECK_THROWS_AS(gp_closed_form(mes, mes.period()), NumericalError);
}

TEST_CASE("closed form agrees with the discretized oracle") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 12; ++k) {
        const Model m = validate(ohmic_env(0.2 * u(rng)), EntangledInit{0.45 * u(rng), 0.2 + 2.7 * u(rng)},
                                 Regime::OhmicBothCoupled);
        GpOptions o;
        o.with_oracle = true;
        o.steps_per_cycle = 1024;
        const GpResult r = geometric_phase(m, m.period(), o);
        REQUIRE(r.oracle_phase);
        // plain Bargmann product, O(h^2): about 1.5e-5 at 1024 steps
        CHECK(circular_distance(*r.phase, *r.oracle_phase) < 5e-5);
    }
}

TEST_CASE("bargmann product is gauge invariant") {
    const Model m = validate(ohmic_env(), EntangledInit{0.2, pi / 5}, Regime::OhmicBothCoupled);
    const EigenPaths paths = eigen_paths([&](double t) { return reduced_density_spin1(t, m); }, m.period(), 256);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, two_pi);
    for (int b = 0; b < 2; ++b) {
        BranchPath shifted = paths.branches[b];
        for (auto& f : shifted) f.vec *= std::polar(1.0, u(rng));
        const cplx a = bargmann_term(paths.branches[b]);
        const cplx c = bargmann_term(shifted);
        CHECK(std::abs(a - c) < 1e-12);
    }
}

TEST_CASE("eigen_paths requires a usable grid") {
    const Model m = validate(SystemParams{}, EntangledInit{0.2, 1.0}, Regime::Isolated);
    CHECK_THROWS_AS(eigen_paths([&](double t) { return reduced_density_spin1(t, m); }, m.period(), 32),
                    ValidationError);
}

TEST_CASE("quadrature converges") {
    const Model m = validate(ohmic_env(), EntangledInit{0.1, 1.2}, Regime::OhmicBothCoupled);
    const GpResult r = gp_closed_form(m, 3 * m.period());
    CHECK(r.quadrature_delta < 1e-8);
    CHECK(r.intervals >= 3 * 512);
}

TEST_CASE("series ends where the single evaluation does") {
    const Model m = validate(ohmic_env(), EntangledInit{0.2, pi / 5}, Regime::OhmicBothCoupled);
    const auto s = gp_vs_time(m, 3, 4);
    REQUIRE(s.size() == 12);
    CHECK(s.back().t == doctest::Approx(3 * m.period()));
    CHECK(circular_distance(*s.back().phase, *geometric_phase(m, 3 * m.period()).phase) < 1e-12);
    for (const auto& p : s) CHECK(circular_distance(p.unwrapped, *p.phase) < 1e-12);
}

TEST_CASE("pure endpoint contributes no spurious branch") {
    // product start is pure at t = 0, so the eps_- term must vanish exactly
    ModelConfig cfg;
    cfg.params = ohmic_env();
    cfg.regime = Regime::OhmicBothCoupled;
    cfg.set("theta0", "pi/3");
    cfg.set("q", "0.4");
    const Model m = cfg.model();
    const DiscretizedGp d = gp_discretized([&](double t) { return reduced_density_spin1(t, m); }, m.period(), 8192);
    CHECK(d.branch_terms[1] == cplx{});
    REQUIRE(d.extrapolated);
    CHECK(circular_distance(*d.extrapolated, 0.892691715010625) < 1e-11);
}
