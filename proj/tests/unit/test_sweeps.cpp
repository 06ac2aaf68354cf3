#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "geophase/errors.hpp"
#include "geophase/sweeps.hpp"

using namespace geophase;

namespace {

SweepSpec small_spec() {
    SweepSpec s;
    s.axis1 = parse_axis("concurrence:0.1:1:4");
    s.axis2 = parse_axis("theta0:0.2:pi/2:5");
    s.fixed.regime = Regime::OhmicBothCoupled;
    s.fixed.params.chi = 0.1;
    s.fixed.params.gamma0 = 0.02;
    s.options.steps_per_cycle = 128;
    return s;
}

}  // namespace

TEST_CASE("axis parsing") {
    const SweepAxis a = parse_axis("theta0:0:pi:5");
    CHECK(a.name == "theta0");
    CHECK(a.value(0) == 0.0);
    CHECK(a.value(4) == pi);
    CHECK(a.value(2) == doctest::Approx(pi / 2));
    CHECK_THROWS_AS(parse_axis("theta0:0:pi"), ValidationError);
    CHECK_THROWS_AS(parse_axis("theta0:0:pi:1"), ValidationError);
    CHECK_THROWS_AS(parse_axis("theta0:0:pi:2.5"), ValidationError);
}

TEST_CASE("sweep validation") {
    SweepSpec s = small_spec();
    CHECK_NOTHROW(s.validate());
    s.axis1.name = "banana";
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = small_spec();
    s.axis1 = parse_axis("q:0:1:3");
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s.quantity = Quantity::GpProduct;
    CHECK_NOTHROW(s.validate());
    s = small_spec();
    s.axis1 = parse_axis("lambda0:0:1.5:3");
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = small_spec();
    s.axis2 = s.axis1;
    CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("parallel sweep matches shuffled serial order") {
    const SweepSpec s = small_spec();
    const SweepResult par = run_sweep(s, 4);
    std::vector<std::size_t> order(par.cells.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), std::mt19937_64(9));
    const SweepResult ser = run_sweep_in_order(s, order);
    for (std::size_t i = 0; i < par.cells.size(); ++i) {
        REQUIRE(par.cells[i].value);
        CHECK(*par.cells[i].value == *ser.cells[i].value);
    }
    CHECK(par.at(3, 4).v1 == 1.0);
    CHECK(par.at(3, 4).v2 == pi / 2);
}

TEST_CASE("sweep csv") {
    const SweepResult r = run_sweep(small_spec(), 2);
    std::ostringstream out;
    write_sweep_csv(out, r, Units::Pi);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "concurrence,theta0,phase_over_pi");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 20);

    SweepSpec t = small_spec();
    t.quantity = Quantity::Trajectory;
    std::ostringstream tout;
    write_sweep_csv(tout, run_sweep(t, 2), Units::Radians);
    CHECK(tout.str().rfind("concurrence,theta0,bloch_radius\n", 0) == 0);
}

TEST_CASE("failed cells keep going") {
    SweepSpec s;
    s.axis1 = parse_axis("lambda0:0.5:0.5:2");
    s.axis2 = parse_axis("theta0:0:1:2");
    s.fixed.regime = Regime::Isolated;
    s.options.steps_per_cycle = 64;
    const SweepResult r = run_sweep(s, 1);
    CHECK(r.cells.size() == 4);
    // theta0 = 0 at lambda0 = 1/2 is the fully mixed state: assigned pi/2 and flagged, not an error
    for (const auto& c : r.cells) CHECK(c.error.empty());
}

TEST_CASE("units and quantities") {
    CHECK(parse_units("rad") == Units::Radians);
    CHECK_THROWS_AS(parse_units("deg"), ValidationError);
    CHECK(parse_quantity("gp_product") == Quantity::GpProduct);
    CHECK(to_string(Quantity::GpVsTime) == "gp_vs_time");
    CHECK_THROWS_AS(parse_quantity("nope"), ValidationError);
    CHECK(phase_column(Units::Radians) == "phase_rad");
    CHECK(format_phase(pi, Units::Pi) == "1");
    CHECK(format_phase(std::nullopt, Units::Pi).empty());
}

TEST_CASE("every preset builds") {
    for (const auto& n : preset_names()) {
        const PresetSpec p = preset(n, {8, 64});
        CHECK(p.name == n);
    }
    CHECK_THROWS_AS(preset("fig99"), ValidationError);
    CHECK_THROWS_AS(preset("fig1", {1, 64}), ValidationError);
}

TEST_CASE("single presets") {
    const auto mes = run_preset(preset("mes-isolated"), 1);
    REQUIRE(mes.single);
    CHECK(*mes.single->phase == doctest::Approx(pi / 2));
    const auto ref = run_preset(preset("ohmic-reference"), 1);
    CHECK(circular_distance(*ref.single->phase, 0.3563187970101067) < 1e-9);
}

TEST_CASE("preset files") {
    const auto dir = std::filesystem::temp_directory_path() / "geophase_preset_test";
    std::filesystem::create_directories(dir);
    const auto res = run_preset(preset("fig2", {8, 64}), 2);
    const auto paths = write_preset(res, dir, Units::Pi);
    REQUIRE(paths.size() == 2);
    std::ifstream csv(paths[0]);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "curve,t,x,y,z,purity");
    CHECK(std::filesystem::exists(dir / "fig2.params.txt"));
    std::filesystem::remove_all(dir);
}
