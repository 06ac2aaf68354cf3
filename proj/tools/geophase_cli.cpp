// geophase command line front end: gp, sweep, trajectory, series, preset

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "geophase/errors.hpp"
#include "geophase/sweeps.hpp"

using namespace geophase;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

// Model keys collected from flags; applied after the config file so flags win.
struct ModelFlags {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> values;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "key = value file, overridden by flags")->check(CLI::ExistingFile);
        const std::pair<const char*, const char*> keys[] = {
            {"lambda0", "entanglement weight lambda0 in [0,1]"},
            {"concurrence", "initial concurrence, mapped to lambda0 <= 1/2"},
            {"theta0", "initial angle in [0,pi]; accepts e.g. pi/5"},
            {"p", "spin 1 excitation weight (product start)"},
            {"q", "spin 2 excitation weight (product start)"},
            {"gamma0", "ohmic coupling"},
            {"cutoff", "bath cutoff Lambda"},
            {"chi", "spin-spin coupling"},
            {"omega1", "spin 1 frequency"},
            {"omega2", "spin 2 frequency"},
            {"regime", "isolated | chi_only | ohmic | ohmic_spin2_uncoupled"},
            {"init", "entangled | product"},
            {"tau-cycles", "final time in periods of spin 1"},
            {"steps", "steps per cycle"}};
        for (const auto& [key, help] : keys) {
            const std::string k = key;
            app->add_option_function<std::string>(
                "--" + k, [this, k](const std::string& v) { values.emplace_back(k, v); }, help);
        }
    }

    ModelConfig resolve() const {
        ModelConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ValidationError("cannot read " + config_path);
            load_config(in, cfg);
        }
        for (const auto& [k, v] : values) cfg.set(k, v);
        return cfg;
    }
};

// Writes to --out when given, else to stdout.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw ValidationError("cannot write " + path);
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

GpOptions options_for(const ModelConfig& cfg) {
    GpOptions o;
    o.steps_per_cycle = cfg.steps;
    return o;
}

void print_gp(const GpResult& r) {
    auto show = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string("undefined"); };
    std::printf("phase_rad      %s\n", show(r.phase).c_str());
    std::printf("phase_over_pi  %s\n", show(r.phase_over_pi()).c_str());
    std::printf("term_plus      %s %+.17gi\n", format_real(r.branch_terms[0].real()).c_str(), r.branch_terms[0].imag());
    std::printf("term_minus     %s %+.17gi\n", format_real(r.branch_terms[1].real()).c_str(), r.branch_terms[1].imag());
    std::printf("degenerate     %s\n", r.degenerate ? "yes" : "no");
    if (r.oracle_phase) std::printf("oracle_rad     %s\n", format_real(*r.oracle_phase).c_str());
    if (r.oracle_error_estimate) std::printf("oracle_delta   %s\n", format_real(*r.oracle_error_estimate).c_str());
    std::printf("quadrature     %s (%d intervals)\n", format_real(r.quadrature_delta).c_str(), r.intervals);
}

void report_failures(const SweepResult& res) {
    for (const auto& c : res.cells)
        if (!c.error.empty())
            std::fprintf(stderr, "note: %s=%s %s=%s: %s\n", res.spec.axis1.name.c_str(), format_real(c.v1).c_str(),
                         res.spec.axis2.name.c_str(), format_real(c.v2).c_str(), c.error.c_str());
}

void report_failures(const PresetResult& res) {
    if (res.surface) report_failures(*res.surface);
    for (const auto& c : res.curves)
        for (std::size_t i = 0; i < c.errors.size(); ++i)
            if (!c.errors[i].empty())
                std::fprintf(stderr, "note: %s at %s: %s\n", c.label.c_str(), format_real(c.x[i]).c_str(),
                             c.errors[i].c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric phase of one spin under a spin plus ohmic bath environment"};
    app.require_subcommand(1);

    std::string out_path;
    std::string units_text = "pi";
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--units", units_text, "phase units in CSV: rad | pi")->check(CLI::IsMember({"rad", "pi"}));
    };

    ModelFlags gp_flags, sweep_flags, traj_flags, series_flags;

    auto* gp = app.add_subcommand("gp", "single geometric phase evaluation");
    gp_flags.attach(gp);
    add_out(gp);
    std::string gp_preset;
    gp->add_option("--preset", gp_preset, "named single-evaluation preset (mes-isolated, werner-theta0, ...)");

    auto* sweep = app.add_subcommand("sweep", "two-parameter sweep to CSV");
    sweep_flags.attach(sweep);
    add_out(sweep);
    std::string axis1_text, axis2_text, quantity_text = "gp_entangled";
    sweep->add_option("--axis1", axis1_text, "name:lo:hi:count")->required();
    sweep->add_option("--axis2", axis2_text, "name:lo:hi:count")->required();
    sweep->add_option("--quantity", quantity_text, "gp_entangled | gp_product | trajectory | gp_vs_time");

    auto* traj = app.add_subcommand("trajectory", "Bloch trajectory to CSV (t,x,y,z,purity)");
    traj_flags.attach(traj);
    add_out(traj);

    auto* series = app.add_subcommand("series", "geometric phase against time");
    series_flags.attach(series);
    add_out(series);
    int points_per_cycle = 1;
    series->add_option("--points-per-cycle", points_per_cycle, "samples per cycle")->check(CLI::PositiveNumber);

    auto* pre = app.add_subcommand("preset", "named figure preset to <name>.csv plus a parameter sidecar");
    std::string preset_name, out_dir = ".";
    PresetResolution resolution;
    bool list = false;
    pre->add_option("name", preset_name, "preset name");
    pre->add_option("--out-dir", out_dir, "directory for the CSV and sidecar");
    pre->add_option("--grid", resolution.grid, "surface samples per axis");
    pre->add_option("--steps", resolution.steps, "steps per cycle");
    pre->add_option("--units", units_text, "phase units in CSV: rad | pi")->check(CLI::IsMember({"rad", "pi"}));
    pre->add_flag("--list", list, "print the preset names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        const Units units = parse_units(units_text);

        if (*gp) {
            ModelConfig cfg;
            GpOptions opts;
            if (!gp_preset.empty()) {
                const PresetSpec spec = preset(gp_preset);
                if (spec.kind != PresetKind::Single)
                    throw ValidationError("'" + gp_preset + "' is not a single-evaluation preset; use the preset command");
                cfg = spec.base;
                opts = spec.options;
            } else {
                cfg = gp_flags.resolve();
                opts = options_for(cfg);
            }
            opts.with_oracle = true;
            const Model m = cfg.model();
            const GpResult r = geometric_phase(m, cfg.tau_cycles * m.period(), opts);
            print_gp(r);
            if (!out_path.empty()) {
                Output out(out_path);
                write_gp_csv(out.stream(), r);
            }
        } else if (*sweep) {
            SweepSpec spec;
            spec.fixed = sweep_flags.resolve();
            spec.axis1 = parse_axis(axis1_text);
            spec.axis2 = parse_axis(axis2_text);
            spec.quantity = parse_quantity(quantity_text);
            spec.options = options_for(spec.fixed);
            const SweepResult res = run_sweep(spec);
            Output out(out_path);
            write_sweep_csv(out.stream(), res, units);
            report_failures(res);
        } else if (*traj) {
            const ModelConfig cfg = traj_flags.resolve();
            const Model m = cfg.model();
            const auto samples = trajectory(m, TimeGrid::cycles_of(m, cfg.tau_cycles, cfg.steps));
            Output out(out_path);
            write_trajectory_csv(out.stream(), samples);
        } else if (*series) {
            const ModelConfig cfg = series_flags.resolve();
            const Model m = cfg.model();
            const auto pts = gp_vs_time(m, cfg.tau_cycles, points_per_cycle, options_for(cfg));
            Output out(out_path);
            auto& os = out.stream();
            os << "t," << phase_column(units) << ',' << phase_column(units, "unwrapped_phase") << '\n';
            for (const auto& p : pts) {
                os << format_real(p.t) << ',' << format_phase(p.phase, units) << ',';
                if (p.phase) os << format_phase(p.unwrapped, units);
                os << '\n';
            }
        } else if (*pre) {
            if (list) {
                for (const auto& n : preset_names()) std::printf("%s\n", n.c_str());
                return 0;
            }
            if (preset_name.empty()) throw ValidationError("preset name required (see --list)");
            const PresetResult res = run_preset(preset(preset_name, resolution));
            for (const auto& path : write_preset(res, out_dir, units)) std::printf("%s\n", path.string().c_str());
            report_failures(res);
        }
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical error (%s): %s\n", to_string(e.kind()), e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
