#include "geophase/errors.hpp"
#include "geophase/sweeps.hpp"
#include "parallel.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

namespace geophase {

namespace {

ModelConfig entangled(double lambda0, double theta0) {
    ModelConfig c;
    c.lambda0 = lambda0;
    c.theta0 = theta0;
    return c;
}

ModelConfig with_concurrence(double conc, double theta0) {
    ModelConfig c;
    c.concurrence = conc;
    c.theta0 = theta0;
    return c;
}

ModelConfig product_state(double theta0, double q) {
    ModelConfig c;
    c.product = true;
    c.theta0 = theta0;
    c.q = q;
    return c;
}

ModelConfig& ohmic(ModelConfig& c, double chi, double gamma0, double cutoff = 20.0) {
    c.regime = Regime::OhmicBothCoupled;
    c.params.chi = chi;
    c.params.gamma0 = gamma0;
    c.params.cutoff = cutoff;
    return c;
}

std::string fmt_short(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

const char* kConcurrenceNote =
    "concurrence maps to lambda0 = (1 - sqrt(1 - C^2))/2, the lambda0 <= 1/2 branch";

PresetSpec surface(std::string name, std::string title, Quantity q, SweepAxis a1, SweepAxis a2,
                   ModelConfig fixed, const PresetResolution& res) {
    PresetSpec p;
    p.name = std::move(name);
    p.title = std::move(title);
    p.kind = PresetKind::Surface;
    p.sweep.axis1 = std::move(a1);
    p.sweep.axis2 = std::move(a2);
    fixed.steps = res.steps;
    p.sweep.fixed = fixed;
    p.sweep.quantity = q;
    p.sweep.options.steps_per_cycle = res.steps;
    p.options = p.sweep.options;
    return p;
}

PresetSpec build(std::string_view name, const PresetResolution& res) {
    const int g = res.grid;
    PresetSpec p;
    p.name = std::string(name);
    p.options.steps_per_cycle = res.steps;

    auto single = [&](std::string title, ModelConfig c) {
        p.title = std::move(title);
        p.kind = PresetKind::Single;
        c.steps = res.steps;
        p.base = c;
        p.options.with_oracle = true;
        return p;
    };

    if (name == "mes-isolated") return single("maximally entangled start, isolated", entangled(0.5, pi / 2));
    if (name == "werner-theta0") return single("theta0 = 0, lambda0 = 0.3, isolated", entangled(0.3, 0.0));
    if (name == "werner-theta-pi") return single("theta0 = pi, lambda0 = 0.3, isolated", entangled(0.3, pi));
    if (name == "ohmic-reference") {
        ModelConfig c = entangled(0.2, pi / 5);
        return single("lambda0 = 0.2, theta0 = pi/5, ohmic bath with spin-spin coupling", ohmic(c, 0.1, 0.02));
    }

    if (name == "fig0") {
        p = surface("fig0", "GP over concurrence and theta0, isolated", Quantity::GpEntangled,
                    {"concurrence", 0.0, 1.0, g}, {"theta0", 0.0, pi, g}, ModelConfig{}, res);
        p.notes.push_back(kConcurrenceNote);
        return p;
    }
    if (name == "fig1") {
        p = surface("fig1", "GP over theta0 for C = 1 and C = 0.06, isolated", Quantity::GpEntangled,
                    {"concurrence", 1.0, 0.06, 2}, {"theta0", 0.0, pi, g}, ModelConfig{}, res);
        p.notes.push_back(kConcurrenceNote);
        return p;
    }
    if (name == "fig2" || name == "fig6") {
        const bool iso = name == "fig2";
        p.title = iso ? "Bloch trajectories, isolated" : "Bloch trajectories, ohmic bath with spin-spin coupling";
        p.kind = PresetKind::Trajectories;
        p.cycles = iso ? 1 : 4;
        p.points_per_cycle = res.steps;
        const double theta0 = iso ? pi / 3 : pi / 5;
        const std::vector<double> cs = iso ? std::vector<double>{1.0, 0.95, 0.8, 0.43}
                                           : std::vector<double>{0.91, 0.71, 0.43};
        for (double conc : cs) {
            ModelConfig c = with_concurrence(conc, theta0);
            if (!iso) ohmic(c, 0.1, 0.02);
            p.members.push_back({"C=" + fmt_short(conc), c});
        }
        p.notes.push_back(kConcurrenceNote);
        if (iso) p.notes.push_back("theta0 = pi/3 chosen here");
        else p.notes.push_back("4 cycles, the same time span as fig5");
        return p;
    }
    if (name == "fig3") {
        ModelConfig c;
        c.regime = Regime::ChiOnly;
        c.params.chi = 0.1;
        p = surface("fig3", "GP over concurrence and theta0, chi = 0.1, no bath", Quantity::GpEntangled,
                    {"concurrence", 0.0, 1.0, g}, {"theta0", 0.0, pi, g}, c, res);
        p.notes.push_back(kConcurrenceNote);
        return p;
    }
    if (name == "fig4") {
        ModelConfig c;
        ohmic(c, 0.1, 0.02);
        p = surface("fig4", "GP over concurrence and theta0, ohmic bath with spin-spin coupling",
                    Quantity::GpEntangled, {"concurrence", 0.0, 1.0, g}, {"theta0", 0.0, pi, g}, c, res);
        p.notes.push_back(kConcurrenceNote);
        return p;
    }
    if (name == "fig5") {
        p.title = "GP against time for three entanglement weights, with isolated references";
        p.kind = PresetKind::Series;
        p.cycles = 4;
        p.points_per_cycle = 16;
        for (double l0 : {0.2, 0.1, 0.01}) {
            ModelConfig c = entangled(l0, pi / 5);
            p.members.push_back({"lambda0=" + fmt_short(l0), ohmic(c, 0.1, 0.02)});
        }
        for (double l0 : {0.2, 0.1, 0.01})
            p.members.push_back({"lambda0=" + fmt_short(l0) + " isolated", entangled(l0, pi / 5)});
        p.notes.push_back("time span of 4 cycles and 16 samples per cycle chosen here");
        return p;
    }
    if (name == "fig7") {
        ModelConfig c;
        c.theta0 = pi / 3;
        ohmic(c, 0.0, 0.0);
        p = surface("fig7", "GP over gamma0 and concurrence, chi = 0, theta0 = pi/3", Quantity::GpEntangled,
                    {"gamma0", 0.0, 0.1, g}, {"concurrence", 0.0, 1.0, g}, c, res);
        p.notes.push_back(kConcurrenceNote);
        p.notes.push_back("gamma0 range [0, 0.1] chosen here (weak coupling)");
        return p;
    }
    if (name == "fig8") {
        p = surface("fig8", "GP of a product start over q and theta0, isolated", Quantity::GpProduct,
                    {"q", 0.0, 1.0, g}, {"theta0", 0.0, pi, g}, product_state(0.0, 0.0), res);
        p.notes.push_back("p = cos^2(theta0/2)");
        return p;
    }
    if (name == "fig9" || name == "fig10") {
        const bool series = name == "fig9";
        p.title = series ? "GP against time for product starts" : "Bloch trajectories for the fig9 product starts";
        p.kind = series ? PresetKind::Series : PresetKind::Trajectories;
        p.cycles = 4;
        p.points_per_cycle = series ? 16 : res.steps;
        const struct { double theta0; double q; const char* label; } states[] = {
            {pi / 5, 0.05, "q=0.05 theta0=pi/5"},
            {pi / 5, 0.4, "q=0.4 theta0=pi/5"},
            {pi / 3, 0.05, "q=0.05 theta0=pi/3"}};
        for (const auto& s : states) {
            ModelConfig c = product_state(s.theta0, s.q);
            p.members.push_back({s.label, ohmic(c, 0.1, 0.02)});
        }
        p.notes.push_back("p = cos^2(theta0/2)");
        p.notes.push_back("q values for the superposed theta0 = pi/5 curves chosen here as 0.05 and 0.4");
        if (!series) p.notes.push_back("uses the product starts of fig9");
        return p;
    }
    if (name == "fig11") {
        p.title = "GP of product starts against gamma0, chi = 0 and chi = 0.1";
        p.kind = PresetKind::Curves;
        p.x_name = "gamma0";
        const int n = 41;
        for (int i = 0; i < n; ++i) p.xs.push_back(0.1 * i / (n - 1));
        for (double q : {0.4, 0.01})
            for (double chi : {0.0, 0.1}) {
                ModelConfig c = product_state(pi / 3, q);
                p.members.push_back({"q=" + fmt_short(q) + " chi=" + fmt_short(chi), ohmic(c, chi, 0.0)});
            }
        p.notes.push_back("gamma0 range [0, 0.1] with 41 samples chosen here");
        return p;
    }
    throw ValidationError("unknown preset '" + std::string(name) + "'");
}

void write_curve_rows(std::ostream& out, const CurveResult& c, Units units, bool with_unwrapped) {
    for (std::size_t i = 0; i < c.x.size(); ++i) {
        out << c.label << ',' << format_real(c.x[i]) << ',' << format_phase(c.phase[i], units);
        if (with_unwrapped) {
            out << ',';
            if (c.phase[i]) out << format_phase(c.unwrapped[i], units);
        }
        out << '\n';
    }
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{
        "mes-isolated", "werner-theta0", "werner-theta-pi", "ohmic-reference", "fig0", "fig1",
        "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11"};
    return names;
}

PresetSpec preset(std::string_view name, const PresetResolution& resolution) {
    if (resolution.grid < 2) throw ValidationError("grid must be >= 2");
    if (resolution.steps < 16) throw ValidationError("steps per cycle must be >= 16");
    return build(name, resolution);
}

PresetResult run_preset(const PresetSpec& spec, int threads) {
    PresetResult res;
    res.spec = spec;
    switch (spec.kind) {
    case PresetKind::Single: {
        const Model m = spec.base.model();
        res.single = geometric_phase(m, spec.base.tau_cycles * m.period(), spec.options);
        break;
    }
    case PresetKind::Surface: res.surface = run_sweep(spec.sweep, threads); break;
    case PresetKind::Trajectories: {
        res.trajectories.resize(spec.members.size());
        detail::parallel_for(spec.members.size(), threads, [&](std::size_t i) {
            const Model m = spec.members[i].config.model();
            res.trajectories[i] = {spec.members[i].label,
                                   trajectory(m, TimeGrid::cycles_of(m, spec.cycles, spec.points_per_cycle))};
        });
        break;
    }
    case PresetKind::Series: {
        // one task per (member, sample); each sample is an independent evaluation
        const std::size_t per = static_cast<std::size_t>(spec.cycles) * spec.points_per_cycle;
        res.curves.resize(spec.members.size());
        for (std::size_t i = 0; i < spec.members.size(); ++i) {
            auto& c = res.curves[i];
            c.label = spec.members[i].label;
            c.x.resize(per);
            c.phase.resize(per);
            c.unwrapped.resize(per);
            c.errors.resize(per);
        }
        detail::parallel_for(spec.members.size() * per, threads, [&](std::size_t k) {
            auto& c = res.curves[k / per];
            const std::size_t m = k % per;
            try {
                const Model model = spec.members[k / per].config.model();
                c.x[m] = model.period() * static_cast<double>(m + 1) / spec.points_per_cycle;
                c.phase[m] = geometric_phase(model, c.x[m], spec.options).phase;
            } catch (const std::exception& e) {
                c.errors[m] = e.what();
            }
        });
        for (auto& c : res.curves) {
            std::optional<double> last;
            double u = 0.0;
            for (std::size_t m = 0; m < per; ++m) {
                if (!c.phase[m]) { c.unwrapped[m] = std::nan(""); continue; }
                u = last ? u + std::remainder(*c.phase[m] - *last, two_pi) : *c.phase[m];
                last = c.phase[m];
                c.unwrapped[m] = u;
            }
        }
        break;
    }
    case PresetKind::Curves: {
        const std::size_t per = spec.xs.size();
        res.curves.resize(spec.members.size());
        for (std::size_t i = 0; i < spec.members.size(); ++i) {
            res.curves[i].label = spec.members[i].label;
            res.curves[i].x = spec.xs;
            res.curves[i].phase.resize(per);
            res.curves[i].errors.resize(per);
        }
        detail::parallel_for(spec.members.size() * per, threads, [&](std::size_t k) {
            auto& c = res.curves[k / per];
            const std::size_t j = k % per;
            try {
                ModelConfig cfg = spec.members[k / per].config;
                cfg.set(spec.x_name, format_real(spec.xs[j]));
                const Model model = cfg.model();
                c.phase[j] = geometric_phase(model, cfg.tau_cycles * model.period(), spec.options).phase;
            } catch (const std::exception& e) {
                c.errors[j] = e.what();
            }
        });
        break;
    }
    }
    return res;
}

void write_preset_csv(std::ostream& out, const PresetResult& r, Units units) {
    switch (r.spec.kind) {
    case PresetKind::Single: write_gp_csv(out, *r.single); break;
    case PresetKind::Surface: write_sweep_csv(out, *r.surface, units); break;
    case PresetKind::Trajectories:
        out << "curve,t,x,y,z,purity\n";
        for (const auto& t : r.trajectories) write_trajectory_rows(out, t.samples, t.label);
        break;
    case PresetKind::Series:
        out << "curve,t," << phase_column(units) << ',' << phase_column(units, "unwrapped_phase") << '\n';
        for (const auto& c : r.curves) write_curve_rows(out, c, units, true);
        break;
    case PresetKind::Curves:
        out << "curve," << r.spec.x_name << ',' << phase_column(units) << '\n';
        for (const auto& c : r.curves) write_curve_rows(out, c, units, false);
        break;
    }
}

void write_preset_sidecar(std::ostream& out, const PresetSpec& spec, Units units) {
    out << "# " << spec.title << '\n';
    out << "preset = " << spec.name << '\n';
    out << "steps_per_cycle = " << spec.options.steps_per_cycle << '\n';
    out << "quadrature_tolerance = " << format_real(spec.options.quadrature_tolerance) << '\n';
    out << "units = " << (units == Units::Pi ? "pi" : "rad") << '\n';
    auto dump = [&out](const ModelConfig& c) {
        for (const auto& [k, v] : c.entries()) out << k << " = " << v << '\n';
    };
    switch (spec.kind) {
    case PresetKind::Single:
        out << "tau = " << spec.base.tau_cycles << " cycles\n\n[model]\n";
        dump(spec.base);
        break;
    case PresetKind::Surface: {
        const auto& s = spec.sweep;
        out << "quantity = " << to_string(s.quantity) << '\n';
        out << "axis1 = " << s.axis1.name << ':' << format_real(s.axis1.lo) << ':' << format_real(s.axis1.hi)
            << ':' << s.axis1.count << '\n';
        out << "axis2 = " << s.axis2.name << ':' << format_real(s.axis2.lo) << ':' << format_real(s.axis2.hi)
            << ':' << s.axis2.count << "\n\n[fixed]\n";
        dump(s.cell_config(s.axis1.lo, s.axis2.lo));
        out << "# axis keys above are overridden per cell\n";
        break;
    }
    case PresetKind::Trajectories:
    case PresetKind::Series:
    case PresetKind::Curves:
        out << "cycles = " << spec.cycles << '\n';
        if (spec.kind != PresetKind::Curves) out << "samples_per_cycle = " << spec.points_per_cycle << '\n';
        if (spec.kind == PresetKind::Curves)
            out << spec.x_name << " = " << format_real(spec.xs.front()) << " .. " << format_real(spec.xs.back())
                << " (" << spec.xs.size() << " samples)\n";
        for (const auto& m : spec.members) {
            out << "\n[" << m.label << "]\n";
            dump(m.config);
        }
        break;
    }
    if (!spec.notes.empty()) {
        out << '\n';
        for (const auto& n : spec.notes) out << "# " << n << '\n';
    }
}

std::vector<std::filesystem::path> write_preset(const PresetResult& result, const std::filesystem::path& dir,
                                                Units units) {
    std::filesystem::create_directories(dir);
    const auto csv = dir / (result.spec.name + ".csv");
    const auto side = dir / (result.spec.name + ".params.txt");
    {
        std::ofstream f(csv, std::ios::binary);
        if (!f) throw ValidationError("cannot write " + csv.string());
        write_preset_csv(f, result, units);
    }
    {
        std::ofstream f(side, std::ios::binary);
        if (!f) throw ValidationError("cannot write " + side.string());
        write_preset_sidecar(f, result.spec, units);
    }
    return {csv, side};
}

}  // namespace geophase
