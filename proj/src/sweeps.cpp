#include "geophase/sweeps.hpp"

#include "geophase/errors.hpp"
#include "parallel.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <set>
#include <thread>

namespace geophase {

namespace {

const std::set<std::string, std::less<>> kAxisNames{
    "lambda0", "concurrence", "theta0", "p", "q", "gamma0", "chi", "cutoff", "omega1", "omega2"};

bool product_axis(std::string_view name) { return name == "p" || name == "q"; }
bool entangled_axis(std::string_view name) { return name == "lambda0" || name == "concurrence"; }

std::string value_column(Quantity q, Units units) {
    switch (q) {
    case Quantity::GpEntangled:
    case Quantity::GpProduct: return phase_column(units);
    case Quantity::GpVsTime: return phase_column(units, "unwrapped_phase");
    case Quantity::Trajectory: return "bloch_radius";
    }
    return "value";
}

std::optional<double> evaluate_cell(const SweepSpec& spec, const ModelConfig& cfg) {
    const Model m = cfg.model();
    const double tau = cfg.tau_cycles * m.period();
    switch (spec.quantity) {
    case Quantity::GpEntangled:
    case Quantity::GpProduct: return geometric_phase(m, tau, spec.options).phase;
    case Quantity::GpVsTime: {
        const auto series = gp_vs_time(m, cfg.tau_cycles, 1, spec.options);
        if (!series.back().phase) return std::nullopt;
        return series.back().unwrapped;
    }
    case Quantity::Trajectory: return bloch_coords(reduced_density_spin1(tau, m)).norm();
    }
    return std::nullopt;
}

void evaluate_into(const SweepSpec& spec, SweepCell& cell) {
    try {
        cell.value = evaluate_cell(spec, spec.cell_config(cell.v1, cell.v2));
        if (!cell.value) cell.error = "phase undefined (both branch terms vanish)";
    } catch (const std::exception& e) {
        cell.value.reset();
        cell.error = e.what();
    }
}

SweepResult empty_result(const SweepSpec& spec) {
    spec.validate();
    SweepResult res;
    res.spec = spec;
    res.cells.resize(static_cast<std::size_t>(spec.axis1.count) * spec.axis2.count);
    for (int i = 0; i < spec.axis1.count; ++i)
        for (int j = 0; j < spec.axis2.count; ++j) {
            auto& c = res.cells[static_cast<std::size_t>(i) * spec.axis2.count + j];
            c.v1 = spec.axis1.value(i);
            c.v2 = spec.axis2.value(j);
        }
    return res;
}

}  // namespace

std::string_view to_string(Quantity q) noexcept {
    switch (q) {
    case Quantity::GpEntangled: return "gp_entangled";
    case Quantity::GpProduct: return "gp_product";
    case Quantity::Trajectory: return "trajectory";
    case Quantity::GpVsTime: return "gp_vs_time";
    }
    return "unknown";
}

Quantity parse_quantity(std::string_view text) {
    if (text == "gp_entangled") return Quantity::GpEntangled;
    if (text == "gp_product") return Quantity::GpProduct;
    if (text == "trajectory") return Quantity::Trajectory;
    if (text == "gp_vs_time") return Quantity::GpVsTime;
    throw ValidationError("unknown quantity '" + std::string(text) +
                          "' (gp_entangled, gp_product, trajectory, gp_vs_time)");
}

Units parse_units(std::string_view text) {
    if (text == "pi") return Units::Pi;
    if (text == "rad") return Units::Radians;
    throw ValidationError("units must be 'rad' or 'pi'");
}

std::string phase_column(Units units, std::string_view stem) {
    return std::string(stem) + (units == Units::Pi ? "_over_pi" : "_rad");
}

std::string format_phase(std::optional<double> phase, Units units) {
    if (!phase) return {};
    return format_real(units == Units::Pi ? *phase / pi : *phase);
}

double SweepAxis::value(int i) const noexcept {
    if (i == 0) return lo;
    if (i == count - 1) return hi;
    return lo + (hi - lo) * i / (count - 1);
}

SweepAxis parse_axis(std::string_view text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto colon = text.find(':', start);
        parts.emplace_back(text.substr(start, colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    if (parts.size() != 4) throw ValidationError("axis must look like name:lo:hi:count");
    SweepAxis a;
    a.name = parts[0];
    a.lo = parse_real(parts[1]);
    a.hi = parse_real(parts[2]);
    const double n = parse_real(parts[3]);
    if (n != std::floor(n) || n < 2 || n > 1e6) throw ValidationError("axis count must be an integer >= 2");
    a.count = static_cast<int>(n);
    return a;
}

void SweepSpec::validate() const {
    for (const auto* a : {&axis1, &axis2}) {
        if (!kAxisNames.count(a->name)) throw ValidationError("cannot sweep '" + a->name + "'");
        if (a->count < 2) throw ValidationError("axis '" + a->name + "' needs at least 2 samples");
        if (!std::isfinite(a->lo) || !std::isfinite(a->hi))
            throw ValidationError("axis '" + a->name + "' has a non-finite bound");
    }
    if (axis1.name == axis2.name) throw ValidationError("sweep axes must differ");
    const bool product = quantity == Quantity::GpProduct || (quantity != Quantity::GpEntangled && fixed.product);
    for (const auto* a : {&axis1, &axis2}) {
        if (product && entangled_axis(a->name))
            throw ValidationError("axis '" + a->name + "' needs an entangled initial state");
        if (!product && product_axis(a->name))
            throw ValidationError("axis '" + a->name + "' needs a product initial state");
    }
    if (entangled_axis(axis1.name) && entangled_axis(axis2.name))
        throw ValidationError("lambda0 and concurrence describe the same parameter");
    // corners must validate; interior points then do too since every domain is an interval
    for (double v1 : {axis1.lo, axis1.hi})
        for (double v2 : {axis2.lo, axis2.hi}) (void)cell_config(v1, v2).model();
}

ModelConfig SweepSpec::cell_config(double v1, double v2) const {
    ModelConfig cfg = fixed;
    if (quantity == Quantity::GpProduct) cfg.product = true;
    if (quantity == Quantity::GpEntangled) cfg.product = false;
    for (const auto& [name, v] : {std::pair{axis1.name, v1}, std::pair{axis2.name, v2}}) {
        if (name == "lambda0") cfg.concurrence.reset();
        if (name == "concurrence") cfg.lambda0.reset();
        if (name == "p") cfg.theta0.reset();
        if (name == "theta0" && cfg.product) cfg.p.reset();
        cfg.set(name, format_real(v));
    }
    return cfg;
}

int worker_threads() {
    if (const char* env = std::getenv("GEOPHASE_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n >= 1) return static_cast<int>(std::min(n, 1024L));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult run_sweep(const SweepSpec& spec, int threads) {
    SweepResult res = empty_result(spec);
    detail::parallel_for(res.cells.size(), threads,
                         [&](std::size_t i) { evaluate_into(res.spec, res.cells[i]); });
    return res;
}

SweepResult run_sweep_in_order(const SweepSpec& spec, const std::vector<std::size_t>& order) {
    SweepResult res = empty_result(spec);
    if (order.size() != res.cells.size()) throw ValidationError("order must cover every cell");
    for (std::size_t i : order) evaluate_into(res.spec, res.cells.at(i));
    return res;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result, Units units) {
    const auto& s = result.spec;
    const bool is_phase = s.quantity != Quantity::Trajectory;
    out << s.axis1.name << ',' << s.axis2.name << ',' << value_column(s.quantity, units) << '\n';
    for (const auto& c : result.cells) {
        out << format_real(c.v1) << ',' << format_real(c.v2) << ',';
        if (c.value) out << (is_phase ? format_phase(c.value, units) : format_real(*c.value));
        out << '\n';
    }
}

void write_gp_csv(std::ostream& out, const GpResult& r) {
    out << "phase_rad,phase_over_pi,term_plus_re,term_plus_im,term_minus_re,term_minus_im,"
           "sum_re,sum_im,degenerate,oracle_phase_rad,oracle_error_rad,quadrature_delta_rad\n";
    auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
    out << opt(r.phase) << ',' << opt(r.phase_over_pi()) << ',' << format_real(r.branch_terms[0].real())
        << ',' << format_real(r.branch_terms[0].imag()) << ',' << format_real(r.branch_terms[1].real())
        << ',' << format_real(r.branch_terms[1].imag()) << ',' << format_real(r.sum.real()) << ','
        << format_real(r.sum.imag()) << ',' << (r.degenerate ? 1 : 0) << ',' << opt(r.oracle_phase)
        << ',' << opt(r.oracle_error_estimate) << ',' << format_real(r.quadrature_delta) << '\n';
}

}  // namespace geophase
