// _core: Python bindings for the geophase library

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>


#include "geophase/errors.hpp"
#include "geophase/sweeps.hpp"

namespace py = pybind11;
using namespace geophase;

namespace {

// keyword values may be numbers or strings such as "pi/5"
std::string as_text(const py::handle& v) {
    if (py::isinstance<py::str>(v)) return v.cast<std::string>();
    if (py::isinstance<py::bool_>(v)) throw ValidationError("boolean is not a valid parameter value");
    if (py::isinstance<py::int_>(v)) return std::to_string(v.cast<long long>());
    return format_real(v.cast<double>());
}

ModelConfig config_from(const py::kwargs& kw) {
    ModelConfig cfg;
    for (const auto& [k, v] : kw) cfg.set(k.cast<std::string>(), as_text(v));
    return cfg;
}

py::dict gp_dict(const GpResult& r) {
    py::dict d;
    d["phase"] = r.phase ? py::cast(*r.phase) : py::none();
    d["phase_over_pi"] = r.phase ? py::cast(*r.phase / pi) : py::none();
    d["branch_terms"] = py::make_tuple(r.branch_terms[0], r.branch_terms[1]);
    d["sum"] = r.sum;
    d["degenerate"] = r.degenerate;
    d["oracle_phase"] = r.oracle_phase ? py::cast(*r.oracle_phase) : py::none();
    d["oracle_error_estimate"] = r.oracle_error_estimate ? py::cast(*r.oracle_error_estimate) : py::none();
    d["quadrature_delta"] = r.quadrature_delta;
    d["intervals"] = r.intervals;
    return d;
}

py::array_t<double> trajectory_array(const std::vector<TrajectorySample>& s) {
    py::array_t<double> out({static_cast<py::ssize_t>(s.size()), py::ssize_t{5}});
    auto a = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto n = static_cast<py::ssize_t>(i);
        a(n, 0) = s[i].t;
        a(n, 1) = s[i].point.x;
        a(n, 2) = s[i].point.y;
        a(n, 3) = s[i].point.z;
        a(n, 4) = s[i].purity;
    }
    return out;
}

GpOptions options(int steps, bool oracle) {
    GpOptions o;
    o.steps_per_cycle = steps;
    o.with_oracle = oracle;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Geometric phase of one spin coupled to a second spin and an ohmic bath";

    static py::exception<NumericalError> numerical_exc(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ValidationError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const NumericalError& e) {
            py::set_error(numerical_exc, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
        }
    });

    m.attr("pi") = pi;

    py::enum_<Regime>(m, "Regime")
        .value("ISOLATED", Regime::Isolated)
        .value("CHI_ONLY", Regime::ChiOnly)
        .value("OHMIC", Regime::OhmicBothCoupled)
        .value("OHMIC_SPIN2_UNCOUPLED", Regime::OhmicSpin2Uncoupled);

    py::class_<Model>(m, "Model")
        .def_property_readonly("regime", &Model::regime)
        .def_property_readonly("entangled", &Model::entangled)
        .def_property_readonly("omega_r", &Model::omega_r)
        .def_property_readonly("period", &Model::period)
        .def_property_readonly("concurrence", &Model::concurrence)
        .def_property_readonly("lambda0",
                               [](const Model& s) -> std::optional<double> {
                                   if (!s.entangled()) return std::nullopt;
                                   return s.entangled_init().lambda0;
                               })
        .def_property_readonly("theta0",
                               [](const Model& s) {
                                   return s.entangled() ? s.entangled_init().theta0 : theta0_from_p(s.product_init().p);
                               })
        .def_property_readonly("p",
                               [](const Model& s) -> std::optional<double> {
                                   if (s.entangled()) return std::nullopt;
                                   return s.product_init().p;
                               })
        .def_property_readonly("q",
                               [](const Model& s) -> std::optional<double> {
                                   if (s.entangled()) return std::nullopt;
                                   return s.product_init().q;
                               })
        .def_property_readonly("params", [](const Model& s) {
            const auto& p = s.params();
            py::dict d;
            d["omega1"] = p.omega1;
            d["omega2"] = p.omega2;
            d["chi"] = p.chi;
            d["gamma0"] = p.gamma0;
            d["cutoff"] = p.cutoff;
            return d;
        });

    m.def("model", [](const py::kwargs& kw) { return config_from(kw).model(); },
          "Validated model from keyword parameters: lambda0 | concurrence, theta0 | p, q, regime, chi, "
          "gamma0, cutoff, omega1, omega2, init. Values may be strings like 'pi/5'.");

    m.def("concurrence", [](double lambda0) { return concurrence(EntangledInit{lambda0, 0.0}); }, py::arg("lambda0"));
    m.def("lambda0_from_concurrence", &lambda0_from_concurrence, py::arg("concurrence"));
    m.def("parse_real", [](const std::string& s) { return parse_real(s); }, py::arg("text"));

    m.def("decoherence_factor", &decoherence_factor, py::arg("t"), py::arg("model"));
    m.def("reduced_density", &reduced_density_spin1, py::arg("t"), py::arg("model"),
          "2x2 complex density matrix of spin 1 at time t");
    m.def(
        "bloch",
        [](double t, const Model& md) {
            const BlochPoint b = bloch_coords(reduced_density_spin1(t, md));
            return py::make_tuple(b.x, b.y, b.z);
        },
        py::arg("t"), py::arg("model"));
    m.def(
        "trajectory",
        [](const Model& md, int cycles, int steps) {
            return trajectory_array(trajectory(md, TimeGrid::cycles_of(md, cycles, steps)));
        },
        py::arg("model"), py::arg("cycles") = 1, py::arg("steps") = 512,
        "array with columns t, x, y, z, purity");

    m.def(
        "geometric_phase",
        [](const Model& md, std::optional<double> tau, int steps, bool oracle) {
            return gp_dict(geometric_phase(md, tau.value_or(md.period()), options(steps, oracle)));
        },
        py::arg("model"), py::arg("tau") = py::none(), py::arg("steps_per_cycle") = 512, py::arg("oracle") = false,
        "geometric phase at tau (default one period) as a dict");
    m.def(
        "gp_discretized",
        [](const Model& md, std::optional<double> tau, int steps) {
            const DiscretizedGp d = gp_discretized([&](double t) { return reduced_density_spin1(t, md); },
                                                   tau.value_or(md.period()), steps);
            py::dict out;
            out["phase"] = d.phase ? py::cast(*d.phase) : py::none();
            out["extrapolated"] = d.extrapolated ? py::cast(*d.extrapolated) : py::none();
            out["branch_terms"] = py::make_tuple(d.branch_terms[0], d.branch_terms[1]);
            return out;
        },
        py::arg("model"), py::arg("tau") = py::none(), py::arg("steps") = 4096);
    m.def(
        "gp_vs_time",
        [](const Model& md, int cycles, int points_per_cycle, int steps) {
            const auto pts = gp_vs_time(md, cycles, points_per_cycle, options(steps, false));
            py::array_t<double> out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{3}});
            auto a = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const auto n = static_cast<py::ssize_t>(i);
                a(n, 0) = pts[i].t;
                a(n, 1) = pts[i].phase.value_or(std::nan(""));
                a(n, 2) = pts[i].phase ? pts[i].unwrapped : std::nan("");
            }
            return out;
        },
        py::arg("model"), py::arg("cycles") = 1, py::arg("points_per_cycle") = 1, py::arg("steps_per_cycle") = 512,
        "array with columns t, phase, unwrapped phase");

    m.def(
        "sweep",
        [](const std::string& axis1, const std::string& axis2, const std::string& quantity, int steps, int threads,
           const py::kwargs& fixed) {
            SweepSpec spec;
            spec.axis1 = parse_axis(axis1);
            spec.axis2 = parse_axis(axis2);
            spec.quantity = parse_quantity(quantity);
            spec.fixed = config_from(fixed);
            spec.options = options(steps, false);
            SweepResult res;
            {
                py::gil_scoped_release nogil;
                res = run_sweep(spec, threads > 0 ? threads : worker_threads());
            }
            py::array_t<double> values({spec.axis1.count, spec.axis2.count});
            auto a = values.mutable_unchecked<2>();
            for (int i = 0; i < spec.axis1.count; ++i)
                for (int j = 0; j < spec.axis2.count; ++j) a(i, j) = res.at(i, j).value.value_or(std::nan(""));
            std::vector<double> v1, v2;
            for (int i = 0; i < spec.axis1.count; ++i) v1.push_back(spec.axis1.value(i));
            for (int j = 0; j < spec.axis2.count; ++j) v2.push_back(spec.axis2.value(j));
            return py::make_tuple(py::cast(v1), py::cast(v2), values);
        },
        py::arg("axis1"), py::arg("axis2"), py::arg("quantity") = "gp_entangled", py::arg("steps_per_cycle") = 512,
        py::arg("threads") = 0, "axes as 'name:lo:hi:count'; returns (axis1 values, axis2 values, grid)");

    m.def("preset_names", &preset_names);
    m.def(
        "run_preset",
        [](const std::string& name, const std::filesystem::path& out_dir, int grid, int steps,
           const std::string& units) {
            py::gil_scoped_release nogil;
            const PresetResult r = run_preset(preset(name, {grid, steps}));
            return write_preset(r, out_dir, parse_units(units));
        },
        py::arg("name"), py::arg("out_dir") = ".", py::arg("grid") = 64, py::arg("steps") = 512,
        py::arg("units") = "pi", "writes <name>.csv and <name>.params.txt, returns the paths");
}
