#include "geophase/decoherence.hpp"

#include "geophase/errors.hpp"

#include <cmath>
#include <limits>

namespace geophase {

namespace {

double wrap_pm_pi(double x) noexcept {
    x = std::remainder(x, two_pi);
    return x <= -pi ? x + two_pi : x;
}

void require_regime(const Model& model, Regime regime, const char* op) {
    if (model.regime() != regime)
        throw ValidationError(std::string(op) + " needs regime " + std::string(to_string(regime)));
}

}  // namespace

double ohmic_envelope(double t, double gamma0, double cutoff) noexcept {
    if (gamma0 == 0.0) return 1.0;
    const double lt = cutoff * t;
    return std::exp(-2.0 * gamma0 * std::log1p(lt * lt));
}

double CoherenceLaw::envelope(double t) const noexcept { return ohmic_envelope(t, gamma0, cutoff); }

cplx CoherenceLaw::operator()(double t) const noexcept {
    const double c = std::cos(omega * t);
    const double s = std::sin(omega * t);
    const double d = envelope(t);
    return product ? cplx(d * c, d * amplitude * s) : cplx(d * amplitude * c, -d * s);
}

double CoherenceLaw::phase_flux(double t) const noexcept {
    const double d = envelope(t);
    return (product ? amplitude : -amplitude) * omega * d * d;
}

double CoherenceLaw::theta_dot(double t) const {
    const double c = std::cos(omega * t);
    const double s = std::sin(omega * t);
    const double g2 = product ? c * c + amplitude * amplitude * s * s
                              : amplitude * amplitude * c * c + s * s;
    if (g2 == 0.0)
        throw NumericalError(NumericalError::Kind::UndefinedDerivative,
                             "dtheta/dt undefined at a zero of Gamma");
    return (product ? amplitude : -amplitude) * omega / g2;
}

CoherenceLaw coherence_law(const Model& model) {
    CoherenceLaw law;
    law.product = !model.entangled();
    law.amplitude = law.product ? 2.0 * model.product_init().q - 1.0
                                : 2.0 * model.entangled_init().lambda0 - 1.0;
    law.omega = model.coherence_frequency();
    law.gamma0 = model.has_envelope() ? model.params().gamma0 : 0.0;
    law.cutoff = model.params().cutoff;
    return law;
}

cplx gamma_entangled_ohmic(double t, const Model& model) {
    require_regime(model, Regime::OhmicBothCoupled, "gamma_entangled_ohmic");
    const auto& p = model.params();
    const double a = 2.0 * model.entangled_init().lambda0 - 1.0;
    const double w = model.omega_r();
    const double d = std::exp(-2.0 * p.gamma0 * std::log1p(p.cutoff * p.cutoff * t * t));
    return {d * a * std::cos(w * t), -d * std::sin(w * t)};
}

cplx gamma_chi_only(double t, const Model& model) {
    require_regime(model, Regime::ChiOnly, "gamma_chi_only");
    const double a = 2.0 * model.entangled_init().lambda0 - 1.0;
    const double w = 2.0 * model.params().chi;
    return {a * std::cos(w * t), -std::sin(w * t)};
}

cplx gamma_spin2_uncoupled(double t, const Model& model) {
    require_regime(model, Regime::OhmicSpin2Uncoupled, "gamma_spin2_uncoupled");
    const auto& p = model.params();
    const double a = 2.0 * model.entangled_init().lambda0 - 1.0;
    const double w = 2.0 * p.chi;
    const double d = ohmic_envelope(t, p.gamma0, p.cutoff);
    return d * cplx(a * std::cos(w * t), -std::sin(w * t));
}

cplx gamma_product(double t, const Model& model) {
    (void)model.product_init();  // throws for an entangled model
    return coherence_law(model)(t);
}

cplx decoherence_factor(double t, const Model& model) { return coherence_law(model)(t); }

double theta_dot_analytic(double t, const Model& model) { return coherence_law(model).theta_dot(t); }

DecoherenceTrace polar_trace(const std::function<cplx(double)>& gamma, const TimeGrid& grid,
                             const std::function<double(double)>& theta_dot) {
    grid.validate();
    const int n = grid.size();
    DecoherenceTrace tr;
    tr.grid = grid;
    tr.gamma_values.resize(n);
    tr.r_values.resize(n);
    tr.theta_values.resize(n);
    tr.theta_dot_values.resize(n);

    std::vector<char> zero(n, 0);
    for (int j = 0; j < n; ++j) {
        tr.gamma_values[j] = gamma(grid.time(j));
        tr.r_values[j] = std::abs(tr.gamma_values[j]);
        zero[j] = tr.r_values[j] < kZeroModulus;
    }
    for (int j = 0; j + 1 < n; ++j)
        if (zero[j] && zero[j + 1])
            throw NumericalError(NumericalError::Kind::DegenerateTrace,
                                 "Gamma vanishes on consecutive samples");

    auto raw_arg = [&](int j) {
        if (!zero[j]) return std::arg(tr.gamma_values[j]);
        // isolated zero: one-sided limit from the left, or from the right at t = 0
        return std::arg(tr.gamma_values[j > 0 ? j - 1 : j + 1]);
    };

    double prev = raw_arg(0);
    tr.theta_values[0] = prev;
    for (int j = 1; j < n; ++j) {
        const double cur = raw_arg(j);
        tr.theta_values[j] = tr.theta_values[j - 1] + wrap_pm_pi(cur - prev);
        prev = cur;
    }

    const double h = grid.dt();
    for (int j = 0; j < n; ++j) {
        if (theta_dot) {
            try {
                tr.theta_dot_values[j] = theta_dot(grid.time(j));
            } catch (const NumericalError&) {
                tr.theta_dot_values[j] = std::numeric_limits<double>::quiet_NaN();
            }
        } else if (j == 0) {
            tr.theta_dot_values[j] = (tr.theta_values[1] - tr.theta_values[0]) / h;
        } else if (j == n - 1) {
            tr.theta_dot_values[j] = (tr.theta_values[j] - tr.theta_values[j - 1]) / h;
        } else {
            tr.theta_dot_values[j] = (tr.theta_values[j + 1] - tr.theta_values[j - 1]) / (2.0 * h);
        }
    }
    return tr;
}

DecoherenceTrace polar_trace(const Model& model, const TimeGrid& grid) {
    const CoherenceLaw law = coherence_law(model);
    return polar_trace([&law](double t) { return law(t); }, grid,
                       [&law](double t) { return law.theta_dot(t); });
}

}  // namespace geophase
