// decoherence.hpp: closed-form decoherence factors Gamma(t) and their polar form

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "geophase/params.hpp"

namespace geophase {

using cplx = std::complex<double>;

// Below this modulus Gamma counts as an exact zero.
inline constexpr double kZeroModulus = 1e-12;

// (1 + Lambda^2 t^2)^(-2 gamma0), natural log in the exponent
double ohmic_envelope(double t, double gamma0, double cutoff) noexcept;

// Every regime reduces to Gamma(t) = D(t) g(t) with
//   entangled: g = A cos(w t) - i sin(w t),   A = 2 lambda0 - 1
//   product:   g = cos(w t) + i B sin(w t),   B = 2 q - 1
struct CoherenceLaw {
    bool product{false};
    double amplitude{1.0};  // A or B
    double omega{0.0};
    double gamma0{0.0};     // 0 switches the envelope off
    double cutoff{1.0};

    cplx operator()(double t) const noexcept;
    double envelope(double t) const noexcept;
    // d(arg Gamma)/dt; throws UndefinedDerivative at an exact zero of g
    double theta_dot(double t) const;
    // Im(conj(Gamma) dGamma/dt) = r^2 dtheta/dt, smooth through zeros of Gamma
    double phase_flux(double t) const noexcept;
};

CoherenceLaw coherence_law(const Model& model);

cplx gamma_entangled_ohmic(double t, const Model& model);
cplx gamma_chi_only(double t, const Model& model);
cplx gamma_spin2_uncoupled(double t, const Model& model);
cplx gamma_product(double t, const Model& model);
// Dispatch on regime and initial state.
cplx decoherence_factor(double t, const Model& model);
double theta_dot_analytic(double t, const Model& model);

struct DecoherenceTrace {
    TimeGrid grid;
    std::vector<cplx> gamma_values;
    std::vector<double> r_values;
    std::vector<double> theta_values;      // unwrapped
    std::vector<double> theta_dot_values;
};

// Samples Gamma on the grid. Isolated zeros (single samples, typically t = 0 for a
// maximally entangled start) take their argument from the neighbouring sample;
// a run of two or more zero samples throws DegenerateTrace.
// Without theta_dot the derivative comes from central differences of theta.
DecoherenceTrace polar_trace(const std::function<cplx(double)>& gamma, const TimeGrid& grid,
                             const std::function<double(double)>& theta_dot = {});
DecoherenceTrace polar_trace(const Model& model, const TimeGrid& grid);

}  // namespace geophase
