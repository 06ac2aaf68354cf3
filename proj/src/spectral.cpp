#include "geophase/spectral.hpp"

#include "geophase/errors.hpp"

#include <algorithm>
#include <cmath>

namespace geophase {

namespace {

// Real (cos, sin) pair of the eigenvector for eigenvalue eps, sin >= 0.
// Two null-space rows are available; the longer one is better conditioned.
std::pair<double, double> real_pair(double eps, double a, double kappa, bool lower) {
    double c1 = kappa, s1 = eps - a;  // from the first row
    if (lower) { c1 = -c1; s1 = -s1; }
    const double c2 = eps + a - 1.0, s2 = kappa;  // from the second row
    double c = c1, s = s1;
    if (std::hypot(c2, s2) > std::hypot(c1, s1)) { c = c2; s = s2; }
    const double n = std::hypot(c, s);
    if (n == 0.0) return {lower ? 0.0 : 1.0, lower ? 1.0 : 0.0};
    c /= n;
    s /= n;
    if (s < 0.0) { c = -c; s = -s; }
    return {c, s};
}

}  // namespace

SpectralSample eigensystem(const QubitDensity& rho, std::optional<double> coherence_phase,
                           const SpectralSample* previous) {
    const double a = rho(0, 0).real();
    const cplx c = rho(0, 1);
    const double kappa = std::abs(c);
    const double phase = coherence_phase ? *coherence_phase : (kappa > 0.0 ? std::arg(c) : 0.0);
    const double half_gap = 0.5 * std::hypot(2.0 * a - 1.0, 2.0 * kappa);

    SpectralSample s;
    s.eps_plus = 0.5 + half_gap;
    s.eps_minus = 0.5 - half_gap;
    s.degenerate = 2.0 * half_gap < kDegenerateGap;

    const cplx e = std::polar(1.0, phase);
    const auto [cp, sp] = real_pair(s.eps_plus, a, kappa, false);
    const auto [cm, sm] = real_pair(s.eps_minus, a, kappa, true);
    s.cos_plus = cp;
    s.cos_minus = cm;
    s.vec_plus << e * cp, sp;
    s.vec_minus << e * cm, sm;

    if (previous && !previous->degenerate && !s.degenerate) {
        const double keep = std::abs(previous->vec_plus.dot(s.vec_plus));
        const double swap = std::abs(previous->vec_plus.dot(s.vec_minus));
        if (swap > keep) {
            std::swap(s.eps_plus, s.eps_minus);
            std::swap(s.cos_plus, s.cos_minus);
            std::swap(s.vec_plus, s.vec_minus);
            s.swapped = true;
        }
    }
    return s;
}

std::optional<double> mixing_angle_cos(double eps, const Model& model, double r) {
    const auto& e = model.entangled_init();
    if (r < 0.0) throw ValidationError("modulus must be >= 0");
    const double num = r * std::sin(e.theta0);
    const double bracket = (2.0 * eps - 1.0) + (1.0 - 2.0 * e.lambda0) * std::cos(e.theta0);
    const double den = std::hypot(num, bracket);
    if (den < 1e-15) return std::nullopt;
    return num / den;
}

std::pair<double, double> eigenvalues_entangled(const Model& model, double r) {
    const auto& e = model.entangled_init();
    const double c2 = std::cos(e.theta0) * std::cos(e.theta0);
    const double s2 = std::sin(e.theta0) * std::sin(e.theta0);
    const double l0 = e.lambda0;
    const double root = std::sqrt(std::max(0.0, c2 + r * r * s2 + 4.0 * l0 * (l0 - 1.0) * c2));
    return {0.5 + 0.5 * root, 0.5 - 0.5 * root};
}

SpectralTrajectory spectral_trajectory(const Model& model, const TimeGrid& grid,
                                       const DecoherenceTrace& trace) {
    if (static_cast<int>(trace.theta_values.size()) != grid.size() || trace.grid.tau != grid.tau)
        throw ValidationError("decoherence trace does not match the grid");
    SpectralTrajectory st;
    st.grid = grid;
    st.samples.reserve(grid.size());
    const double w1 = model.params().omega1;
    for (int j = 0; j < grid.size(); ++j) {
        const double t = grid.time(j);
        const QubitDensity rho = reduced_density_spin1(t, model);
        const SpectralSample* prev = j > 0 ? &st.samples.back() : nullptr;
        st.samples.push_back(eigensystem(rho, trace.theta_values[j] - w1 * t, prev));
        if (st.samples.back().degenerate) st.degenerate_at.push_back(j);
    }
    return st;
}

}  // namespace geophase
