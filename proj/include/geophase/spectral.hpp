// spectral.hpp: eigen-decomposition of the spin 1 state in a fixed gauge

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "geophase/decoherence.hpp"
#include "geophase/density.hpp"

namespace geophase {

inline constexpr double kDegenerateGap = 1e-9;

// Eigenvectors are e^{i phi} cos(theta)|0> + sin(theta)|1> with sin(theta) >= 0,
// phi = theta(t) - omega1 t the coherence phase.
struct SpectralSample {
    double eps_plus{1.0};
    double eps_minus{0.0};
    double cos_plus{1.0};   // signed cos(theta_+)
    double cos_minus{0.0};
    Eigen::Vector2cd vec_plus{1.0, 0.0};
    Eigen::Vector2cd vec_minus{0.0, 1.0};
    bool degenerate{false};
    bool swapped{false};    // labels follow the previous sample, not the ordering
};

// Without coherence_phase the argument of rho_01 is used (0 if it vanishes).
// With previous, labels are kept on the branch with the larger overlap.
SpectralSample eigensystem(const QubitDensity& rho, std::optional<double> coherence_phase = {},
                           const SpectralSample* previous = nullptr);

// r sin(theta0) / sqrt(r^2 sin^2(theta0) + [(2 eps - 1) + (1 - 2 lambda0) cos(theta0)]^2);
// empty when numerator and bracket both vanish.
std::optional<double> mixing_angle_cos(double eps, const Model& model, double r);

// eps_+- = 1/2 +- 1/2 sqrt(cos^2 t0 + r^2 sin^2 t0 + 4 l0 (l0 - 1) cos^2 t0)
std::pair<double, double> eigenvalues_entangled(const Model& model, double r);

struct SpectralTrajectory {
    TimeGrid grid;
    std::vector<SpectralSample> samples;
    std::vector<int> degenerate_at;
};

SpectralTrajectory spectral_trajectory(const Model& model, const TimeGrid& grid,
                                       const DecoherenceTrace& trace);

}  // namespace geophase
