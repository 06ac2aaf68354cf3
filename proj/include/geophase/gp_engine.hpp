// gp_engine.hpp: geometric phase of spin 1: branch decomposition and a discretized oracle

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "geophase/density.hpp"
#include "geophase/spectral.hpp"

namespace geophase {

struct GpOptions {
    int steps_per_cycle{512};            // starting resolution of the quadrature
    double quadrature_tolerance{1e-8};   // phase change under step halving
    int max_intervals{1 << 22};
    bool with_oracle{false};             // also run the discretized definition
};

struct GpResult {
    std::optional<double> phase;         // [0, 2pi); empty when both branch terms vanish
    std::array<cplx, 2> branch_terms{};  // eps_+ and eps_- contributions
    cplx sum{};                          // before taking the argument
    bool degenerate{false};
    std::optional<double> oracle_phase;
    std::optional<double> oracle_error_estimate;
    double quadrature_delta{0.0};
    int intervals{0};

    std::optional<double> phase_over_pi() const;
};

// Maps to [0, 2pi).
double wrap_phase(double x) noexcept;
// Distance on the circle, in [0, pi].
double circular_distance(double a, double b) noexcept;

GpResult gp_closed_form(const Model& model, double tau, const GpOptions& options = {});

struct BranchFrame {
    double eps{0.0};
    Eigen::Vector2cd vec;
};

// One tracked eigenbranch sampled on a uniform grid.
using BranchPath = std::vector<BranchFrame>;

// sqrt(eps(0) eps(tau)) <v0|vN> prod_j e^{-i arg <v_j|v_j+1>}; stride > 1 uses every stride-th frame.
cplx bargmann_term(std::span<const BranchFrame> path, int stride = 1);

struct EigenPaths {
    std::array<BranchPath, 2> branches;
    int skipped{0};  // interior samples dropped as degenerate
};

using DensitySampler = std::function<QubitDensity(double)>;

// Branch-tracked eigenframes of rho(t_j), j = 0..steps. Degenerate interior samples
// are dropped; a degenerate endpoint takes its eigenvectors from a nearby time.
EigenPaths eigen_paths(const DensitySampler& rho, double tau, int steps);

struct DiscretizedGp {
    std::optional<double> phase;
    std::optional<double> extrapolated;  // Richardson combination of steps and steps/2
    std::array<cplx, 2> branch_terms{};
};

DiscretizedGp gp_discretized(const DensitySampler& rho, double tau, int steps);

GpResult gp_degenerate_mes(const Model& model, double tau);

double gp_unitary_reference(double theta0) noexcept;
double gp_product_isolated(double p) noexcept;

// Closed form, or the degenerate MES assignment when the state stays maximally mixed.
// with_oracle adds the discretized value at the same resolution.
GpResult geometric_phase(const Model& model, double tau, const GpOptions& options = {});

struct GpSeriesPoint {
    double t{0.0};
    std::optional<double> phase;
    double unwrapped{0.0};
};

// Samples at m * period / points_per_cycle, m = 1 .. cycles * points_per_cycle.
std::vector<GpSeriesPoint> gp_vs_time(const Model& model, int cycles, int points_per_cycle = 1,
                                      const GpOptions& options = {});

}  // namespace geophase
