// density.hpp: two-spin and one-spin reduced density matrices, Bloch coordinates

#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "geophase/decoherence.hpp"
#include "geophase/params.hpp"

namespace geophase {

using QubitDensity = Eigen::Matrix2cd;
using BipartiteDensity = Eigen::Matrix4cd;  // basis |00>,|01>,|10>,|11>, spin 1 first

// Environment factors multiplying the six coherences of the two-spin state.
struct FFactorSet {
    using Factor = std::function<cplx(double)>;
    Factor f12, f13, f14, f23, f24, f34;

    static FFactorSet all_ones();
    // Spin 2 decoupled from the bath: F12 = F34 = 1, the rest share the envelope.
    static FFactorSet spin2_uncoupled(double gamma0, double cutoff);
    // Envelope with the e^{+-i gamma0 Lambda t} drift that produces omega_r = 2 chi - gamma0 Lambda.
    static FFactorSet ohmic_inferred(double gamma0, double cutoff);
};

// (alpha, beta, zeta, delta) amplitudes of |00>,|01>,|10>,|11>
using StateCoefficients = std::array<cplx, 4>;

StateCoefficients coefficients(const EntangledInit& init);
StateCoefficients coefficients(const ProductInit& init);
StateCoefficients coefficients(const InitialState& init);

BipartiteDensity bipartite_density(double t, const StateCoefficients& c, const SystemParams& params,
                                   const FFactorSet& f);
QubitDensity trace_out_spin2(const BipartiteDensity& rho4);

// rho_11 of spin 1, constant in time
double population_up(const Model& model);
// Coherence is prefactor * e^{-i omega1 t} Gamma(t).
double coherence_prefactor(const Model& model);
QubitDensity reduced_density_spin1(double t, const Model& model);

struct BlochPoint {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    double norm() const noexcept;
};

BlochPoint bloch_coords(const QubitDensity& rho) noexcept;
double purity(const QubitDensity& rho) noexcept;

struct TrajectorySample {
    double t{0.0};
    BlochPoint point;
    double purity{1.0};
};

std::vector<TrajectorySample> trajectory(const Model& model, const TimeGrid& grid);

// Header t,x,y,z,purity. With a label a leading "curve" column is written.
void write_trajectory_csv(std::ostream& out, std::span<const TrajectorySample> samples);
void write_trajectory_rows(std::ostream& out, std::span<const TrajectorySample> samples,
                           std::string_view label);

}  // namespace geophase
