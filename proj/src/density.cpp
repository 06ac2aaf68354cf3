#include "geophase/density.hpp"

#include "geophase/errors.hpp"

#include <cmath>
#include <ostream>

namespace geophase {

namespace {

const cplx I{0.0, 1.0};

void write_row(std::ostream& out, const TrajectorySample& s) {
    out << format_real(s.t) << ',' << format_real(s.point.x) << ',' << format_real(s.point.y) << ','
        << format_real(s.point.z) << ',' << format_real(s.purity) << '\n';
}

}  // namespace

FFactorSet FFactorSet::all_ones() {
    const Factor one = [](double) { return cplx{1.0, 0.0}; };
    return {one, one, one, one, one, one};
}

FFactorSet FFactorSet::spin2_uncoupled(double gamma0, double cutoff) {
    const Factor one = [](double) { return cplx{1.0, 0.0}; };
    const Factor env = [=](double t) { return cplx{ohmic_envelope(t, gamma0, cutoff), 0.0}; };
    return {one, env, env, env, env, one};
}

FFactorSet FFactorSet::ohmic_inferred(double gamma0, double cutoff) {
    const double shift = gamma0 * cutoff;
    const Factor up = [=](double t) { return ohmic_envelope(t, gamma0, cutoff) * std::exp(I * shift * t); };
    const Factor down = [=](double t) { return ohmic_envelope(t, gamma0, cutoff) * std::exp(-I * shift * t); };
    // |00><11| sees both spins dephase together; |01><10| is blind to a common bath
    const Factor both = [=](double t) {
        const double d = ohmic_envelope(t, gamma0, cutoff);
        return cplx{d * d * d * d, 0.0};
    };
    const Factor one = [](double) { return cplx{1.0, 0.0}; };
    return {up, up, both, one, down, down};
}

StateCoefficients coefficients(const EntangledInit& init) {
    const double s0 = std::sqrt(init.lambda0);
    const double s1 = std::sqrt(1.0 - init.lambda0);
    const double c = std::cos(0.5 * init.theta0);
    const double s = std::sin(0.5 * init.theta0);
    return {cplx{s0 * c}, cplx{-s1 * s}, cplx{s0 * s}, cplx{s1 * c}};
}

StateCoefficients coefficients(const ProductInit& init) {
    const double a0 = std::sqrt(1.0 - init.p), a1 = std::sqrt(init.p);
    const double b0 = std::sqrt(1.0 - init.q), b1 = std::sqrt(init.q);
    return {cplx{a0 * b0}, cplx{a0 * b1}, cplx{a1 * b0}, cplx{a1 * b1}};
}

StateCoefficients coefficients(const InitialState& init) {
    return std::visit([](const auto& i) { return coefficients(i); }, init);
}

BipartiteDensity bipartite_density(double t, const StateCoefficients& c, const SystemParams& params,
                                   const FFactorSet& f) {
    double norm = 0.0;
    for (const auto& x : c) norm += std::norm(x);
    if (std::abs(norm - 1.0) > 1e-10) throw ValidationError("state coefficients are not normalized");

    const double w1 = params.omega1, w2 = params.omega2, chi = params.chi;
    const auto& [al, be, ze, de] = c;
    auto ph = [t](double w) { return std::exp(-I * w * t); };

    BipartiteDensity rho = BipartiteDensity::Zero();
    rho(0, 0) = std::norm(al);
    rho(1, 1) = std::norm(be);
    rho(2, 2) = std::norm(ze);
    rho(3, 3) = std::norm(de);
    rho(0, 1) = al * std::conj(be) * ph(2.0 * chi + w2) * f.f12(t);
    rho(0, 2) = al * std::conj(ze) * ph(2.0 * chi + w1) * f.f13(t);
    rho(0, 3) = al * std::conj(de) * ph(w1 + w2) * f.f14(t);
    rho(1, 2) = be * std::conj(ze) * ph(w1 - w2) * f.f23(t);
    rho(1, 3) = be * std::conj(de) * ph(w1 - 2.0 * chi) * f.f24(t);
    rho(2, 3) = ze * std::conj(de) * ph(w2 - 2.0 * chi) * f.f34(t);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) rho(j, i) = std::conj(rho(i, j));
    return rho;
}

QubitDensity trace_out_spin2(const BipartiteDensity& rho4) {
    QubitDensity r;
    r(0, 0) = rho4(0, 0) + rho4(1, 1);
    r(1, 1) = rho4(2, 2) + rho4(3, 3);
    r(0, 1) = rho4(0, 2) + rho4(1, 3);
    r(1, 0) = std::conj(r(0, 1));
    return r;
}

double population_up(const Model& model) {
    if (model.entangled()) {
        const auto& e = model.entangled_init();
        return (e.lambda0 - 0.5) * std::cos(e.theta0) + 0.5;
    }
    return 1.0 - model.product_init().p;
}

double coherence_prefactor(const Model& model) {
    if (model.entangled()) return 0.5 * std::sin(model.entangled_init().theta0);
    const double p = model.product_init().p;
    return std::sqrt(p * (1.0 - p));
}

QubitDensity reduced_density_spin1(double t, const Model& model) {
    const double a = population_up(model);
    const cplx c = coherence_prefactor(model) * std::exp(-I * model.params().omega1 * t) *
                   decoherence_factor(t, model);
    QubitDensity r;
    r << a, c, std::conj(c), 1.0 - a;
    return r;
}

double BlochPoint::norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }

BlochPoint bloch_coords(const QubitDensity& rho) noexcept {
    const cplx x = rho(0, 1) + rho(1, 0);
    const cplx y = I * (rho(0, 1) - rho(1, 0));
    return {x.real(), y.real(), (rho(0, 0) - rho(1, 1)).real()};
}

double purity(const QubitDensity& rho) noexcept { return (rho * rho).trace().real(); }

std::vector<TrajectorySample> trajectory(const Model& model, const TimeGrid& grid) {
    grid.validate();
    std::vector<TrajectorySample> out(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
        const double t = grid.time(j);
        const QubitDensity rho = reduced_density_spin1(t, model);
        out[j] = {t, bloch_coords(rho), purity(rho)};
    }
    return out;
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectorySample> samples) {
    out << "t,x,y,z,purity\n";
    for (const auto& s : samples) write_row(out, s);
}

void write_trajectory_rows(std::ostream& out, std::span<const TrajectorySample> samples,
                           std::string_view label) {
    for (const auto& s : samples) {
        out << label << ',';
        write_row(out, s);
    }
}

}  // namespace geophase
