#include "geophase/gp_engine.hpp"

#include "geophase/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace geophase {

namespace {

const cplx I{0.0, 1.0};

// Both a == 1/2 and the coherence amplitude vanish below this: the balanced case.
constexpr double kBalanced = 1e-12;
// A branch sum smaller than this has no argument.
constexpr double kNullSum = 1e-14;

// eigenvalues of a unit-trace matrix below this are rounding noise around 0
constexpr double kRoundingFloor = 64 * std::numeric_limits<double>::epsilon();

double wrap_pm_pi(double x) noexcept {
    x = std::remainder(x, two_pi);
    return x <= -pi ? x + two_pi : x;
}

int intervals_for(double tau, double period, int steps_per_cycle) {
    const int n = static_cast<int>(std::ceil(tau / period * steps_per_cycle - 1e-9));
    return std::max(16, n + (n & 1));
}

std::optional<double> phase_of(cplx sum) {
    if (std::abs(sum) < kNullSum) return std::nullopt;
    return wrap_phase(std::arg(sum));
}

bool maximally_mixed_throughout(const Model& model, double tau) {
    const double a = population_up(model);
    if (std::abs(2.0 * a - 1.0) >= kDegenerateGap) return false;
    const double k = coherence_prefactor(model);
    const CoherenceLaw law = coherence_law(model);
    const int n = intervals_for(tau, model.period(), 256);
    for (int j = 0; j <= n; ++j) {
        const double r = std::abs(law(tau * j / n));
        if (std::hypot(2.0 * a - 1.0, 2.0 * k * r) >= kDegenerateGap) return false;
    }
    return true;
}

double simpson(const std::vector<double>& f, double h) {
    const std::size_t n = f.size() - 1;
    double odd = 0.0, even = 0.0;
    for (std::size_t j = 1; j < n; ++j) (j & 1 ? odd : even) += f[j];
    return h / 3.0 * (f.front() + f.back() + 4.0 * odd + 2.0 * even);
}

struct Pass {
    std::array<cplx, 2> terms;
    cplx sum;
};

// rho_01 = s(t) e^{i(beta - omega1 t)} with s real and smooth: the eigenvalues may cross,
// and the smooth branches (sigma e^{i(beta - omega1 t)}, 1)/sqrt2 carry eps = 1/2 + sigma s.
Pass balanced_pass(const Model& model, const CoherenceLaw& law, double tau) {
    const double k = coherence_prefactor(model);
    auto s = [&](double t) {
        const double wt = law.omega * t;
        return k * law.envelope(t) * (law.product ? std::cos(wt) : std::sin(wt));
    };
    const double w1 = model.params().omega1;
    // <v(0)|v(tau)> e^{i omega1 tau / 2} for either branch
    const double geometric = std::cos(0.5 * w1 * tau);
    Pass p;
    for (int b = 0; b < 2; ++b) {
        const double sigma = b == 0 ? 1.0 : -1.0;
        const double e0 = 0.5 + sigma * s(0.0);
        const double e1 = 0.5 + sigma * s(tau);
        p.terms[b] = std::sqrt(std::max(0.0, e0 * e1)) * geometric;
    }
    p.sum = p.terms[0] + p.terms[1];
    return p;
}

Pass quadrature_pass(const Model& model, const CoherenceLaw& law, double tau, int n) {
    const TimeGrid grid{tau, 1, n};
    const DecoherenceTrace trace = polar_trace([&law](double t) { return law(t); }, grid);
    const double a = population_up(model);
    const double k = coherence_prefactor(model);
    const double w1 = model.params().omega1;

    std::vector<double> cos2[2], direct[2], complement[2];
    double min_direct[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    double min_complement[2] = {min_direct[0], min_direct[1]};
    for (int b = 0; b < 2; ++b) {
        cos2[b].resize(grid.size());
        direct[b].resize(grid.size());
        complement[b].resize(grid.size());
    }

    for (int j = 0; j < grid.size(); ++j) {
        const double t = grid.time(j);
        const double kappa = k * trace.r_values[j];
        const double gap = std::hypot(2.0 * a - 1.0, 2.0 * kappa);
        if (gap < kDegenerateGap)
            throw NumericalError(NumericalError::Kind::EigenvalueCrossing,
                                 "eigenvalues degenerate at t = " + format_real(t));
        const double eps[2] = {0.5 + 0.5 * gap, 0.5 - 0.5 * gap};
        cos2[0][j] = (a - eps[1]) / gap;
        cos2[1][j] = (eps[0] - a) / gap;
        const double flux = k * k * law.phase_flux(t);
        for (int b = 0; b < 2; ++b) {
            const double dd = (eps[b] - a) * (eps[b] - a) + kappa * kappa;
            const double dc = (eps[b] + a - 1.0) * (eps[b] + a - 1.0) + kappa * kappa;
            min_direct[b] = std::min(min_direct[b], dd);
            min_complement[b] = std::min(min_complement[b], dc);
            direct[b][j] = flux == 0.0 ? 0.0 : flux / dd;
            complement[b][j] = flux == 0.0 ? 0.0 : flux / dc;
        }
    }

    const double h = grid.dt();
    const double dtheta = trace.theta_values.back() - trace.theta_values.front();
    const SpectralSample s0 = eigensystem(reduced_density_spin1(0.0, model), trace.theta_values.front());
    const SpectralSample s1 = eigensystem(reduced_density_spin1(tau, model), trace.theta_values.back() - w1 * tau);

    Pass p;
    for (int b = 0; b < 2; ++b) {
        // integral of dtheta/dt cos^2, from whichever form stays away from 0/0
        const double j_int = min_direct[b] >= min_complement[b] ? simpson(direct[b], h)
                                                               : dtheta - simpson(complement[b], h);
        const double phi = w1 * simpson(cos2[b], h) - j_int;
        const double e0 = b == 0 ? s0.eps_plus : s0.eps_minus;
        const double e1 = b == 0 ? s1.eps_plus : s1.eps_minus;
        const cplx overlap = b == 0 ? s0.vec_plus.dot(s1.vec_plus) : s0.vec_minus.dot(s1.vec_minus);
        p.terms[b] = std::sqrt(std::max(0.0, e0 * e1)) * overlap * std::exp(I * phi);
    }
    p.sum = p.terms[0] + p.terms[1];
    return p;
}

}  // namespace

std::optional<double> GpResult::phase_over_pi() const {
    if (!phase) return std::nullopt;
    return *phase / pi;
}

double wrap_phase(double x) noexcept {
    double y = std::fmod(x, two_pi);
    if (y < 0.0) y += two_pi;
    // a sum sitting on the positive real axis up to rounding reads as 0, not 2pi - ulp
    return two_pi - y < 1e-13 ? 0.0 : y;
}

double circular_distance(double a, double b) noexcept { return std::abs(wrap_pm_pi(a - b)); }

GpResult gp_closed_form(const Model& model, double tau, const GpOptions& options) {
    if (!(std::isfinite(tau) && tau > 0.0)) throw ValidationError("tau must be positive");
    if (maximally_mixed_throughout(model, tau))
        throw NumericalError(NumericalError::Kind::DegenerateEvolution,
                             "state is maximally mixed on the whole interval");

    const CoherenceLaw law = coherence_law(model);
    GpResult res;
    if (std::abs(2.0 * population_up(model) - 1.0) < kBalanced && std::abs(law.amplitude) < kBalanced) {
        const Pass p = balanced_pass(model, law, tau);
        res.branch_terms = p.terms;
        res.sum = p.sum;
        res.phase = phase_of(p.sum);
        return res;
    }

    int n = intervals_for(tau, model.period(), options.steps_per_cycle);
    Pass coarse = quadrature_pass(model, law, tau, n);
    for (;;) {
        if (2 * n > options.max_intervals)
            throw NumericalError(NumericalError::Kind::QuadratureNonConvergence,
                                 "quadrature did not converge within " +
                                     std::to_string(options.max_intervals) + " intervals");
        const Pass fine = quadrature_pass(model, law, tau, 2 * n);
        n *= 2;
        double delta = std::max(std::abs(fine.terms[0] - coarse.terms[0]),
                                std::abs(fine.terms[1] - coarse.terms[1]));
        if (std::abs(fine.sum) >= kNullSum && std::abs(coarse.sum) >= kNullSum)
            delta = circular_distance(std::arg(fine.sum), std::arg(coarse.sum));
        coarse = fine;
        if (delta < options.quadrature_tolerance) {
            res.quadrature_delta = delta;
            break;
        }
    }
    res.branch_terms = coarse.terms;
    res.sum = coarse.sum;
    res.phase = phase_of(coarse.sum);
    res.intervals = n;
    return res;
}

cplx bargmann_term(std::span<const BranchFrame> path, int stride) {
    if (path.size() < 2 || stride < 1 || (path.size() - 1) % stride != 0)
        throw ValidationError("branch path length does not fit the stride");
    double transport = 0.0;
    for (std::size_t j = 0; j + stride < path.size(); j += stride)
        transport += std::arg(path[j].vec.dot(path[j + stride].vec));
    const auto& first = path.front();
    const auto& last = path.back();
    return std::sqrt(std::max(0.0, first.eps * last.eps)) * first.vec.dot(last.vec) *
           std::exp(-I * transport);
}

EigenPaths eigen_paths(const DensitySampler& rho, double tau, int steps) {
    if (steps < 64) throw ValidationError("discretized phase needs at least 64 steps");
    if (!(std::isfinite(tau) && tau > 0.0)) throw ValidationError("tau must be positive");
    const double h = tau / steps;

    struct Frame {
        double eps[2];
        Eigen::Vector2cd vec[2];
        bool degenerate;
    };
    auto decompose = [&](double t) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho(t));
        const auto& ev = es.eigenvalues();
        // a zero weight comes out as a few ulps; left alone it adds a spurious sqrt(ulp) term
        auto clean = [](double e) { return std::abs(e) < kRoundingFloor ? 0.0 : e; };
        Frame f;
        f.eps[0] = clean(ev(1));
        f.eps[1] = clean(ev(0));
        f.vec[0] = es.eigenvectors().col(1);
        f.vec[1] = es.eigenvectors().col(0);
        f.degenerate = ev(1) - ev(0) < kDegenerateGap;
        return f;
    };
    // eigenvectors of a degenerate endpoint from the one-sided limit
    auto endpoint = [&](double t, double inward) {
        Frame f = decompose(t);
        if (!f.degenerate) return f;
        for (double d : {1e-4 * h, 1e-2 * h, h}) {
            const Frame g = decompose(t + inward * d);
            if (!g.degenerate) {
                f.vec[0] = g.vec[0];
                f.vec[1] = g.vec[1];
                f.degenerate = false;
                return f;
            }
        }
        throw NumericalError(NumericalError::Kind::DegenerateEvolution,
                             "degenerate spectrum at an endpoint with no resolvable limit");
    };

    EigenPaths out;
    Frame prev = endpoint(0.0, 1.0);
    for (int b = 0; b < 2; ++b) out.branches[b].push_back({prev.eps[b], prev.vec[b]});
    for (int j = 1; j <= steps; ++j) {
        const double t = j == steps ? tau : j * h;
        Frame cur = j == steps ? endpoint(tau, -1.0) : decompose(t);
        if (cur.degenerate) {
            ++out.skipped;
            continue;
        }
        const double keep = std::abs(prev.vec[0].dot(cur.vec[0]));
        const double swap = std::abs(prev.vec[0].dot(cur.vec[1]));
        if (std::max(keep, swap) * std::max(keep, swap) < 0.75)
            throw NumericalError(NumericalError::Kind::BranchTracking,
                                 "eigenbranches not resolved near t = " + format_real(t) +
                                     "; refine the grid");
        if (swap > keep) {
            std::swap(cur.eps[0], cur.eps[1]);
            std::swap(cur.vec[0], cur.vec[1]);
        }
        for (int b = 0; b < 2; ++b) out.branches[b].push_back({cur.eps[b], cur.vec[b]});
        prev = cur;
    }
    return out;
}

DiscretizedGp gp_discretized(const DensitySampler& rho, double tau, int steps) {
    const EigenPaths paths = eigen_paths(rho, tau, steps);
    DiscretizedGp out;
    for (int b = 0; b < 2; ++b) out.branch_terms[b] = bargmann_term(paths.branches[b]);
    out.phase = phase_of(out.branch_terms[0] + out.branch_terms[1]);

    if (out.phase && paths.skipped == 0 && steps % 2 == 0) {
        const cplx coarse = bargmann_term(paths.branches[0], 2) + bargmann_term(paths.branches[1], 2);
        if (const auto pc = phase_of(coarse))
            out.extrapolated = wrap_phase(*out.phase + wrap_pm_pi(*out.phase - *pc) / 3.0);
    }
    return out;
}

GpResult gp_degenerate_mes(const Model& model, double tau) {
    if (!model.entangled() || std::abs(model.entangled_init().lambda0 - 0.5) > kDegenerateGap ||
        !maximally_mixed_throughout(model, tau))
        throw ValidationError("degenerate assignment needs a state maximally mixed on the whole interval");
    GpResult res;
    res.phase = 0.5 * pi;
    res.sum = I;
    res.degenerate = true;
    return res;
}

double gp_unitary_reference(double theta0) noexcept { return pi * (1.0 - std::cos(theta0)); }

double gp_product_isolated(double p) noexcept { return wrap_phase(two_pi * (1.0 - p)); }

GpResult geometric_phase(const Model& model, double tau, const GpOptions& options) {
    if (model.entangled() && maximally_mixed_throughout(model, tau)) return gp_degenerate_mes(model, tau);
    GpResult res = gp_closed_form(model, tau, options);
    if (options.with_oracle) {
        const int steps = std::max(64, intervals_for(tau, model.period(), options.steps_per_cycle));
        const DiscretizedGp d = gp_discretized(
            [&model](double t) { return reduced_density_spin1(t, model); }, tau, steps);
        res.oracle_phase = d.phase;
        if (d.phase && res.phase)
            res.oracle_error_estimate = circular_distance(*d.phase, *res.phase) + res.quadrature_delta;
    }
    return res;
}

std::vector<GpSeriesPoint> gp_vs_time(const Model& model, int cycles, int points_per_cycle,
                                      const GpOptions& options) {
    if (cycles < 1) throw ValidationError("cycles must be >= 1");
    if (points_per_cycle < 1) throw ValidationError("points per cycle must be >= 1");
    std::vector<GpSeriesPoint> out;
    const int total = cycles * points_per_cycle;
    std::optional<double> last;
    double unwrapped = 0.0;
    for (int m = 1; m <= total; ++m) {
        GpSeriesPoint pt;
        pt.t = model.period() * m / points_per_cycle;
        pt.phase = geometric_phase(model, pt.t, options).phase;
        if (pt.phase) {
            unwrapped = last ? unwrapped + wrap_pm_pi(*pt.phase - *last) : *pt.phase;
            last = pt.phase;
            pt.unwrapped = unwrapped;
        } else {
            pt.unwrapped = std::numeric_limits<double>::quiet_NaN();
        }
        out.push_back(pt);
    }
    return out;
}

}  // namespace geophase
