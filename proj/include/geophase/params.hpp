// params.hpp: physical constants, initial states and validated models

#pragma once

#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace geophase {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

enum class Regime { Isolated, ChiOnly, OhmicBothCoupled, OhmicSpin2Uncoupled };

std::string_view to_string(Regime regime) noexcept;
Regime parse_regime(std::string_view text);

// All frequencies in units where omega1 sets the scale.
struct SystemParams {
    double omega1{1.0};  // spin 1 frequency
    double omega2{1.0};  // spin 2 frequency, drops out of the spin 1 reduction
    double chi{0.0};     // spin-spin coupling
    double gamma0{0.0};  // dimensionless ohmic coupling, same for both spins
    double cutoff{20.0}; // bath cutoff Lambda
};

// sqrt(l0)(cos(t0/2)|00> + sin(t0/2)|10>) + sqrt(1-l0)(sin(t0/2)|01> - cos(t0/2)|11>)
struct EntangledInit {
    double lambda0{0.0};
    double theta0{0.0};
};

// (sqrt(1-p)|0> + sqrt(p)|1>) (x) (sqrt(1-q)|0> + sqrt(q)|1>)
struct ProductInit {
    double p{1.0};
    double q{0.0};
};

using InitialState = std::variant<EntangledInit, ProductInit>;

double concurrence(const EntangledInit& init) noexcept;
// Inverse of the concurrence on the lambda0 <= 1/2 branch.
double lambda0_from_concurrence(double c);
double p_from_theta0(double theta0) noexcept;
double theta0_from_p(double p) noexcept;

class Model;
Model validate(const SystemParams& params, const InitialState& init, Regime regime);

// Immutable after validate(); safe to share between threads.
class Model {
public:
    const SystemParams& params() const noexcept { return params_; }
    const InitialState& init() const noexcept { return init_; }
    Regime regime() const noexcept { return regime_; }

    bool entangled() const noexcept { return std::holds_alternative<EntangledInit>(init_); }
    const EntangledInit& entangled_init() const;
    const ProductInit& product_init() const;

    // 2 chi - gamma0 Lambda
    double omega_r() const noexcept { return omega_r_; }
    // Rotation frequency of Gamma for this regime (omega_r, 2 chi, or 0).
    double coherence_frequency() const noexcept;
    bool has_envelope() const noexcept;
    std::optional<double> concurrence() const noexcept;
    double period() const noexcept { return two_pi / params_.omega1; }

private:
    friend Model validate(const SystemParams&, const InitialState&, Regime);
    Model() = default;

    SystemParams params_;
    InitialState init_;
    Regime regime_{Regime::Isolated};
    double omega_r_{0.0};
};

struct TimeGrid {
    double tau{two_pi};  // final time
    int cycles{1};
    int steps{512};      // intervals per cycle

    static TimeGrid cycles_of(const Model& model, int cycles, int steps);

    void validate() const;
    int intervals() const noexcept { return cycles * steps; }
    int size() const noexcept { return intervals() + 1; }
    double dt() const noexcept { return tau / intervals(); }
    double time(int j) const noexcept { return j == intervals() ? tau : j * dt(); }
};

// Accepts plain reals and multiples of pi: "0.3", "pi", "-pi/2", "2pi/3", "0.5*pi".
double parse_real(std::string_view text);

// Flat key = value description of one model, shared by config files and CLI flags.
struct ModelConfig {
    SystemParams params;
    Regime regime{Regime::Isolated};
    bool product{false};
    std::optional<double> lambda0;
    std::optional<double> concurrence;
    std::optional<double> theta0;
    std::optional<double> p;
    std::optional<double> q;
    int tau_cycles{1};
    int steps{512};

    static const std::vector<std::string_view>& keys();

    void set(std::string_view key, std::string_view value);
    InitialState initial_state() const;
    Model model() const;
    // Resolved values, in keys() order, for sidecar files.
    std::vector<std::pair<std::string, std::string>> entries() const;
};

// Lines of "key = value"; '#' starts a comment. Applied on top of config.
void load_config(std::istream& in, ModelConfig& config);

std::string format_real(double value);

}  // namespace geophase
