#include "geophase/params.hpp"

#include "geophase/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <string>

namespace geophase {

namespace {

bool in_unit_interval(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

double parse_plain(const std::string& text, std::string_view original) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ValidationError("not a number: '" + std::string(original) + "'");
    }
    if (used != text.size())
        throw ValidationError("not a number: '" + std::string(original) + "'");
    return value;
}

int parse_int(std::string_view key, std::string_view text) {
    const double v = parse_real(text);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ValidationError(std::string(key) + " must be an integer");
    return static_cast<int>(v);
}

}  // namespace

const char* to_string(NumericalError::Kind kind) noexcept {
    switch (kind) {
    case NumericalError::Kind::DegenerateTrace: return "DegenerateTrace";
    case NumericalError::Kind::DegenerateEvolution: return "DegenerateEvolution";
    case NumericalError::Kind::EigenvalueCrossing: return "EigenvalueCrossing";
    case NumericalError::Kind::BranchTracking: return "BranchTracking";
    case NumericalError::Kind::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case NumericalError::Kind::UndefinedDerivative: return "UndefinedDerivative";
    }
    return "NumericalError";
}

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
    case Regime::Isolated: return "isolated";
    case Regime::ChiOnly: return "chi_only";
    case Regime::OhmicBothCoupled: return "ohmic";
    case Regime::OhmicSpin2Uncoupled: return "ohmic_spin2_uncoupled";
    }
    return "unknown";
}

Regime parse_regime(std::string_view text) {
    const std::string t = trim(text);
    if (t == "isolated") return Regime::Isolated;
    if (t == "chi_only" || t == "chi-only") return Regime::ChiOnly;
    if (t == "ohmic" || t == "ohmic_both") return Regime::OhmicBothCoupled;
    if (t == "ohmic_spin2_uncoupled" || t == "spin2_uncoupled") return Regime::OhmicSpin2Uncoupled;
    throw ValidationError("unknown regime '" + t +
                          "' (isolated, chi_only, ohmic, ohmic_spin2_uncoupled)");
}

double concurrence(const EntangledInit& init) noexcept {
    const double l0 = init.lambda0;
    return 2.0 * std::sqrt(std::max(0.0, l0 * (1.0 - l0)));
}

double lambda0_from_concurrence(double c) {
    if (!in_unit_interval(c)) throw ValidationError("concurrence out of [0,1]");
    // (1 - sqrt(1-c^2))/2 written without the cancellation at small c
    const double s = std::sqrt((1.0 - c) * (1.0 + c));
    return 0.5 * c * c / (1.0 + s);
}

double p_from_theta0(double theta0) noexcept {
    const double c = std::cos(0.5 * theta0);
    return c * c;
}

double theta0_from_p(double p) noexcept {
    // atan2 keeps full precision near both ends where acos(sqrt(p)) does not
    return 2.0 * std::atan2(std::sqrt(std::max(0.0, 1.0 - p)), std::sqrt(std::max(0.0, p)));
}

Model validate(const SystemParams& params, const InitialState& init, Regime regime) {
    if (!(std::isfinite(params.omega1) && params.omega1 > 0.0))
        throw ValidationError("omega1 must be positive");
    if (!std::isfinite(params.omega2)) throw ValidationError("omega2 must be finite");
    if (!std::isfinite(params.chi)) throw ValidationError("chi must be finite");
    if (!(std::isfinite(params.gamma0) && params.gamma0 >= 0.0))
        throw ValidationError("gamma0 must be >= 0");
    if (!(std::isfinite(params.cutoff) && params.cutoff > 0.0))
        throw ValidationError("cutoff must be positive");

    if (const auto* e = std::get_if<EntangledInit>(&init)) {
        if (!in_unit_interval(e->lambda0)) throw ValidationError("lambda0 out of [0,1]");
        if (!(std::isfinite(e->theta0) && e->theta0 >= 0.0 && e->theta0 <= pi))
            throw ValidationError("theta0 out of [0,pi]");
    } else {
        const auto& pr = std::get<ProductInit>(init);
        if (!in_unit_interval(pr.p)) throw ValidationError("p out of [0,1]");
        if (!in_unit_interval(pr.q)) throw ValidationError("q out of [0,1]");
    }

    if (regime == Regime::Isolated && (params.chi != 0.0 || params.gamma0 != 0.0))
        throw ValidationError("isolated regime requires chi = 0 and gamma0 = 0");
    if (regime == Regime::ChiOnly && params.gamma0 != 0.0)
        throw ValidationError("chi_only regime requires gamma0 = 0");

    Model m;
    m.params_ = params;
    m.init_ = init;
    m.regime_ = regime;
    m.omega_r_ = 2.0 * params.chi - params.gamma0 * params.cutoff;
    return m;
}

const EntangledInit& Model::entangled_init() const {
    if (const auto* e = std::get_if<EntangledInit>(&init_)) return *e;
    throw ValidationError("model has a product initial state");
}

const ProductInit& Model::product_init() const {
    if (const auto* p = std::get_if<ProductInit>(&init_)) return *p;
    throw ValidationError("model has an entangled initial state");
}

double Model::coherence_frequency() const noexcept {
    switch (regime_) {
    case Regime::Isolated: return 0.0;
    case Regime::ChiOnly:
    case Regime::OhmicSpin2Uncoupled: return 2.0 * params_.chi;
    case Regime::OhmicBothCoupled: return omega_r_;
    }
    return 0.0;
}

bool Model::has_envelope() const noexcept {
    return (regime_ == Regime::OhmicBothCoupled || regime_ == Regime::OhmicSpin2Uncoupled) &&
           params_.gamma0 > 0.0;
}

std::optional<double> Model::concurrence() const noexcept {
    if (const auto* e = std::get_if<EntangledInit>(&init_)) return geophase::concurrence(*e);
    return std::nullopt;
}

TimeGrid TimeGrid::cycles_of(const Model& model, int cycles, int steps) {
    TimeGrid g{cycles * model.period(), cycles, steps};
    g.validate();
    return g;
}

void TimeGrid::validate() const {
    if (!(std::isfinite(tau) && tau > 0.0)) throw ValidationError("tau must be positive");
    if (cycles < 1) throw ValidationError("cycles must be >= 1");
    if (steps < 16) throw ValidationError("steps per cycle must be >= 16");
}

double parse_real(std::string_view original) {
    std::string text;
    for (char ch : original)
        if (ch != ' ' && ch != '\t') text.push_back(ch);
    if (text.empty()) throw ValidationError("empty number");

    const auto at = text.find("pi");
    if (at == std::string::npos) return parse_plain(text, original);

    std::string head = text.substr(0, at);
    std::string tail = text.substr(at + 2);
    if (!head.empty() && head.back() == '*') head.pop_back();
    double factor = 1.0;
    if (head == "-") factor = -1.0;
    else if (head == "+") factor = 1.0;
    else if (!head.empty()) factor = parse_plain(head, original);
    double divisor = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/') throw ValidationError("not a number: '" + std::string(original) + "'");
        divisor = parse_plain(tail.substr(1), original);
        if (divisor == 0.0) throw ValidationError("division by zero in '" + std::string(original) + "'");
    }
    return factor * pi / divisor;
}

const std::vector<std::string_view>& ModelConfig::keys() {
    static const std::vector<std::string_view> k{
        "init", "lambda0", "concurrence", "theta0", "p", "q", "omega1", "omega2",
        "chi", "gamma0", "cutoff", "regime", "tau_cycles", "steps"};
    return k;
}

void ModelConfig::set(std::string_view raw_key, std::string_view value) {
    std::string key = trim(raw_key);
    for (auto& ch : key)
        if (ch == '-') ch = '_';

    if (key == "init") {
        const std::string v = trim(value);
        if (v == "product") product = true;
        else if (v == "entangled") product = false;
        else throw ValidationError("init must be 'entangled' or 'product'");
    } else if (key == "lambda0") lambda0 = parse_real(value);
    else if (key == "concurrence") concurrence = parse_real(value);
    else if (key == "theta0") theta0 = parse_real(value);
    else if (key == "p") { p = parse_real(value); product = true; }
    else if (key == "q") { q = parse_real(value); product = true; }
    else if (key == "omega1") params.omega1 = parse_real(value);
    else if (key == "omega2") params.omega2 = parse_real(value);
    else if (key == "chi") params.chi = parse_real(value);
    else if (key == "gamma0") params.gamma0 = parse_real(value);
    else if (key == "cutoff") params.cutoff = parse_real(value);
    else if (key == "regime") regime = parse_regime(value);
    else if (key == "tau_cycles") tau_cycles = parse_int(key, value);
    else if (key == "steps") steps = parse_int(key, value);
    else throw ValidationError("unknown key '" + key + "'");
}

InitialState ModelConfig::initial_state() const {
    if (product) {
        if (lambda0 || concurrence) throw ValidationError("lambda0/concurrence given for a product state");
        if (p && theta0) throw ValidationError("give either p or theta0, not both");
        ProductInit init;
        if (p) init.p = *p;
        else if (theta0) {
            if (!(*theta0 >= 0.0 && *theta0 <= pi)) throw ValidationError("theta0 out of [0,pi]");
            init.p = p_from_theta0(*theta0);
        }
        if (q) init.q = *q;
        return init;
    }
    if (lambda0 && concurrence) throw ValidationError("give either lambda0 or concurrence, not both");
    EntangledInit init;
    if (lambda0) init.lambda0 = *lambda0;
    if (concurrence) init.lambda0 = lambda0_from_concurrence(*concurrence);
    if (theta0) init.theta0 = *theta0;
    return init;
}

Model ModelConfig::model() const { return validate(params, initial_state(), regime); }

std::vector<std::pair<std::string, std::string>> ModelConfig::entries() const {
    std::vector<std::pair<std::string, std::string>> out;
    const InitialState init = initial_state();
    if (const auto* e = std::get_if<EntangledInit>(&init)) {
        out.emplace_back("init", "entangled");
        out.emplace_back("lambda0", format_real(e->lambda0));
        out.emplace_back("concurrence", format_real(geophase::concurrence(*e)));
        out.emplace_back("theta0", format_real(e->theta0));
    } else {
        const auto& pr = std::get<ProductInit>(init);
        out.emplace_back("init", "product");
        out.emplace_back("p", format_real(pr.p));
        out.emplace_back("q", format_real(pr.q));
    }
    out.emplace_back("omega1", format_real(params.omega1));
    out.emplace_back("omega2", format_real(params.omega2));
    out.emplace_back("chi", format_real(params.chi));
    out.emplace_back("gamma0", format_real(params.gamma0));
    out.emplace_back("cutoff", format_real(params.cutoff));
    out.emplace_back("regime", std::string(to_string(regime)));
    out.emplace_back("tau_cycles", std::to_string(tau_cycles));
    out.emplace_back("steps", std::to_string(steps));
    return out;
}

void load_config(std::istream& in, ModelConfig& config) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
        try {
            config.set(std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1));
        } catch (const ValidationError& e) {
            throw ValidationError("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

std::string format_real(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

}  // namespace geophase
