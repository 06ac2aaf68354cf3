// sweeps.hpp: parameter sweeps, time series and the named figure presets

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geophase/gp_engine.hpp"

namespace geophase {

enum class Quantity { GpEntangled, GpProduct, Trajectory, GpVsTime };
enum class Units { Radians, Pi };

std::string_view to_string(Quantity q) noexcept;
Quantity parse_quantity(std::string_view text);
Units parse_units(std::string_view text);
// "phase_over_pi" or "phase_rad"
std::string phase_column(Units units, std::string_view stem = "phase");
std::string format_phase(std::optional<double> phase, Units units);

struct SweepAxis {
    std::string name;
    double lo{0.0};
    double hi{1.0};
    int count{2};

    double value(int i) const noexcept;
};

// "name:lo:hi:count", bounds accept multiples of pi
SweepAxis parse_axis(std::string_view text);

// Cell values: gp_* give the phase at tau_cycles periods, gp_vs_time the phase unwrapped
// across the cycles, trajectory the Bloch radius at the final time.
struct SweepSpec {
    SweepAxis axis1;
    SweepAxis axis2;
    ModelConfig fixed;
    Quantity quantity{Quantity::GpEntangled};
    GpOptions options;

    void validate() const;
    ModelConfig cell_config(double v1, double v2) const;
};

struct SweepCell {
    double v1{0.0};
    double v2{0.0};
    std::optional<double> value;
    std::string error;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepCell> cells;  // row-major, axis1 outer

    const SweepCell& at(int i1, int i2) const { return cells[static_cast<std::size_t>(i1) * spec.axis2.count + i2]; }
};

// GEOPHASE_THREADS if set, else the hardware concurrency.
int worker_threads();

// Per-cell failures leave the value empty and keep the message; the sweep never aborts.
SweepResult run_sweep(const SweepSpec& spec, int threads = worker_threads());
// Cells evaluated in the given order, used to check order independence.
SweepResult run_sweep_in_order(const SweepSpec& spec, const std::vector<std::size_t>& order);
void write_sweep_csv(std::ostream& out, const SweepResult& result, Units units);

// Header plus one row: phase in both units, branch terms, diagnostics.
void write_gp_csv(std::ostream& out, const GpResult& result);

enum class PresetKind { Single, Surface, Trajectories, Series, Curves };

struct PresetMember {
    std::string label;
    ModelConfig config;
};

struct PresetSpec {
    std::string name;
    std::string title;
    PresetKind kind{PresetKind::Single};
    ModelConfig base;                    // Single
    SweepSpec sweep;                     // Surface
    std::vector<PresetMember> members;   // Trajectories, Series, Curves
    std::string x_name;                  // Curves: swept parameter
    std::vector<double> xs;
    int cycles{1};
    int points_per_cycle{1};
    GpOptions options;
    std::vector<std::string> notes;      // copied to the sidecar
};

struct PresetResolution {
    int grid{64};     // surface samples per axis
    int steps{512};   // steps per cycle
};

struct CurveResult {
    std::string label;
    std::vector<double> x;
    std::vector<std::optional<double>> phase;
    std::vector<double> unwrapped;  // series only
    std::vector<std::string> errors;
};

struct TrajectoryResult {
    std::string label;
    std::vector<TrajectorySample> samples;
};

struct PresetResult {
    PresetSpec spec;
    std::optional<GpResult> single;
    std::optional<SweepResult> surface;
    std::vector<TrajectoryResult> trajectories;
    std::vector<CurveResult> curves;
};

const std::vector<std::string>& preset_names();
PresetSpec preset(std::string_view name, const PresetResolution& resolution = {});
PresetResult run_preset(const PresetSpec& spec, int threads = worker_threads());

// CSV body of a preset (what <name>.csv contains).
void write_preset_csv(std::ostream& out, const PresetResult& result, Units units);
void write_preset_sidecar(std::ostream& out, const PresetSpec& spec, Units units);
// Writes <name>.csv and <name>.params.txt into dir, returns the paths.
std::vector<std::filesystem::path> write_preset(const PresetResult& result,
                                                const std::filesystem::path& dir, Units units);

}  // namespace geophase
