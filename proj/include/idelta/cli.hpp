#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace idelta::cli {

inline constexpr const char* version = "1.0.0";

enum class Mode {
    diffusion_boundary,
    quantum_boundary,
    survival_diffusion,
    survival_quantum,
    oracle_diffusion,
    oracle_quantum,
    scattering,
    asymptotics,
};

Mode parse_mode(const std::string& name);
std::string mode_name(Mode mode);

/// One experiment. Diffusion modes read dee, kappa, x0 and run in tau = D t
/// (oracle-diffusion in t); quantum modes read hbar, mass, k, x0, a.
struct ExperimentConfig {
    Mode mode = Mode::diffusion_boundary;
    double dee = 1.0;
    double kappa = 1.0;
    double hbar = 1.0;
    double mass = 1.0;
    double k = 1.0;
    double x0 = 1.0;
    double a = 0.0;
    /// Unset: 0.01 for diffusion-boundary, the resolved splice time for
    /// point-source quantum-boundary, 10 m a^2 / hbar (just past the guard)
    /// for asymptotics, 0 otherwise.
    std::optional<double> t_start;
    double t_max = 10.0;
    /// Intervals on [t_start, t_max] (sample count - 1 for the log-spaced
    /// scattering and asymptotics sweeps). Survival modes spend them on
    /// [0, min(t_max, 10)] and take ten times the previous step per later decade.
    std::size_t steps = 10000;
    bool normalize = true;
    double grid_half_width = 40.0;
    std::size_t grid_nodes = 8001;
    double initial_width = 0.02;
    double leakage_tolerance = 1e-8;
    /// Empty writes to standard output.
    std::string out;
    std::string trajectory;
    std::size_t trajectory_stride = 100;
    std::string preset;
};

/// Configurations used by the acceptance suite:
/// paper-diffusion, paper-quantum, paper-asymptotics, oracle-cross-check.
ExperimentConfig preset(const std::string& name);

double resolved_t_start(const ExperimentConfig& config);

/// Writes the CSV for config to out. Throws the library's error types.
void write_experiment(const ExperimentConfig& config, std::ostream& out);

/// Runs config, writing to config.out. Returns 0, 2 on configuration errors
/// or 3 on numerical guard failures, with a one-line diagnostic on err.
int run(const ExperimentConfig& config, std::ostream& err);

/// Full command line: preset, then --config file, then flags.
int main_entry(int argc, char** argv);

} // namespace idelta::cli
