#include "idelta/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "CLI11.hpp"

#include "idelta/closedform.hpp"
#include "idelta/error.hpp"
#include "idelta/oracle.hpp"
#include "idelta/propagators.hpp"
#include "idelta/survival.hpp"
#include "idelta/volterra.hpp"

namespace idelta::cli {

namespace {

const std::map<std::string, Mode>& mode_table()
{
    static const std::map<std::string, Mode> table{
        {"diffusion-boundary", Mode::diffusion_boundary},
        {"quantum-boundary", Mode::quantum_boundary},
        {"survival-diffusion", Mode::survival_diffusion},
        {"survival-quantum", Mode::survival_quantum},
        {"oracle-diffusion", Mode::oracle_diffusion},
        {"oracle-quantum", Mode::oracle_quantum},
        {"scattering", Mode::scattering},
        {"asymptotics", Mode::asymptotics},
    };
    return table;
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(std::initializer_list<const char*> names)
    {
        bool first = true;
        for (const char* n : names) {
            out_ << (first ? "" : ",") << n;
            first = false;
        }
        out_ << '\n';
    }

    void row(std::initializer_list<double> values)
    {
        bool first = true;
        for (double v : values) {
            out_ << (first ? "" : ",") << num(v);
            first = false;
        }
        out_ << '\n';
    }

    void meta(const std::string& key, double value) { out_ << "# " << key << '=' << num(value) << '\n'; }
    void meta(const std::string& key, const std::string& value)
    {
        out_ << "# " << key << '=' << value << '\n';
    }

private:
    std::ostream& out_;
};

void write_metadata(const ExperimentConfig& c, std::ostream& out)
{
    out << "# idelta " << version << " mode=" << mode_name(c.mode) << " dee=" << num(c.dee)
        << " kappa=" << num(c.kappa) << " hbar=" << num(c.hbar) << " mass=" << num(c.mass)
        << " k=" << num(c.k) << " x0=" << num(c.x0) << " a=" << num(c.a)
        << " t-start=" << num(resolved_t_start(c)) << " t-max=" << num(c.t_max)
        << " steps=" << c.steps << " normalize=" << (c.normalize ? "true" : "false")
        << " grid-half-width=" << num(c.grid_half_width) << " grid-nodes=" << c.grid_nodes
        << " initial-width=" << num(c.initial_width)
        << " leakage-tolerance=" << num(c.leakage_tolerance) << '\n';
}

DiffusionParams diffusion_params(const ExperimentConfig& c)
{
    return {c.dee, c.kappa, c.x0};
}

QuantumParams quantum_params(const ExperimentConfig& c)
{
    return {c.hbar, c.mass, c.k, c.x0, c.a};
}

void require_steps(const ExperimentConfig& c)
{
    if (c.steps < 1) {
        throw ConfigError("steps must be at least 1");
    }
}

TimeGrid uniform_grid(const ExperimentConfig& c)
{
    require_steps(c);
    const double t0 = resolved_t_start(c);
    if (!(c.t_max > t0)) {
        throw ConfigError("t-max must exceed t-start");
    }
    return make_time_grid(t0, (c.t_max - t0) / static_cast<double>(c.steps), c.steps + 1);
}

std::vector<double> log_samples(double lo, double hi, std::size_t steps)
{
    if (!(lo > 0.0) || !(hi > lo) || steps < 1) {
        throw ConfigError("log sweep needs 0 < start < end and steps >= 1");
    }
    std::vector<double> v(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(steps));
    }
    return v;
}

double head_step(const ExperimentConfig& c)
{
    require_steps(c);
    if (!(c.t_max > 0.0)) {
        throw ConfigError("t-max must be positive");
    }
    return std::min(c.t_max, 10.0) / static_cast<double>(c.steps);
}

// Segment ends repeat the next segment's first sample; emit each time once.
template <class Row>
void for_each_segment_sample(const SegmentedRun& run, Row&& row)
{
    for (std::size_t s = 0; s < run.series.size(); ++s) {
        const auto& series = run.series[s];
        const std::size_t first = s == 0 ? 0 : 1;
        for (std::size_t i = first; i < series.values.size(); ++i) {
            if (!row(series.grid.time(i), series.values[i], run.survival[s].values[i])) {
                return;
            }
        }
    }
}

void tail_metadata(CsvWriter& csv, const std::optional<TailFit>& tail, const std::string& status)
{
    if (tail) {
        csv.meta("tail_c", tail->coefficient);
        csv.meta("tail_exponent", tail->exponent);
        csv.meta("tail_window_lo", tail->t_lo);
        csv.meta("tail_window_hi", tail->t_hi);
        csv.meta("tail_residual", tail->residual);
    } else {
        csv.meta("tail_c", std::numeric_limits<double>::quiet_NaN());
        csv.meta("tail_exponent", std::numeric_limits<double>::quiet_NaN());
        csv.meta("tail_status", status);
    }
}

std::optional<TailFit> try_fit(const SegmentedRun& run, double t_max, std::string& status)
{
    try {
        return fit_tail(std::span<const AmplitudeSeries>(run.series), t_max / 100.0, t_max);
    } catch (const InsufficientPoints& e) {
        status = e.what();
        return std::nullopt;
    }
}

void run_diffusion_boundary(const ExperimentConfig& c, std::ostream& out)
{
    const DiffusionParams d = diffusion_params(c);
    const TimeGrid grid = uniform_grid(c);
    const AmplitudeSeries series = solve_abel_volterra(spliced_problem(d, grid));
    CsvWriter csv(out);
    csv.header({"tau", "p_closed", "p_volterra", "rel_err"});
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double tau = grid.time(i);
        const double closed = tau > 0.0 ? boundary_density_diffusion(tau, d) : 0.0;
        const double numeric = series.values[i].real();
        const double err = closed != 0.0 ? std::abs(numeric - closed) / closed : std::abs(numeric);
        worst = std::max(worst, err);
        csv.row({tau, closed, numeric, err});
    }
    csv.meta("max_rel_err", worst);
}

void run_quantum_boundary(const ExperimentConfig& c, std::ostream& out)
{
    const QuantumParams q = quantum_params(c);
    const TimeGrid grid = uniform_grid(c);
    const AmplitudeSeries series = q.point_source() ? solve_abel_volterra(spliced_problem(q, grid))
                                                    : solve_abel_volterra(gaussian_problem(q, grid));
    CsvWriter csv(out);
    csv.header({"t", "re_closed", "im_closed", "re_volterra", "im_volterra", "rel_err"});
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid.time(i);
        cplx closed;
        if (q.point_source()) {
            closed = boundary_amplitude_quantum(t, q);
        } else {
            // phi(0) = f(0): the memory term vanishes at t = 0.
            closed = t > 0.0 ? boundary_amplitude_quantum_gaussian(t, q) : forcing_gaussian(0.0, q);
        }
        const cplx numeric = series.values[i];
        const double err = std::abs(numeric - closed) / std::abs(closed);
        worst = std::max(worst, err);
        csv.row({t, closed.real(), closed.imag(), numeric.real(), numeric.imag(), err});
    }
    csv.meta("max_rel_err", worst);
}

void run_survival_diffusion(const ExperimentConfig& c, std::ostream& out)
{
    const DiffusionParams d = diffusion_params(c);
    const SegmentedRun run = survival_diffusion_segments(d, c.t_max, head_step(c));
    CsvWriter csv(out);
    csv.header({"tau", "p", "S"});
    for_each_segment_sample(run, [&](double tau, cplx p, double s) {
        csv.row({tau, p.real(), s});
        return true;
    });
    std::string status;
    tail_metadata(csv, try_fit(run, run.series.back().grid.t_end(), status), status);
}

void run_survival_quantum(const ExperimentConfig& c, std::ostream& out)
{
    const QuantumParams q = quantum_params(c);
    const SegmentedRun run = survival_quantum_segments(q, c.normalize, c.t_max, head_step(c));
    const double scale2 = c.normalize ? std::pow(gaussian_norm_factor(q), 2) : 1.0;

    std::string status;
    std::optional<TailFit> tail = try_fit(run, run.series.back().grid.t_end(), status);
    if (tail) {
        tail->coefficient *= scale2;
    }
    double t_star = std::numeric_limits<double>::quiet_NaN();
    bool extrapolated = false;
    std::string vanishing_status;
    // The crossing, if any, lies in the first segment to reach zero.
    for (const auto& curve : run.survival) {
        if (curve.values.back() <= 0.0 || &curve == &run.survival.back()) {
            try {
                if (!tail) {
                    throw NoVanishing("no tail fit: " + status);
                }
                const VanishingTime v = vanishing_time_estimate(curve, *tail, q.coupling() / q.hbar());
                t_star = v.time;
                extrapolated = v.extrapolated;
            } catch (const NoVanishing& e) {
                vanishing_status = e.what();
            }
            break;
        }
    }

    CsvWriter csv(out);
    csv.header({"t", "re_phi", "im_phi", "abs2_phi", "S"});
    const double scale = std::sqrt(scale2);
    for_each_segment_sample(run, [&](double t, cplx phi, double s) {
        // Past the vanishing time the formula no longer describes a solution.
        if (!extrapolated && std::isfinite(t_star) && t > t_star) {
            return false;
        }
        const cplx v = scale * phi;
        csv.row({t, v.real(), v.imag(), std::norm(v), s});
        return true;
    });
    tail_metadata(csv, tail, status);
    csv.meta("T_star", t_star);
    csv.meta("T_star_extrapolated_flag", extrapolated ? 1.0 : 0.0);
    if (!vanishing_status.empty()) {
        csv.meta("T_star_status", vanishing_status);
    }
}

void write_trajectory(const ExperimentConfig& c, const OracleRun& run)
{
    if (c.trajectory.empty()) {
        return;
    }
    std::ofstream file(c.trajectory);
    if (!file) {
        throw ConfigError("cannot open trajectory file " + c.trajectory);
    }
    write_metadata(c, file);
    CsvWriter csv(file);
    csv.header({"t", "x", "re_field", "im_field"});
    for (const auto& state : run.trajectory) {
        for (std::size_t j = 0; j < state.field.size(); ++j) {
            csv.row({state.time, state.grid.x(j), state.field[j].real(), state.field[j].imag()});
        }
    }
}

OracleOptions oracle_options(const ExperimentConfig& c)
{
    OracleOptions o;
    o.trajectory_stride = c.trajectory.empty() ? 0 : std::max<std::size_t>(1, c.trajectory_stride);
    o.leakage_tolerance = c.leakage_tolerance;
    return o;
}

void run_oracle_diffusion(const ExperimentConfig& c, std::ostream& out)
{
    const DiffusionParams d = diffusion_params(c);
    const TimeGrid grid = uniform_grid(c);
    if (grid.t_start() != 0.0) {
        throw ConfigError("oracle runs start at t = 0");
    }
    const OracleRun run = evolve_diffusion(d, SpatialGrid(c.grid_half_width, c.grid_nodes), grid,
                                           c.initial_width, oracle_options(c));
    write_trajectory(c, run);

    // Integral pipeline on the same samples in tau = D t.
    const TimeGrid tau_grid = make_time_grid(0.0, d.diffusion() * grid.step(), grid.size());
    const AmplitudeSeries series = solve_abel_volterra(spliced_problem(d, tau_grid));
    const SurvivalCurve integral = survival_diffusion(series, d);

    CsvWriter csv(out);
    csv.header({"t", "S_grid", "S_integral", "p_center", "p_closed"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double tau = tau_grid.time(i);
        const double closed = tau > 0.0 ? boundary_density_diffusion(tau, d) : 0.0;
        csv.row({grid.time(i), run.survival.values[i], integral.values[i],
                 run.center.values[i].real(), closed});
    }
}

void run_oracle_quantum(const ExperimentConfig& c, std::ostream& out)
{
    const QuantumParams q = quantum_params(c);
    const TimeGrid grid = uniform_grid(c);
    if (grid.t_start() != 0.0) {
        throw ConfigError("oracle runs start at t = 0");
    }
    const OracleRun run =
        evolve_schrodinger(q, SpatialGrid(c.grid_half_width, c.grid_nodes), grid, oracle_options(c));
    write_trajectory(c, run);

    const AmplitudeSeries series = solve_abel_volterra(gaussian_problem(q, grid));
    const SurvivalCurve integral = survival_quantum(series, q, true);
    const double scale = gaussian_norm_factor(q);

    CsvWriter csv(out);
    csv.header({"t", "S_grid", "S_integral", "abs_psi0_grid", "abs_phi"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv.row({grid.time(i), run.survival.values[i], integral.values[i],
                 std::abs(run.center.values[i]), scale * std::abs(series.values[i])});
    }
}

void run_scattering(const ExperimentConfig& c, std::ostream& out)
{
    const QuantumParams q = quantum_params(c);
    if (!(q.coupling() > 0.0)) {
        throw ConfigError("scattering sweep over u needs k > 0");
    }
    CsvWriter csv(out);
    csv.header({"u", "abs_r2", "abs_t2", "absorbed"});
    double best = -1.0;
    double best_u = 0.0;
    for (double u : log_samples(0.01, 100.0, c.steps)) {
        const double wavenumber = q.mass() * q.coupling() / (2.0 * q.hbar() * q.hbar() * u);
        const ScatteringResult r = stationary_scattering(wavenumber, q);
        csv.row({u, std::norm(r.reflection), std::norm(r.transmission), r.absorbed_fraction});
        if (r.absorbed_fraction > best) {
            best = r.absorbed_fraction;
            best_u = u;
        }
    }
    csv.meta("max_absorbed", best);
    csv.meta("u_at_max", best_u);
}

void run_asymptotics(const ExperimentConfig& c, std::ostream& out)
{
    const QuantumParams q = quantum_params(c);
    CsvWriter csv(out);
    csv.header({"t", "re_exact", "im_exact", "re_asymptotic", "im_asymptotic", "modulus_ratio"});
    for (double t : log_samples(resolved_t_start(c), c.t_max, c.steps)) {
        const cplx exact = boundary_amplitude_quantum_gaussian(t, q);
        const cplx asym = asymptotic_phi_gaussian(t, q);
        csv.row({t, exact.real(), exact.imag(), asym.real(), asym.imag(),
                 std::abs(asym) / std::abs(exact)});
    }
}

} // namespace

Mode parse_mode(const std::string& name)
{
    const auto it = mode_table().find(name);
    if (it == mode_table().end()) {
        throw ConfigError("unknown mode '" + name + "'");
    }
    return it->second;
}

std::string mode_name(Mode mode)
{
    for (const auto& [name, m] : mode_table()) {
        if (m == mode) {
            return name;
        }
    }
    return "unknown";
}

ExperimentConfig preset(const std::string& name)
{
    ExperimentConfig c;
    c.preset = name;
    if (name == "paper-diffusion") {
        c.mode = Mode::survival_diffusion;
        c.dee = 1.0;
        c.kappa = 1.0;
        c.x0 = 1.0;
        c.t_max = 1e4;
        c.steps = 10000;
    } else if (name == "paper-quantum") {
        c.mode = Mode::survival_quantum;
        c.x0 = 1.0;
        c.a = 0.5;
        c.t_max = 1e4;
        c.steps = 20000;
        c.normalize = true;
    } else if (name == "paper-asymptotics") {
        c.mode = Mode::asymptotics;
        c.x0 = 1.0;
        c.a = 0.5;
        c.t_start = 10.0;
        c.t_max = 1e4;
        c.steps = 30;
    } else if (name == "oracle-cross-check") {
        c.mode = Mode::oracle_quantum;
        c.x0 = 1.0;
        c.a = 0.5;
        c.t_max = 10.0;
        c.steps = 20000;
        c.grid_half_width = 60.0;
        c.grid_nodes = 12001;
        // The absorber radiates a slowly decaying tail toward the walls; its
        // effect on S at this box size is below 1e-6.
        c.leakage_tolerance = 1e-5;
    } else {
        throw UnknownPreset("unknown preset '" + name + "'");
    }
    return c;
}

double resolved_t_start(const ExperimentConfig& c)
{
    if (c.t_start) {
        return *c.t_start;
    }
    switch (c.mode) {
    case Mode::diffusion_boundary:
        return 0.01;
    case Mode::quantum_boundary:
        if (c.a == 0.0) {
            return resolved_splice_time(quantum_params(c),
                                        c.t_max / static_cast<double>(std::max<std::size_t>(c.steps, 1)));
        }
        return 0.0;
    case Mode::asymptotics:
        return 10.0 * c.mass * c.a * c.a / c.hbar * (1.0 + 1e-9);
    default:
        return 0.0;
    }
}

void write_experiment(const ExperimentConfig& config, std::ostream& out)
{
    write_metadata(config, out);
    switch (config.mode) {
    case Mode::diffusion_boundary:
        return run_diffusion_boundary(config, out);
    case Mode::quantum_boundary:
        return run_quantum_boundary(config, out);
    case Mode::survival_diffusion:
        return run_survival_diffusion(config, out);
    case Mode::survival_quantum:
        return run_survival_quantum(config, out);
    case Mode::oracle_diffusion:
        return run_oracle_diffusion(config, out);
    case Mode::oracle_quantum:
        return run_oracle_quantum(config, out);
    case Mode::scattering:
        return run_scattering(config, out);
    case Mode::asymptotics:
        return run_asymptotics(config, out);
    }
}

int run(const ExperimentConfig& config, std::ostream& err)
{
    try {
        if (config.out.empty()) {
            write_experiment(config, std::cout);
            std::cout.flush();
        } else {
            std::ofstream file(config.out);
            if (!file) {
                throw ConfigError("cannot open output file " + config.out);
            }
            write_experiment(config, file);
        }
        return 0;
    } catch (const ParameterError& e) {
        err << "idelta: configuration error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        err << "idelta: numerical error: " << e.what() << '\n';
        return 3;
    }
}

int main_entry(int argc, char** argv)
{
    CLI::App app{"Boundary amplitudes and survival for diffusion and quantum dynamics with a "
                 "delta absorber"};
    app.set_version_flag("--version", std::string("idelta ") + version);
    app.set_config("--config", "", "key=value file; flags override it");

    ExperimentConfig c;
    std::string mode = mode_name(c.mode);
    double t_start = 0.0;
    std::vector<std::pair<CLI::Option*, std::function<void(const ExperimentConfig&)>>> fields;
    const auto bind = [&](CLI::Option* opt, auto member) {
        fields.emplace_back(opt, [&c, member](const ExperimentConfig& base) { c.*member = base.*member; });
    };

    app.add_option("--preset", c.preset, "paper-diffusion | paper-quantum | paper-asymptotics | oracle-cross-check");
    auto* mode_opt = app.add_option("--mode", mode, "diffusion-boundary | quantum-boundary | survival-diffusion | "
                                                    "survival-quantum | oracle-diffusion | oracle-quantum | "
                                                    "scattering | asymptotics");
    bind(app.add_option("--out", c.out, "CSV output path (default: standard output)"), &ExperimentConfig::out);
    bind(app.add_option("--k", c.k, "quantum absorber strength"), &ExperimentConfig::k);
    bind(app.add_option("--kappa", c.kappa, "killing strength"), &ExperimentConfig::kappa);
    bind(app.add_option("--dee", c.dee, "diffusion coefficient"), &ExperimentConfig::dee);
    bind(app.add_option("--hbar", c.hbar, "Planck constant"), &ExperimentConfig::hbar);
    bind(app.add_option("--mass", c.mass, "particle mass"), &ExperimentConfig::mass);
    bind(app.add_option("--x0", c.x0, "source position"), &ExperimentConfig::x0);
    bind(app.add_option("--a", c.a, "Gaussian packet width (0: point source)"), &ExperimentConfig::a);
    auto* t_start_opt = app.add_option("--t-start", t_start, "first sample time");
    bind(app.add_option("--t-max", c.t_max, "last sample time"), &ExperimentConfig::t_max);
    bind(app.add_option("--steps", c.steps, "number of time intervals"), &ExperimentConfig::steps);
    bind(app.add_option("--normalize", c.normalize, "rescale the Gaussian to unit quantum norm (true/false)"),
         &ExperimentConfig::normalize);
    bind(app.add_option("--grid-half-width", c.grid_half_width, "oracle box half-width L"),
         &ExperimentConfig::grid_half_width);
    bind(app.add_option("--grid-nodes", c.grid_nodes, "oracle node count M (odd)"), &ExperimentConfig::grid_nodes);
    bind(app.add_option("--initial-width", c.initial_width, "oracle diffusion initial width"),
         &ExperimentConfig::initial_width);
    bind(app.add_option("--leakage-tolerance", c.leakage_tolerance, "oracle wall density guard, relative"),
         &ExperimentConfig::leakage_tolerance);
    bind(app.add_option("--trajectory", c.trajectory, "oracle trajectory CSV path"), &ExperimentConfig::trajectory);
    bind(app.add_option("--trajectory-stride", c.trajectory_stride, "time steps between trajectory records"),
         &ExperimentConfig::trajectory_stride);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!c.preset.empty()) {
            const ExperimentConfig base = preset(c.preset);
            for (const auto& [opt, apply] : fields) {
                if (opt->count() == 0) {
                    apply(base);
                }
            }
            if (mode_opt->count() == 0) {
                mode = mode_name(base.mode);
            }
            if (t_start_opt->count() == 0) {
                c.t_start = base.t_start;
            }
        }
        if (t_start_opt->count() > 0) {
            c.t_start = t_start;
        }
        c.mode = parse_mode(mode);
    } catch (const ParameterError& e) {
        std::cerr << "idelta: configuration error: " << e.what() << '\n';
        return 2;
    }
    return run(c, std::cerr);
}

} // namespace idelta::cli
