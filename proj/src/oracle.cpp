#include "idelta/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "idelta/error.hpp"
#include "idelta/tridiagonal.hpp"

namespace idelta {

SpatialGrid::SpatialGrid(double half_width, std::size_t nodes)
    : half_width_(half_width), nodes_(nodes), spacing_(0.0)
{
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw InvalidParameter("grid half-width must be positive");
    }
    if (nodes < 5 || nodes % 2 == 0) {
        throw InvalidParameter("grid node count must be odd and at least 5");
    }
    spacing_ = 2.0 * half_width / static_cast<double>(nodes - 1);
}

namespace {

enum class FieldKind { density, wavefunction };

struct Evolution {
    cplx diffusion;
    double killing;
    FieldKind kind;
};

double survival_of(const std::vector<cplx>& field, double dx, FieldKind kind)
{
    double sum = 0.0;
    for (const cplx& v : field) {
        sum += kind == FieldKind::density ? v.real() : std::norm(v);
    }
    return dx * sum;
}

// Leakage is judged on the density that S integrates: p itself, or |psi|^2.
double density(cplx v, FieldKind kind)
{
    return kind == FieldKind::density ? std::abs(v.real()) : std::norm(v);
}

void check_state(const std::vector<cplx>& field, FieldKind kind, double time, double tolerance)
{
    double peak = 0.0;
    for (const cplx& v : field) {
        peak = std::max(peak, density(v, kind));
    }
    const std::size_t m = field.size();
    const double edge = std::max(density(field[1], kind), density(field[m - 2], kind));
    if (edge > tolerance * peak) {
        throw BoundaryLeakage("field reaches the wall at t = " + std::to_string(time) +
                              "; enlarge the grid half-width");
    }
    if (kind == FieldKind::density) {
        for (const cplx& v : field) {
            if (v.real() < -1e-10) {
                throw NonphysicalNegativity("negative density at t = " + std::to_string(time));
            }
        }
    }
}

OracleRun crank_nicolson(const Evolution& e, const SpatialGrid& sg, const TimeGrid& tg,
                         std::vector<cplx> field, std::size_t stride, double tolerance)
{
    const std::size_t m = sg.size();
    const std::size_t n = m - 2;
    const double dx = sg.spacing();
    const double h = tg.step();
    const std::size_t c = sg.center();

    // A = D Laplacian - kappa/dx at the center; interior nodes 1 .. m-2.
    const cplx off = e.diffusion / (dx * dx);
    std::vector<cplx> diag_a(n, -2.0 * off);
    diag_a[c - 1] -= e.killing / dx;

    std::vector<cplx> lower(n, -0.5 * h * off);
    std::vector<cplx> upper(n, -0.5 * h * off);
    std::vector<cplx> diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = 1.0 - 0.5 * h * diag_a[i];
    }
    const TridiagonalFactor<cplx> factor(std::move(lower), std::move(diag), std::move(upper));

    std::vector<cplx> rhs(n);
    std::vector<double> survival(tg.size());
    std::vector<cplx> center(tg.size());
    std::vector<GridState> trajectory;

    field.front() = 0.0;
    field.back() = 0.0;
    survival[0] = survival_of(field, dx, e.kind);
    center[0] = field[c];
    if (stride > 0) {
        trajectory.push_back({sg, field, tg.time(0)});
    }
    for (std::size_t step = 1; step < tg.size(); ++step) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = i + 1;
            rhs[i] = field[j] + 0.5 * h * (off * (field[j - 1] + field[j + 1]) + diag_a[i] * field[j]);
        }
        factor.solve_in_place(rhs);
        std::copy(rhs.begin(), rhs.end(), field.begin() + 1);
        const double t = tg.time(step);
        check_state(field, e.kind, t, tolerance);
        survival[step] = survival_of(field, dx, e.kind);
        center[step] = field[c];
        if (stride > 0 && step % stride == 0 && step + 1 != tg.size()) {
            trajectory.push_back({sg, field, t});
        }
    }
    trajectory.push_back({sg, std::move(field), tg.t_end()});

    const SeriesKind kind = e.kind == FieldKind::density ? SeriesKind::diffusion_density
                                                          : SeriesKind::quantum_amplitude;
    return {std::move(trajectory), SurvivalCurve(tg, std::move(survival)),
            AmplitudeSeries(tg, std::move(center), kind)};
}

std::vector<cplx> gaussian_field(const SpatialGrid& sg, double x0, double width, FieldKind kind)
{
    std::vector<cplx> field(sg.size());
    for (std::size_t j = 1; j + 1 < sg.size(); ++j) {
        const double u = (sg.x(j) - x0) / width;
        field[j] = std::exp(-0.5 * u * u);
    }
    const double mass = survival_of(field, sg.spacing(), kind);
    if (!(mass > 0.0)) {
        throw InvalidParameter("initial profile is not resolved on the spatial grid");
    }
    const double scale = kind == FieldKind::density ? 1.0 / mass : 1.0 / std::sqrt(mass);
    for (cplx& v : field) {
        v *= scale;
    }
    return field;
}

void check_step_resolution(const OracleRun& coarse, const OracleRun& fine)
{
    const auto& a = coarse.center.values;
    const auto& b = fine.center.values;
    double peak = 0.0;
    for (const cplx& v : a) {
        peak = std::max(peak, std::abs(v));
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = std::abs(a[i]);
        const double y = std::abs(b[2 * i]);
        const double scale = std::max(x, y);
        if (scale > 1e-3 * peak && std::abs(x - y) > 0.1 * scale) {
            throw StepResolution("field at x = 0 changes by more than 10% when the time step is halved (t = " +
                                 std::to_string(coarse.center.grid.time(i)) + ")");
        }
    }
}

OracleRun run_with_options(const Evolution& e, const SpatialGrid& sg, const TimeGrid& tg,
                           const std::vector<cplx>& initial, const OracleOptions& options)
{
    OracleRun run =
        crank_nicolson(e, sg, tg, initial, options.trajectory_stride, options.leakage_tolerance);
    if (options.check_step_resolution) {
        check_step_resolution(run, crank_nicolson(e, sg, tg.refined(1), initial, 0, options.leakage_tolerance));
    }
    return run;
}

} // namespace

OracleRun evolve_diffusion(const DiffusionParams& d, const SpatialGrid& sg, const TimeGrid& tg,
                           double initial_width, const OracleOptions& options)
{
    if (!(initial_width > 0.0)) {
        throw InvalidParameter("initial width must be positive");
    }
    const Evolution e{cplx(d.diffusion(), 0.0), d.killing(), FieldKind::density};
    return run_with_options(e, sg, tg,
                            gaussian_field(sg, d.source(), initial_width, FieldKind::density),
                            options);
}

OracleRun evolve_schrodinger(const QuantumParams& q, const SpatialGrid& sg, const TimeGrid& tg,
                             const OracleOptions& options)
{
    if (q.point_source()) {
        throw InvalidParameter("the grid oracle needs Gaussian data (a > 0)");
    }
    // psi_t = (i hbar / 2m) psi_xx - (k / 2 hbar) delta(x) psi
    const Evolution e{cplx(0.0, q.hbar() / (2.0 * q.mass())), q.coupling() / (2.0 * q.hbar()),
                      FieldKind::wavefunction};
    return run_with_options(
        e, sg, tg, gaussian_field(sg, q.source(), q.packet_width(), FieldKind::wavefunction),
        options);
}

} // namespace idelta
