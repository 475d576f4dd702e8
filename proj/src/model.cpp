#include "idelta/model.hpp"

#include <cmath>
#include <string>

#include "idelta/error.hpp"

namespace idelta {

namespace {

void require(bool ok, const char* what)
{
    if (!ok) {
        throw InvalidParameter(what);
    }
}

} // namespace

DiffusionParams::DiffusionParams(double diffusion, double killing, double source)
    : diffusion_(diffusion), killing_(killing), source_(source)
{
    require(std::isfinite(diffusion) && std::isfinite(killing) && std::isfinite(source),
            "diffusion parameters must be finite");
    require(diffusion > 0.0, "diffusion coefficient D must be positive");
    require(killing >= 0.0, "killing strength kappa must be nonnegative");
}

QuantumParams::QuantumParams(double hbar, double mass, double coupling, double source,
                             double packet_width)
    : hbar_(hbar), mass_(mass), coupling_(coupling), source_(source), width_(packet_width)
{
    require(std::isfinite(hbar) && std::isfinite(mass) && std::isfinite(coupling)
                && std::isfinite(source) && std::isfinite(packet_width),
            "quantum parameters must be finite");
    require(hbar > 0.0, "hbar must be positive");
    require(mass > 0.0, "mass must be positive");
    require(coupling >= 0.0, "coupling k must be nonnegative");
    require(packet_width >= 0.0, "packet width a must be nonnegative");
}

QuantumParams QuantumParams::with_coupling(double k) const
{
    return {hbar_, mass_, k, source_, width_};
}

QuantumParams QuantumParams::with_width(double a) const
{
    return {hbar_, mass_, coupling_, source_, a};
}

QuantumParams QuantumParams::with_source(double x0) const
{
    return {hbar_, mass_, coupling_, x0, width_};
}

EffectiveComplexParams map_quantum_to_diffusion(const QuantumParams& q)
{
    return {cplx(0.0, q.hbar() / (2.0 * q.mass())), cplx(q.coupling() / (2.0 * q.hbar()), 0.0)};
}

TimeGrid::TimeGrid(double t_start, double step, std::size_t count)
    : t_start_(t_start), step_(step), count_(count)
{
    require(std::isfinite(t_start) && t_start >= 0.0, "time grid start must be finite and >= 0");
    require(std::isfinite(step) && step > 0.0, "time step h must be positive");
    require(count >= 2, "time grid needs at least two points");
}

std::vector<double> TimeGrid::times() const
{
    std::vector<double> t(count_);
    for (std::size_t i = 0; i < count_; ++i) {
        t[i] = time(i);
    }
    return t;
}

TimeGrid TimeGrid::refined(unsigned levels) const
{
    const std::size_t factor = std::size_t{1} << levels;
    return {t_start_, step_ / static_cast<double>(factor), (count_ - 1) * factor + 1};
}

TimeGrid make_time_grid(double t_start, double step, std::size_t count)
{
    return {t_start, step, count};
}

TimeGrid make_time_grid_span(double t_start, double t_end, double step)
{
    require(std::isfinite(t_end) && t_end > t_start, "time grid end must exceed its start");
    require(std::isfinite(step) && step > 0.0, "time step h must be positive");
    const double intervals = std::round((t_end - t_start) / step);
    return {t_start, step, static_cast<std::size_t>(intervals) + 1};
}

AmplitudeSeries::AmplitudeSeries(TimeGrid g, std::vector<cplx> v, SeriesKind k)
    : grid(g), values(std::move(v)), kind(k)
{
    require(values.size() == grid.size(), "series length must match its time grid");
    for (const cplx& z : values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InvalidParameter("amplitude series contains a non-finite value");
        }
    }
}

SurvivalCurve::SurvivalCurve(TimeGrid g, std::vector<double> v) : grid(g), values(std::move(v))
{
    require(values.size() == grid.size(), "survival curve length must match its time grid");
}

} // namespace idelta
