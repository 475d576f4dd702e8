#include "idelta/survival.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "idelta/closedform.hpp"
#include "idelta/error.hpp"
#include "idelta/propagators.hpp"
#include "idelta/volterra.hpp"

namespace idelta {

namespace {

constexpr int boundary_layer_points = 10000;
// Accumulated trapezoid-vs-Simpson disagreement tolerated in S.
constexpr double integration_tolerance = 1e-4;

// int_0^{t_end} g(t) dt for g integrable at 0, on log-spaced points down to
// t_end 1e-12; the sliver below is taken as 2 eps g(eps), exact for g ~ t^{-1/2}.
template <class G>
double boundary_layer(G&& g, double t_end)
{
    if (t_end <= 0.0) {
        return 0.0;
    }
    const double lo = std::log(t_end * 1e-12);
    const double hi = std::log(t_end);
    const double du = (hi - lo) / (boundary_layer_points - 1);
    double sum = 0.0;
    double prev = 0.0;
    for (int i = 0; i < boundary_layer_points; ++i) {
        const double t = std::exp(lo + du * i);
        const double value = g(t) * t;
        if (i > 0) {
            sum += 0.5 * du * (prev + value);
        }
        prev = value;
    }
    const double eps = std::exp(lo);
    return sum + 2.0 * eps * g(eps);
}

// S_i = initial - rate * cumulative trapezoid of rates[i].
std::vector<double> integrate_survival(const TimeGrid& grid, const std::vector<double>& integrand,
                                       double rate, double initial)
{
    const double h = grid.step();
    std::vector<double> s(integrand.size());
    s[0] = initial;
    double defect = 0.0;
    for (std::size_t i = 1; i < integrand.size(); ++i) {
        const double increment = 0.5 * h * (integrand[i - 1] + integrand[i]);
        if (rate * increment < -1e-12) {
            throw GridTooCoarse("survival increases between samples; absorption rate is negative");
        }
        s[i] = s[i - 1] - rate * increment;
        if (i % 2 == 0) {
            const double simpson = h / 3.0 * (integrand[i - 2] + 4.0 * integrand[i - 1] + integrand[i]);
            const double trap = 0.5 * h * (integrand[i - 2] + 2.0 * integrand[i - 1] + integrand[i]);
            defect += std::abs(rate * (simpson - trap));
        }
    }
    if (defect > integration_tolerance) {
        throw GridTooCoarse("time step too coarse for the survival integral");
    }
    return s;
}

void require_kind(const AmplitudeSeries& series, SeriesKind kind)
{
    if (series.kind != kind) {
        throw InvalidParameter("series kind does not match the survival model");
    }
}

} // namespace

SurvivalCurve survival_diffusion(const AmplitudeSeries& series, const DiffusionParams& d,
                                 std::optional<double> initial)
{
    require_kind(series, SeriesKind::diffusion_density);
    const double rate = d.killing() / d.diffusion();
    double start = 1.0;
    if (initial) {
        start = *initial;
    } else if (rate > 0.0) {
        const auto p = [&](double tau) { return boundary_density_diffusion(tau, d); };
        start = 1.0 - rate * boundary_layer(p, series.grid.t_start());
    }
    std::vector<double> integrand(series.values.size());
    std::transform(series.values.begin(), series.values.end(), integrand.begin(),
                   [](cplx v) { return v.real(); });
    return {series.grid, integrate_survival(series.grid, integrand, rate, start)};
}

double gaussian_norm_factor(const QuantumParams& q)
{
    if (q.point_source()) {
        throw NormalizationError("a point source has no finite norm");
    }
    return std::sqrt(2.0 * q.packet_width() * std::sqrt(std::numbers::pi));
}

SurvivalCurve survival_quantum(const AmplitudeSeries& series, const QuantumParams& q,
                               bool normalize, std::optional<double> initial)
{
    require_kind(series, SeriesKind::quantum_amplitude);
    if (q.point_source() && (normalize || !initial)) {
        throw NormalizationError("a point source has no finite norm; supply S at the series start");
    }
    const double scale2 = normalize ? 2.0 * q.packet_width() * std::sqrt(std::numbers::pi) : 1.0;
    const double rate = q.coupling() / q.hbar();
    double start = 0.0;
    if (initial) {
        start = *initial;
    } else {
        start = normalize ? 1.0 : 1.0 / (2.0 * q.packet_width() * std::sqrt(std::numbers::pi));
        if (rate > 0.0 && series.grid.t_start() > 0.0) {
            const auto abs2 = [&](double t) {
                return scale2 * std::norm(boundary_amplitude_quantum_gaussian(t, q));
            };
            start -= rate * boundary_layer(abs2, series.grid.t_start());
        }
    }
    std::vector<double> integrand(series.values.size());
    std::transform(series.values.begin(), series.values.end(), integrand.begin(),
                   [scale2](cplx v) { return scale2 * std::norm(v); });
    return {series.grid, integrate_survival(series.grid, integrand, rate, start)};
}

TailFit fit_tail(std::span<const AmplitudeSeries> segments, double t_lo, double t_hi)
{
    if (!(t_lo > 0.0) || !(t_hi > t_lo)) {
        throw InvalidParameter("tail window needs 0 < t_lo < t_hi");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& series : segments) {
        const bool squared = series.kind == SeriesKind::quantum_amplitude;
        for (std::size_t i = 0; i < series.values.size(); ++i) {
            const double t = series.grid.time(i);
            const double mag = std::abs(series.values[i]);
            if (t < t_lo || t > t_hi || mag == 0.0) {
                continue;
            }
            // Segment ends repeat the next segment's first sample.
            if (!xs.empty() && std::log(t) <= xs.back()) {
                continue;
            }
            xs.push_back(std::log(t));
            ys.push_back(squared ? 2.0 * std::log(mag) : std::log(mag));
        }
    }
    const std::size_t n = xs.size();
    if (n < 10) {
        throw InsufficientPoints("tail window holds fewer than 10 nonzero samples");
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (intercept + slope * xs[i]);
        ss += r * r;
    }
    return {std::exp(intercept), slope, t_lo, t_hi, std::sqrt(ss / static_cast<double>(n))};
}

TailFit fit_tail(const AmplitudeSeries& series, double t_lo, double t_hi)
{
    return fit_tail(std::span<const AmplitudeSeries>(&series, 1), t_lo, t_hi);
}

VanishingTime vanishing_time_estimate(const SurvivalCurve& curve, const TailFit& tail,
                                      double absorption_rate)
{
    if (!(absorption_rate > 0.0)) {
        throw NoVanishing("no absorption, survival stays constant");
    }
    const auto& s = curve.values;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] <= 0.0) {
            if (i == 0) {
                return {curve.grid.time(0), false};
            }
            const double t0 = curve.grid.time(i - 1);
            const double t1 = curve.grid.time(i);
            return {t0 + (t1 - t0) * s[i - 1] / (s[i - 1] - s[i]), false};
        }
    }
    if (std::abs(tail.exponent + 1.0) > 0.1) {
        throw NoVanishing("tail exponent is not close to -1; survival has no logarithmic decay");
    }
    const double t_max = curve.grid.t_end();
    const double growth = absorption_rate * tail.coefficient;
    const double t_star = t_max * std::exp(s.back() / growth);
    if (!std::isfinite(t_star)) {
        throw NoVanishing("extrapolated vanishing time exceeds the double range");
    }
    return {t_star, true};
}

namespace {

template <class Sample>
void append_decades(SegmentedRun& run, double first_end, double t_max, double step,
                    SeriesKind kind, Sample&& sample)
{
    double start = first_end;
    double h = step * 10.0;
    while (start < t_max * (1.0 - 1e-12)) {
        const double end = std::min(start * 10.0, t_max);
        const TimeGrid grid = make_time_grid_span(start, end, h);
        std::vector<cplx> values(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            values[i] = sample(grid.time(i));
        }
        run.series.emplace_back(grid, std::move(values), kind);
        start = grid.t_end();
        h *= 10.0;
    }
}

} // namespace

SegmentedRun survival_diffusion_segments(const DiffusionParams& d, double tau_max, double step,
                                         double first_end)
{
    SegmentedRun run;
    const double head_end = std::min(first_end, tau_max);
    run.series.push_back(solve_abel_volterra(spliced_problem(d, make_time_grid_span(0.0, head_end, step))));
    append_decades(run, run.series.back().grid.t_end(), tau_max, step,
                   SeriesKind::diffusion_density,
                   [&](double tau) { return cplx(boundary_density_diffusion(tau, d), 0.0); });
    std::optional<double> carry;
    for (const auto& series : run.series) {
        run.survival.push_back(survival_diffusion(series, d, carry));
        carry = run.survival.back().values.back();
    }
    return run;
}

SegmentedRun survival_quantum_segments(const QuantumParams& q, bool normalize, double t_max,
                                       double step, double first_end)
{
    if (q.point_source()) {
        throw NormalizationError("survival needs Gaussian data (a > 0)");
    }
    SegmentedRun run;
    const double head_end = std::min(first_end, t_max);
    run.series.push_back(
        solve_abel_volterra(gaussian_problem(q, make_time_grid_span(0.0, head_end, step))));
    append_decades(run, run.series.back().grid.t_end(), t_max, step,
                   SeriesKind::quantum_amplitude,
                   [&](double t) { return boundary_amplitude_quantum_gaussian(t, q); });
    std::optional<double> carry;
    for (const auto& series : run.series) {
        run.survival.push_back(survival_quantum(series, q, normalize, carry));
        carry = run.survival.back().values.back();
    }
    return run;
}

} // namespace idelta
