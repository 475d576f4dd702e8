#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace idelta {

using cplx = std::complex<double>;

/// Killed diffusion p_t = D p_xx - kappa delta(x) p started from delta(x - x0).
///
/// The library is unit-agnostic: D is length^2/time, kappa is length/time and
/// x0 is a length, in whatever consistent system the caller uses.
class DiffusionParams {
public:
    DiffusionParams(double diffusion, double killing, double source);

    double diffusion() const noexcept { return diffusion_; }
    double killing() const noexcept { return killing_; }
    double source() const noexcept { return source_; }

private:
    double diffusion_;
    double killing_;
    double source_;
};

/// Free particle with the absorbing point potential -(i k / 2) delta(x).
///
/// packet_width a > 0 selects the Gaussian initial profile
/// exp(-(y - x0)^2 / 2a^2) / (sqrt(2 pi) a); a == 0 is the point source.
class QuantumParams {
public:
    QuantumParams(double hbar, double mass, double coupling, double source,
                  double packet_width = 0.0);

    double hbar() const noexcept { return hbar_; }
    double mass() const noexcept { return mass_; }
    double coupling() const noexcept { return coupling_; }
    double source() const noexcept { return source_; }
    double packet_width() const noexcept { return width_; }
    bool point_source() const noexcept { return width_ == 0.0; }

    QuantumParams with_coupling(double k) const;
    QuantumParams with_width(double a) const;
    QuantumParams with_source(double x0) const;

private:
    double hbar_;
    double mass_;
    double coupling_;
    double source_;
    double width_;
};

/// Complex diffusion coefficient and killing strength obtained by continuing
/// the killed heat equation to imaginary diffusion.
class EffectiveComplexParams {
public:
    cplx diffusion() const noexcept { return diffusion_; }
    cplx killing() const noexcept { return killing_; }

private:
    EffectiveComplexParams(cplx d, cplx k) : diffusion_(d), killing_(k) {}
    friend EffectiveComplexParams map_quantum_to_diffusion(const QuantumParams& q);

    cplx diffusion_;
    cplx killing_;
};

/// D_c = i hbar / 2m, kappa_c = k / 2 hbar.
EffectiveComplexParams map_quantum_to_diffusion(const QuantumParams& q);

/// Uniform sample times t_i = t_start + i h, i = 0 .. N-1.
class TimeGrid {
public:
    TimeGrid(double t_start, double step, std::size_t count);

    double t_start() const noexcept { return t_start_; }
    double step() const noexcept { return step_; }
    std::size_t size() const noexcept { return count_; }
    double time(std::size_t i) const noexcept { return t_start_ + static_cast<double>(i) * step_; }
    double t_end() const noexcept { return time(count_ - 1); }
    std::vector<double> times() const;

    /// Same span, step divided by 2^levels.
    TimeGrid refined(unsigned levels = 1) const;

    bool operator==(const TimeGrid&) const = default;

private:
    double t_start_;
    double step_;
    std::size_t count_;
};

TimeGrid make_time_grid(double t_start, double step, std::size_t count);

/// Grid covering [t_start, t_end] with the given step; t_end is rounded to the
/// nearest whole number of steps.
TimeGrid make_time_grid_span(double t_start, double t_end, double step);

enum class SeriesKind { diffusion_density, quantum_amplitude };

/// Boundary value phi(t_i) = psi(0, t_i) or p(0, tau_i) sampled on a grid.
struct AmplitudeSeries {
    AmplitudeSeries(TimeGrid grid, std::vector<cplx> values, SeriesKind kind);

    TimeGrid grid;
    std::vector<cplx> values;
    SeriesKind kind;
};

/// S(t_i) with optional tail metadata.
struct SurvivalCurve {
    SurvivalCurve(TimeGrid grid, std::vector<double> values);

    TimeGrid grid;
    std::vector<double> values;
    std::optional<double> tail_coefficient;
    std::optional<double> vanishing_time;
    bool vanishing_time_extrapolated = false;
};

} // namespace idelta
