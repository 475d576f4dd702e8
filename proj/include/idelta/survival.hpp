#pragma once

#include <optional>
#include <span>
#include <vector>

#include "idelta/model.hpp"

namespace idelta {

/// Power law |value|^2 ~ c t^p (quantum) or value ~ c t^p (diffusion).
struct TailFit {
    double coefficient;
    double exponent;
    double t_lo;
    double t_hi;
    /// RMS of the log residuals.
    double residual;
};

/// S(tau) = S(tau_start) - (kappa / D) int_{tau_start}^{tau} p(0, u) du on a
/// series of p(0, tau). Without an initial value the mass absorbed before
/// tau_start is added from the closed form, so S(0) = 1.
SurvivalCurve survival_diffusion(const AmplitudeSeries& series, const DiffusionParams& d,
                                 std::optional<double> initial = std::nullopt);

/// S(t) = S(t_start) - (k / hbar) int |phi|^2 dt on a series of phi(t).
///
/// With normalize set, phi is rescaled so the initial Gaussian has unit
/// quantum norm and S(0) = 1; otherwise S(0) = 1 / (2 a sqrt(pi)). A point
/// source has no finite norm: it needs an explicit initial value and
/// normalize off, else NormalizationError.
SurvivalCurve survival_quantum(const AmplitudeSeries& series, const QuantumParams& q,
                               bool normalize, std::optional<double> initial = std::nullopt);

/// Factor c with |psi| scaled by c giving unit quantum norm, c^2 = 2 a sqrt(pi).
double gaussian_norm_factor(const QuantumParams& q);

TailFit fit_tail(const AmplitudeSeries& series, double t_lo, double t_hi);
TailFit fit_tail(std::span<const AmplitudeSeries> segments, double t_lo, double t_hi);

struct VanishingTime {
    double time;
    bool extrapolated;
};

/// Time at which S reaches 0: the interpolated crossing if it happens on the
/// grid, otherwise the root of S(T_max) - rate c ln(T / T_max), where rate is
/// the absorption rate k / hbar. NoVanishing for rate <= 0 or a tail exponent
/// further than 0.1 from -1.
VanishingTime vanishing_time_estimate(const SurvivalCurve& curve, const TailFit& tail,
                                      double absorption_rate);

/// Boundary series and survival over consecutive segments: a Volterra solve
/// on [0, first_end] with step h, then closed-form samples on decades
/// [first_end 10^j, first_end 10^{j+1}] with steps h 10^{j+1}, up to t_max.
struct SegmentedRun {
    std::vector<AmplitudeSeries> series;
    std::vector<SurvivalCurve> survival;
};

SegmentedRun survival_diffusion_segments(const DiffusionParams& d, double tau_max, double step,
                                         double first_end = 10.0);
SegmentedRun survival_quantum_segments(const QuantumParams& q, bool normalize, double t_max,
                                       double step, double first_end = 10.0);

} // namespace idelta
