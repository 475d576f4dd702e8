#pragma once

#include "idelta/model.hpp"
#include "idelta/volterra.hpp"

namespace idelta {

/// Killed heat equation u_t = D u_xx - kappa delta(x) u with u(x, 0) = delta(x - x0),
/// in its own time variable. D and kappa may be complex: the quantum problem
/// is the continuation D = i hbar / 2m, kappa = k / 2 hbar.
struct TransplantParams {
    cplx diffusion;
    cplx killing;
    double source;
};

/// Quantum amplitude equation in t.
TransplantParams transplant(const QuantumParams& q);

/// Diffusion density equation in tau = D t units (unit diffusion, kappa / D killing).
TransplantParams transplant(const DiffusionParams& d);

/// Kernel of the boundary equation of p, in p's own time variable:
/// lambda = kappa / (2 sqrt(pi D)).
KernelSpec transplant_kernel(const TransplantParams& p);

/// p(0, tau) = 1/2 e^{-x0^2/4tau} [1/sqrt(pi tau) - c erfcx(c sqrt(tau) + x0/(2 sqrt(tau)))]
/// with c = kappa / 2D, for complex tau off the negative real axis. Switches to
/// a cancellation-free form when the two bracketed terms nearly cancel.
cplx boundary_value(cplx tau, cplx kappa_over_2d, double x0);

/// u(0, t) of the transplanted problem, i.e. boundary_value(D t, kappa / 2D, x0).
cplx boundary_amplitude_analytic(double t, const TransplantParams& p);

/// Boundary density p(0, tau) of the killed diffusion, tau = D t.
double boundary_density_diffusion(double tau, const DiffusionParams& d);

/// Laplace transform of p(0, tau): e^{-x0 sqrt(s)} / (2 sqrt(s) + kappa / D), Re s > 0.
cplx laplace_boundary_density(cplx s, const DiffusionParams& d);

/// phi(t) = psi(0, t) for the point source (a == 0).
cplx boundary_amplitude_quantum(double t, const QuantumParams& q);

/// phi(t) for the Gaussian initial profile of unit integral, by superposing
/// point-source solutions over the profile.
///
/// The y-integral is taken along the ray through the origin on which the
/// complex Gaussian e^{-y^2/4tau - (y-x0)^2/2a^2} decays without oscillating,
/// with composite Gauss-Legendre panels. The node count is doubled from
/// quadrature_nodes until two successive values agree to 1e-8 relative;
/// NonConvergence is thrown once max_nodes would be exceeded (max_nodes == 0
/// permits a single doubling).
cplx boundary_amplitude_quantum_gaussian(double t, const QuantumParams& q,
                                         int quadrature_nodes = 64, int max_nodes = 1 << 14);

/// Leading term c * time^power of a boundary function.
struct AsymptoticCoefficients {
    cplx leading_amplitude;
    double leading_power;
};

/// p(0, tau) ~ (kappa x0 + 2D) D / (2 kappa^2 sqrt(pi)) tau^{-3/2}. kappa > 0.
AsymptoticCoefficients diffusion_asymptotics(const DiffusionParams& d);

/// Same law continued to the transplanted problem, in its own time variable:
/// u(0, t) ~ c t^{-3/2}.
AsymptoticCoefficients transplant_asymptotics(const TransplantParams& p);

double asymptotic_boundary_density(double tau, const DiffusionParams& d);

/// Two-term large-t expansion for the Gaussian profile: the free term plus
/// the oscillatory e^{-i k^2 m t / 8 hbar^3} correction. Requires hbar t > 10 m a^2.
cplx asymptotic_phi_gaussian(double t, const QuantumParams& q);

/// The two terms separately.
struct GaussianAsymptoticTerms {
    cplx free_term;
    cplx oscillatory_term;
};
GaussianAsymptoticTerms asymptotic_phi_gaussian_terms(double t, const QuantumParams& q);

struct ScatteringResult {
    cplx reflection;
    cplx transmission;
    double absorbed_fraction;
};

/// Plane wave e^{i q x} on the point absorber: u = m k / (2 hbar^2 q),
/// t = 1/(1+u), r = -u/(1+u), absorbed = 2u/(1+u)^2.
ScatteringResult stationary_scattering(double wavenumber, const QuantumParams& q);

/// int_0^{t_split} K(t - s) u(0, s) ds for the closed-form solution, t >= t_split.
///
/// For x0 != 0 the path runs from t_split to 0 along
/// s(v) = 1 / (1/t_split + 4 D v^2 / x0^2), on which e^{-x0^2/4Ds} decays
/// monotonically; for real D it is the real segment, for imaginary D a circular
/// arc in the lower half-plane that avoids the infinitely fast oscillation at s -> 0.
cplx closed_form_history(double t, double t_split, const TransplantParams& p);

/// Boundary equation on grid with the memory before grid.t_start() supplied
/// by the closed form (forcing(t) = free term - closed_form_history). With
/// t_start == 0 the forcing is the free term alone.
VolterraProblem spliced_problem(const TransplantParams& p, const TimeGrid& grid,
                                SeriesKind kind = SeriesKind::quantum_amplitude);
VolterraProblem spliced_problem(const QuantumParams& q, const TimeGrid& grid);
VolterraProblem spliced_problem(const DiffusionParams& d, const TimeGrid& grid);

/// Boundary equation for the Gaussian profile; forcing_gaussian is regular,
/// so the grid must start at 0.
VolterraProblem gaussian_problem(const QuantumParams& q, const TimeGrid& grid);

/// Earliest splice time at which the point-source forcing phase
/// m x0^2 / (2 hbar t) turns by at most 0.2 rad per step h.
double resolved_splice_time(const QuantumParams& q, double step);

} // namespace idelta
