#pragma once

#include <cmath>

#include "idelta/model.hpp"

namespace idelta {

/// Abel kernel K(t - s) = coefficient / sqrt(t - s).
struct KernelSpec {
    cplx coefficient;

    cplx operator()(double lag) const { return coefficient / std::sqrt(lag); }
};

/// Heat kernel exp(-(x-y)^2 / 4 tau) / (2 sqrt(pi tau)) in rescaled time
/// tau = D t. Complex tau continues it to the free Schrodinger propagator.
/// Requires Re tau > 0, or Re tau == 0 with Im tau != 0.
cplx heat_kernel(double x, double y, cplx tau);

/// Free propagator sqrt(m / 2 pi hbar i t) exp(-m (x-y)^2 / 2 hbar i t).
cplx schrodinger_propagator(double x, double y, double t, const QuantumParams& q);

/// Point-source forcing f(t) = G(0, x0, t). Requires q.packet_width() == 0.
cplx forcing_delta(double t, const QuantumParams& q);

/// Forcing for the Gaussian initial profile (unit integral, not unit norm):
/// free evolution of the packet sampled at the origin. Defined for t >= 0.
cplx forcing_gaussian(double t, const QuantumParams& q);

/// Memory kernel of the boundary-amplitude equation,
/// K(t) = (k / 2 hbar) G(0, 0, t) = lambda / sqrt(t),
/// lambda = (k / 2 hbar) sqrt(m / 2 pi i hbar).
KernelSpec kernel_quantum(const QuantumParams& q);

/// Memory kernel of the boundary-density equation in tau = D t units,
/// lambda = kappa / (2 D sqrt(pi)).
KernelSpec kernel_diffusion(const DiffusionParams& d);

/// Same, for complex (D, kappa); still in tau units.
KernelSpec kernel_diffusion(cplx diffusion, cplx killing);

} // namespace idelta
