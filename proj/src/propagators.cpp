#include "idelta/propagators.hpp"

#include <numbers>

#include "idelta/error.hpp"
#include "idelta/specfun.hpp"

namespace idelta {

namespace {

void require_positive_time(double t)
{
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError("propagator time must be positive and finite");
    }
}

} // namespace

cplx heat_kernel(double x, double y, cplx tau)
{
    const bool forward = tau.real() > 0.0 || (tau.real() == 0.0 && tau.imag() != 0.0);
    if (!forward) {
        throw DomainError("heat kernel needs Re tau > 0 or purely imaginary nonzero tau");
    }
    const double dx = x - y;
    return std::exp(-dx * dx / (4.0 * tau)) / (2.0 * sqrt_principal(std::numbers::pi * tau));
}

cplx schrodinger_propagator(double x, double y, double t, const QuantumParams& q)
{
    require_positive_time(t);
    return heat_kernel(x, y, map_quantum_to_diffusion(q).diffusion() * t);
}

cplx forcing_delta(double t, const QuantumParams& q)
{
    if (!q.point_source()) {
        throw InvalidParameter("forcing_delta needs point-source data (a == 0)");
    }
    return schrodinger_propagator(0.0, q.source(), t, q);
}

cplx forcing_gaussian(double t, const QuantumParams& q)
{
    if (q.point_source()) {
        throw InvalidParameter("forcing_gaussian needs a > 0");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("forcing_gaussian needs t >= 0");
    }
    // Convolving the heat kernel with a Gaussian of variance a^2 shifts tau by a^2/2.
    const double a = q.packet_width();
    const cplx tau = map_quantum_to_diffusion(q).diffusion() * t + 0.5 * a * a;
    return heat_kernel(0.0, q.source(), tau);
}

KernelSpec kernel_quantum(const QuantumParams& q)
{
    const double kappa = q.coupling() / (2.0 * q.hbar());
    const cplx root = sqrt_principal(cplx(0.0, -q.mass() / (2.0 * std::numbers::pi * q.hbar())));
    return {kappa * root};
}

KernelSpec kernel_diffusion(const DiffusionParams& d)
{
    return {cplx(d.killing() / (2.0 * d.diffusion() * std::sqrt(std::numbers::pi)), 0.0)};
}

KernelSpec kernel_diffusion(cplx diffusion, cplx killing)
{
    return {killing / (2.0 * diffusion * std::sqrt(std::numbers::pi))};
}

} // namespace idelta
